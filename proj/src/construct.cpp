#include "strongcurv/construct.hpp"

#include <cmath>
#include <stdexcept>

namespace strongcurv {

namespace {

// Row (a,b) over pairs of `idx`: w_a w_b [e_a, e_b], coordinates restricted by `mask` (empty = all).
Mat bracket_rows(const LieAlgebraData& alg, const std::vector<int>& idx, const Vec& w, const std::vector<char>& mask) {
    const int n = static_cast<int>(idx.size());
    Mat b = Mat::Zero(binomial(n, 2), alg.dim);
    int row = 0;
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c, ++row) {
            const double s = w[a] * w[c];
            if (s == 0.0) continue;
            for (int k = 0; k < alg.dim; ++k)
                if (mask.empty() || mask[k]) b(row, k) = s * alg.c(idx[a], idx[c], k);
        }
    return b;
}

std::vector<char> mask_of(int dim, const std::vector<int>& idx) {
    std::vector<char> m(dim, 0);
    for (int i : idx) m[i] = 1;
    return m;
}

Mat bianchi_mat(int n, const Mat& a) { return form_to_mat(bianchi(n, a)); }

Mat scale_pairs(const Mat& m, const Vec& sc) {
    const int n = static_cast<int>(sc.size());
    Vec d(binomial(n, 2));
    int k = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) d[k++] = sc[a] * sc[b];
    return d.asDiagonal() * m * d.asDiagonal();
}

}  // namespace

Mat submatrix(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Mat out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

NormalHomogeneous normal_homogeneous(const HomogeneousSplit& split, Coset coset) {
    std::vector<int> tan, iso;
    switch (coset) {
        case Coset::GH: tan = split.tangent(); iso = split.h; break;
        case Coset::GK: tan = split.m; iso = split.k(); break;
        case Coset::KH: tan = split.p; iso = split.h; break;
    }
    const int n = static_cast<int>(tan.size());
    if (n < 2) throw std::invalid_argument("normal_homogeneous: tangent space has dimension < 2");
    const auto& alg = split.algebra;
    const Vec ones = Vec::Ones(n);
    const Mat full = bracket_rows(alg, tan, ones, {});
    const Mat iso_part = bracket_rows(alg, tan, ones, mask_of(alg.dim, iso));
    const Mat giso = iso_part * iso_part.transpose();
    const Mat alpha = 0.25 * giso;
    const Mat r = 0.25 * full * full.transpose() + 0.75 * giso - 3.0 * bianchi_mat(n, alpha);
    return {SymOp(n, 0.5 * (r + r.transpose())), SymOp(n, 0.5 * (alpha + alpha.transpose())), tan};
}

SymOp ATensor::alpha() const {
    const Mat a = map * map.transpose();
    return SymOp(n, 0.5 * (a + a.transpose()));
}

SymOp oneill(const SymOp& r_total, const ATensor& a) {
    if (r_total.n != a.n || a.map.rows() != binomial(a.n, 2))
        throw std::invalid_argument("oneill: dimension mismatch between operator and A-tensor");
    const SymOp alpha = a.alpha();
    return SymOp(a.n, r_total.mat + 3.0 * alpha.mat - 3.0 * bianchi_mat(a.n, alpha.mat));
}

ATensor bracket_a_tensor(const LieAlgebraData& alg, const std::vector<int>& horizontal, const Vec& h_scale,
                         const std::vector<int>& vertical, double v_scale) {
    const int n = static_cast<int>(horizontal.size());
    ATensor a;
    a.n = n;
    a.map = Mat::Zero(binomial(n, 2), static_cast<long>(vertical.size()));
    const double vs = std::sqrt(v_scale);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++row)
            for (std::size_t c = 0; c < vertical.size(); ++c)
                a.map(row, static_cast<long>(c)) =
                    0.5 * h_scale[i] * h_scale[j] * vs * alg.c(horizontal[i], horizontal[j], vertical[c]);
    return a;
}

ATensor fibration_a_tensor(const HomogeneousSplit& split, double t) {
    if (!(t > 0)) throw std::invalid_argument("fibration_a_tensor: t must be positive");
    return bracket_a_tensor(split.algebra, split.m, Vec::Ones(static_cast<long>(split.m.size())), split.p, t);
}

SymOp cheeger(const LieAlgebraData& alg, const std::vector<int>& k_idx, double s) {
    if (!(s > 0)) throw std::invalid_argument("cheeger: deformation parameter must be positive");
    const double t = 1.0 / (1.0 + s);
    const int n = alg.dim;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    const auto in_k = mask_of(n, k_idx);
    Vec wg(n), wk(n), kk(n);
    for (int i = 0; i < n; ++i) {
        wg[i] = in_k[i] ? t : 1.0;          // G-component of the horizontal lift
        wk[i] = in_k[i] ? -(1.0 - t) : 0.0;  // K-component
        kk[i] = in_k[i] ? 1.0 : 0.0;
    }
    const Mat g_part = bracket_rows(alg, all, wg, {});
    const Mat k_part = bracket_rows(alg, all, wk, {});
    const Mat v = bracket_rows(alg, all, wg, in_k) + t * (1.0 - t) * bracket_rows(alg, all, kk, {});
    const Mat alpha = 0.25 * (1.0 - t) * v * v.transpose();
    const Mat rbar = 0.25 * g_part * g_part.transpose() + (1.0 / s) * 0.25 * k_part * k_part.transpose();
    Mat r = rbar + 3.0 * alpha - 3.0 * bianchi_mat(n, alpha);
    Vec sc(n);
    for (int i = 0; i < n; ++i) sc[i] = in_k[i] ? 1.0 / std::sqrt(t) : 1.0;
    r = scale_pairs(r, sc);
    return SymOp(n, 0.5 * (r + r.transpose()));
}

SymOp cheeger(const HomogeneousSplit& split, double s) { return cheeger(split.algebra, split.k(), s); }

// ---- Wallach

std::vector<int> WallachOperator::pairs_mm() const {
    std::vector<int> out;
    const Basis2 b(nm + np);
    for (int k = 0; k < b.size(); ++k)
        if (b[k][1] < nm) out.push_back(k);
    return out;
}

std::vector<int> WallachOperator::pairs_pp() const {
    std::vector<int> out;
    const Basis2 b(nm + np);
    for (int k = 0; k < b.size(); ++k)
        if (b[k][0] >= nm) out.push_back(k);
    return out;
}

std::vector<int> WallachOperator::pairs_mp() const { return mixed_pairs(nm, np); }

std::vector<int> mixed_pairs(int nm, int np) {
    std::vector<int> out;
    const Basis2 b(nm + np);
    for (int k = 0; k < b.size(); ++k)
        if (b[k][0] < nm && b[k][1] >= nm) out.push_back(k);
    return out;
}

Mat WallachOperator::block(const std::vector<int>& rows, const std::vector<int>& cols) const {
    return submatrix(rhat.mat, rows, cols);
}

WallachOperator wallach(const HomogeneousSplit& split, double t) {
    if (!(t > 0)) throw std::invalid_argument("wallach: t must be positive");
    if (split.m.empty() || split.p.empty()) throw std::invalid_argument("wallach: split needs nontrivial m and p");
    const auto& alg = split.algebra;
    const auto tan = split.tangent();
    const int nm = static_cast<int>(split.m.size()), np = static_cast<int>(split.p.size());
    const int n = nm + np;
    Vec im = Vec::Zero(n), ip = Vec::Zero(n);
    im.head(nm).setOnes();
    ip.tail(np).setOnes();

    const Mat b1 = bracket_rows(alg, tan, im + t * ip, {});                          // [X_m + t X_p, Y_m + t Y_p]
    const Mat bpp = bracket_rows(alg, tan, ip, {});                                  // [X_p, Y_p]
    const Mat bmt = bracket_rows(alg, tan, im, {}) + t * bpp;                        // [X_m,Y_m] + t[X_p,Y_p]
    const Mat bh = bracket_rows(alg, tan, Vec::Ones(n), mask_of(alg.dim, split.h));  // [X, Y]_h

    const Mat a1 = (1.0 - t) / 4.0 * bmt * bmt.transpose();
    const Mat a2 = t / 4.0 * bh * bh.transpose();
    const Mat ba1 = bianchi_mat(n, a1), ba2 = bianchi_mat(n, a2);
    const Mat rt = 0.25 * b1 * b1.transpose() + t * std::pow(1.0 - t, 3) / 4.0 * bpp * bpp.transpose() + 3.0 * a1 +
                   3.0 * a2 - 3.0 * ba1 - 3.0 * ba2;

    Vec sc(n);
    for (int i = 0; i < n; ++i) sc[i] = i < nm ? 1.0 : 1.0 / std::sqrt(t);
    auto sym = [&](const Mat& m) {
        const Mat s = scale_pairs(m, sc);
        return SymOp(n, 0.5 * (s + s.transpose()));
    };
    WallachOperator w;
    w.t = t;
    w.nm = nm;
    w.np = np;
    w.op = sym(rt);
    w.alpha1 = sym(a1);
    w.alpha2 = sym(a2);
    w.b_alpha1 = bianchi(w.alpha1);
    w.b_alpha2 = bianchi(w.alpha2);
    w.rhat = SymOp(n, w.op.mat + 3.0 * form_to_mat(w.b_alpha1) + 3.0 * form_to_mat(w.b_alpha2));
    return w;
}

FatnessOps fatness_ops(const HomogeneousSplit& split) {
    const auto& alg = split.algebra;
    const int nm = static_cast<int>(split.m.size()), np = static_cast<int>(split.p.size());
    FatnessOps f;
    f.L = Mat::Zero(nm, nm * np);
    for (int i = 0; i < nm; ++i)
        for (int a = 0; a < np; ++a) {
            const int col = i * np + a;
            f.index.push_back({i, nm + a});
            for (int k = 0; k < nm; ++k) f.L(k, col) = alg.c(split.m[i], split.p[a], split.m[k]);
        }
    f.F = f.L.transpose() * f.L;
    f.F = 0.5 * (f.F + f.F.transpose());
    return f;
}

}  // namespace strongcurv
