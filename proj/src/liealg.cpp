#include "strongcurv/liealg.hpp"

#include "realify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace strongcurv {

using detail::offdiag;
using detail::diag_entry;
using detail::unit;

// ---- LieAlgebraData

Vec LieAlgebraData::bracket(int i, int j) const {
    Vec v(dim);
    for (int k = 0; k < dim; ++k) v[k] = c(i, j, k);
    return v;
}

Vec LieAlgebraData::bracket(const Vec& x, const Vec& y) const {
    Vec v = Vec::Zero(dim);
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < dim; ++j) {
            const double w = x[i] * y[j];
            if (w == 0.0) continue;
            for (int k = 0; k < dim; ++k) v[k] += w * c(i, j, k);
        }
    }
    return v;
}

Mat LieAlgebraData::ad(const Vec& x) const {
    Mat a = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) a(k, j) += x[i] * c(i, j, k);
    }
    return a;
}

double LieAlgebraData::q(const Mat& a, const Mat& b) const {
    return -q_normalization / field_dim * (a * b).trace();
}

LieAlgebraData LieAlgebraData::from_matrices(std::vector<Mat> mats, int field_dim, double q_normalization,
                                             double tol) {
    LieAlgebraData alg;
    alg.dim = static_cast<int>(mats.size());
    alg.basis_matrices = std::move(mats);
    alg.field_dim = field_dim;
    alg.q_normalization = q_normalization;
    const int d = alg.dim;
    const auto& b = alg.basis_matrices;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double g = alg.q(b[i], b[j]);
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > tol) {
                std::ostringstream os;
                os << "basis is not Q-orthonormal at (" << i << "," << j << "): " << g;
                throw std::invalid_argument(os.str());
            }
        }
    alg.structure.assign(static_cast<std::size_t>(d) * d * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const Mat br = b[i] * b[j] - b[j] * b[i];
            Mat rest = br;
            for (int k = 0; k < d; ++k) {
                const double ck = alg.q(br, b[k]);
                alg.c(i, j, k) = ck;
                alg.c(j, i, k) = -ck;
                rest -= ck * b[k];
            }
            if (rest.cwiseAbs().maxCoeff() > tol * std::max(1.0, br.cwiseAbs().maxCoeff())) {
                std::ostringstream os;
                os << "basis is not closed under brackets at (" << i << "," << j << ")";
                throw std::invalid_argument(os.str());
            }
        }
    return alg;
}

LieAlgebraData LieAlgebraData::from_structure(int dim, std::vector<double> structure, double tol) {
    if (dim <= 0) throw std::invalid_argument("structure constants: dimension must be positive");
    if (structure.size() != static_cast<std::size_t>(dim) * dim * dim)
        throw std::invalid_argument("structure constants: expected dim^3 entries");
    LieAlgebraData alg;
    alg.dim = dim;
    alg.structure = std::move(structure);
    for (double v : alg.structure)
        if (!std::isfinite(v)) throw std::invalid_argument("structure constants: non-finite entry");
    if (alg.antisymmetry_residual() > tol) throw std::invalid_argument("structure constants: not antisymmetric");
    const auto jac = alg.jacobi_residual();
    if (jac.residual > tol) {
        std::ostringstream os;
        os << "Jacobi identity fails for triple (" << jac.triple[0] << "," << jac.triple[1] << ","
           << jac.triple[2] << "): residual " << jac.residual;
        throw std::invalid_argument(os.str());
    }
    return alg;
}

double LieAlgebraData::antisymmetry_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            for (int k = 0; k < dim; ++k) r = std::max(r, std::abs(c(i, j, k) + c(j, i, k)));
    return r;
}

LieAlgebraData::JacobiDefect LieAlgebraData::jacobi_residual() const {
    JacobiDefect worst{0.0, {0, 0, 0}};
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k) {
                // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                double res = 0.0;
                for (int m = 0; m < dim; ++m) {
                    double s = 0.0;
                    for (int l = 0; l < dim; ++l)
                        s += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
                    res = std::max(res, std::abs(s));
                }
                if (res > worst.residual) worst = {res, {i, j, k}};
            }
    return worst;
}

// ---- classical algebras

LieAlgebraData build_algebra(Family family, int n) {
    std::vector<Mat> b;
    switch (family) {
        case Family::so:
            if (n < 2) throw std::invalid_argument("so(n) needs n >= 2");
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) b.push_back(offdiag(n, i, j, unit(0), 1));
            return LieAlgebraData::from_matrices(std::move(b), 1, 0.5);
        case Family::su:
            if (n < 2) throw std::invalid_argument("su(n) needs n >= 2");
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    b.push_back(offdiag(n, i, j, unit(0), 2));
                    b.push_back(offdiag(n, i, j, unit(1), 2));
                }
            for (int k = 1; k < n; ++k) {
                detail::Entries e;
                const double s = std::sqrt(2.0 / (k * (k + 1.0)));
                for (int i = 0; i < k; ++i) e[{i, i}] = {0, s, 0, 0};
                e[{k, k}] = {0, -k * s, 0, 0};
                b.push_back(detail::realify(e, n, 2));
            }
            return LieAlgebraData::from_matrices(std::move(b), 2, 0.5);
        case Family::sp:
            if (n < 1) throw std::invalid_argument("sp(n) needs n >= 1");
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (int q = 0; q < 4; ++q) b.push_back(offdiag(n, i, j, unit(q), 4));
            for (int i = 0; i < n; ++i)
                for (int q = 1; q < 4; ++q) b.push_back(diag_entry(n, i, detail::scaled(unit(q), std::sqrt(2.0)), 4));
            return LieAlgebraData::from_matrices(std::move(b), 4, 0.5);
    }
    throw std::invalid_argument("unsupported family");
}

// ---- splits

std::vector<int> HomogeneousSplit::tangent() const {
    std::vector<int> t(m);
    t.insert(t.end(), p.begin(), p.end());
    return t;
}

std::vector<int> HomogeneousSplit::k() const {
    std::vector<int> t(h);
    t.insert(t.end(), p.begin(), p.end());
    return t;
}

namespace {

// Largest coefficient of [a, b] outside `target` over a in A, b in B.
double leakage(const LieAlgebraData& alg, const std::vector<int>& A, const std::vector<int>& B,
               const std::vector<int>& target) {
    std::vector<char> in(alg.dim, 0);
    for (int t : target) in[t] = 1;
    double worst = 0.0;
    for (int a : A)
        for (int b : B)
            for (int k = 0; k < alg.dim; ++k)
                if (!in[k]) worst = std::max(worst, std::abs(alg.c(a, b, k)));
    return worst;
}

}  // namespace

void HomogeneousSplit::validate(double tol) const {
    const int d = algebra.dim;
    std::vector<int> seen(d, 0);
    for (const auto* set : {&h, &p, &m})
        for (int i : *set) {
            if (i < 0 || i >= d) throw std::invalid_argument("split: index out of range");
            ++seen[i];
        }
    for (int i = 0; i < d; ++i)
        if (seen[i] != 1) throw std::invalid_argument("split: h, p, m must partition the basis");
    if (!labels.empty() && static_cast<int>(labels.size()) != d)
        throw std::invalid_argument("split: label count must equal the dimension");
    const auto kk = k();
    auto fail = [](const char* what, double v) {
        std::ostringstream os;
        os << "split: " << what << " violated (defect " << v << ")";
        throw std::invalid_argument(os.str());
    };
    if (double v = leakage(algebra, h, h, h); v > tol) fail("[h,h] in h", v);
    if (double v = leakage(algebra, h, p, p); v > tol) fail("[h,p] in p", v);
    if (double v = leakage(algebra, kk, kk, kk); v > tol) fail("[k,k] in k", v);
    if (double v = leakage(algebra, kk, m, m); v > tol) fail("[k,m] in m", v);
}

double HomogeneousSplit::symmetric_defect() const { return leakage(algebra, m, m, k()); }

std::vector<std::vector<Vec>> bracket_table(const HomogeneousSplit& split, const std::vector<int>& rows,
                                            const std::vector<int>& cols) {
    std::vector<std::vector<Vec>> t(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c : cols) {
            if (rows[r] < 0 || rows[r] >= split.algebra.dim || c < 0 || c >= split.algebra.dim)
                throw std::out_of_range("bracket_table: index out of range");
            t[r].push_back(split.algebra.bracket(rows[r], c));
        }
    return t;
}

// ---- invariant forms

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k > n || k < 0) return out;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

int combination_index(int n, const std::vector<int>& sorted) {
    const int k = static_cast<int>(sorted.size());
    long rank = 0;
    int prev = -1;
    for (int pos = 0; pos < k; ++pos) {
        for (int v = prev + 1; v < sorted[pos]; ++v) rank += binomial(n - 1 - v, k - 1 - pos);
        prev = sorted[pos];
    }
    return static_cast<int>(rank);
}

namespace {

// Row `r` of the derivation matrix of ad (n x n, column j = ad e_j) on degree-k coordinates:
// (xi . w)_r = -sum_i w(e_r1, ..., ad e_ri, ..., e_rk).
void derivation_row(const Mat& ad, int n, const std::vector<int>& row, int row_index,
                    std::vector<Eigen::Triplet<double>>& out) {
    const int k = static_cast<int>(row.size());
    std::vector<int> idx(k);
    for (int pos = 0; pos < k; ++pos)
        for (int kk = 0; kk < n; ++kk) {
            const double a = ad(kk, row[pos]);
            if (a == 0.0) continue;
            idx = row;
            idx[pos] = kk;
            int sign = 1;
            bool repeated = false;
            for (int i = 0; i < k && !repeated; ++i)
                for (int j = i + 1; j < k; ++j) {
                    if (idx[i] == idx[j]) { repeated = true; break; }
                    if (idx[i] > idx[j]) { std::swap(idx[i], idx[j]); sign = -sign; }
                }
            if (repeated) continue;
            std::sort(idx.begin(), idx.end());
            out.emplace_back(row_index, combination_index(n, idx), -a * sign);
        }
}

Mat gram_from_rows(std::vector<std::vector<Eigen::Triplet<double>>>& rows, int nrows, int ncoords,
                   const std::vector<int>& selected) {
    std::vector<Eigen::Triplet<double>> all;
    for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
    Eigen::SparseMatrix<double> d(nrows, ncoords);
    d.setFromTriplets(all.begin(), all.end());
    Eigen::SparseMatrix<double> sel(ncoords, static_cast<long>(selected.size()));
    std::vector<Eigen::Triplet<double>> st;
    for (std::size_t c = 0; c < selected.size(); ++c) st.emplace_back(selected[c], static_cast<int>(c), 1.0);
    sel.setFromTriplets(st.begin(), st.end());
    const Eigen::SparseMatrix<double> ds = d * sel;
    return Mat(Eigen::SparseMatrix<double>(ds.transpose() * ds));
}

}  // namespace

Mat derivation_gram(const std::vector<Mat>& ad_blocks, int n, int degree, const std::vector<int>& selected) {
    const auto combos = combinations(n, degree);
    const int nc = static_cast<int>(combos.size());
    const long total = static_cast<long>(ad_blocks.size()) * nc;
    std::vector<std::vector<Eigen::Triplet<double>>> rows(total);
#pragma omp parallel for schedule(dynamic, 16)
    for (long r = 0; r < total; ++r) {
        const int g = static_cast<int>(r / nc);
        const int c = static_cast<int>(r % nc);
        derivation_row(ad_blocks[g], n, combos[c], static_cast<int>(r), rows[r]);
    }
    return gram_from_rows(rows, static_cast<int>(total), nc, selected);
}

Mat derivation_gram_serial(const std::vector<Mat>& ad_blocks, int n, int degree,
                           const std::vector<int>& selected) {
    const auto combos = combinations(n, degree);
    const int nc = static_cast<int>(combos.size());
    const long total = static_cast<long>(ad_blocks.size()) * nc;
    std::vector<std::vector<Eigen::Triplet<double>>> rows(total);
    for (long r = 0; r < total; ++r)
        derivation_row(ad_blocks[r / nc], n, combos[r % nc], static_cast<int>(r), rows[r]);
    return gram_from_rows(rows, static_cast<int>(total), nc, selected);
}

FormQuery default_form_query(const HomogeneousSplit& split, FormBlock block) {
    FormQuery q;
    q.degree = 4;
    q.tangent = split.tangent();
    q.generators = split.h;
    q.block = block;
    q.m_part = split.m;
    return q;
}

Mat invariant_forms(const LieAlgebraData& alg, const FormQuery& query, double tol) {
    if (query.degree != 2 && query.degree != 4) throw std::invalid_argument("invariant_forms: degree must be 2 or 4");
    const int n = static_cast<int>(query.tangent.size());
    const auto combos = combinations(n, query.degree);
    std::vector<char> is_m(alg.dim, 0);
    for (int i : query.m_part) is_m[i] = 1;
    std::vector<int> selected;
    for (int c = 0; c < static_cast<int>(combos.size()); ++c) {
        int nm = 0;
        for (int pos : combos[c]) nm += is_m[query.tangent[pos]];
        const int k = query.degree;
        const bool keep = query.block == FormBlock::all || (query.block == FormBlock::mixed && nm == k / 2) ||
                          (query.block == FormBlock::only_m && nm == k) ||
                          (query.block == FormBlock::only_p && nm == 0);
        if (keep) selected.push_back(c);
    }
    Mat out = Mat::Zero(static_cast<long>(combos.size()), 0);
    if (selected.empty()) return out;

    // ad(xi) restricted to the tangent coordinates; [xi, tangent] must stay in the tangent space
    std::vector<char> in_tan(alg.dim, 0);
    for (int t : query.tangent) in_tan[t] = 1;
    std::vector<Mat> ads;
    for (int g : query.generators) {
        Mat a(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < alg.dim; ++k) {
                const double v = alg.c(g, query.tangent[j], k);
                if (!in_tan[k] && std::abs(v) > tol)
                    throw std::invalid_argument("invariant_forms: generator does not preserve the tangent space");
            }
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) a(i, j) = alg.c(g, query.tangent[j], query.tangent[i]);
        ads.push_back(std::move(a));
    }
    if (ads.empty()) {
        out = Mat::Zero(static_cast<long>(combos.size()), static_cast<long>(selected.size()));
        for (std::size_t c = 0; c < selected.size(); ++c) out(selected[c], static_cast<long>(c)) = 1.0;
        return out;
    }
    const Mat gram = derivation_gram(ads, n, query.degree, selected);
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<int> null;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) <= tol * top) null.push_back(i);
    out = Mat::Zero(static_cast<long>(combos.size()), static_cast<long>(null.size()));
    for (std::size_t c = 0; c < null.size(); ++c) {
        Vec v = es.eigenvectors().col(null[c]);
        // deterministic sign: largest-magnitude coordinate positive
        Eigen::Index arg;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0) v = -v;
        for (std::size_t s = 0; s < selected.size(); ++s) out(selected[s], static_cast<long>(c)) = v[s];
    }
    return out;
}

Mat invariant_forms(const HomogeneousSplit& split, int degree, FormBlock block) {
    FormQuery q = default_form_query(split, block);
    q.degree = degree;
    return invariant_forms(split.algebra, q);
}

std::vector<FourForm> to_four_forms(int n, const Mat& columns) {
    std::vector<FourForm> out;
    for (int c = 0; c < columns.cols(); ++c) out.emplace_back(n, columns.col(c));
    return out;
}

}  // namespace strongcurv
