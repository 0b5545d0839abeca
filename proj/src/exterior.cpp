#include "strongcurv/exterior.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace strongcurv {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int pair_index(int n, int i, int j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

int quad_index(int n, int a, int b, int c, int d) {
    // lexicographic rank of a combination
    const int q[4] = {a, b, c, d};
    long rank = 0;
    int prev = -1;
    for (int pos = 0; pos < 4; ++pos) {
        for (int v = prev + 1; v < q[pos]; ++v) rank += binomial(n - 1 - v, 3 - pos);
        prev = q[pos];
    }
    return static_cast<int>(rank);
}

int dim_from_pair_count(long count) {
    int n = static_cast<int>(std::lround((1.0 + std::sqrt(1.0 + 8.0 * count)) / 2.0));
    if (static_cast<long>(n) * (n - 1) / 2 != count)
        throw std::invalid_argument("length " + std::to_string(count) + " is not n(n-1)/2");
    return n;
}

Basis2::Basis2(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("Basis2: negative dimension");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs_.push_back({i, j});
}

int Basis2::index(int i, int j) const { return pair_index(n_, i, j); }

Basis4::Basis4(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("Basis4: negative dimension");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) quads_.push_back({a, b, c, d});
}

int Basis4::index(int a, int b, int c, int d) const { return quad_index(n_, a, b, c, d); }

// ---- FourForm

FourForm::FourForm(int n_, Vec c) : n(n_), coords(std::move(c)) {
    if (coords.size() != binomial(n, 4))
        throw std::invalid_argument("FourForm: expected " + std::to_string(binomial(n, 4)) +
                                    " coordinates, got " + std::to_string(coords.size()));
    if (!coords.allFinite()) throw std::invalid_argument("FourForm: non-finite coordinate");
}

FourForm FourForm::zero(int n) { return FourForm(n, Vec::Zero(binomial(n, 4))); }

double FourForm::eval(int a, int b, int c, int d) const {
    std::array<int, 4> idx{a, b, c, d};
    int s = sort_sign(idx);
    if (s == 0) return 0.0;
    return s * coords[quad_index(n, idx[0], idx[1], idx[2], idx[3])];
}

static void require_same(int a, int b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

FourForm FourForm::operator+(const FourForm& o) const {
    require_same(n, o.n, "FourForm +");
    return FourForm(n, coords + o.coords);
}
FourForm FourForm::operator-(const FourForm& o) const {
    require_same(n, o.n, "FourForm -");
    return FourForm(n, coords - o.coords);
}
FourForm FourForm::operator*(double s) const { return FourForm(n, coords * s); }
double FourForm::dot(const FourForm& o) const {
    require_same(n, o.n, "FourForm dot");
    return coords.dot(o.coords);
}

// ---- SymOp

SymOp::SymOp(int n_, const Mat& m) : n(n_) {
    const long sz = binomial(n, 2);
    if (m.rows() != sz || m.cols() != sz)
        throw std::invalid_argument("SymOp: matrix must be " + std::to_string(sz) + " square");
    if (!m.allFinite()) throw std::invalid_argument("SymOp: non-finite entry");
    const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
    const double asym = m.size() ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
    if (asym > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("SymOp: matrix is not symmetric (defect " + std::to_string(asym) + ")");
    mat = 0.5 * (m + m.transpose());
}

SymOp SymOp::identity(int n) { return SymOp(n, Mat::Identity(binomial(n, 2), binomial(n, 2))); }
SymOp SymOp::zero(int n) { return SymOp(n, Mat::Zero(binomial(n, 2), binomial(n, 2))); }

double SymOp::entry(int i, int j, int k, int l) const {
    if (i == j || k == l) return 0.0;
    double s = 1.0;
    if (i > j) { std::swap(i, j); s = -s; }
    if (k > l) { std::swap(k, l); s = -s; }
    return s * mat(pair_index(n, i, j), pair_index(n, k, l));
}

SymOp SymOp::operator+(const SymOp& o) const {
    require_same(n, o.n, "SymOp +");
    return SymOp(n, mat + o.mat);
}
SymOp SymOp::operator-(const SymOp& o) const {
    require_same(n, o.n, "SymOp -");
    return SymOp(n, mat - o.mat);
}
SymOp SymOp::operator*(double s) const { return SymOp(n, mat * s); }

double SymOp::min_eigenvalue() const {
    if (mat.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(mat, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// ---- operations

Vec wedge2(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("wedge2: dimension mismatch");
    const int n = static_cast<int>(x.size());
    Vec out(binomial(n, 2));
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out[k++] = x[i] * y[j] - x[j] * y[i];
    return out;
}

Mat form_to_mat(const FourForm& omega) {
    const int n = omega.n;
    const long sz = binomial(n, 2);
    Mat m = Mat::Zero(sz, sz);
    Basis4 b4(n);
    for (int q = 0; q < b4.size(); ++q) {
        const double c = omega.coords[q];
        if (c == 0.0) continue;
        const auto [a, b, cc, d] = b4[q];
        const int ab = pair_index(n, a, b), cd = pair_index(n, cc, d);
        const int ac = pair_index(n, a, cc), bd = pair_index(n, b, d);
        const int ad = pair_index(n, a, d), bc = pair_index(n, b, cc);
        m(ab, cd) = m(cd, ab) = c;
        m(ac, bd) = m(bd, ac) = -c;
        m(ad, bc) = m(bc, ad) = c;
    }
    return m;
}

SymOp form_to_op(const FourForm& omega) { return SymOp(omega.n, form_to_mat(omega)); }

FourForm bianchi(int n, const Mat& r) {
    Basis4 b4(n);
    Vec out(b4.size());
    for (int q = 0; q < b4.size(); ++q) {
        const auto [a, b, c, d] = b4[q];
        out[q] = (r(pair_index(n, a, b), pair_index(n, c, d)) - r(pair_index(n, a, c), pair_index(n, b, d)) +
                  r(pair_index(n, a, d), pair_index(n, b, c))) / 3.0;
    }
    return FourForm(n, std::move(out));
}

FourForm bianchi(const SymOp& r) { return bianchi(r.n, r.mat); }

SymOp bianchi_project(const SymOp& r) { return SymOp(r.n, r.mat - form_to_mat(bianchi(r))); }

FourForm wedge_forms(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("wedge_forms: dimension mismatch");
    const int n = dim_from_pair_count(a.size());
    Basis4 b4(n);
    Vec out(b4.size());
    // the three ways to split a sorted quad into two sorted pairs, with shuffle signs
    static const int split[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                    {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
    static const double sign[6] = {1, -1, 1, 1, -1, 1};
    for (int q = 0; q < b4.size(); ++q) {
        const auto& idx = b4[q];
        double s = 0.0;
        for (int k = 0; k < 6; ++k) {
            const int p = pair_index(n, idx[split[k][0]], idx[split[k][1]]);
            const int r = pair_index(n, idx[split[k][2]], idx[split[k][3]]);
            s += sign[k] * a[p] * b[r];
        }
        out[q] = s;
    }
    return FourForm(n, std::move(out));
}

FourForm form_from_terms(int n, const std::vector<FormTerm>& terms) {
    Vec c = Vec::Zero(binomial(n, 4));
    for (const auto& t : terms) {
        auto idx = t.idx;
        for (int v : idx)
            if (v < 0 || v >= n) throw std::out_of_range("form_from_terms: index out of range");
        const int s = sort_sign(idx);
        if (s == 0) continue;
        c[quad_index(n, idx[0], idx[1], idx[2], idx[3])] += s * t.coef;
    }
    return FourForm(n, std::move(c));
}

FourForm form_from_terms(int n, std::initializer_list<FormTerm> terms) {
    return form_from_terms(n, std::vector<FormTerm>(terms));
}

Vec two_vector(int n, const std::vector<PairTerm>& terms) {
    Vec v = Vec::Zero(binomial(n, 2));
    for (const auto& t : terms) {
        if (t.i == t.j) continue;
        if (t.i < 0 || t.j < 0 || t.i >= n || t.j >= n) throw std::out_of_range("two_vector: index out of range");
        if (t.i < t.j)
            v[pair_index(n, t.i, t.j)] += t.coef;
        else
            v[pair_index(n, t.j, t.i)] -= t.coef;
    }
    return v;
}

}  // namespace strongcurv
