#pragma once

#include <Eigen/Dense>

#include <array>
#include <initializer_list>
#include <utility>
#include <vector>

namespace strongcurv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

long binomial(int n, int k);

/// Lexicographic basis e_i ^ e_j (i < j) of the 2-vectors over R^n.
class Basis2 {
public:
    explicit Basis2(int n);
    int n() const { return n_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    const std::vector<std::array<int, 2>>& pairs() const { return pairs_; }
    const std::array<int, 2>& operator[](int k) const { return pairs_[k]; }
    /// Index of the sorted pair (i, j), i < j.
    int index(int i, int j) const;

private:
    int n_;
    std::vector<std::array<int, 2>> pairs_;
};

/// Lexicographic basis e_a ^ e_b ^ e_c ^ e_d (a < b < c < d).
class Basis4 {
public:
    explicit Basis4(int n);
    int n() const { return n_; }
    int size() const { return static_cast<int>(quads_.size()); }
    const std::vector<std::array<int, 4>>& quads() const { return quads_; }
    const std::array<int, 4>& operator[](int k) const { return quads_[k]; }
    /// Index of a strictly increasing quad.
    int index(int a, int b, int c, int d) const;

private:
    int n_;
    std::vector<std::array<int, 4>> quads_;
};

int pair_index(int n, int i, int j);
int quad_index(int n, int a, int b, int c, int d);
/// n such that n(n-1)/2 == count; throws if none.
int dim_from_pair_count(long count);

/// Sign of the permutation sorting `idx`, or 0 when an index repeats.
template <std::size_t K>
int sort_sign(std::array<int, K>& idx) {
    int s = 1;
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) { std::swap(idx[i], idx[j]); s = -s; }
        }
    return s;
}

struct FourForm {
    int n = 0;
    Vec coords;

    FourForm() = default;
    FourForm(int n_, Vec c);
    static FourForm zero(int n);
    /// omega(e_a, e_b, e_c, e_d) for arbitrary indices.
    double eval(int a, int b, int c, int d) const;
    FourForm operator+(const FourForm& o) const;
    FourForm operator-(const FourForm& o) const;
    FourForm operator*(double s) const;
    double dot(const FourForm& o) const;
    double norm() const { return coords.norm(); }
};
inline FourForm operator*(double s, const FourForm& f) { return f * s; }

struct SymOp {
    int n = 0;
    Mat mat;

    SymOp() = default;
    /// Symmetrizes `m`; throws if the asymmetry exceeds 1e-12 relative or entries are not finite.
    SymOp(int n_, const Mat& m);
    static SymOp identity(int n);
    static SymOp zero(int n);
    int size() const { return static_cast<int>(mat.rows()); }
    double entry(int i, int j, int k, int l) const;  // <R(e_i^e_j), e_k^e_l>, any order
    SymOp operator+(const SymOp& o) const;
    SymOp operator-(const SymOp& o) const;
    SymOp operator*(double s) const;
    double min_eigenvalue() const;
};
inline SymOp operator*(double s, const SymOp& r) { return r * s; }

/// Coordinates of x ^ y.
Vec wedge2(const Vec& x, const Vec& y);

/// The operator <M(e_i^e_j), e_k^e_l> = omega(e_i, e_j, e_k, e_l).
SymOp form_to_op(const FourForm& omega);
Mat form_to_mat(const FourForm& omega);

FourForm bianchi(const SymOp& r);
FourForm bianchi(int n, const Mat& r);
SymOp bianchi_project(const SymOp& r);

/// Exterior product of two 2-forms.
FourForm wedge_forms(const Vec& a, const Vec& b);

struct FormTerm {
    double coef;
    std::array<int, 4> idx;  // 0-based, any order
};
FourForm form_from_terms(int n, std::initializer_list<FormTerm> terms);
FourForm form_from_terms(int n, const std::vector<FormTerm>& terms);

struct PairTerm {
    double coef;
    int i, j;  // 0-based, any order
};
Vec two_vector(int n, const std::vector<PairTerm>& terms);

/// tr(form_to_op(w) form_to_op(h)) / <w, h>, the same for every n.
constexpr double kFormIsometry = 6.0;

}  // namespace strongcurv
