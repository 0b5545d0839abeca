#pragma once

#include "strongcurv/exterior.hpp"

#include <array>
#include <string>
#include <vector>

namespace strongcurv {

enum class Family { so, su, sp };

/// Real matrix Lie algebra (complex and quaternionic entries realified) with a
/// Q-orthonormal basis, Q(X, Y) = -q_normalization Re tr(XY).
struct LieAlgebraData {
    int dim = 0;
    std::vector<Mat> basis_matrices;  // empty when loaded from structure constants only
    std::vector<double> structure;    // c[i][j][k]: coordinate k of [e_i, e_j]
    double q_normalization = 0.5;
    int field_dim = 1;

    double c(int i, int j, int k) const { return structure[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }
    double& c(int i, int j, int k) { return structure[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }
    Vec bracket(int i, int j) const;
    Vec bracket(const Vec& x, const Vec& y) const;
    /// ad(x) as a matrix: column j holds [x, e_j].
    Mat ad(const Vec& x) const;
    double q(const Mat& a, const Mat& b) const;

    /// Brackets computed from matrices; checks Q-orthonormality and closure.
    static LieAlgebraData from_matrices(std::vector<Mat> mats, int field_dim, double q_normalization,
                                        double tol = 1e-9);
    /// Checks antisymmetry and the Jacobi identity; throws naming the worst triple.
    static LieAlgebraData from_structure(int dim, std::vector<double> structure, double tol = 1e-9);

    double antisymmetry_residual() const;
    struct JacobiDefect {
        double residual;
        std::array<int, 3> triple;
    };
    JacobiDefect jacobi_residual() const;
};

LieAlgebraData build_algebra(Family family, int n);

struct SpaceSpec {
    enum class Kind { sphere, cpn, hpn, w6, w12, w7, b7, b13, berger, hopf_c };
    Kind kind = Kind::sphere;
    int n = 1;
    int k = 1, l = 1;

    static SpaceSpec sphere(int n) { return {Kind::sphere, n, 1, 1}; }
    static SpaceSpec cpn(int n) { return {Kind::cpn, n, 1, 1}; }
    static SpaceSpec hpn(int n) { return {Kind::hpn, n, 1, 1}; }
    static SpaceSpec w6() { return {Kind::w6, 1, 1, 1}; }
    static SpaceSpec w12() { return {Kind::w12, 1, 1, 1}; }
    static SpaceSpec w7(int k, int l) { return {Kind::w7, 1, k, l}; }
    static SpaceSpec b7() { return {Kind::b7, 1, 1, 1}; }
    static SpaceSpec b13() { return {Kind::b13, 1, 1, 1}; }
    /// Sp(n+1) > Sp(n)Sp(1) > Sp(n); total space S^(4n+3).
    static SpaceSpec berger(int n) { return {Kind::berger, n, 1, 1}; }
    /// U(n+1) > U(n)U(1) > U(n); total space S^(2n+1) over CP^n.
    static SpaceSpec hopf_c(int n) { return {Kind::hopf_c, n, 1, 1}; }

    /// Parses names like "w6", "w7", "sphere", "berger7".
    static SpaceSpec parse(const std::string& name, int n, int k, int l);
    std::string name() const;
    bool has_fibration() const;
};

/// H < K < G given by index sets into a Q-orthonormal basis of g; k = h + p, g = k + m.
struct HomogeneousSplit {
    std::string name;
    LieAlgebraData algebra;
    std::vector<int> h, p, m;
    std::vector<std::string> labels;

    std::vector<int> tangent() const;  // m then p
    std::vector<int> k() const;        // h then p
    /// Throws if the index sets do not partition the basis or a reductive condition fails.
    void validate(double tol = 1e-9) const;
    /// Largest coordinate of [m, m] outside k.
    double symmetric_defect() const;
};

HomogeneousSplit build_split(const SpaceSpec& spec);

/// Entry (r, c) holds the coordinates of [e_rows[r], e_cols[c]].
std::vector<std::vector<Vec>> bracket_table(const HomogeneousSplit& split, const std::vector<int>& rows,
                                            const std::vector<int>& cols);

enum class FormBlock { all, mixed, only_m, only_p };

struct FormQuery {
    int degree = 4;
    std::vector<int> tangent;     // algebra indices spanning V, in coordinate order
    std::vector<int> generators;  // algebra indices acting by derivations
    FormBlock block = FormBlock::all;
    std::vector<int> m_part;      // algebra indices counted as m when block != all
};

/// Default query: degree 4 on m + p, generated by h.
FormQuery default_form_query(const HomogeneousSplit& split, FormBlock block = FormBlock::all);

/// Orthonormal basis (columns, over the lexicographic degree-k basis of `tangent`) of the
/// forms annihilated by every generator.
Mat invariant_forms(const LieAlgebraData& alg, const FormQuery& query, double tol = 1e-9);
Mat invariant_forms(const HomogeneousSplit& split, int degree, FormBlock block = FormBlock::all);
std::vector<FourForm> to_four_forms(int n, const Mat& columns);

/// Derivation matrices of the generators stacked, then D^T D restricted to `selected` columns.
Mat derivation_gram(const std::vector<Mat>& ad_blocks, int n, int degree, const std::vector<int>& selected);
Mat derivation_gram_serial(const std::vector<Mat>& ad_blocks, int n, int degree, const std::vector<int>& selected);

std::vector<std::vector<int>> combinations(int n, int k);
int combination_index(int n, const std::vector<int>& sorted);

}  // namespace strongcurv
