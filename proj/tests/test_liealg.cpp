#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "strongcurv/liealg.hpp"
#include "strongcurv/reference.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <string>

using namespace strongcurv;

namespace {

// coef * e_label, labels 1-based
struct Term {
    double coef;
    int label;
};
using Entry = std::vector<Term>;

struct Table {
    std::vector<int> rows, cols;              // 1-based labels
    std::vector<std::vector<Entry>> entries;  // entries[r][c]
    double scale = 1.0;                       // table lists scale * [row, col]
};

Vec expected(int dim, const Entry& e) {
    Vec v = Vec::Zero(dim);
    for (const auto& t : e) v[t.label - 1] += t.coef;
    return v;
}

struct Override {
    int row, col;  // 1-based labels
    Entry corrected;
};

// Compares every reference entry; entries listed in `fixes` are checked against the corrected value
// and must differ from the listed one.
void check_table(const HomogeneousSplit& s, const Table& t, const std::vector<Override>& fixes = {}) {
    const int d = s.algebra.dim;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t c = 0; c < t.cols.size(); ++c) {
            const int a = t.rows[r], b = t.cols[c];
            const Vec got = t.scale * s.algebra.bracket(a - 1, b - 1);
            const Vec listed = expected(d, t.entries[r][c]);
            bool fixed = false;
            for (const auto& f : fixes)
                if (f.row == a && f.col == b) {
                    fixed = true;
                    INFO(s.name << " corrected [e" << a << ", e" << b << "]");
                    CHECK((got - expected(d, f.corrected)).cwiseAbs().maxCoeff() < 1e-9);
                    CHECK((got - listed).cwiseAbs().maxCoeff() > 0.5);
                }
            if (fixed) continue;
            INFO(s.name << " [e" << a << ", e" << b << "]");
            CHECK((got - listed).cwiseAbs().maxCoeff() < 1e-9);
        }
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

// Dimension of the common fixed space on Lambda^4 of exp(ad X) for a few random X in h.
int fixed_form_count(const HomogeneousSplit& s, std::mt19937_64& g) {
    const auto tan = s.tangent();
    const int n = static_cast<int>(tan.size());
    const auto quads = oracle::quads(n);
    const long nq = static_cast<long>(quads.size());
    std::vector<Mat> blocks;
    for (int rep = 0; rep < 3; ++rep) {
        Vec x = Vec::Zero(s.algebra.dim);
        for (int i : s.h) x[i] = oracle::random_vec(1, g)[0];
        const Mat ad = s.algebra.ad(x);
        Mat adt(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) adt(i, j) = ad(tan[i], tan[j]);
        const Mat grp = adt.exp();
        Mat induced(nq, nq);
        for (long c = 0; c < nq; ++c)
            for (long r = 0; r < nq; ++r) {
                Mat minor(4, 4);
                for (int u = 0; u < 4; ++u)
                    for (int v = 0; v < 4; ++v) minor(u, v) = grp(quads[r][u], quads[c][v]);
                induced(r, c) = minor.determinant();
            }
        blocks.push_back(induced - Mat::Identity(nq, nq));
    }
    Mat stacked(nq * static_cast<long>(blocks.size()), nq);
    for (std::size_t k = 0; k < blocks.size(); ++k) stacked.middleRows(static_cast<long>(k) * nq, nq) = blocks[k];
    Eigen::JacobiSVD<Mat> svd(stacked);
    const Vec sv = svd.singularValues();
    int count = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv[i] < 1e-8) ++count;
    return count + static_cast<int>(nq - sv.size());
}

double projection_residual(const Mat& basis, const Vec& v) { return (v - basis * (basis.transpose() * v)).norm(); }

}  // namespace

TEST_CASE("classical algebras") {
    const auto su2 = build_algebra(Family::su, 2);
    CHECK(su2.dim == 3);
    const double c = su2.c(0, 1, 2);
    CHECK(std::abs(c) > 0.1);
    CHECK(su2.c(1, 2, 0) == doctest::Approx(c));
    CHECK(su2.c(2, 0, 1) == doctest::Approx(c));
    CHECK(su2.bracket(0, 1).head(2).norm() < 1e-12);

    CHECK(build_algebra(Family::so, 5).dim == 10);
    CHECK(build_algebra(Family::su, 5).dim == 24);
    CHECK(build_algebra(Family::sp, 2).dim == 10);
    for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::so, 5}, {Family::su, 4}, {Family::sp, 2}}) {
        const auto a = build_algebra(f, n);
        CHECK(a.jacobi_residual().residual < 1e-9);
        CHECK(a.antisymmetry_residual() < 1e-12);
        for (int i = 0; i < a.dim; ++i)
            for (int j = 0; j < a.dim; ++j)
                CHECK(a.q(a.basis_matrices[i], a.basis_matrices[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
}

TEST_CASE("built-in splits are valid and reductive") {
    const std::vector<SpaceSpec> specs{SpaceSpec::sphere(4), SpaceSpec::cpn(2), SpaceSpec::hpn(2), SpaceSpec::w6(),
                                       SpaceSpec::w12(), SpaceSpec::w7(1, 1), SpaceSpec::w7(1, 2), SpaceSpec::w7(2, 3),
                                       SpaceSpec::b7(), SpaceSpec::b13(), SpaceSpec::berger(1), SpaceSpec::hopf_c(2)};
    for (const auto& sp : specs) {
        const auto s = build_split(sp);
        INFO(s.name);
        CHECK(s.algebra.jacobi_residual().residual < 1e-9);
        CHECK_NOTHROW(s.validate());
        if (!s.p.empty()) CHECK(s.symmetric_defect() < 1e-9);
        for (std::size_t i = 0; i < s.algebra.basis_matrices.size(); ++i)
            CHECK(s.algebra.q(s.algebra.basis_matrices[i], s.algebra.basis_matrices[i]) == doctest::Approx(1.0));
    }
}

TEST_CASE("split dimensions") {
    const auto w6 = build_split(SpaceSpec::w6());
    CHECK(w6.m.size() == 4);
    CHECK(w6.p.size() == 2);
    const auto b13 = build_split(SpaceSpec::b13());
    CHECK(b13.m.size() == 8);
    CHECK(b13.p.size() == 5);
    const auto b7 = build_split(SpaceSpec::b7());
    CHECK(b7.m.size() == 7);
    CHECK(b7.h.size() == 3);
    CHECK(b7.algebra.q_normalization == doctest::Approx(0.1));
    CHECK(build_split(SpaceSpec::w12()).m.size() == 8);
    CHECK(build_split(SpaceSpec::w12()).p.size() == 4);
    CHECK(build_split(SpaceSpec::w7(1, 1)).p.size() == 3);
    CHECK_THROWS(build_split(SpaceSpec::w7(2, 4)));
    CHECK_THROWS(SpaceSpec::parse("bogus", 1, 1, 1));
}

TEST_CASE("b7 isotropy is irreducible") {
    const auto s = build_split(SpaceSpec::b7());
    const int n = 7;
    // X commutes with every ad(h)|m: (I (x) A - A^T (x) I) vec X = 0
    Mat sys(static_cast<long>(s.h.size()) * n * n, n * n);
    for (std::size_t k = 0; k < s.h.size(); ++k) {
        const Mat ad = s.algebra.ad(Vec::Unit(s.algebra.dim, s.h[k])).topLeftCorner(n, n);
        Mat kron = Mat::Zero(n * n, n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (int u = 0; u < n; ++u) {
                    kron(j * n + i, j * n + u) += ad(i, u);   // (A X)_{ij} with vec index j*n+i
                    kron(j * n + i, u * n + i) -= ad(u, j);   // (X A)_{ij}
                }
            }
        sys.middleRows(static_cast<long>(k) * n * n, n * n) = kron;
    }
    Eigen::JacobiSVD<Mat> svd(sys);
    int null = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] < 1e-9) ++null;
    CHECK(null == 1);
}

TEST_CASE("W6 bracket table") {
    const auto s = build_split(SpaceSpec::w6());
    Table t;
    t.rows = range(1, 4);
    t.cols = {5, 6};
    t.entries = {{{{1, 3}}, {{-1, 4}}},
                 {{{1, 4}}, {{1, 3}}},
                 {{{-1, 1}}, {{-1, 2}}},
                 {{{-1, 2}}, {{1, 1}}}};
    check_table(s, t);
    const auto bt = bracket_table(s, {0}, {4, 5});
    CHECK(bt[0][0][2] == doctest::Approx(1.0));
    CHECK(bt[0][1][3] == doctest::Approx(-1.0));
    CHECK_THROWS(bracket_table(s, {0}, {99}));
}

TEST_CASE("W12 bracket table") {
    const auto s = build_split(SpaceSpec::w12());
    Table t;
    t.rows = range(1, 8);
    t.cols = range(9, 12);
    t.entries = {{{{1, 5}}, {{-1, 6}}, {{-1, 7}}, {{-1, 8}}},
                 {{{1, 6}}, {{1, 5}}, {{1, 8}}, {{-1, 7}}},
                 {{{1, 7}}, {{-1, 8}}, {{1, 5}}, {{1, 6}}},
                 {{{1, 8}}, {{1, 7}}, {{-1, 6}}, {{1, 5}}},
                 {{{-1, 1}}, {{-1, 2}}, {{-1, 3}}, {{-1, 4}}},
                 {{{-1, 2}}, {{1, 1}}, {{1, 4}}, {{-1, 3}}},
                 {{{-1, 3}}, {{-1, 4}}, {{1, 1}}, {{1, 2}}},
                 {{{-1, 4}}, {{1, 3}}, {{-1, 2}}, {{1, 1}}}};
    check_table(s, t);
}

TEST_CASE("W7 bracket table") {
    for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
        const auto s = build_split(SpaceSpec::w7(k, l));
        const double r = static_cast<double>(k) / l, sv = 1 + r + r * r, q = std::sqrt(3 / sv);
        Table t;
        t.rows = range(1, 4);
        t.cols = {5, 6, 7};
        t.entries = {{{{-q, 2}}, {{1, 3}}, {{-1, 4}}},
                     {{{q, 1}}, {{1, 4}}, {{1, 3}}},
                     {{{r * q, 4}}, {{-1, 1}}, {{-1, 2}}},
                     {{{-r * q, 3}}, {{-1, 2}}, {{1, 1}}}};
        check_table(s, t);
    }
}

TEST_CASE("B13 bracket table (sqrt 2 scaled)") {
    const auto s = build_split(SpaceSpec::b13());
    Table t;
    t.rows = range(1, 8);
    t.cols = range(9, 13);
    t.scale = std::sqrt(2.0);
    t.entries = {{{{-1, 2}}, {{1, 5}}, {{-1, 6}}, {{1, 7}}, {{-1, 8}}},
                 {{{1, 1}}, {{1, 6}}, {{1, 5}}, {{1, 8}}, {{1, 7}}},
                 {{{-1, 4}}, {{-1, 9}}, {{-1, 10}}, {{1, 5}}, {{1, 6}}},
                 {{{1, 3}}, {{-1, 8}}, {{1, 7}}, {{1, 6}}, {{-1, 5}}},
                 {{{1, 6}}, {{-1, 1}}, {{-1, 2}}, {{-1, 3}}, {{1, 4}}},
                 {{{-1, 5}}, {{-1, 2}}, {{1, 1}}, {{-1, 4}}, {{-1, 3}}},
                 {{{1, 8}}, {{1, 3}}, {{-1, 4}}, {{-1, 1}}, {{-1, 2}}},
                 {{{-1, 7}}, {{1, 4}}, {{1, 3}}, {{-1, 2}}, {{1, 1}}}};
    // reference row e3 lists -e9, -e10 in columns e10, e11; ad-invariance forces -e7, -e8
    check_table(s, t, {{3, 10, {{-1, 7}}}, {3, 11, {{-1, 8}}}});
}

TEST_CASE("B7 bracket table on m") {
    const auto s = build_split(SpaceSpec::b7());
    const double r6 = std::sqrt(6.0), r52 = std::sqrt(2.5), r32 = std::sqrt(1.5);
    // upper triangle: row e_i lists [e_i, e_j] for j = i+1..7
    const std::vector<std::vector<Entry>> rows = {
        {{{1, 7}}, {{1, 4}, {r6, 10}}, {{-1, 3}, {-1, 9}}, {{-1, 6}}, {{1, 5}, {-r52, 10}}, {{1, 2}, {r52, 8}}},
        {{{-1, 5}}, {{-1, 6}}, {{1, 3}, {-3, 9}}, {{1, 4}, {-r32, 10}}, {{-1, 1}, {-r32, 8}}},
        {{{1, 1}, {-r6, 8}}, {{-1, 2}}, {{1, 7}}, {{-1, 6}}},
        {{{-1, 7}}, {{-1, 2}, {r52, 8}}, {{1, 5}, {r52, 10}}},
        {{{-1, 1}, {-r32, 8}}, {{-1, 4}, {r32, 10}}},
        {{{1, 3}, {2, 9}}}};
    for (int i = 1; i <= 6; ++i) {
        Table t;
        t.rows = {i};
        t.cols = range(i + 1, 7);
        t.entries = {rows[i - 1]};
        std::vector<Override> fixes;
        if (i == 1) fixes.push_back({1, 2, {{-1, 7}}});  // reference lists +e7
        check_table(s, t, fixes);
    }
}

TEST_CASE("from_structure rejects a broken Jacobi identity") {
    auto alg = build_algebra(Family::su, 3);
    std::vector<double> c = alg.structure;
    const int d = alg.dim;
    auto at = [&](int i, int j, int k) -> double& { return c[(static_cast<std::size_t>(i) * d + j) * d + k]; };
    at(0, 1, 2) += 0.5;
    at(1, 0, 2) -= 0.5;
    try {
        LieAlgebraData::from_structure(d, c);
        FAIL("expected a Jacobi failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("Jacobi") != std::string::npos);
        CHECK(std::string(e.what()).find("triple") != std::string::npos);
    }
    at(0, 1, 2) += 0.5;  // now antisymmetry fails
    CHECK_THROWS(LieAlgebraData::from_structure(d, c));
    CHECK_NOTHROW(LieAlgebraData::from_structure(d, alg.structure));
}

TEST_CASE("invariant form counts agree with a group-element fixed-space count") {
    std::mt19937_64 g(31);
    const std::vector<std::pair<SpaceSpec, int>> cases{
        {SpaceSpec::w6(), 3},      {SpaceSpec::w12(), 6},    {SpaceSpec::w7(1, 1), 13}, {SpaceSpec::w7(1, 2), 5},
        {SpaceSpec::w7(2, 3), 5},  {SpaceSpec::b13(), 3},    {SpaceSpec::b7(), 1},      {SpaceSpec::sphere(4), 1},
        {SpaceSpec::sphere(5), 0}, {SpaceSpec::sphere(6), 0}, {SpaceSpec::cpn(2), 1}};
    for (const auto& [spec, count] : cases) {
        const auto s = build_split(spec);
        INFO(s.name);
        const Mat basis = invariant_forms(s, 4);
        CHECK(basis.cols() == count);
        CHECK(fixed_form_count(s, g) == count);
    }
}

TEST_CASE("invariant forms are orthonormal and annihilated by h") {
    for (const auto& spec : {SpaceSpec::w6(), SpaceSpec::w7(1, 2), SpaceSpec::b7(), SpaceSpec::b13()}) {
        const auto s = build_split(spec);
        INFO(s.name);
        const Mat basis = invariant_forms(s, 4);
        const int n = static_cast<int>(s.tangent().size());
        CHECK((basis.transpose() * basis - Mat::Identity(basis.cols(), basis.cols())).norm() < 1e-9);
        // infinitesimal action: (X.w)(a,b,c,d) = -w(Xa,b,c,d) - ... on full tensors
        const auto tan = s.tangent();
        for (int hi : s.h) {
            const Mat ad = s.algebra.ad(Vec::Unit(s.algebra.dim, hi));
            Mat adt(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) adt(i, j) = ad(tan[i], tan[j]);
            for (long c = 0; c < basis.cols(); ++c) {
                const auto t = oracle::full_form(n, basis.col(c));
                double worst = 0;
                for (const auto& q : oracle::quads(n)) {
                    double v = 0;
                    for (int u = 0; u < n; ++u)
                        v += adt(u, q[0]) * t.at(u, q[1], q[2], q[3]) + adt(u, q[1]) * t.at(q[0], u, q[2], q[3]) +
                             adt(u, q[2]) * t.at(q[0], q[1], u, q[3]) + adt(u, q[3]) * t.at(q[0], q[1], q[2], u);
                    worst = std::max(worst, std::abs(v));
                }
                CHECK(worst < 1e-9);
            }
        }
    }
}

TEST_CASE("known certificate forms lie in the invariant subspaces") {
    {
        const auto s = build_split(SpaceSpec::w6());
        const Mat mixed = invariant_forms(s, 4, FormBlock::mixed);
        const FourForm tau = form_from_terms(6, {{1, {0, 1, 4, 5}}, {-1, {2, 3, 4, 5}}});
        REQUIRE(mixed.rows() == tau.coords.size());
        CHECK(projection_residual(mixed, tau.coords) < 1e-9);
    }
    {
        const auto s = build_split(SpaceSpec::b7());
        const auto ref = reference_case(SpaceSpec::b7());
        REQUIRE(ref);
        const Mat inv = invariant_forms(s, 4);
        CHECK(ref->form.norm() > 0);
        CHECK(projection_residual(inv, ref->form.coords) < 1e-9 * ref->form.norm());
    }
    for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
        const auto s = build_split(SpaceSpec::w7(k, l));
        const Mat mixed = invariant_forms(s, 4, FormBlock::mixed);
        CHECK(projection_residual(mixed, w7_tau(0.7, -0.3).coords) < 1e-9);
    }
}

TEST_CASE("degree-2 invariants: the Kahler form of CP^2") {
    const auto s = build_split(SpaceSpec::cpn(2));
    const Mat two = invariant_forms(s, 2);
    CHECK(two.cols() == 1);
    const Vec kahler = two_vector(4, {{1, 0, 1}, {1, 2, 3}}).normalized();
    CHECK(std::abs(std::abs(two.col(0).dot(kahler)) - 1.0) < 1e-9);
}

TEST_CASE("combinations") {
    const auto c = combinations(6, 4);
    CHECK(c.size() == 15);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(combination_index(6, c[i]) == static_cast<int>(i));
    CHECK(combinations(3, 4).empty());
}
