#pragma once

#include "strongcurv/exterior.hpp"
#include "strongcurv/liealg.hpp"

#include <vector>

namespace strongcurv {

enum class Coset { GH, GK, KH };

struct NormalHomogeneous {
    SymOp r;
    SymOp alpha;
    std::vector<int> tangent;  // algebra indices, coordinate order
};

/// Normal homogeneous curvature operator of the chosen coset, with alpha = A*A of G -> G/H.
NormalHomogeneous normal_homogeneous(const HomogeneousSplit& split, Coset coset);

/// A of a Riemannian submersion as a matrix: rows over Basis2(horizontal), columns over an
/// orthonormal vertical basis.
struct ATensor {
    int n = 0;  // horizontal dimension
    Mat map;
    SymOp alpha() const;
};

/// R = Rbar + 3 alpha - 3 b(alpha), with Rbar already restricted to horizontal 2-vectors.
SymOp oneill(const SymOp& r_total, const ATensor& a);

/// A_X Y = 1/2 [X, Y] projected to `vertical`. Horizontal basis vectors are e_i * h_scale[i];
/// the vertical metric is v_scale * Q.
ATensor bracket_a_tensor(const LieAlgebraData& alg, const std::vector<int>& horizontal, const Vec& h_scale,
                         const std::vector<int>& vertical, double v_scale);

/// A-tensor of G/H -> G/K when the fibre K/H is scaled by t (Hopf fibrations at t = 2).
ATensor fibration_a_tensor(const HomogeneousSplit& split, double t);

/// Curvature operator of (G, Q|m + t Q|k), t = 1/(1+s), over all of g in algebra index order,
/// in an orthonormal frame (k directions divided by sqrt(t)). s > 0.
SymOp cheeger(const LieAlgebraData& alg, const std::vector<int>& k_idx, double s);
SymOp cheeger(const HomogeneousSplit& split, double s);

struct WallachOperator {
    double t = 1.0;
    int nm = 0, np = 0;
    SymOp op;  // R_t over Lambda^2(m + p), g_t-orthonormal frame
    SymOp alpha1, alpha2;
    FourForm b_alpha1, b_alpha2;
    SymOp rhat;  // op + 3 b(alpha1) + 3 b(alpha2)

    std::vector<int> pairs_mm() const;
    std::vector<int> pairs_pp() const;
    std::vector<int> pairs_mp() const;  // ordered (i, a), i over m, a over p
    Mat block(const std::vector<int>& rows, const std::vector<int>& cols) const;
    Mat block11() const { return block(pairs_mm(), pairs_mm()); }
    Mat block22() const { return block(pairs_pp(), pairs_pp()); }
    Mat block33() const { return block(pairs_mp(), pairs_mp()); }
};

/// Fibre-scaled metric g_t on G/H; valid for every t > 0.
WallachOperator wallach(const HomogeneousSplit& split, double t);

struct FatnessOps {
    Mat L;  // m (x) p -> m
    Mat F;  // L^T L on m (x) p
    std::vector<std::array<int, 2>> index;  // (i, a) tangent positions for each column
};

FatnessOps fatness_ops(const HomogeneousSplit& split);

/// Indices of the pairs (i, a), i < nm <= a, inside Basis2(nm + np).
std::vector<int> mixed_pairs(int nm, int np);
Mat submatrix(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace strongcurv
