#pragma once

#include "strongcurv/exterior.hpp"

#include <cstdint>

namespace strongcurv {

/// Orthonormal pair spanning a 2-plane.
struct Plane {
    Vec x, y;
    /// Throws unless |x| = |y| = 1 and <x, y> = 0 within `tol`.
    static Plane make(Vec x, Vec y, double tol = 1e-9);
    /// Gram-Schmidt on (u, v).
    static Plane span(const Vec& u, const Vec& v);
    Vec bivector() const { return wedge2(x, y); }
};

double sec(const SymOp& r, const Plane& p);

struct MinSec {
    double value;
    Plane plane;
};

/// Best local minimum of sec over restarts of projected gradient descent on orthonormal frames.
/// Restart k draws from a generator seeded by (seed, k); the reduction is by restart index.
MinSec min_sec_estimate(const SymOp& r, int restarts, std::uint64_t seed);
MinSec min_sec_estimate_serial(const SymOp& r, int restarts, std::uint64_t seed);

/// Gauss-Bonnet integrand: sum over sigma, tau in S_n of sgn sgn prod_{i<n/2} R(e_s(2i)^e_s(2i+1), e_t(2i)^e_t(2i+1)).
/// Only n in {2, 4, 6}.
double gauss_bonnet(const SymOp& r);
double gauss_bonnet_serial(const SymOp& r);

/// Columns wedge2(w_a, w_b) for a < b: the map Lambda^2 W -> Lambda^2 V.
Mat wedge_embedding(const Mat& w);

/// Compression of r to Lambda^2 of span(w); w has orthonormal columns.
SymOp restrict_to(const SymOp& r, const Mat& w, double tol = 1e-9);
FourForm pullback(const FourForm& omega, const Mat& w, double tol = 1e-9);

}  // namespace strongcurv
