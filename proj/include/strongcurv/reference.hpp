#pragma once

#include "strongcurv/exterior.hpp"
#include "strongcurv/liealg.hpp"

#include <optional>
#include <vector>

namespace strongcurv {

/// Published kernel vectors and certificate forms, labels e1..ed in the split's tangent order.
struct ReferenceCase {
    Mat kernel;     // columns: over m (x) p in fatness_ops order, or over Lambda^2 m for b7
    FourForm form;  // tau on m + p, or omega on m for b7
};

/// Available for w6, w12, b13, b7 and w7 (with the form at a = 1, b = -1).
std::optional<ReferenceCase> reference_case(const SpaceSpec& spec);

/// tau_{a,b} on W7_{k,l}.
FourForm w7_tau(double a, double b);
/// a > 0, a - r a^2 / (4 sqrt s) > 0 and b + b^2 / (4 sqrt s) < 0, with r = k/l, s = 1 + r + r^2.
bool w7_tau_admissible(int k, int l, double a, double b);

/// Items "a b c d" separated by ';' meaning sign(a) e_|a| ^ e_b + e_c ^ e_d (1-based).
std::vector<std::vector<PairTerm>> parse_kernel_list(const char* text);

}  // namespace strongcurv
