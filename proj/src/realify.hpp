#pragma once

#include "strongcurv/exterior.hpp"

#include <array>
#include <map>
#include <utility>

namespace strongcurv::detail {

// Real block of a scalar in R (f = 1), C (f = 2) or H (f = 4), acting by left multiplication.
inline Mat unit_block(const std::array<double, 4>& v, int f) {
    const double a = v[0], b = v[1], c = v[2], d = v[3];
    Mat m(f, f);
    if (f == 1) {
        m << a;
    } else if (f == 2) {
        m << a, -b, b, a;
    } else {
        m << a, -b, -c, -d,
             b, a, -d, c,
             c, d, a, -b,
             d, -c, b, a;
    }
    return m;
}

inline std::array<double, 4> conj(const std::array<double, 4>& v) { return {v[0], -v[1], -v[2], -v[3]}; }
inline std::array<double, 4> scaled(const std::array<double, 4>& v, double s) {
    return {v[0] * s, v[1] * s, v[2] * s, v[3] * s};
}
inline std::array<double, 4> neg(const std::array<double, 4>& v) { return scaled(v, -1.0); }

using Entries = std::map<std::pair<int, int>, std::array<double, 4>>;

inline Mat realify(const Entries& entries, int n, int f) {
    Mat m = Mat::Zero(n * f, n * f);
    for (const auto& [ij, v] : entries) m.block(ij.first * f, ij.second * f, f, f) += unit_block(v, f);
    return m;
}

// Skew-Hermitian matrix with X[i,j] = v and X[j,i] = -conj(v).
inline Mat offdiag(int n, int i, int j, const std::array<double, 4>& v, int f) {
    Entries e;
    e[{i, j}] = v;
    e[{j, i}] = neg(conj(v));
    return realify(e, n, f);
}

inline Mat diag_entry(int n, int i, const std::array<double, 4>& v, int f) {
    Entries e;
    e[{i, i}] = v;
    return realify(e, n, f);
}

inline std::array<double, 4> unit(int q) {
    std::array<double, 4> v{0, 0, 0, 0};
    v[q] = 1.0;
    return v;
}

}  // namespace strongcurv::detail
