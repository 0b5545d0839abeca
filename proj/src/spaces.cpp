#include "strongcurv/liealg.hpp"

#include "realify.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace strongcurv {

using detail::diag_entry;
using detail::offdiag;
using detail::realify;
using detail::scaled;
using detail::unit;

namespace {

const std::array<double, 4> kRe{1, 0, 0, 0};
const std::array<double, 4> kIm{0, 1, 0, 0};

// Extend a Q-orthonormal list by Gram-Schmidt over candidate matrices.
std::vector<Mat> complete(std::vector<Mat> given, const std::vector<Mat>& candidates, int f, double qn) {
    auto q = [&](const Mat& a, const Mat& b) { return -qn / f * (a * b).trace(); };
    for (const Mat& c : candidates) {
        Mat v = c;
        for (const Mat& o : given) v -= q(v, o) * o;
        for (const Mat& o : given) v -= q(v, o) * o;
        const double nv = q(v, v);
        if (nv > 1e-12) given.push_back(v / std::sqrt(nv));
    }
    return given;
}

HomogeneousSplit assemble(std::string name, const std::vector<Mat>& m, const std::vector<Mat>& p,
                          const std::vector<Mat>& h, int f, double qn) {
    std::vector<Mat> all(m);
    all.insert(all.end(), p.begin(), p.end());
    all.insert(all.end(), h.begin(), h.end());
    HomogeneousSplit s;
    s.name = std::move(name);
    s.algebra = LieAlgebraData::from_matrices(std::move(all), f, qn);
    const int nm = static_cast<int>(m.size()), np = static_cast<int>(p.size()), nh = static_cast<int>(h.size());
    for (int i = 0; i < nm; ++i) s.m.push_back(i);
    for (int i = 0; i < np; ++i) s.p.push_back(nm + i);
    for (int i = 0; i < nh; ++i) s.h.push_back(nm + np + i);
    for (int i = 0; i < s.algebra.dim; ++i) s.labels.push_back("e" + std::to_string(i + 1));
    s.validate();
    return s;
}

// Last column of an n x n skew-Hermitian matrix over a field of dimension f.
std::vector<Mat> column_directions(int n, int f) {
    std::vector<Mat> m;
    for (int i = 0; i < n - 1; ++i)
        for (int q = 0; q < f; ++q) m.push_back(offdiag(n, i, n - 1, unit(q), f));
    return m;
}

HomogeneousSplit sphere(int n) {
    if (n < 2) throw std::invalid_argument("sphere: n must be >= 2");
    const int N = n + 1;
    std::vector<Mat> m = column_directions(N, 1), h;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) h.push_back(offdiag(N, i, j, kRe, 1));
    return assemble("sphere" + std::to_string(n), m, {}, h, 1, 0.5);
}

HomogeneousSplit cpn(int n) {
    if (n < 1) throw std::invalid_argument("cpn: n must be >= 1");
    const int N = n + 1;
    std::vector<Mat> m = column_directions(N, 2);
    const auto su = build_algebra(Family::su, N);
    std::vector<Mat> all = complete(m, su.basis_matrices, 2, 0.5);
    std::vector<Mat> h(all.begin() + static_cast<long>(m.size()), all.end());
    return assemble("cpn" + std::to_string(n), m, {}, h, 2, 0.5);
}

// sp(n) in the upper-left block of sp(n+1)
std::vector<Mat> sp_upper(int n) {
    const int N = n + 1;
    std::vector<Mat> h;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int q = 0; q < 4; ++q) h.push_back(offdiag(N, i, j, unit(q), 4));
    for (int i = 0; i < n; ++i)
        for (int q = 1; q < 4; ++q) h.push_back(diag_entry(N, i, scaled(unit(q), std::sqrt(2.0)), 4));
    return h;
}

std::vector<Mat> sp_last(int n) {
    std::vector<Mat> p;
    for (int q = 1; q < 4; ++q) p.push_back(diag_entry(n + 1, n, scaled(unit(q), std::sqrt(2.0)), 4));
    return p;
}

HomogeneousSplit hpn(int n) {
    if (n < 1) throw std::invalid_argument("hpn: n must be >= 1");
    std::vector<Mat> h = sp_upper(n);
    const auto last = sp_last(n);
    h.insert(h.end(), last.begin(), last.end());
    return assemble("hpn" + std::to_string(n), column_directions(n + 1, 4), {}, h, 4, 0.5);
}

HomogeneousSplit berger(int n) {
    if (n < 1) throw std::invalid_argument("berger: n must be >= 1");
    return assemble("berger" + std::to_string(4 * n + 3), column_directions(n + 1, 4), sp_last(n),
                    sp_upper(n), 4, 0.5);
}

HomogeneousSplit hopf_c(int n) {
    if (n < 1) throw std::invalid_argument("hopf-c: n must be >= 1");
    const int N = n + 1;
    std::vector<Mat> h;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            h.push_back(offdiag(N, i, j, kRe, 2));
            h.push_back(offdiag(N, i, j, kIm, 2));
        }
    for (int i = 0; i < n; ++i) h.push_back(diag_entry(N, i, scaled(kIm, std::sqrt(2.0)), 2));
    std::vector<Mat> p{diag_entry(N, n, scaled(kIm, std::sqrt(2.0)), 2)};
    return assemble("hopf-c" + std::to_string(n), column_directions(N, 2), p, h, 2, 0.5);
}

Mat imaginary_diag(const std::vector<double>& v) {
    detail::Entries e;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] != 0.0) e[{i, i}] = {0, v[i], 0, 0};
    return realify(e, static_cast<int>(v.size()), 2);
}

std::vector<Mat> su3_coset() {
    return {offdiag(3, 0, 2, kRe, 2), offdiag(3, 0, 2, kIm, 2), offdiag(3, 1, 2, kRe, 2), offdiag(3, 1, 2, kIm, 2)};
}

HomogeneousSplit w6() {
    const double r3 = std::sqrt(3.0);
    std::vector<Mat> p{offdiag(3, 0, 1, kRe, 2), offdiag(3, 0, 1, kIm, 2)};
    std::vector<Mat> h{imaginary_diag({1, -1, 0}), imaginary_diag({1 / r3, 1 / r3, -2 / r3})};
    return assemble("w6", su3_coset(), p, h, 2, 0.5);
}

HomogeneousSplit w7(int k, int l) {
    if (k == 0 || l == 0 || k + l == 0) throw std::invalid_argument("w7: need k l (k + l) != 0");
    if (std::gcd(k, l) != 1) throw std::invalid_argument("w7: need gcd(k, l) = 1");
    const double r = static_cast<double>(k) / l, s = 1 + r + r * r, c = std::sqrt(3 * s);
    std::vector<Mat> p{imaginary_diag({(2 + r) / c, -(2 * r + 1) / c, (r - 1) / c}), offdiag(3, 0, 1, kRe, 2),
                       offdiag(3, 0, 1, kIm, 2)};
    Mat hh = imaginary_diag({double(k), double(l), double(-(k + l))});
    hh /= std::sqrt(-0.25 * (hh * hh).trace());
    return assemble("w7_" + std::to_string(k) + "_" + std::to_string(l), su3_coset(), p, {hh}, 2, 0.5);
}

HomogeneousSplit w12() {
    std::vector<Mat> m, p, h;
    for (int q = 0; q < 4; ++q) m.push_back(offdiag(3, 0, 2, unit(q), 4));
    for (int q = 0; q < 4; ++q) m.push_back(offdiag(3, 1, 2, unit(q), 4));
    for (int q = 0; q < 4; ++q) p.push_back(offdiag(3, 0, 1, unit(q), 4));
    for (int i = 0; i < 3; ++i)
        for (int q = 1; q < 4; ++q) h.push_back(diag_entry(3, i, scaled(unit(q), std::sqrt(2.0)), 4));
    return assemble("w12", m, p, h, 4, 0.5);
}

HomogeneousSplit b13() {
    const int n = 5;
    const double s2 = 1 / std::sqrt(2.0);
    std::vector<Mat> m;
    for (int a = 0; a < 4; ++a) {
        m.push_back(offdiag(n, a, 4, kRe, 2));
        m.push_back(offdiag(n, a, 4, kIm, 2));
    }
    auto cj = [](std::array<double, 4> v) { return detail::conj(v); };
    auto wmat = [&](std::array<double, 4> w1, std::array<double, 4> w2) {
        detail::Entries e;
        e[{0, 2}] = scaled(w1, s2);
        e[{0, 3}] = scaled(w2, s2);
        e[{1, 2}] = scaled(cj(w2), s2);
        e[{1, 3}] = scaled(cj(w1), -s2);
        e[{2, 0}] = scaled(cj(w1), -s2);
        e[{2, 1}] = scaled(w2, -s2);
        e[{3, 0}] = scaled(cj(w2), -s2);
        e[{3, 1}] = scaled(w1, s2);
        return realify(e, n, 2);
    };
    const std::array<double, 4> z{0, 0, 0, 0};
    std::vector<Mat> p{imaginary_diag({s2, s2, -s2, -s2, 0}), wmat(kRe, z), wmat(kIm, z), wmat(z, kRe),
                       wmat(z, kIm)};
    std::vector<Mat> mp(m);
    mp.insert(mp.end(), p.begin(), p.end());
    const auto su = build_algebra(Family::su, n);
    const auto all = complete(mp, su.basis_matrices, 2, 0.5);
    std::vector<Mat> h(all.begin() + static_cast<long>(mp.size()), all.end());
    return assemble("b13", m, p, h, 2, 0.5);
}

HomogeneousSplit b7() {
    const double s5 = std::sqrt(5.0), s2 = std::sqrt(2.0), a = std::sqrt(1.5), b = std::sqrt(2.5);
    auto mvec = [&](int which) {
        double x[7] = {0, 0, 0, 0, 0, 0, 0};
        x[which] = 1.0;
        Mat u = Mat::Zero(5, 5);
        u(0, 1) = s5 * x[6];
        u(0, 2) = s2 * x[0];
        u(0, 3) = s5 * x[5];
        u(0, 4) = s2 * x[3];
        u(1, 2) = -a * x[0] + b * x[1];
        u(1, 3) = x[2];
        u(1, 4) = a * x[3] + b * x[4];
        u(2, 3) = a * x[3] - b * x[4];
        u(2, 4) = -2 * x[2];
        u(3, 4) = -a * x[0] - b * x[1];
        return Mat(u - u.transpose());
    };
    std::vector<Mat> m;
    for (int i = 0; i < 7; ++i) m.push_back(mvec(i));
    std::vector<Mat> so5;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) so5.push_back(s5 * offdiag(5, i, j, kRe, 1));
    const auto all = complete(m, so5, 1, 0.1);
    const std::vector<Mat> hraw(all.begin() + 7, all.end());
    auto q = [](const Mat& x, const Mat& y) { return -0.1 * (x * y).trace(); };
    auto hproj = [&](const Mat& x) {
        Mat out = Mat::Zero(5, 5);
        for (const Mat& o : hraw) out += q(x, o) * o;
        return out;
    };
    auto br = [](const Mat& x, const Mat& y) { return Mat(x * y - y * x); };
    const double s6 = std::sqrt(6.0);
    std::vector<Mat> h{-hproj(br(m[2], m[3])) / s6, -hproj(br(m[0], m[3])), hproj(br(m[0], m[2])) / s6};
    return assemble("b7", m, {}, h, 1, 0.1);
}

}  // namespace

HomogeneousSplit build_split(const SpaceSpec& spec) {
    using K = SpaceSpec::Kind;
    switch (spec.kind) {
        case K::sphere: return sphere(spec.n);
        case K::cpn: return cpn(spec.n);
        case K::hpn: return hpn(spec.n);
        case K::w6: return w6();
        case K::w12: return w12();
        case K::w7: return w7(spec.k, spec.l);
        case K::b7: return b7();
        case K::b13: return b13();
        case K::berger: return berger(spec.n);
        case K::hopf_c: return hopf_c(spec.n);
    }
    throw std::invalid_argument("unknown space");
}

SpaceSpec SpaceSpec::parse(const std::string& name, int n, int k, int l) {
    if (name == "sphere") return sphere(n);
    if (name == "cpn") return cpn(n);
    if (name == "hpn") return hpn(n);
    if (name == "w6") return w6();
    if (name == "w12") return w12();
    if (name == "w7") return w7(k, l);
    if (name == "b7") return b7();
    if (name == "b13") return b13();
    if (name == "berger") return berger(n);
    if (name == "berger7") return berger(1);
    if (name == "hopf-c") return hopf_c(n);
    throw std::invalid_argument("unknown space '" + name + "'");
}

std::string SpaceSpec::name() const {
    switch (kind) {
        case Kind::sphere: return "sphere";
        case Kind::cpn: return "cpn";
        case Kind::hpn: return "hpn";
        case Kind::w6: return "w6";
        case Kind::w12: return "w12";
        case Kind::w7: return "w7";
        case Kind::b7: return "b7";
        case Kind::b13: return "b13";
        case Kind::berger: return n == 1 ? "berger7" : "berger";
        case Kind::hopf_c: return "hopf-c";
    }
    return "?";
}

bool SpaceSpec::has_fibration() const {
    switch (kind) {
        case Kind::w6:
        case Kind::w12:
        case Kind::w7:
        case Kind::b13:
        case Kind::berger:
        case Kind::hopf_c: return true;
        default: return false;
    }
}

}  // namespace strongcurv
