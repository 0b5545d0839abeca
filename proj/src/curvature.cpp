#include "strongcurv/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace strongcurv {

Plane Plane::make(Vec x, Vec y, double tol) {
    if (x.size() != y.size()) throw std::invalid_argument("Plane: dimension mismatch");
    if (std::abs(x.norm() - 1.0) > tol || std::abs(y.norm() - 1.0) > tol || std::abs(x.dot(y)) > tol)
        throw std::invalid_argument("Plane: pair is not orthonormal");
    return Plane{std::move(x), std::move(y)};
}

Plane Plane::span(const Vec& u, const Vec& v) {
    Vec x = u.normalized();
    Vec y = v - x * x.dot(v);
    const double ny = y.norm();
    if (!(ny > 1e-14)) throw std::invalid_argument("Plane: vectors are parallel");
    return Plane{x, y / ny};
}

double sec(const SymOp& r, const Plane& p) {
    if (p.x.size() != r.n) throw std::invalid_argument("sec: plane dimension mismatch");
    const Vec s = p.bivector();
    return s.dot(r.mat * s);
}

namespace {

double frame_value(const Mat& rm, const Vec& x, const Vec& y) {
    const Vec s = wedge2(x, y);
    return s.dot(rm * s);
}

bool orthonormalize(Vec& x, Vec& y) {
    const double nx = x.norm();
    if (!(nx > 1e-300)) return false;
    x /= nx;
    y -= x * x.dot(y);
    const double ny = y.norm();
    if (!(ny > 1e-300)) return false;
    y /= ny;
    return true;
}

MinSec descend(const SymOp& r, std::uint64_t seed, int restart) {
    const int n = r.n;
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(restart + 1)));
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec x(n), y(n);
    do {
        for (int i = 0; i < n; ++i) x[i] = normal(rng);
        for (int i = 0; i < n; ++i) y[i] = normal(rng);
    } while (!orthonormalize(x, y));

    const Mat& rm = r.mat;
    const double scale = std::max(rm.cwiseAbs().maxCoeff(), 1e-300);
    double f = frame_value(rm, x, y);
    double step = 0.25 / scale;
    Mat g(n, n);
    for (int it = 0; it < 200; ++it) {
        const Vec grad = 2.0 * (rm * wedge2(x, y));
        g.setZero();
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                g(i, j) = grad[k];
                g(j, i) = -grad[k];
                ++k;
            }
        Vec gx = g * y;
        Vec gy = -(g * x);
        gx -= x * x.dot(gx) + y * y.dot(gx);
        gy -= x * x.dot(gy) + y * y.dot(gy);
        const double gn2 = gx.squaredNorm() + gy.squaredNorm();
        if (gn2 < 1e-28 * scale * scale) break;

        step *= 2.0;
        double fnew = f;
        Vec xn, yn;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            xn = x - step * gx;
            yn = y - step * gy;
            if (orthonormalize(xn, yn)) {
                fnew = frame_value(rm, xn, yn);
                if (fnew <= f - 1e-4 * step * gn2) { accepted = true; break; }
            }
            step *= 0.5;
        }
        if (!accepted) break;
        const double decrease = f - fnew;
        x = xn;
        y = yn;
        f = fnew;
        if (decrease < 1e-10 * std::max(1.0, scale)) break;
    }
    return MinSec{f, Plane{x, y}};
}

MinSec reduce_by_index(std::vector<MinSec>& runs) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k)
        if (runs[k].value < runs[best].value) best = k;
    return runs[best];
}

}  // namespace

MinSec min_sec_estimate(const SymOp& r, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("min_sec_estimate: restarts must be >= 1");
    if (r.n < 2) throw std::invalid_argument("min_sec_estimate: dimension must be >= 2");
    std::vector<MinSec> runs(restarts, MinSec{0.0, Plane{}});
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < restarts; ++k) runs[k] = descend(r, seed, k);
    return reduce_by_index(runs);
}

MinSec min_sec_estimate_serial(const SymOp& r, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("min_sec_estimate: restarts must be >= 1");
    if (r.n < 2) throw std::invalid_argument("min_sec_estimate: dimension must be >= 2");
    std::vector<MinSec> runs;
    runs.reserve(restarts);
    for (int k = 0; k < restarts; ++k) runs.push_back(descend(r, seed, k));
    return reduce_by_index(runs);
}

// ---- Gauss-Bonnet

namespace {

struct Matching {
    std::vector<int> pair_idx;  // index of each sorted pair, in sequence order
    int sign;
};

// Ordered sequences of sorted pairs partitioning {0..n-1}, with the sign of the concatenation.
std::vector<Matching> ordered_matchings(int n) {
    std::vector<Matching> out;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool sorted = true;
        for (int i = 0; i < n; i += 2)
            if (perm[i] > perm[i + 1]) { sorted = false; break; }
        if (!sorted) continue;
        const std::vector<int>& p = perm;
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        Matching m;
        m.sign = (inv % 2) ? -1 : 1;
        for (int i = 0; i < n; i += 2) m.pair_idx.push_back(pair_index(n, p[i], p[i + 1]));
        out.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

void check_gb_dim(int n) {
    if (n % 2 != 0) throw std::invalid_argument("gauss_bonnet: dimension must be even");
    if (n > 6 || n < 2) throw std::invalid_argument("gauss_bonnet: dimension must be 2, 4 or 6");
}

double matching_row(const Mat& rm, const Matching& s, const std::vector<Matching>& all) {
    double acc = 0.0;
    for (const auto& t : all) {
        double prod = 1.0;
        for (std::size_t i = 0; i < s.pair_idx.size(); ++i) prod *= rm(s.pair_idx[i], t.pair_idx[i]);
        acc += t.sign * prod;
    }
    return s.sign * acc;
}

}  // namespace

double gauss_bonnet(const SymOp& r) {
    check_gb_dim(r.n);
    const auto all = ordered_matchings(r.n);
    std::vector<double> rows(all.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < static_cast<long>(all.size()); ++k) rows[k] = matching_row(r.mat, all[k], all);
    double total = 0.0;
    for (double v : rows) total += v;
    return std::pow(4.0, r.n / 2) * total;
}

double gauss_bonnet_serial(const SymOp& r) {
    check_gb_dim(r.n);
    const auto all = ordered_matchings(r.n);
    double total = 0.0;
    for (const auto& s : all) total += matching_row(r.mat, s, all);
    return std::pow(4.0, r.n / 2) * total;
}

// ---- restriction

namespace {
void check_orthonormal(const Mat& w, int n, double tol) {
    if (w.rows() != n) throw std::invalid_argument("restrict: subspace basis has wrong ambient dimension");
    if (w.cols() < 2 || w.cols() > n) throw std::invalid_argument("restrict: need 2 <= dim W <= n");
    const Mat g = w.transpose() * w;
    if ((g - Mat::Identity(w.cols(), w.cols())).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("restrict: subspace basis is not orthonormal");
}
}  // namespace

Mat wedge_embedding(const Mat& w) {
    const int k = static_cast<int>(w.cols());
    Mat p(binomial(static_cast<int>(w.rows()), 2), binomial(k, 2));
    int col = 0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) p.col(col++) = wedge2(w.col(a), w.col(b));
    return p;
}

SymOp restrict_to(const SymOp& r, const Mat& w, double tol) {
    check_orthonormal(w, r.n, tol);
    const Mat p = wedge_embedding(w);
    return SymOp(static_cast<int>(w.cols()), p.transpose() * r.mat * p);
}

FourForm pullback(const FourForm& omega, const Mat& w, double tol) {
    check_orthonormal(w, omega.n, tol);
    const Mat p = wedge_embedding(w);
    return bianchi(static_cast<int>(w.cols()), p.transpose() * form_to_mat(omega) * p);
}

}  // namespace strongcurv
