#include "strongcurv/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace strongcurv {

namespace {

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

double inner(const SpMat& a, const Mat& g) {
    // <A, G> for symmetric A
    double s = 0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) s += it.value() * g(it.row(), it.col());
    return s;
}

Vec apply_op(const std::vector<SpMat>& A, const Mat& x) {
    Vec out(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) out[i] = inner(A[i], x);
    return out;
}

Mat adjoint(const std::vector<SpMat>& A, const Vec& y, long n) {
    Mat out = Mat::Zero(n, n);
    for (std::size_t i = 0; i < A.size(); ++i)
        if (y[i] != 0.0) out += y[i] * Mat(A[i]);
    return out;
}

// Largest step in (0, 1] keeping x + a dx positive definite, damped by `frac`.
double max_step(const Mat& x, const Mat& dx, double frac) {
    Eigen::LLT<Mat> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    const Mat linv_dx = llt.matrixL().solve(dx);
    const Mat m = llt.matrixL().solve(linv_dx.transpose());
    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(sym(m), Eigen::EigenvaluesOnly).eigenvalues()[0];
    if (lmin >= 0) return 1.0;
    return std::min(1.0, -frac / lmin);
}

Mat psd_part(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(sym(m));
    const Vec ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

SpMat to_sparse(const Mat& m, double drop) {
    std::vector<Eigen::Triplet<double>> trip;
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) > drop) trip.emplace_back(i, j, m(i, j));
    SpMat s(m.rows(), m.cols());
    s.setFromTriplets(trip.begin(), trip.end());
    return s;
}

Mat schur_matrix(const std::vector<SpMat>& A, const Mat& X, const Mat& Zinv) {
    const int m = static_cast<int>(A.size());
    Mat M(m, m);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < m; ++j) {
        const Mat g = X * (A[j] * Zinv);
        // <A_i, G> with G not symmetric: sum A_i(r, c) G(c, r)
        for (int i = 0; i < m; ++i) {
            double s = 0;
            for (int k = 0; k < A[i].outerSize(); ++k)
                for (SpMat::InnerIterator it(A[i], k); it; ++it) s += it.value() * g(it.col(), it.row());
            M(i, j) = s;
        }
    }
    return sym(M);
}

Mat schur_matrix_serial(const std::vector<SpMat>& A, const Mat& X, const Mat& Zinv) {
    const int m = static_cast<int>(A.size());
    Mat M(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M(i, j) = (Mat(A[i]) * X * Mat(A[j]) * Zinv).trace();
    return sym(M);
}

SdpSolution solve_sdp(const Mat& C, const std::vector<SpMat>& A, const Vec& b, const Mat& X0, const Vec& y0,
                      const Mat& Z0, const SdpOptions& opt) {
    const long n = C.rows();
    if (static_cast<long>(A.size()) != b.size() || y0.size() != b.size())
        throw std::invalid_argument("solve_sdp: constraint count mismatch");
    SdpSolution s;
    s.X = X0;
    s.y = y0;
    s.Z = Z0;
    const double bnorm = 1.0 + b.norm(), cnorm = 1.0 + C.norm();
    const Mat I = Mat::Identity(n, n);

    for (int it = 0; it < opt.max_iterations; ++it) {
        const Vec rp = b - apply_op(A, s.X);
        const Mat rd = sym(C - s.Z - adjoint(A, s.y, n));
        const double mu = (s.X.cwiseProduct(s.Z)).sum() / static_cast<double>(n);
        const double pobj = (C.cwiseProduct(s.X)).sum(), dobj = b.dot(s.y);
        s.primal_residual = rp.norm() / bnorm;
        s.dual_residual = rd.norm() / cnorm;
        s.gap = mu * n / (1.0 + std::abs(pobj) + std::abs(dobj));
        s.iterations = it;
        if (s.primal_residual < opt.tol && s.dual_residual < opt.tol && s.gap < opt.tol) {
            s.converged = true;
            break;
        }

        Eigen::LLT<Mat> zllt(s.Z);
        if (zllt.info() != Eigen::Success) break;
        const Mat zinv = sym(zllt.solve(I));
        Mat M = schur_matrix(A, s.X, zinv);
        Eigen::LDLT<Mat> mfac(M);
        if (mfac.info() != Eigen::Success) break;

        const Mat x_rd_zinv = s.X * rd * zinv;
        const Vec a_xrz = apply_op(A, x_rd_zinv);

        auto direction = [&](const Vec& rhs, const Mat& extra, double sigma_mu, Vec& dy, Mat& dx, Mat& dz) {
            dy = mfac.solve(rhs);
            dz = sym(rd - adjoint(A, dy, n));
            dx = sym(sigma_mu * zinv - s.X - s.X * dz * zinv - extra);
        };

        // predictor
        Vec dy;
        Mat dx, dz;
        direction(b + a_xrz, Mat::Zero(n, n), 0.0, dy, dx, dz);
        const double ap = max_step(s.X, dx, 1.0), ad = max_step(s.Z, dz, 1.0);
        const double mu_aff = ((s.X + ap * dx).cwiseProduct(s.Z + ad * dz)).sum() / static_cast<double>(n);
        const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

        // corrector
        const Mat extra = dx * dz * zinv;
        const Vec rhs = b + a_xrz - sigma * mu * apply_op(A, zinv) + apply_op(A, extra);
        direction(rhs, extra, sigma * mu, dy, dx, dz);
        const double sp = max_step(s.X, dx, opt.step), sd = max_step(s.Z, dz, opt.step);
        s.X = sym(s.X + sp * dx);
        s.y += sd * dy;
        s.Z = sym(s.Z + sd * dz);
        s.iterations = it + 1;
    }
    return s;
}

std::vector<int> independent_columns(const Mat& vecs, double tol) {
    std::vector<int> keep;
    Mat basis(vecs.rows(), 0);
    for (long j = 0; j < vecs.cols(); ++j) {
        Vec v = vecs.col(j);
        const double nv = v.norm();
        if (nv == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass)
            if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
        if (v.norm() <= tol * nv) continue;
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = v.normalized();
        keep.push_back(static_cast<int>(j));
    }
    return keep;
}

MaxMinEig maximize_min_eigenvalue(const Mat& R, const std::vector<Mat>& W, const SdpOptions& opt) {
    const long n = R.rows();
    const double scale = std::max(R.norm(), 1e-300);
    const Mat C = sym(R) / scale;
    std::vector<SpMat> A;
    A.reserve(W.size() + 1);
    A.push_back(to_sparse(Mat::Identity(n, n)));
    for (const auto& w : W) A.push_back(to_sparse(sym(w), 1e-15 * std::max(1.0, w.norm())));
    Vec b = Vec::Zero(static_cast<long>(A.size()));
    b[0] = 1.0;

    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(C, Eigen::EigenvaluesOnly).eigenvalues()[0];
    Vec y0 = Vec::Zero(b.size());
    y0[0] = lmin - 1.0;
    const Mat X0 = Mat::Identity(n, n) / static_cast<double>(n);
    const Mat Z0 = C - y0[0] * Mat::Identity(n, n);
    const SdpSolution sol = solve_sdp(C, A, b, X0, y0, Z0, opt);

    MaxMinEig out;
    out.value = sol.y[0] * scale;
    out.coeffs = -sol.y.tail(static_cast<long>(W.size())) * scale;
    out.dual = sol.X;
    out.iterations = sol.iterations;
    out.primal_residual = sol.primal_residual;
    out.dual_residual = sol.dual_residual;
    out.gap = sol.gap;
    out.converged = sol.converged;
    return out;
}

MaxMinEig dykstra_feasibility(const Mat& R, const std::vector<Mat>& W, double margin, const DykstraOptions& opt) {
    const long n = R.rows();
    const long nn = n * n;
    // orthonormal basis of span W, vectorized
    Mat wv(nn, static_cast<long>(W.size()));
    for (std::size_t k = 0; k < W.size(); ++k) wv.col(static_cast<long>(k)) = Eigen::Map<const Vec>(W[k].data(), nn);
    Mat basis = Mat::Zero(nn, 0);
    if (!W.empty()) {
        const auto keep = independent_columns(wv);
        Mat sel(nn, static_cast<long>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i) sel.col(static_cast<long>(i)) = wv.col(keep[i]);
        basis = Eigen::HouseholderQR<Mat>(sel).householderQ() * Mat::Identity(nn, static_cast<long>(keep.size()));
    }
    const Mat base = sym(R) - margin * Mat::Identity(n, n);
    auto project_affine = [&](const Mat& m) -> Mat {
        const Vec d = Eigen::Map<const Vec>(Mat(m - base).data(), nn);
        const Vec pd = basis * (basis.transpose() * d);
        return base + Eigen::Map<const Mat>(pd.data(), n, n);
    };

    Mat x = base, p_inc = Mat::Zero(n, n), q_inc = Mat::Zero(n, n);
    Mat a = base, c = base;
    MaxMinEig out;
    out.value = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < opt.max_iterations; ++it) {
        a = project_affine(x + p_inc);
        p_inc = x + p_inc - a;
        c = psd_part(a + q_inc);
        q_inc = a + q_inc - c;
        x = c;
        out.iterations = it + 1;
        const double gap = (c - a).norm();
        if (gap < opt.tol * std::max(1.0, base.norm())) {
            const double lm = Eigen::SelfAdjointEigenSolver<Mat>(sym(project_affine(c)), Eigen::EigenvaluesOnly)
                                  .eigenvalues()[0];
            if (lm >= -opt.tol) {
                out.converged = true;
                break;
            }
        }
    }
    a = project_affine(c);
    const Mat omega = a - base;
    const Vec ov = Eigen::Map<const Vec>(omega.data(), nn);
    // coefficients against the original W
    if (!W.empty()) out.coeffs = wv.colPivHouseholderQr().solve(ov);
    out.value = Eigen::SelfAdjointEigenSolver<Mat>(sym(R + omega), Eigen::EigenvaluesOnly).eigenvalues()[0];
    const Mat gapv = sym(psd_part(a) - a);
    const double tr = gapv.trace();
    out.dual = tr > 0 ? Mat(gapv / tr) : Mat::Zero(n, n);
    out.gap = gapv.norm();
    return out;
}

}  // namespace strongcurv
