#pragma once

#include "strongcurv/exterior.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace strongcurv {

using SpMat = Eigen::SparseMatrix<double>;

struct SdpOptions {
    int max_iterations = 100;
    double tol = 1e-10;
    double step = 0.95;
};

/// min <C, X> s.t. <A_i, X> = b_i, X psd;  max b^T y s.t. Z = C - sum y_i A_i psd.
struct SdpSolution {
    Mat X, Z;
    Vec y;
    int iterations = 0;
    double primal_residual = 0, dual_residual = 0, gap = 0;
    bool converged = false;
};

/// Infeasible primal-dual path following, HKM direction with Mehrotra correction.
/// Starts from the given (X0 pd, y0, Z0 pd).
SdpSolution solve_sdp(const Mat& C, const std::vector<SpMat>& A, const Vec& b, const Mat& X0, const Vec& y0,
                      const Mat& Z0, const SdpOptions& opt = {});

/// M_ij = <A_i, X A_j Z^-1>, one column per thread task.
Mat schur_matrix(const std::vector<SpMat>& A, const Mat& X, const Mat& Zinv);
Mat schur_matrix_serial(const std::vector<SpMat>& A, const Mat& X, const Mat& Zinv);

struct MaxMinEig {
    double value = 0;  // best s with R + sum c_k W_k - s I psd
    Vec coeffs;
    Mat dual;  // psd, unit trace, orthogonal to every W_k when converged
    int iterations = 0;
    double primal_residual = 0, dual_residual = 0, gap = 0;
    bool converged = false;
};

/// max_c lambda_min(R + sum c_k W_k). The W_k must be linearly independent.
MaxMinEig maximize_min_eigenvalue(const Mat& R, const std::vector<Mat>& W, const SdpOptions& opt = {});

struct DykstraOptions {
    int max_iterations = 5000;
    double tol = 1e-10;
};

/// Dykstra projections between {R - margin I + span W} and the psd cone. On success `value`
/// is lambda_min of the best iterate; otherwise `dual` is the normalized gap vector.
MaxMinEig dykstra_feasibility(const Mat& R, const std::vector<Mat>& W, double margin,
                              const DykstraOptions& opt = {});

/// Columns of `vecs` orthonormalized; columns in the span of earlier ones are dropped.
std::vector<int> independent_columns(const Mat& vecs, double tol = 1e-9);

SpMat to_sparse(const Mat& m, double drop = 0.0);

}  // namespace strongcurv
