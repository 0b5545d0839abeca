#pragma once

#include "strongcurv/construct.hpp"
#include "strongcurv/exterior.hpp"
#include "strongcurv/liealg.hpp"

#include <string>
#include <vector>

namespace strongcurv {

enum class CertKind { PrimalPositive, PrimalNonnegative, DualInfeasible, Inconclusive };
const char* to_string(CertKind k);
CertKind cert_kind_from_string(const std::string& s);

enum class SolverKind { ipm, dykstra };

struct CertifyConfig {
    SolverKind solver = SolverKind::ipm;
    double delta_rel = 1e-6;     // delta = delta_rel * ||R||
    double eps_psd = 1e-8;       // nonnegativity slack, relative to ||R||
    double eps_dual = 1e-8;      // pairing bound for dual certificates
    double dual_psd_tol = 1e-9;
    double dual_bianchi_tol = 1e-7;
    double dual_trace_tol = 1e-9;
    double zero_tol = 1e-9;
    int max_iterations = 100;
    double ipm_tol = 1e-10;
    int dykstra_iterations = 5000;
    bool full_search = false;  // search all of Lambda^4 instead of invariant forms
};

struct Certificate {
    CertKind kind = CertKind::Inconclusive;
    FourForm omega;      // primal kinds: R + form_to_op(omega)
    Vec coeffs;          // omega in the search basis
    double lambda_min = 0;
    double delta = 0;
    Mat dual_S;          // dual kind, over the operator's own basis
    double pairing = 0;  // tr(R S)
    double dual_bianchi = 0;
    int iterations = 0;
    double primal_residual = 0, dual_residual = 0, gap = 0;
    int search_dim = 0;
    std::string solver;
};

/// Positivity on a block: R is the compression of an operator to the pairs `rows` of
/// Basis2(n); forms act through the same compression.
Certificate certify_block(const Mat& R, int n, const std::vector<int>& rows, const std::vector<FourForm>& forms,
                          bool strict, const CertifyConfig& cfg = {});

Certificate certify_strongly_positive(const SymOp& R, const std::vector<FourForm>& forms,
                                      const CertifyConfig& cfg = {});
Certificate certify_strongly_nonnegative(const SymOp& R, const std::vector<FourForm>& forms,
                                         const CertifyConfig& cfg = {});

/// Every basis 4-form in dimension n.
std::vector<FourForm> all_four_forms(int n);

struct FirstOrder {
    double epsilon = 0;
    double lambda_min = 0;  // of A + epsilon B
    int halvings = 0;
    bool verified = false;
};

/// Smallest halving of lambda+_min(A) / (2 ||B||) with A + eps B positive-definite.
/// Throws std::domain_error when B is not positive-definite on ker A.
FirstOrder first_order_epsilon(const Mat& A, const Mat& B, double kernel_tol = 1e-9);

/// F + tau > 0 on m (x) p over H-invariant tau in Lambda^2 m (x) Lambda^2 p.
Certificate strong_fatness(const HomogeneousSplit& split, const CertifyConfig& cfg = {});

/// Orthonormal eigenvectors with |lambda| <= tol * max(1, ||A||_2).
Mat kernel_basis(const Mat& A, double tol = 1e-9);
/// Largest principal angle between the column spans (pi/2 when dimensions differ).
double max_principal_angle(const Mat& U, const Mat& V);

/// Positive-definite modification of the Wallach R-hat in two first-order steps.
struct WallachPipeline {
    double t = 0;
    FourForm eta;  // base certificate, on m, embedded in m + p
    FourForm tau;  // strong fatness certificate
    double epsilon1 = 0, epsilon2 = 0;
    double lambda_min = 0;  // of R-hat + eps1 eta + eps2 tau
    FourForm omega;         // total modification of R_t
    double lambda_min_rt = 0;
    bool verified = false;
};
WallachPipeline wallach_pipeline(const HomogeneousSplit& split, double t, const CertifyConfig& cfg = {});

/// 4-form on Lambda^4 of the tangent positions `pos` (a subset of 0..n-1) carried into dimension n.
FourForm embed_form(const FourForm& f, int n, const std::vector<int>& pos);
/// Zero-padded embedding of a block matrix over `rows` into Basis2(n).
Mat embed_block(const Mat& block, int n, const std::vector<int>& rows);

}  // namespace strongcurv
