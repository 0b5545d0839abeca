#include "strongcurv/certify.hpp"

#include "strongcurv/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace strongcurv {

namespace {

double lambda_min(const Mat& m) {
    return Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly).eigenvalues()[0];
}

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly).eigenvalues();
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

std::vector<int> iota(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

const char* to_string(CertKind k) {
    switch (k) {
        case CertKind::PrimalPositive: return "PrimalPositive";
        case CertKind::PrimalNonnegative: return "PrimalNonnegative";
        case CertKind::DualInfeasible: return "DualInfeasible";
        case CertKind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

CertKind cert_kind_from_string(const std::string& s) {
    for (CertKind k : {CertKind::PrimalPositive, CertKind::PrimalNonnegative, CertKind::DualInfeasible,
                       CertKind::Inconclusive})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown certificate kind '" + s + "'");
}

std::vector<FourForm> all_four_forms(int n) {
    const long count = binomial(n, 4);
    std::vector<FourForm> out;
    out.reserve(count);
    for (long q = 0; q < count; ++q) {
        Vec c = Vec::Zero(count);
        c[q] = 1.0;
        out.emplace_back(n, std::move(c));
    }
    return out;
}

FourForm embed_form(const FourForm& f, int n, const std::vector<int>& pos) {
    if (static_cast<int>(pos.size()) != f.n) throw std::invalid_argument("embed_form: position count mismatch");
    FourForm out = FourForm::zero(n);
    const Basis4 src(f.n), dst(n);
    for (int q = 0; q < src.size(); ++q) {
        if (f.coords[q] == 0.0) continue;
        std::array<int, 4> idx{pos[src[q][0]], pos[src[q][1]], pos[src[q][2]], pos[src[q][3]]};
        const int s = sort_sign(idx);
        if (s == 0) throw std::invalid_argument("embed_form: repeated position");
        out.coords[dst.index(idx[0], idx[1], idx[2], idx[3])] += s * f.coords[q];
    }
    return out;
}

Mat embed_block(const Mat& block, int n, const std::vector<int>& rows) {
    const long sz = binomial(n, 2);
    Mat out = Mat::Zero(sz, sz);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            out(rows[i], rows[j]) = block(static_cast<long>(i), static_cast<long>(j));
    return out;
}

Certificate certify_block(const Mat& R, int n, const std::vector<int>& rows, const std::vector<FourForm>& forms,
                          bool strict, const CertifyConfig& cfg) {
    const long sz = static_cast<long>(rows.size());
    if (R.rows() != sz || R.cols() != sz) throw std::invalid_argument("certify: operator size does not match block");
    const bool full_block = sz == binomial(n, 2);

    // search directions as block matrices
    std::vector<Mat> w_all;
    Mat vecs(sz * sz, static_cast<long>(forms.size()));
    for (std::size_t k = 0; k < forms.size(); ++k) {
        if (forms[k].n != n) throw std::invalid_argument("certify: search form has wrong dimension");
        const Mat full = form_to_mat(forms[k]);
        w_all.push_back(full_block ? full : submatrix(full, rows, rows));
        vecs.col(static_cast<long>(k)) = Eigen::Map<const Vec>(w_all.back().data(), sz * sz);
    }
    const auto keep = independent_columns(vecs, cfg.zero_tol);
    if (full_block && keep.size() != forms.size())
        throw std::invalid_argument("certify: search basis is rank-deficient");
    std::vector<Mat> W;
    for (int k : keep) W.push_back(w_all[k]);

    const double rnorm = R.norm();
    Certificate cert;
    cert.delta = cfg.delta_rel * (rnorm > 0 ? rnorm : 1.0);
    cert.search_dim = static_cast<int>(W.size());

    MaxMinEig sol;
    if (cfg.solver == SolverKind::ipm) {
        SdpOptions opt;
        opt.max_iterations = cfg.max_iterations;
        opt.tol = cfg.ipm_tol;
        sol = maximize_min_eigenvalue(R, W, opt);
        cert.solver = "ipm";
    } else {
        DykstraOptions opt;
        opt.max_iterations = cfg.dykstra_iterations;
        sol = dykstra_feasibility(R, W, strict ? 10.0 * cert.delta : 0.0, opt);
        cert.solver = "dykstra";
    }
    cert.iterations = sol.iterations;
    cert.primal_residual = sol.primal_residual;
    cert.dual_residual = sol.dual_residual;
    cert.gap = sol.gap;

    cert.coeffs = Vec::Zero(static_cast<long>(forms.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (sol.coeffs.size() > static_cast<long>(i)) cert.coeffs[keep[i]] = sol.coeffs[static_cast<long>(i)];
    cert.omega = FourForm::zero(n);
    for (std::size_t k = 0; k < forms.size(); ++k)
        if (cert.coeffs[static_cast<long>(k)] != 0.0) cert.omega = cert.omega + cert.coeffs[static_cast<long>(k)] * forms[k];

    // fresh verification, independent of solver state
    const Mat om = form_to_mat(cert.omega);
    cert.lambda_min = lambda_min(R + (full_block ? om : submatrix(om, rows, rows)));
    const double psd_slack = cfg.eps_psd * std::max(1.0, rnorm);
    if (strict && cert.lambda_min >= cert.delta) {
        cert.kind = CertKind::PrimalPositive;
        return cert;
    }
    if (!strict && cert.lambda_min >= -psd_slack) {
        cert.kind = CertKind::PrimalNonnegative;
        return cert;
    }

    Mat S = 0.5 * (sol.dual + sol.dual.transpose());
    const double tr = S.trace();
    if (tr > 0) S /= tr;
    cert.dual_S = S;
    cert.pairing = (R.cwiseProduct(S)).sum();
    cert.dual_bianchi = bianchi(n, full_block ? S : embed_block(S, n, rows)).norm();
    const bool dual_ok = tr > 0 && lambda_min(S) >= -cfg.dual_psd_tol && cert.dual_bianchi <= cfg.dual_bianchi_tol &&
                         std::abs(S.trace() - 1.0) <= cfg.dual_trace_tol &&
                         (strict ? cert.pairing <= cfg.eps_dual : cert.pairing < -cfg.eps_dual);
    cert.kind = dual_ok ? CertKind::DualInfeasible : CertKind::Inconclusive;
    return cert;
}

Certificate certify_strongly_positive(const SymOp& R, const std::vector<FourForm>& forms, const CertifyConfig& cfg) {
    return certify_block(R.mat, R.n, iota(static_cast<int>(binomial(R.n, 2))), forms, true, cfg);
}

Certificate certify_strongly_nonnegative(const SymOp& R, const std::vector<FourForm>& forms,
                                         const CertifyConfig& cfg) {
    return certify_block(R.mat, R.n, iota(static_cast<int>(binomial(R.n, 2))), forms, false, cfg);
}

FirstOrder first_order_epsilon(const Mat& A, const Mat& B, double kernel_tol) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("first_order_epsilon: size mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
    const Vec ev = es.eigenvalues();
    const double anorm = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    const double cut = kernel_tol * std::max(1.0, anorm);
    if (ev[0] < -cut) throw std::invalid_argument("first_order_epsilon: A is not positive-semidefinite");

    std::vector<int> ker;
    double lplus = 0;
    for (int i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i]) <= cut) ker.push_back(i);
        else if (lplus == 0) lplus = ev[i];
    }
    const double bnorm = spectral_norm(B);
    if (!ker.empty()) {
        Mat K(A.rows(), static_cast<long>(ker.size()));
        for (std::size_t i = 0; i < ker.size(); ++i) K.col(static_cast<long>(i)) = es.eigenvectors().col(ker[i]);
        const double bk = lambda_min(K.transpose() * B * K);
        if (bk <= kernel_tol * std::max(1.0, bnorm))
            throw std::domain_error("first_order_epsilon: B is not positive-definite on ker A");
    }

    FirstOrder out;
    out.epsilon = (bnorm == 0.0 || lplus == 0.0) ? 1.0 : lplus / (2.0 * bnorm);
    for (; out.halvings < 200; ++out.halvings, out.epsilon *= 0.5) {
        out.lambda_min = lambda_min(A + out.epsilon * B);
        if (out.lambda_min > 0) break;
    }
    const Mat total = 0.5 * (A + out.epsilon * B + (A + out.epsilon * B).transpose());
    Eigen::LLT<Mat> llt(total);
    out.verified = out.lambda_min > 0 && llt.info() == Eigen::Success;
    return out;
}

Certificate strong_fatness(const HomogeneousSplit& split, const CertifyConfig& cfg) {
    const FatnessOps f = fatness_ops(split);
    const int nm = static_cast<int>(split.m.size()), np = static_cast<int>(split.p.size());
    const int n = nm + np;
    std::vector<FourForm> forms;
    if (cfg.full_search) {
        const Basis4 b4(n);
        for (int q = 0; q < b4.size(); ++q) {
            const int in_m = static_cast<int>(std::count_if(b4[q].begin(), b4[q].end(), [&](int i) { return i < nm; }));
            if (in_m != 2) continue;
            Vec c = Vec::Zero(b4.size());
            c[q] = 1.0;
            forms.emplace_back(n, std::move(c));
        }
    } else {
        forms = to_four_forms(n, invariant_forms(split, 4, FormBlock::mixed));
    }
    return certify_block(f.F, n, mixed_pairs(nm, np), forms, true, cfg);
}

Mat kernel_basis(const Mat& A, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
    const Vec ev = es.eigenvalues();
    if (ev.size() == 0) return Mat(0, 0);
    const double cut = tol * std::max(1.0, std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1])));
    std::vector<int> ker;
    for (int i = 0; i < ev.size(); ++i)
        if (std::abs(ev[i]) <= cut) ker.push_back(i);
    Mat K(A.rows(), static_cast<long>(ker.size()));
    for (std::size_t i = 0; i < ker.size(); ++i) K.col(static_cast<long>(i)) = es.eigenvectors().col(ker[i]);
    return K;
}

double max_principal_angle(const Mat& U, const Mat& V) {
    if (U.cols() != V.cols() || U.rows() != V.rows()) return std::acos(0.0);
    if (U.cols() == 0) return 0.0;
    auto orth = [](const Mat& m) -> Mat {
        Eigen::HouseholderQR<Mat> qr(m);
        return qr.householderQ() * Mat::Identity(m.rows(), m.cols());
    };
    const Mat qu = orth(U), qv = orth(V);
    const Mat resid = qv - qu * (qu.transpose() * qv);
    const double s = Eigen::JacobiSVD<Mat>(resid).singularValues()[0];
    return std::asin(std::min(1.0, s));
}

WallachPipeline wallach_pipeline(const HomogeneousSplit& split, double t, const CertifyConfig& cfg) {
    WallachPipeline out;
    out.t = t;
    const WallachOperator w = wallach(split, t);
    const int nm = w.nm, n = w.nm + w.np;

    // base G/K: strongly positive with a K-invariant form on m
    const NormalHomogeneous base = normal_homogeneous(split, Coset::GK);
    std::vector<FourForm> base_forms;
    if (cfg.full_search) {
        base_forms = all_four_forms(nm);
    } else {
        FormQuery q;
        q.degree = 4;
        q.tangent = split.m;
        q.generators = split.k();
        base_forms = to_four_forms(nm, invariant_forms(split.algebra, q, cfg.zero_tol));
    }
    const Certificate bc = certify_strongly_positive(base.r, base_forms, cfg);
    if (bc.kind != CertKind::PrimalPositive)
        throw std::runtime_error("wallach_pipeline: base space did not certify strongly positive");
    out.eta = embed_form(bc.omega, n, iota(nm));

    std::vector<int> top = w.pairs_mm();
    for (int k : w.pairs_pp()) top.push_back(k);
    std::sort(top.begin(), top.end());
    const Mat eta_mat = form_to_mat(out.eta);
    const FirstOrder e1 = first_order_epsilon(submatrix(w.rhat.mat, top, top), submatrix(eta_mat, top, top),
                                              cfg.zero_tol);
    out.epsilon1 = e1.epsilon;

    const Certificate fat = strong_fatness(split, cfg);
    if (fat.kind != CertKind::PrimalPositive)
        throw std::runtime_error("wallach_pipeline: split did not certify strongly fat");
    out.tau = fat.omega;
    const Mat step1 = w.rhat.mat + out.epsilon1 * eta_mat;
    const FirstOrder e2 = first_order_epsilon(step1, form_to_mat(out.tau), cfg.zero_tol);
    out.epsilon2 = e2.epsilon;

    const Mat total = step1 + out.epsilon2 * form_to_mat(out.tau);
    out.lambda_min = lambda_min(total);
    out.omega = 3.0 * w.b_alpha1 + 3.0 * w.b_alpha2 + out.epsilon1 * out.eta + out.epsilon2 * out.tau;
    out.lambda_min_rt = lambda_min(w.op.mat + form_to_mat(out.omega));
    Eigen::LLT<Mat> llt(0.5 * (total + total.transpose()));
    out.verified = e1.verified && e2.verified && out.lambda_min > 0 && out.lambda_min_rt > 0 &&
                   llt.info() == Eigen::Success;
    return out;
}

}  // namespace strongcurv
