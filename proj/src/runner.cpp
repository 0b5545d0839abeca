#include "strongcurv/runner.hpp"

#include "strongcurv/construct.hpp"
#include "strongcurv/curvature.hpp"
#include "strongcurv/reference.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

namespace strongcurv {

namespace {

double lambda_min(const SymOp& r) {
    return Eigen::SelfAdjointEigenSolver<Mat>(r.mat, Eigen::EigenvaluesOnly).eigenvalues()[0];
}

std::optional<SpaceSpec> builtin(const SpaceArgs& a) {
    if (!a.split_file.empty()) return std::nullopt;
    try {
        return SpaceSpec::parse(a.space, a.n, a.k, a.l);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

bool is_berger(const SpaceArgs& a) {
    const auto spec = builtin(a);
    return spec && spec->kind == SpaceSpec::Kind::berger;
}

std::vector<FourForm> search_forms(const HomogeneousSplit& split, int n, const Config& cfg) {
    if (cfg.certify.full_search) return all_four_forms(n);
    return to_four_forms(n, invariant_forms(split, 4));
}

nlohmann::json space_params(const SpaceArgs& a) {
    nlohmann::json j = {{"space", a.split_file.empty() ? a.space : a.split_file}};
    if (a.split_file.empty()) {
        const auto spec = builtin(a);
        switch (spec->kind) {
            case SpaceSpec::Kind::sphere:
            case SpaceSpec::Kind::cpn:
            case SpaceSpec::Kind::hpn:
            case SpaceSpec::Kind::berger:
            case SpaceSpec::Kind::hopf_c: j["n"] = spec->n; break;
            case SpaceSpec::Kind::w7: j["k"] = spec->k; j["l"] = spec->l; break;
            default: break;
        }
    }
    return j;
}

// Smallest bracket [lo, hi] of width <= tol around a change of `pred`, pred(lo) != pred(hi).
io::Threshold bisect(const std::string& name, double lo, double hi, bool at_lo, const std::function<bool(double)>& pred,
                     double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid) == at_lo) lo = mid;
        else hi = mid;
    }
    return {name, lo, hi};
}

}  // namespace

int exit_code(CertKind k) {
    switch (k) {
        case CertKind::PrimalPositive:
        case CertKind::PrimalNonnegative: return 0;
        case CertKind::DualInfeasible: return 3;
        case CertKind::Inconclusive: return 2;
    }
    return 2;
}

int exit_code(const io::Report& r) { return r.certificate ? exit_code(r.certificate->kind) : 0; }

HomogeneousSplit resolve_split(const SpaceArgs& a) {
    if (!a.split_file.empty()) return io::split_from_json(io::read_file(a.split_file));
    if (a.space.empty()) throw UsageError("either --space or --split is required");
    try {
        return build_split(*builtin(a));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Problem build_problem(const CertifyArgs& a, const Config& cfg) {
    const HomogeneousSplit split = resolve_split(a.where);
    const int nm = static_cast<int>(split.m.size()), np = static_cast<int>(split.p.size());
    std::optional<double> t = a.t;
    if (a.lambda) {
        if (a.t) throw UsageError("give either --t or --lambda, not both");
        if (!is_berger(a.where)) throw UsageError("--lambda applies to berger spaces only");
        t = 2.0 * *a.lambda;
    }
    if (t && !(*t > 0)) throw UsageError("the fibre scale must be positive");
    Problem p;
    p.label = split.name;
    if (np == 0 || nm == 0) {
        if (t) throw UsageError("space '" + split.name + "' has no fibration to scale");
        p.op = normal_homogeneous(split, Coset::GH).r;
    } else {
        p.t = t.value_or(1.0);
        p.op = wallach(split, *p.t).op;
    }
    p.forms = search_forms(split, nm + np, cfg);
    return p;
}

io::Report cmd_certify(const CertifyArgs& a, const Config& cfg) {
    const Problem p = build_problem(a, cfg);
    io::Report r;
    r.command = "certify";
    r.space = p.label;
    r.parameters = space_params(a.where);
    if (a.lambda) {
        r.parameters["lambda"] = *a.lambda;
        r.t_or_lambda = *a.lambda;
    } else if (p.t) {
        r.parameters["t"] = *p.t;
        r.t_or_lambda = *p.t;
    }
    r.parameters["mode"] = a.nonnegative ? "nonnegative" : "positive";
    r.certificate = a.nonnegative ? certify_strongly_nonnegative(p.op, p.forms, cfg.certify)
                                  : certify_strongly_positive(p.op, p.forms, cfg.certify);
    r.kernel_dims = {static_cast<int>(kernel_basis(p.op.mat, cfg.kernel_tol).cols())};
    r.details = {{"dim", p.op.n}, {"lambda_min_unmodified", lambda_min(p.op)}};
    r.tool_version = kToolVersion;
    r.config = to_json(cfg);
    return r;
}

io::Report cmd_sweep(const SweepArgs& a, const Config& cfg) {
    if (a.steps < 2) throw UsageError("--steps must be at least 2");
    if (!(a.lo < a.hi)) throw UsageError("need lo < hi");
    const bool by_lambda = a.param == "lambda";
    if (!by_lambda && a.param != "t") throw UsageError("--param must be 'lambda' or 't'");
    if (by_lambda && !is_berger(a.where)) throw UsageError("--param lambda applies to berger spaces only");
    if (!(a.lo > 0)) throw UsageError("the swept parameter must stay positive");
    const HomogeneousSplit split = resolve_split(a.where);
    if (split.m.empty() || split.p.empty()) throw UsageError("space '" + split.name + "' has no fibration to scale");
    const int n = static_cast<int>(split.m.size() + split.p.size());
    const auto forms = search_forms(split, n, cfg);

    auto op_at = [&](double v) { return wallach(split, by_lambda ? 2.0 * v : v).op; };
    auto strongly_positive = [&](double v) {
        return certify_strongly_positive(op_at(v), forms, cfg.certify).kind == CertKind::PrimalPositive;
    };
    auto positive = [&](double v) {
        const SymOp op = op_at(v);
        return lambda_min(op) >= cfg.certify.delta_rel * op.mat.norm();
    };
    auto sec_positive = [&](double v) { return min_sec_estimate(op_at(v), cfg.restarts, cfg.seed).value > 0; };

    struct Step {
        double v;
        CertKind kind;
        double lmin, max_lmin, min_sec;
        bool pos, spos, secpos;
    };
    std::vector<Step> steps(static_cast<std::size_t>(a.steps));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < a.steps; ++i) {
        Step& s = steps[static_cast<std::size_t>(i)];
        s.v = a.lo + (a.hi - a.lo) * i / (a.steps - 1);
        const SymOp op = op_at(s.v);
        const Certificate c = certify_strongly_positive(op, forms, cfg.certify);
        s.kind = c.kind;
        s.lmin = lambda_min(op);
        s.max_lmin = c.lambda_min;
        s.min_sec = min_sec_estimate(op, cfg.restarts, cfg.seed).value;
        s.pos = s.lmin >= cfg.certify.delta_rel * op.mat.norm();
        s.spos = c.kind == CertKind::PrimalPositive;
        s.secpos = s.min_sec > 0;
    }

    io::Report r;
    r.command = "sweep";
    r.space = split.name;
    r.parameters = space_params(a.where);
    r.parameters["param"] = a.param;
    r.parameters["lo"] = a.lo;
    r.parameters["hi"] = a.hi;
    r.parameters["steps"] = a.steps;
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : steps)
        js.push_back({{"value", s.v},
                      {"certificate", to_string(s.kind)},
                      {"lambda_min", s.lmin},
                      {"max_lambda_min", s.max_lmin},
                      {"min_sec_estimate", s.min_sec}});
    r.details["steps"] = std::move(js);

    const struct {
        const char* name;
        bool Step::*flag;
        std::function<bool(double)> pred;
    } tests[] = {{"R>0", &Step::pos, positive},
                 {"strongly_positive", &Step::spos, strongly_positive},
                 {"sec>0", &Step::secpos, sec_positive}};
    for (const auto& test : tests)
        for (std::size_t i = 0; i + 1 < steps.size(); ++i)
            if (steps[i].*test.flag != steps[i + 1].*test.flag)
                r.thresholds.push_back(bisect(test.name, steps[i].v, steps[i + 1].v, steps[i].*test.flag, test.pred,
                                              cfg.sweep_tol));
    r.tool_version = kToolVersion;
    r.config = to_json(cfg);
    return r;
}

io::Report cmd_fatness(const SpaceArgs& a, const Config& cfg) {
    const HomogeneousSplit split = resolve_split(a);
    if (split.m.empty() || split.p.empty()) throw UsageError("space '" + split.name + "' has no fibration");
    const FatnessOps f = fatness_ops(split);
    const Mat K = kernel_basis(f.F, cfg.kernel_tol);

    io::Report r;
    r.command = "fatness";
    r.space = split.name;
    r.parameters = space_params(a);
    r.kernel_dims = {static_cast<int>(K.cols())};

    nlohmann::json zeros = nlohmann::json::array();
    for (long c = 0; c < f.L.cols(); ++c)
        if (f.L.col(c).norm() <= cfg.kernel_tol) {
            const auto [i, pa] = f.index[static_cast<std::size_t>(c)];
            zeros.push_back({split.labels[split.m[i]], split.labels[split.p[pa - split.m.size()]]});
        }
    r.details["zero_brackets"] = zeros;
    r.certificate = strong_fatness(split, cfg.certify);
    r.details["strongly_fat"] = zeros.empty() && r.certificate->kind == CertKind::PrimalPositive;

    if (const auto spec = builtin(a)) {
        if (const auto ref = reference_case(*spec); ref && spec->kind != SpaceSpec::Kind::b7) {
            const auto rows = mixed_pairs(static_cast<int>(split.m.size()), static_cast<int>(split.p.size()));
            const Mat kt = K.transpose() * submatrix(form_to_mat(ref->form), rows, rows) * K;
            nlohmann::json refj = {{"kernel_dim", ref->kernel.cols()},
                                   {"max_principal_angle", max_principal_angle(K, ref->kernel)},
                                   {"form_min_eigenvalue_on_kernel",
                                    kt.size() ? Eigen::SelfAdjointEigenSolver<Mat>(kt).eigenvalues()[0] : 0.0}};
            if (spec->kind != SpaceSpec::Kind::w7)
                refj["form_identity_distance"] =
                    kt.size() ? (kt - Mat::Identity(kt.rows(), kt.cols())).cwiseAbs().maxCoeff() : 0.0;
            r.details["reference"] = std::move(refj);
        }
    }
    r.tool_version = kToolVersion;
    r.config = to_json(cfg);
    return r;
}

}  // namespace strongcurv
