// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include "oracle.hpp"
#include "strongcurv/certify.hpp"
#include "strongcurv/config.hpp"
#include "strongcurv/construct.hpp"
#include "strongcurv/curvature.hpp"
#include "strongcurv/reference.hpp"
#include "strongcurv/runner.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace strongcurv;

namespace tol {
constexpr double principal_angle = 1e-6;
constexpr double identity_distance = 1e-8;
constexpr double dual_psd = 1e-9;
constexpr double dual_bianchi = 1e-7;
constexpr double dual_pairing = 1e-8;
constexpr double threshold = 1e-3;
constexpr double sec_threshold = 5e-3;
constexpr double operator_equal = 1e-9;
constexpr double hopf_equal = 1e-8;
constexpr double form_equal = 1e-9;
constexpr double unmodified_zero = 1e-9;
constexpr double projector = 1e-9;
constexpr double sec_invariance = 1e-9;
constexpr double oneill_sec = 1e-8;
constexpr double runtime_seconds = 60;
}  // namespace tol

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<FourForm> invariant(const HomogeneousSplit& s) {
    return to_four_forms(static_cast<int>(s.tangent().size()), invariant_forms(s, 4));
}

double cubic_root(double a, double b, double c, double d, double lo, double hi) {
    auto f = [&](double x) { return ((a * x + b) * x + c) * x + d; };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Mat b7_rhat() {
    const auto nh = normal_homogeneous(build_split(SpaceSpec::b7()), Coset::GH);
    return nh.r.mat + 3 * form_to_mat(bianchi(nh.alpha));
}

const std::vector<SpaceSpec> kFibrations{SpaceSpec::w6(),     SpaceSpec::w12(),     SpaceSpec::w7(1, 1),
                                         SpaceSpec::w7(1, 2), SpaceSpec::w7(2, 3), SpaceSpec::b13()};

void criterion1(Outcome& o) {
    double worst = 0;
    const std::vector<std::pair<SpaceSpec, int>> cases{{SpaceSpec::w6(), 4},      {SpaceSpec::w7(1, 1), 8},
                                                       {SpaceSpec::w7(1, 2), 8},  {SpaceSpec::w7(2, 3), 8},
                                                       {SpaceSpec::w12(), 24},    {SpaceSpec::b13(), 32}};
    for (const auto& [spec, dim] : cases) {
        const auto s = build_split(spec);
        const Mat k = kernel_basis(fatness_ops(s).F);
        o.require(k.cols() == dim, s.name + " kernel dimension " + std::to_string(k.cols()));
        const double ang = max_principal_angle(k, reference_case(spec)->kernel);
        worst = std::max(worst, ang);
        o.require(ang <= tol::principal_angle, s.name + " principal angle");
    }
    const Mat k = kernel_basis(b7_rhat());
    o.require(k.cols() == 11, "b7 kernel dimension " + std::to_string(k.cols()));
    const double ang = max_principal_angle(k, reference_case(SpaceSpec::b7())->kernel);
    worst = std::max(worst, ang);
    o.require(ang <= tol::principal_angle, "b7 principal angle");
    o.note << " max principal angle " << worst;
}

void criterion2(Outcome& o) {
    double worst = 0;
    for (const auto& spec : {SpaceSpec::w6(), SpaceSpec::w12(), SpaceSpec::b13()}) {
        const auto s = build_split(spec);
        const Mat k = kernel_basis(fatness_ops(s).F);
        const auto mp = mixed_pairs(static_cast<int>(s.m.size()), static_cast<int>(s.p.size()));
        const Mat kt = k.transpose() * submatrix(form_to_mat(reference_case(spec)->form), mp, mp) * k;
        const double d = max_abs(kt - Mat::Identity(kt.rows(), kt.cols()));
        worst = std::max(worst, d);
        o.require(d <= tol::identity_distance, s.name + " tau on kernel");
    }
    {
        const Mat k = kernel_basis(b7_rhat());
        const Mat kt = k.transpose() * form_to_mat(reference_case(SpaceSpec::b7())->form) * k;
        const double d = max_abs(kt - Mat::Identity(kt.rows(), kt.cols()));
        worst = std::max(worst, d);
        o.require(d <= tol::identity_distance, "b7 omega on kernel");
    }
    int samples = 0, mismatches = 0;
    for (auto [kk, ll] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
        const auto s = build_split(SpaceSpec::w7(kk, ll));
        const Mat k = kernel_basis(fatness_ops(s).F);
        const auto mp = mixed_pairs(4, 3);
        for (int i = 0; i < 30; ++i)
            for (int j = 0; j < 30; ++j) {
                const double a = -2 + 11.0 * i / 29, b = -9 + 11.0 * j / 29;
                const double lmin = oracle::min_eig(k.transpose() * submatrix(form_to_mat(w7_tau(a, b)), mp, mp) * k);
                if (std::abs(lmin) < 1e-9) continue;
                ++samples;
                if ((lmin > 0) != w7_tau_admissible(kk, ll, a, b)) ++mismatches;
            }
    }
    o.require(mismatches == 0, "w7 inequality system disagrees on " + std::to_string(mismatches) + " samples");
    o.note << " identity distance " << worst << "; w7 inequality vs kernel positivity " << samples << " samples, "
           << mismatches << " mismatches";
}

void criterion3(Outcome& o) {
    double slowest = 0, smallest = 1e300;
    auto check = [&](const std::string& label, const SymOp& r, const std::vector<FourForm>& forms) {
        const Certificate c = certify_strongly_positive(r, forms);
        const double lmin = oracle::min_eig(r.mat + oracle::form_operator(r.n, c.omega.coords));
        o.require(c.kind == CertKind::PrimalPositive, label + " kind " + to_string(c.kind));
        o.require(lmin >= c.delta, label + " re-verified lambda_min");
        smallest = std::min(smallest, lmin);
    };
    for (const auto& spec : {SpaceSpec::w6(), SpaceSpec::w7(1, 1), SpaceSpec::w12(), SpaceSpec::b13()}) {
        const auto start = std::chrono::steady_clock::now();
        const auto s = build_split(spec);
        const auto forms = invariant(s);
        for (double t : {0.25, 0.5, 0.9}) check(s.name + " t=" + std::to_string(t), wallach(s, t).op, forms);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        slowest = std::max(slowest, secs);
        o.require(secs < tol::runtime_seconds, s.name + " runtime");
    }
    const auto b7 = build_split(SpaceSpec::b7());
    check("b7 normal", normal_homogeneous(b7, Coset::GH).r, invariant(b7));
    o.note << " smallest re-verified lambda_min " << smallest << ", slowest space " << slowest << " s";
}

void criterion4(Outcome& o) {
    const auto s = build_split(SpaceSpec::b13());
    const SymOp r = wallach(s, 1.0).op;
    const Certificate c = certify_strongly_positive(r, invariant(s));
    o.require(c.kind == CertKind::DualInfeasible, std::string("kind ") + to_string(c.kind));
    if (c.kind != CertKind::DualInfeasible) return;
    const double psd = oracle::min_eig(c.dual_S);
    const double bnorm = oracle::bianchi(c.dual_S, r.n).norm();
    const double pairing = (r.mat * c.dual_S).trace();
    o.require(psd >= -tol::dual_psd, "S psd");
    o.require(bnorm <= tol::dual_bianchi, "b(S)");
    o.require(pairing <= tol::dual_pairing, "tr(RS)");
    o.note << " lambda_min(S) " << psd << ", |b(S)| " << bnorm << ", tr(RS) " << pairing;
}

void criterion5(Outcome& o) {
    SweepArgs a;
    a.where.space = "berger7";
    a.param = "lambda";
    a.lo = 0.1;
    a.hi = 1.4;
    a.steps = 14;
    Config cfg;
    cfg.restarts = 50;
    const io::Report r = cmd_sweep(a, cfg);
    const double p1 = cubic_root(8, -16, 11, -4, 1.0, 1.5), p2 = cubic_root(25, -60, 48, -16, 1.0, 1.5);
    std::vector<io::Threshold> pos, spos, sec;
    for (const auto& t : r.thresholds) {
        if (t.name == "R>0") pos.push_back(t);
        else if (t.name == "strongly_positive") spos.push_back(t);
        else if (t.name == "sec>0") sec.push_back(t);
    }
    auto within = [](const io::Threshold& t, double x, double e) {
        return t.hi - t.lo <= tol::threshold && std::abs(t.lo - x) <= e && std::abs(t.hi - x) <= e;
    };
    o.require(pos.size() == 2 && within(pos[0], 0.5, tol::threshold) && within(pos[1], p1, tol::threshold),
              "R>0 brackets");
    o.require(spos.size() == 1 && within(spos[0], p2, tol::threshold), "strong positivity bracket");
    o.require(sec.size() == 1 && within(sec[0], 4.0 / 3.0, tol::sec_threshold), "sec>0 bracket");
    if (spos.size() == 1) {
        const auto forms = all_four_forms(7);
        const auto split = build_split(SpaceSpec::berger(1));
        const Certificate below = certify_strongly_positive(wallach(split, 2 * spos[0].lo).op, forms);
        const Certificate above = certify_strongly_positive(wallach(split, 2 * spos[0].hi).op, forms);
        o.require(below.kind == CertKind::PrimalPositive, "primal below the bracket");
        o.require(above.kind == CertKind::DualInfeasible, std::string("dual above the bracket: ") + to_string(above.kind));
        o.note << " strongly positive [" << spos[0].lo << ", " << spos[0].hi << "] root " << p2 << ";";
    }
    if (pos.size() == 2)
        o.note << " R>0 [" << pos[0].lo << ", " << pos[0].hi << "] and [" << pos[1].lo << ", " << pos[1].hi << "] root "
               << p1 << ";";
    if (sec.size() == 1) o.note << " sec>0 [" << sec[0].lo << ", " << sec[0].hi << "]";
}

void criterion6(Outcome& o) {
    double worst_sphere = 0;
    for (int n = 2; n <= 7; ++n) {
        const SymOp r = normal_homogeneous(build_split(SpaceSpec::sphere(n)), Coset::GH).r;
        worst_sphere = std::max(worst_sphere, max_abs(r.mat - Mat::Identity(r.size(), r.size())));
    }
    o.require(worst_sphere <= tol::operator_equal, "sphere identity");

    const auto hopf = build_split(SpaceSpec::hopf_c(2));
    const SymOp round = wallach(hopf, 2.0).op;
    Mat w = Mat::Zero(round.n, 4);
    w.topRows(4).setIdentity();
    const ATensor a = fibration_a_tensor(hopf, 2.0);
    const SymOp base = oneill(restrict_to(round, w), a);
    const auto cp2 = normal_homogeneous(build_split(SpaceSpec::cpn(2)), Coset::GH);
    const double dh = max_abs(base.mat - cp2.r.mat);
    o.require(dh <= tol::hopf_equal, "Hopf O'Neill vs normal homogeneous CP^2");
    const Vec kahler = two_vector(4, {{1, 0, 1}, {1, 2, 3}});
    const double df = max_abs((3.0 * bianchi(a.alpha()) - 0.5 * wedge_forms(kahler, kahler)).coords);
    o.require(df <= tol::form_equal, "3 b(alpha) vs Kahler square");

    double worst_unmod = 0;
    for (const auto& spec : {SpaceSpec::cpn(2), SpaceSpec::cpn(3), SpaceSpec::hpn(2)}) {
        const auto s = build_split(spec);
        const SymOp r = normal_homogeneous(s, Coset::GH).r;
        const double l0 = oracle::min_eig(r.mat);
        worst_unmod = std::max(worst_unmod, std::abs(l0));
        o.require(std::abs(l0) <= tol::unmodified_zero, s.name + " unmodified lambda_min");
        o.require(certify_strongly_positive(r, invariant(s)).kind == CertKind::PrimalPositive, s.name + " certify");
    }
    o.note << " |R-I| " << worst_sphere << ", Hopf " << dh << ", Kahler " << df << ", |lambda_min| unmodified "
           << worst_unmod;
}

void criterion7(Outcome& o) {
    std::mt19937_64 g(2024);
    double proj = 0, secinv = 0, on = 0;
    for (int n = 4; n <= 7; ++n)
        for (int rep = 0; rep < 100; ++rep) {
            const SymOp r(n, oracle::random_symmetric(binomial(n, 2), g));
            const SymOp p = bianchi_project(r);
            const FourForm om(n, oracle::random_vec(binomial(n, 4), g));
            const double scale = std::max(1.0, r.mat.norm()) * std::max(1.0, om.norm());
            proj = std::max(proj, max_abs(bianchi_project(p).mat - p.mat) / scale);
            proj = std::max(proj, std::abs((p.mat * form_to_mat(om)).trace()) / scale);
            const auto [x, y] = oracle::random_frame(n, g);
            const Plane pl = Plane::make(x, y);
            secinv = std::max(secinv, std::abs(sec(r + form_to_op(om), pl) - sec(r, pl)));
        }
    o.require(proj <= tol::projector, "Bianchi projector");
    o.require(secinv <= tol::sec_invariance, "sec modification invariance");

    for (const auto& spec : {SpaceSpec::hopf_c(2), SpaceSpec::berger(1), SpaceSpec::w6(), SpaceSpec::b13()}) {
        const auto s = build_split(spec);
        for (double t : {0.5, 2.0}) {
            const SymOp total = wallach(s, t).op;
            const int nm = static_cast<int>(s.m.size());
            Mat w = Mat::Zero(total.n, nm);
            w.topRows(nm).setIdentity();
            const SymOp rbar = restrict_to(total, w);
            const ATensor a = fibration_a_tensor(s, t);
            const SymOp r = oneill(rbar, a);
            for (int k = 0; k < 100; ++k) {
                const auto [x, y] = oracle::random_frame(nm, g);
                const Plane pl = Plane::make(x, y);
                const double rhs = sec(rbar, pl) + 3 * (a.map.transpose() * oracle::wedge(x, y)).squaredNorm();
                on = std::max(on, std::abs(sec(r, pl) - rhs));
            }
        }
    }
    o.require(on <= tol::oneill_sec, "O'Neill sec formula");

    int thorpe = 0, milnor = 0, tested = 0;
    while (tested < 50) {
        const SymOp pert = bianchi_project(SymOp(4, oracle::random_symmetric(6, g)));
        const SymOp r = SymOp::identity(4) + (0.8 / pert.mat.norm()) * pert;
        if (min_sec_estimate(r, 50, static_cast<std::uint64_t>(tested)).value < 0.05) continue;
        ++tested;
        if (certify_strongly_positive(r, all_four_forms(4)).kind == CertKind::PrimalPositive) ++thorpe;
        if (gauss_bonnet(r) > 0) ++milnor;
    }
    o.require(thorpe == 50, "Thorpe certifications");
    o.require(milnor == 50, "Milnor sign");

    const auto big = build_split(SpaceSpec::berger(2));
    const SymOp r = wallach(big, 1.6).op;
    const Certificate c = certify_strongly_positive(r, invariant(big));
    Mat w = Mat::Zero(11, 7);
    const int idx[7] = {0, 1, 2, 3, 8, 9, 10};
    for (int k = 0; k < 7; ++k) w(idx[k], k) = 1;
    const double lrestr = oracle::min_eig(restrict_to(r, w).mat + form_to_mat(pullback(c.omega, w)));
    o.require(c.kind == CertKind::PrimalPositive && lrestr >= c.delta, "totally geodesic restriction");

    o.note << " projector " << proj << ", sec invariance " << secinv << ", O'Neill " << on << ", Thorpe " << thorpe
           << "/50, Milnor " << milnor << "/50, restricted lambda_min " << lrestr;
}

void criterion8(Outcome& o) {
    double smallest = 1e300;
    int runs = 0;
    for (const auto& spec : kFibrations) {
        const auto s = build_split(spec);
        for (double t : {0.25, 0.5, 0.9}) {
            const WallachPipeline p = wallach_pipeline(s, t);
            const auto w = wallach(s, t);
            const double lmin =
                oracle::min_eig(w.rhat.mat + p.epsilon1 * form_to_mat(p.eta) + p.epsilon2 * form_to_mat(p.tau));
            const std::string label = s.name + " t=" + std::to_string(t);
            o.require(p.verified, label + " pipeline verification");
            o.require(p.epsilon1 > 0 && p.epsilon2 > 0, label + " epsilons");
            o.require(lmin > 0, label + " independent lambda_min");
            smallest = std::min(smallest, lmin);
            ++runs;
        }
    }
    o.note << " " << runs << " runs, smallest lambda_min " << smallest;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"kernel dimensions and spans", criterion1},
        {"certificate forms on kernels", criterion2},
        {"strong positivity certifications", criterion3},
        {"B13 t=1 dual certificate", criterion4},
        {"Berger S7 thresholds", criterion5},
        {"cross-checked constructions", criterion6},
        {"property suites", criterion7},
        {"two-step perturbation pipeline", criterion8}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        std::printf("criterion %zu %s: %s;%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.note.str().c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
