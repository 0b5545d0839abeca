#include "strongcurv/construct.hpp"
#include "strongcurv/io.hpp"
#include "strongcurv/runner.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>

using namespace strongcurv;

namespace {

constexpr int kUsage = 64;

void add_space(CLI::App* cmd, SpaceArgs& s) {
    cmd->add_option("--space", s.space, "built-in space: sphere cpn hpn w6 w12 w7 b7 b13 berger hopf-c");
    cmd->add_option("--split", s.split_file, "user split JSON instead of --space");
    cmd->add_option("--n", s.n, "dimension parameter for sphere/cpn/hpn/berger/hopf-c");
    cmd->add_option("--k", s.k, "w7 parameter k");
    cmd->add_option("--l", s.l, "w7 parameter l");
}

void emit(const io::json& j, const std::string& out) {
    if (out.empty()) std::cout << io::dump(j);
    else io::write_file(out, j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strongcurv: curvature operators of homogeneous spaces and strong positivity certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_file, out, solver;
    bool timings = false, full_search = false;
    app.add_option("--config", config_file, "JSON config (overrides STRONGCURV_CONFIG)");
    app.add_option("--solver", solver, "ipm or dykstra")->check(CLI::IsMember({"ipm", "dykstra"}));
    app.add_flag("--full-search", full_search, "search all 4-forms instead of the invariant ones");
    app.add_flag("--timings", timings, "record wall time in the report");

    CertifyArgs cert;
    auto* c_cert = app.add_subcommand("certify", "certify strongly positive (or nonnegative) curvature");
    add_space(c_cert, cert.where);
    c_cert->add_option("--t", cert.t, "fibre scale of the metric g_t");
    c_cert->add_option("--lambda", cert.lambda, "Berger parameter (t = 2 lambda)");
    c_cert->add_flag("--nonnegative", cert.nonnegative, "certify strongly nonnegative instead");
    c_cert->add_option("--out", out, "write the report here instead of stdout");

    SweepArgs sweep;
    auto* c_sweep = app.add_subcommand("sweep", "sweep a metric parameter and bracket curvature transitions");
    add_space(c_sweep, sweep.where);
    c_sweep->add_option("--param", sweep.param, "lambda (berger) or t")->check(CLI::IsMember({"lambda", "t"}));
    c_sweep->add_option("--lo", sweep.lo, "lower end");
    c_sweep->add_option("--hi", sweep.hi, "upper end");
    c_sweep->add_option("--steps", sweep.steps, "grid points");
    c_sweep->add_option("--out", out, "write the report here instead of stdout");

    SpaceArgs fat;
    auto* c_fat = app.add_subcommand("fatness", "kernel of F and a strong fatness certificate");
    add_space(c_fat, fat);
    c_fat->add_option("--out", out, "write the report here instead of stdout");

    SpaceArgs xs;
    auto* c_xs = app.add_subcommand("export-split", "write a split as JSON");
    add_space(c_xs, xs);
    c_xs->add_option("--out", out, "output file");

    CertifyArgs xo;
    auto* c_xo = app.add_subcommand("export-operator", "write the curvature operator as JSON");
    add_space(c_xo, xo.where);
    c_xo->add_option("--t", xo.t, "fibre scale");
    c_xo->add_option("--lambda", xo.lambda, "Berger parameter");
    c_xo->add_option("--out", out, "output file");

    SpaceArgs tab;
    std::vector<int> rows, cols;
    auto* c_tab = app.add_subcommand("table", "print brackets [e_i, e_j] (1-based labels)");
    add_space(c_tab, tab);
    c_tab->add_option("--rows", rows, "row indices")->required();
    c_tab->add_option("--cols", cols, "column indices")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        Config cfg;
        if (!config_file.empty()) cfg = load_config(config_file);
        else if (const auto env = config_path_from_env()) cfg = load_config(*env);
        if (!solver.empty()) cfg.certify.solver = solver == "ipm" ? SolverKind::ipm : SolverKind::dykstra;
        if (full_search) cfg.certify.full_search = true;

        const auto start = std::chrono::steady_clock::now();
        auto finish = [&](io::Report r) {
            if (timings) r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            emit(io::to_json(r), out);
            return exit_code(r);
        };

        if (*c_cert) return finish(cmd_certify(cert, cfg));
        if (*c_sweep) return finish(cmd_sweep(sweep, cfg));
        if (*c_fat) return finish(cmd_fatness(fat, cfg));
        if (*c_xs) {
            emit(io::to_json(resolve_split(xs)), out);
            return 0;
        }
        if (*c_xo) {
            emit(io::to_json(build_problem(xo, cfg).op), out);
            return 0;
        }
        if (*c_tab) {
            const HomogeneousSplit s = resolve_split(tab);
            const int d = s.algebra.dim;
            auto to0 = [&](const std::vector<int>& v) {
                std::vector<int> o;
                for (int i : v) {
                    if (i < 1 || i > d) throw UsageError("index " + std::to_string(i) + " out of range 1.." + std::to_string(d));
                    o.push_back(i - 1);
                }
                return o;
            };
            const auto r0 = to0(rows), c0 = to0(cols);
            const auto table = bracket_table(s, r0, c0);
            for (std::size_t i = 0; i < r0.size(); ++i)
                for (std::size_t j = 0; j < c0.size(); ++j) {
                    std::cout << "[" << s.labels[r0[i]] << "," << s.labels[c0[j]] << "] =";
                    bool any = false;
                    for (int k = 0; k < d; ++k) {
                        const double v = table[i][j][k];
                        if (std::abs(v) < 1e-12) continue;
                        std::cout << " " << std::showpos << std::setprecision(12) << v << std::noshowpos << "*"
                                  << s.labels[k];
                        any = true;
                    }
                    std::cout << (any ? "" : " 0") << "\n";
                }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const io::SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}
