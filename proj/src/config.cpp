#include "strongcurv/config.hpp"

#include "strongcurv/io.hpp"

#include <cstdlib>

namespace strongcurv {

namespace {

double positive(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw io::SchemaError("$." + key, "expected a number");
    const double d = v.get<double>();
    if (!(d > 0)) throw io::SchemaError("$." + key, "must be positive");
    return d;
}

int count(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 1) throw io::SchemaError("$." + key, "expected a positive integer");
    return v.get<int>();
}

}  // namespace

Config config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw io::SchemaError("$", "config must be an object");
    Config c;
    auto& cc = c.certify;
    for (const auto& [key, v] : j.items()) {
        if (key == "solver") {
            const std::string s = v.is_string() ? v.get<std::string>() : "";
            if (s == "ipm") cc.solver = SolverKind::ipm;
            else if (s == "dykstra") cc.solver = SolverKind::dykstra;
            else throw io::SchemaError("$.solver", "expected \"ipm\" or \"dykstra\"");
        } else if (key == "delta_rel") cc.delta_rel = positive(v, key);
        else if (key == "eps_psd") cc.eps_psd = positive(v, key);
        else if (key == "eps_dual") cc.eps_dual = positive(v, key);
        else if (key == "zero_tol") cc.zero_tol = positive(v, key);
        else if (key == "ipm_tol") cc.ipm_tol = positive(v, key);
        else if (key == "max_iterations") cc.max_iterations = count(v, key);
        else if (key == "dykstra_iterations") cc.dykstra_iterations = count(v, key);
        else if (key == "full_search") {
            if (!v.is_boolean()) throw io::SchemaError("$.full_search", "expected a boolean");
            cc.full_search = v.get<bool>();
        } else if (key == "seed") {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw io::SchemaError("$.seed", "expected a nonnegative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "restarts") c.restarts = count(v, key);
        else if (key == "sweep_tol") c.sweep_tol = positive(v, key);
        else if (key == "kernel_tol") c.kernel_tol = positive(v, key);
        else throw io::SchemaError("$." + key, "unknown config key");
    }
    return c;
}

nlohmann::json to_json(const Config& c) {
    const auto& cc = c.certify;
    return {{"solver", cc.solver == SolverKind::ipm ? "ipm" : "dykstra"},
            {"delta_rel", cc.delta_rel},
            {"eps_psd", cc.eps_psd},
            {"eps_dual", cc.eps_dual},
            {"zero_tol", cc.zero_tol},
            {"ipm_tol", cc.ipm_tol},
            {"max_iterations", cc.max_iterations},
            {"dykstra_iterations", cc.dykstra_iterations},
            {"full_search", cc.full_search},
            {"seed", c.seed},
            {"restarts", c.restarts},
            {"sweep_tol", c.sweep_tol},
            {"kernel_tol", c.kernel_tol}};
}

Config load_config(const std::string& path) { return config_from_json(io::read_file(path)); }

std::optional<std::string> config_path_from_env() {
    const char* p = std::getenv("STRONGCURV_CONFIG");
    if (p == nullptr || *p == '\0') return std::nullopt;
    return std::string(p);
}

}  // namespace strongcurv
