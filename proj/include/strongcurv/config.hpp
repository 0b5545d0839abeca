#pragma once

#include "strongcurv/certify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace strongcurv {

struct Config {
    CertifyConfig certify;
    std::uint64_t seed = 1;
    int restarts = 50;        // min_sec_estimate
    double sweep_tol = 1e-3;  // bisection width in the swept parameter
    double kernel_tol = 1e-9;
};

Config config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Config& c);
Config load_config(const std::string& path);

/// Path named by STRONGCURV_CONFIG, if set and non-empty.
std::optional<std::string> config_path_from_env();

}  // namespace strongcurv
