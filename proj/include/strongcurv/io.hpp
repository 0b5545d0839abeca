#pragma once

#include "strongcurv/certify.hpp"
#include "strongcurv/exterior.hpp"
#include "strongcurv/liealg.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strongcurv::io {

using json = nlohmann::json;

/// Malformed input; `path` is a JSON pointer-like location such as "$.bracket[2][5]".
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

json to_json(const SymOp& r);
SymOp symop_from_json(const json& j, const std::string& path = "$");

json to_json(const FourForm& f);
FourForm fourform_from_json(const json& j, const std::string& path = "$");

json to_json(const HomogeneousSplit& s);
HomogeneousSplit split_from_json(const json& j, const std::string& path = "$");

json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j, const std::string& path = "$");

struct Threshold {
    std::string name;
    double lo = 0, hi = 0;  // the transition lies in [lo, hi]
};

struct Report {
    std::string command;
    std::string space;
    json parameters = json::object();
    std::optional<double> t_or_lambda;
    std::optional<Certificate> certificate;
    std::vector<int> kernel_dims;
    std::vector<Threshold> thresholds;
    json details = json::object();
    std::string tool_version;
    json config = json::object();
    std::optional<double> wall_time;
};

json to_json(const Report& r);
Report report_from_json(const json& j, const std::string& path = "$");

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);
/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace strongcurv::io
