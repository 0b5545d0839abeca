#pragma once

#include "strongcurv/config.hpp"
#include "strongcurv/io.hpp"
#include "strongcurv/liealg.hpp"

#include <optional>
#include <string>

namespace strongcurv {

inline constexpr const char* kToolVersion = "0.1.0";

/// Thrown for bad command-line input; maps to exit code 64.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpaceArgs {
    std::string space;       // built-in name, or empty with split_file
    std::string split_file;  // user split JSON
    int n = 1, k = 1, l = 1;
};

struct CertifyArgs {
    SpaceArgs where;
    std::optional<double> t;
    std::optional<double> lambda;  // berger spaces: t = 2 lambda
    bool nonnegative = false;
};

struct SweepArgs {
    SpaceArgs where;
    std::string param = "lambda";  // "lambda" (berger) or "t"
    double lo = 0.1, hi = 1.4;
    int steps = 27;
};

/// Split for a built-in name or a JSON file.
HomogeneousSplit resolve_split(const SpaceArgs& a);

/// The operator certified by `certify`, its dimension and the default search basis.
struct Problem {
    std::string label;
    SymOp op;
    std::vector<FourForm> forms;
    std::optional<double> t;
};
Problem build_problem(const CertifyArgs& a, const Config& cfg);

io::Report cmd_certify(const CertifyArgs& a, const Config& cfg);
io::Report cmd_sweep(const SweepArgs& a, const Config& cfg);
io::Report cmd_fatness(const SpaceArgs& a, const Config& cfg);

/// 0 feasible, 2 inconclusive, 3 infeasible.
int exit_code(CertKind k);
int exit_code(const io::Report& r);

}  // namespace strongcurv
