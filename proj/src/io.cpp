#include "strongcurv/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace strongcurv::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(at(path, key), "missing field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
    return v;
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
}

const json& array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    if (size && j.size() != *size)
        throw SchemaError(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
    return j;
}

Vec vector_of(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
    const json& a = array(j, path, size);
    Vec v(static_cast<long>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<long>(i)] = number(a[i], at(path, i));
    return v;
}

std::vector<int> indices_of(const json& j, const std::string& path) {
    const json& a = array(j, path);
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(integer(a[i], at(path, i)));
    return out;
}

json rows_of(const Mat& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Nested rows or a flat row-major array.
Mat square_of(const json& j, long size, const std::string& path) {
    const json& a = array(j, path);
    Mat m(size, size);
    if (a.size() == static_cast<std::size_t>(size * size) && (a.empty() || !a[0].is_array())) {
        for (long i = 0; i < size * size; ++i) m(i / size, i % size) = number(a[i], at(path, i));
        return m;
    }
    array(a, path, static_cast<std::size_t>(size));
    for (long i = 0; i < size; ++i) {
        const Vec row = vector_of(a[i], at(path, i), static_cast<std::size_t>(size));
        m.row(i) = row.transpose();
    }
    return m;
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (long i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

json to_json(const SymOp& r) { return {{"n", r.n}, {"basis", "lex"}, {"matrix", rows_of(r.mat)}}; }

SymOp symop_from_json(const json& j, const std::string& path) {
    const int n = integer(field(j, "n", path), at(path, "n"));
    if (n < 2) throw SchemaError(at(path, "n"), "dimension must be at least 2");
    if (j.contains("basis") && j["basis"] != "lex") throw SchemaError(at(path, "basis"), "only \"lex\" is supported");
    const Mat m = square_of(field(j, "matrix", path), binomial(n, 2), at(path, "matrix"));
    try {
        return SymOp(n, m);
    } catch (const std::exception& e) {
        throw SchemaError(at(path, "matrix"), e.what());
    }
}

json to_json(const FourForm& f) { return {{"n", f.n}, {"coords", vec_json(f.coords)}}; }

FourForm fourform_from_json(const json& j, const std::string& path) {
    const int n = integer(field(j, "n", path), at(path, "n"));
    if (n < 0) throw SchemaError(at(path, "n"), "dimension must be nonnegative");
    return FourForm(n, vector_of(field(j, "coords", path), at(path, "coords"),
                                 static_cast<std::size_t>(binomial(n, 4))));
}

json to_json(const HomogeneousSplit& s) {
    const int d = s.algebra.dim;
    json br = json::array();
    for (int i = 0; i < d; ++i) {
        json row = json::array();
        for (int k = 0; k < d; ++k) row.push_back(vec_json(s.algebra.bracket(i, k)));
        br.push_back(std::move(row));
    }
    return {{"name", s.name},
            {"dim", d},
            {"q_normalization", s.algebra.q_normalization},
            {"bracket", std::move(br)},
            {"h", s.h},
            {"p", s.p},
            {"m", s.m},
            {"labels", s.labels}};
}

HomogeneousSplit split_from_json(const json& j, const std::string& path) {
    const int d = integer(field(j, "dim", path), at(path, "dim"));
    if (d <= 0) throw SchemaError(at(path, "dim"), "dimension must be positive");
    const std::string bpath = at(path, "bracket");
    const json& br = array(field(j, "bracket", path), bpath, static_cast<std::size_t>(d));
    std::vector<double> c(static_cast<std::size_t>(d) * d * d);
    for (int i = 0; i < d; ++i) {
        const json& row = array(br[i], at(bpath, i), static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            const Vec v = vector_of(row[k], at(at(bpath, i), k), static_cast<std::size_t>(d));
            for (int l = 0; l < d; ++l) c[(static_cast<std::size_t>(i) * d + k) * d + l] = v[l];
        }
    }
    HomogeneousSplit s;
    try {
        s.algebra = LieAlgebraData::from_structure(d, std::move(c));
    } catch (const std::exception& e) {
        throw SchemaError(bpath, e.what());
    }
    if (j.contains("q_normalization"))
        s.algebra.q_normalization = number(j["q_normalization"], at(path, "q_normalization"));
    s.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "custom";
    s.h = indices_of(field(j, "h", path), at(path, "h"));
    s.p = indices_of(field(j, "p", path), at(path, "p"));
    s.m = indices_of(field(j, "m", path), at(path, "m"));
    if (j.contains("labels")) {
        const json& lab = array(j["labels"], at(path, "labels"), static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < lab.size(); ++i) {
            if (!lab[i].is_string()) throw SchemaError(at(at(path, "labels"), i), "expected a string");
            s.labels.push_back(lab[i].get<std::string>());
        }
    } else {
        for (int i = 0; i < d; ++i) s.labels.push_back("e" + std::to_string(i + 1));
    }
    try {
        s.validate();
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
    return s;
}

json to_json(const Certificate& c) {
    json j = {{"kind", to_string(c.kind)},
              {"solver", c.solver},
              {"search_dim", c.search_dim},
              {"iterations", c.iterations},
              {"lambda_min", c.lambda_min},
              {"delta", c.delta},
              {"residuals", {{"primal", c.primal_residual}, {"dual", c.dual_residual}, {"gap", c.gap}}}};
    if (c.kind == CertKind::PrimalPositive || c.kind == CertKind::PrimalNonnegative) {
        j["omega"] = to_json(c.omega);
        j["coeffs"] = vec_json(c.coeffs);
    }
    if (c.kind == CertKind::DualInfeasible) {
        j["dual_S"] = {{"size", c.dual_S.rows()}, {"matrix", rows_of(c.dual_S)}};
        j["pairing"] = c.pairing;
        j["dual_bianchi"] = c.dual_bianchi;
    }
    return j;
}

Certificate certificate_from_json(const json& j, const std::string& path) {
    Certificate c;
    const json& kind = field(j, "kind", path);
    if (!kind.is_string()) throw SchemaError(at(path, "kind"), "expected a string");
    try {
        c.kind = cert_kind_from_string(kind.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(at(path, "kind"), e.what());
    }
    if (j.contains("solver")) c.solver = j["solver"].get<std::string>();
    if (j.contains("search_dim")) c.search_dim = integer(j["search_dim"], at(path, "search_dim"));
    if (j.contains("iterations")) c.iterations = integer(j["iterations"], at(path, "iterations"));
    c.lambda_min = number(field(j, "lambda_min", path), at(path, "lambda_min"));
    if (j.contains("delta")) c.delta = number(j["delta"], at(path, "delta"));
    if (j.contains("residuals")) {
        const std::string rp = at(path, "residuals");
        c.primal_residual = number(field(j["residuals"], "primal", rp), at(rp, "primal"));
        c.dual_residual = number(field(j["residuals"], "dual", rp), at(rp, "dual"));
        c.gap = number(field(j["residuals"], "gap", rp), at(rp, "gap"));
    }
    if (j.contains("omega")) c.omega = fourform_from_json(j["omega"], at(path, "omega"));
    if (j.contains("coeffs")) c.coeffs = vector_of(j["coeffs"], at(path, "coeffs"));
    if (j.contains("dual_S")) {
        const std::string sp = at(path, "dual_S");
        const int size = integer(field(j["dual_S"], "size", sp), at(sp, "size"));
        c.dual_S = square_of(field(j["dual_S"], "matrix", sp), size, at(sp, "matrix"));
    }
    if (j.contains("pairing")) c.pairing = number(j["pairing"], at(path, "pairing"));
    if (j.contains("dual_bianchi")) c.dual_bianchi = number(j["dual_bianchi"], at(path, "dual_bianchi"));
    return c;
}

json to_json(const Report& r) {
    json j = {{"command", r.command}, {"space", r.space}, {"parameters", r.parameters}};
    if (r.t_or_lambda) j["t_or_lambda"] = *r.t_or_lambda;
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    j["kernel_dims"] = r.kernel_dims;
    json th = json::array();
    for (const auto& t : r.thresholds) th.push_back({{"name", t.name}, {"lo", t.lo}, {"hi", t.hi}});
    j["thresholds"] = std::move(th);
    j["details"] = r.details;
    j["tool_version"] = r.tool_version;
    j["config"] = r.config;
    if (r.wall_time) j["wall_time"] = *r.wall_time;
    return j;
}

Report report_from_json(const json& j, const std::string& path) {
    Report r;
    const json& cmd = field(j, "command", path);
    if (!cmd.is_string()) throw SchemaError(at(path, "command"), "expected a string");
    r.command = cmd.get<std::string>();
    r.space = field(j, "space", path).get<std::string>();
    r.parameters = field(j, "parameters", path);
    if (j.contains("t_or_lambda")) r.t_or_lambda = number(j["t_or_lambda"], at(path, "t_or_lambda"));
    if (j.contains("certificate")) r.certificate = certificate_from_json(j["certificate"], at(path, "certificate"));
    if (j.contains("kernel_dims")) r.kernel_dims = indices_of(j["kernel_dims"], at(path, "kernel_dims"));
    if (j.contains("thresholds")) {
        const std::string tp = at(path, "thresholds");
        const json& a = array(j["thresholds"], tp);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string ip = at(tp, i);
            Threshold t;
            t.name = field(a[i], "name", ip).get<std::string>();
            t.lo = number(field(a[i], "lo", ip), at(ip, "lo"));
            t.hi = number(field(a[i], "hi", ip), at(ip, "hi"));
            r.thresholds.push_back(t);
        }
    }
    if (j.contains("details")) r.details = j["details"];
    if (j.contains("tool_version")) r.tool_version = j["tool_version"].get<std::string>();
    if (j.contains("config")) r.config = j["config"];
    if (j.contains("wall_time")) r.wall_time = number(j["wall_time"], at(path, "wall_time"));
    return r;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("$", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << dump(j);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace strongcurv::io
