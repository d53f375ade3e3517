#include "ruelle/map_io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace ruelle {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ParseError("unknown key \"" + it.key() + "\" in " + where);
    }
}

std::int64_t exact_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        throw ParseError(where + " must be an exact integer, got " + j.dump());
    }
    return j.get<std::int64_t>();
}

IntMatrix2 parse_linear(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
        j[0].size() != 2 || j[1].size() != 2) {
        throw ParseError(where + " must be a 2x2 integer array");
    }
    return IntMatrix2(exact_int(j[0][0], where), exact_int(j[0][1], where),
                      exact_int(j[1][0], where), exact_int(j[1][1], where));
}

}  // namespace

TrigPolynomial parse_trig_polynomial(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + " must be an array of coefficient terms");
    std::vector<TrigPolynomial::Term> terms;
    for (const auto& item : arr) {
        if (!item.is_object()) throw ParseError(where + " terms must be objects");
        require_keys(item, {"k", "re", "im"}, where);
        if (!item.contains("k") || !item["k"].is_array() || item["k"].size() != 2) {
            throw ParseError(where + " term needs \"k\": [k1, k2]");
        }
        TrigPolynomial::Term t;
        t.k = {static_cast<int>(exact_int(item["k"][0], where + ".k")),
               static_cast<int>(exact_int(item["k"][1], where + ".k"))};
        double re = item.value("re", 0.0);
        double im = item.value("im", 0.0);
        t.c = {re, im};
        terms.push_back(t);
    }
    return TrigPolynomial(std::move(terms));
}

json trig_polynomial_to_json(const TrigPolynomial& p) {
    json arr = json::array();
    for (const auto& t : p.terms()) {
        arr.push_back({{"k", {t.k[0], t.k[1]}}, {"re", t.c.real()}, {"im", t.c.imag()}});
    }
    return arr;
}

MapDefinition parse_map_definition(const json& j) {
    if (!j.is_object()) throw ParseError("map definition must be a JSON object");
    require_keys(j, {"linear", "displacement", "g"}, "map definition");
    if (!j.contains("linear")) throw ParseError("map definition missing \"linear\"");
    IntMatrix2 A = parse_linear(j["linear"], "\"linear\"");

    TrigPolynomial v1, v2;
    if (j.contains("displacement")) {
        const auto& d = j["displacement"];
        if (!d.is_array() || d.size() != 2) {
            throw ParseError("\"displacement\" must be an array of two coefficient lists");
        }
        v1 = parse_trig_polynomial(d[0], "displacement[0]");
        v2 = parse_trig_polynomial(d[1], "displacement[1]");
    }
    TrigPolynomial g = TrigPolynomial::constant(1.0);
    if (j.contains("g")) g = parse_trig_polynomial(j["g"], "\"g\"");
    return MapDefinition{TorusMap(A, std::move(v1), std::move(v2)), std::move(g)};
}

MapDefinition load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return parse_map_definition(j);
}

SweepPlan load_sweep_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sweep plan: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    require_keys(j, {"linear", "base_displacement", "direction", "g", "g_direction",
                     "t_values", "pipeline"},
                 "sweep plan");
    SweepPlan plan;
    if (!j.contains("linear")) throw ParseError("sweep plan missing \"linear\"");
    plan.linear = parse_linear(j["linear"], "\"linear\"");
    if (j.contains("base_displacement")) {
        const auto& d = j["base_displacement"];
        if (!d.is_array() || d.size() != 2) {
            throw ParseError("\"base_displacement\" must be two coefficient lists");
        }
        plan.base_v1 = parse_trig_polynomial(d[0], "base_displacement[0]");
        plan.base_v2 = parse_trig_polynomial(d[1], "base_displacement[1]");
    }
    if (!j.contains("direction")) throw ParseError("sweep plan missing \"direction\"");
    {
        const auto& d = j["direction"];
        if (!d.is_array() || d.size() != 2) {
            throw ParseError("\"direction\" must be two coefficient lists");
        }
        plan.direction_v1 = parse_trig_polynomial(d[0], "direction[0]");
        plan.direction_v2 = parse_trig_polynomial(d[1], "direction[1]");
    }
    if (j.contains("g")) plan.g_base = parse_trig_polynomial(j["g"], "\"g\"");
    if (j.contains("g_direction")) {
        plan.g_direction = parse_trig_polynomial(j["g_direction"], "\"g_direction\"");
    }
    if (!j.contains("t_values") || !j["t_values"].is_array() || j["t_values"].empty()) {
        throw ParseError("sweep plan needs a non-empty \"t_values\" array");
    }
    for (const auto& t : j["t_values"]) {
        if (!t.is_number()) throw ParseError("\"t_values\" entries must be numbers");
        plan.t_values.push_back(t.get<double>());
    }
    if (j.contains("pipeline")) {
        const auto& p = j["pipeline"];
        require_keys(p, {"trace_order", "cutoff", "gamma", "sigma", "r_min", "r_grid",
                         "newton_tol"},
                     "pipeline");
        plan.pipeline.trace_order = p.value("trace_order", plan.pipeline.trace_order);
        plan.pipeline.cutoff = p.value("cutoff", plan.pipeline.cutoff);
        plan.pipeline.gamma = p.value("gamma", plan.pipeline.gamma);
        plan.pipeline.sigma = p.value("sigma", plan.pipeline.sigma);
        plan.pipeline.r_min = p.value("r_min", plan.pipeline.r_min);
        plan.pipeline.newton_tol = p.value("newton_tol", plan.pipeline.newton_tol);
        if (p.contains("r_grid")) {
            for (const auto& r : p["r_grid"]) plan.pipeline.r_grid.push_back(r.get<double>());
        }
    }
    return plan;
}

void atomic_write(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::string dir = ".";
    if (auto slash = path.find_last_of('/'); slash != std::string::npos) {
        dir = path.substr(0, slash + 1);
    } else {
        dir = "";
    }
    std::random_device rd;
    std::string tmp = dir + ".tmp-" + std::to_string(rd()) + "-" +
                      path.substr(dir.size());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cli: cannot open temporary file " + tmp);
        out << content;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw Error("cli: write failed for " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cli: cannot rename " + tmp + " to " + path);
    }
}

}  // namespace ruelle
