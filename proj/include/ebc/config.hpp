#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebc/harness.hpp"
#include "ebc/io.hpp"

namespace ebc {

// Strict JSON configuration: schema-versioned, unknown keys rejected so a
// typo never silently falls back to a default.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace cfg {

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(context + ": unknown key '" + it.key() + "'");
}

inline const json& require(const json& obj, const std::string& key,
                           const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(context + ": missing required key '" + key + "'");
    return *it;
}

inline double number(const json& j, const std::string& context) {
    if (!j.is_number()) throw ConfigError(context + ": expected a number");
    return j.get<double>();
}

inline int integer(const json& j, const std::string& context) {
    if (!j.is_number_integer()) throw ConfigError(context + ": expected an integer");
    return j.get<int>();
}

inline void check_schema_version(const json& root) {
    const json& v = require(root, "schema_version", "config");
    if (!v.is_number_integer() || v.get<int>() != 1)
        throw ConfigError("config: unsupported schema_version (expected 1)");
}

inline SphereGeometry geometry(const json& j) {
    reject_unknown_keys(j, {"R1", "R2"}, "geometry");
    return SphereGeometry(number(require(j, "R1", "geometry"), "geometry.R1"),
                          number(require(j, "R2", "geometry"), "geometry.R2"));
}

inline ScalingLaw scaling_law(const json& j) {
    reject_unknown_keys(j, {"c_sigma", "p_sigma", "c_mu", "p_mu"}, "scaling_law");
    return ScalingLaw(number(require(j, "c_sigma", "scaling_law"), "scaling_law.c_sigma"),
                      number(require(j, "p_sigma", "scaling_law"), "scaling_law.p_sigma"),
                      number(require(j, "c_mu", "scaling_law"), "scaling_law.c_mu"),
                      number(require(j, "p_mu", "scaling_law"), "scaling_law.p_mu"));
}

inline ExtendedLimit extended_limit(const json& j, const std::string& context) {
    reject_unknown_keys(j, {"kind", "value"}, context);
    const std::string kind = require(j, "kind", context).get<std::string>();
    if (kind == "zero") return ExtendedLimit::zero();
    if (kind == "infinite") return ExtendedLimit::infinite();
    if (kind == "finite")
        return ExtendedLimit::finite(number(require(j, "value", context), context + ".value"));
    throw ConfigError(context + ": kind must be zero|finite|infinite");
}

inline Height height(const json& j, const std::string& context) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return Height::infinite();
        throw ConfigError(context + ": expected a positive number or \"inf\"");
    }
    return Height(number(j, context));
}

inline EbcFamily family(const json& j) {
    reject_unknown_keys(j, {"family", "b", "gamma", "H", "beta"}, "boundary_condition");
    const std::string name = require(j, "family", "boundary_condition").get<std::string>();
    if (name == "DecoupledNeumann") return EbcFamily::decoupled_neumann();
    if (name == "RobinContact")
        return EbcFamily::robin_contact(number(require(j, "b", name), name + ".b"));
    if (name == "DtnCoupling")
        return EbcFamily::dtn_coupling(number(require(j, "gamma", name), name + ".gamma"),
                                       height(require(j, "H", name), name + ".H"));
    if (name == "PerfectTransmission") return EbcFamily::perfect_transmission();
    if (name == "FluxJumpLB")
        return EbcFamily::flux_jump_lb(number(require(j, "beta", name), name + ".beta"));
    if (name == "ConstantTraceDecoupled") return EbcFamily::constant_trace_decoupled();
    if (name == "ConstantTraceRobin")
        return EbcFamily::constant_trace_robin(number(require(j, "b", name), name + ".b"));
    if (name == "ConstantTraceTransmission")
        return EbcFamily::constant_trace_transmission();
    throw ConfigError("boundary_condition: unknown family '" + name + "'");
}

inline InitialDataPreset initial_data(const json& j) {
    reject_unknown_keys(
        j, {"preset", "amplitude", "l", "m", "center_r", "center_alpha", "width"},
        "initial_data");
    InitialDataPreset p;
    p.id = require(j, "preset", "initial_data").get<std::string>();
    if (j.contains("amplitude")) p.amplitude = number(j["amplitude"], "initial_data.amplitude");
    if (j.contains("l")) p.l = integer(j["l"], "initial_data.l");
    if (j.contains("m")) p.m = integer(j["m"], "initial_data.m");
    if (j.contains("center_r")) p.center_r = number(j["center_r"], "initial_data.center_r");
    if (j.contains("center_alpha"))
        p.center_alpha = number(j["center_alpha"], "initial_data.center_alpha");
    if (j.contains("width")) p.width = number(j["width"], "initial_data.width");
    return p;
}

inline ForcingPreset forcing(const json& j) {
    reject_unknown_keys(j, {"preset", "l", "m", "amplitude", "r0", "width", "tau"},
                        "forcing");
    ForcingPreset p;
    p.id = require(j, "preset", "forcing").get<std::string>();
    if (j.contains("l")) p.l = integer(j["l"], "forcing.l");
    if (j.contains("m")) p.m = integer(j["m"], "forcing.m");
    if (j.contains("amplitude")) p.amplitude = number(j["amplitude"], "forcing.amplitude");
    if (j.contains("r0")) p.r0 = number(j["r0"], "forcing.r0");
    if (j.contains("width")) p.width = number(j["width"], "forcing.width");
    if (j.contains("tau")) p.tau = number(j["tau"], "forcing.tau");
    return p;
}

struct TimeSection {
    double T = 0.5, dt = 1e-3, theta = 1.0;
};

inline TimeSection time_section(const json& j) {
    reject_unknown_keys(j, {"T", "dt", "theta"}, "time");
    TimeSection t;
    t.T = number(require(j, "T", "time"), "time.T");
    t.dt = number(require(j, "dt", "time"), "time.dt");
    if (j.contains("theta")) t.theta = number(j["theta"], "time.theta");
    return t;
}

} // namespace cfg

struct ClassifyConfig {
    bool has_law = false;
    ScalingLaw law;
    bool has_limits = false;
    LimitTriple limits;
};

inline ClassifyConfig parse_classify_config(const json& root) {
    cfg::check_schema_version(root);
    cfg::reject_unknown_keys(root, {"schema_version", "scaling_law", "limits"}, "config");
    ClassifyConfig c;
    if (root.contains("scaling_law")) {
        c.has_law = true;
        c.law = cfg::scaling_law(root["scaling_law"]);
    }
    if (root.contains("limits")) {
        const json& j = root["limits"];
        cfg::reject_unknown_keys(j, {"b", "gamma", "beta"}, "limits");
        c.has_limits = true;
        c.limits.b = cfg::extended_limit(cfg::require(j, "b", "limits"), "limits.b");
        c.limits.gamma = cfg::extended_limit(cfg::require(j, "gamma", "limits"), "limits.gamma");
        c.limits.beta = cfg::extended_limit(cfg::require(j, "beta", "limits"), "limits.beta");
    }
    if (!c.has_law && !c.has_limits)
        throw ConfigError("classify: need a 'scaling_law' or a 'limits' section");
    if (c.has_law && c.has_limits)
        throw ConfigError("classify: 'scaling_law' and 'limits' are mutually exclusive");
    return c;
}

struct SolveFullConfig {
    LayerConfig layer;
    int lmax = 0;
    cfg::TimeSection time;
    InitialDataPreset initial;
    ForcingPreset forcing;
    int n_inner = 48, n_layer = 32, n_outer = 48;
    double grading = 3.0;
    int snapshot_stride = 10;
};

inline SolveFullConfig parse_solve_full_config(const json& root) {
    cfg::check_schema_version(root);
    cfg::reject_unknown_keys(root,
                             {"schema_version", "geometry", "k1", "k2", "layer", "lmax",
                              "time", "initial_data", "forcing", "mesh",
                              "snapshot_stride"},
                             "config");
    SolveFullConfig c;
    const SphereGeometry geom = cfg::geometry(cfg::require(root, "geometry", "config"));
    const double k1 = cfg::number(cfg::require(root, "k1", "config"), "k1");
    const double k2 = cfg::number(cfg::require(root, "k2", "config"), "k2");
    const json& layer = cfg::require(root, "layer", "config");
    cfg::reject_unknown_keys(layer, {"delta", "sigma", "mu"}, "layer");
    c.layer = LayerConfig(geom, cfg::number(cfg::require(layer, "delta", "layer"), "layer.delta"),
                          cfg::number(cfg::require(layer, "sigma", "layer"), "layer.sigma"),
                          cfg::number(cfg::require(layer, "mu", "layer"), "layer.mu"), k1, k2);
    c.lmax = cfg::integer(cfg::require(root, "lmax", "config"), "lmax");
    c.time = cfg::time_section(cfg::require(root, "time", "config"));
    c.initial = cfg::initial_data(cfg::require(root, "initial_data", "config"));
    if (root.contains("forcing")) c.forcing = cfg::forcing(root["forcing"]);
    if (root.contains("mesh")) {
        const json& m = root["mesh"];
        cfg::reject_unknown_keys(m, {"n_inner", "n_layer", "n_outer", "grading"}, "mesh");
        if (m.contains("n_inner")) c.n_inner = cfg::integer(m["n_inner"], "mesh.n_inner");
        if (m.contains("n_layer")) c.n_layer = cfg::integer(m["n_layer"], "mesh.n_layer");
        if (m.contains("n_outer")) c.n_outer = cfg::integer(m["n_outer"], "mesh.n_outer");
        if (m.contains("grading")) c.grading = cfg::number(m["grading"], "mesh.grading");
    }
    if (root.contains("snapshot_stride"))
        c.snapshot_stride = cfg::integer(root["snapshot_stride"], "snapshot_stride");
    return c;
}

struct SolveEbcConfig {
    EffectiveConfig effective;
    EbcFamily family;
    int lmax = 0;
    cfg::TimeSection time;
    InitialDataPreset initial;
    ForcingPreset forcing;
    int n_inner = 64, n_outer = 64;
    double grading = 3.0;
    int snapshot_stride = 10;
};

inline SolveEbcConfig parse_solve_ebc_config(const json& root) {
    cfg::check_schema_version(root);
    cfg::reject_unknown_keys(root,
                             {"schema_version", "geometry", "k1", "k2",
                              "boundary_condition", "lmax", "time", "initial_data",
                              "forcing", "mesh", "snapshot_stride"},
                             "config");
    SolveEbcConfig c;
    const SphereGeometry geom = cfg::geometry(cfg::require(root, "geometry", "config"));
    c.effective = EffectiveConfig(
        geom, cfg::number(cfg::require(root, "k1", "config"), "k1"),
        cfg::number(cfg::require(root, "k2", "config"), "k2"));
    c.family = cfg::family(cfg::require(root, "boundary_condition", "config"));
    c.lmax = cfg::integer(cfg::require(root, "lmax", "config"), "lmax");
    c.time = cfg::time_section(cfg::require(root, "time", "config"));
    c.initial = cfg::initial_data(cfg::require(root, "initial_data", "config"));
    if (root.contains("forcing")) c.forcing = cfg::forcing(root["forcing"]);
    if (root.contains("mesh")) {
        const json& m = root["mesh"];
        cfg::reject_unknown_keys(m, {"n_inner", "n_outer", "grading"}, "mesh");
        if (m.contains("n_inner")) c.n_inner = cfg::integer(m["n_inner"], "mesh.n_inner");
        if (m.contains("n_outer")) c.n_outer = cfg::integer(m["n_outer"], "mesh.n_outer");
        if (m.contains("grading")) c.grading = cfg::number(m["grading"], "mesh.grading");
    }
    if (root.contains("snapshot_stride"))
        c.snapshot_stride = cfg::integer(root["snapshot_stride"], "snapshot_stride");
    return c;
}

inline ExperimentConfig parse_converge_config(const json& root) {
    cfg::check_schema_version(root);
    cfg::reject_unknown_keys(root,
                             {"schema_version", "scaling_law", "delta_sequence",
                              "geometry", "k1", "k2", "lmax", "time", "initial_data",
                              "forcing", "mesh", "snapshot_stride"},
                             "config");
    ExperimentConfig c;
    c.law = cfg::scaling_law(cfg::require(root, "scaling_law", "config"));
    const json& deltas = cfg::require(root, "delta_sequence", "config");
    if (!deltas.is_array() || deltas.empty())
        throw ConfigError("delta_sequence: expected a non-empty array");
    for (const json& d : deltas)
        c.delta_sequence.push_back(cfg::number(d, "delta_sequence[]"));
    c.geom = cfg::geometry(cfg::require(root, "geometry", "config"));
    c.k1 = cfg::number(cfg::require(root, "k1", "config"), "k1");
    c.k2 = cfg::number(cfg::require(root, "k2", "config"), "k2");
    c.lmax = cfg::integer(cfg::require(root, "lmax", "config"), "lmax");
    const auto t = cfg::time_section(cfg::require(root, "time", "config"));
    c.T = t.T;
    c.dt = t.dt;
    c.theta = t.theta;
    c.initial = cfg::initial_data(cfg::require(root, "initial_data", "config"));
    if (root.contains("forcing")) c.forcing = cfg::forcing(root["forcing"]);
    if (root.contains("mesh")) {
        const json& m = root["mesh"];
        cfg::reject_unknown_keys(m,
                                 {"n_inner", "n_layer", "n_outer", "n_inner_effective",
                                  "n_outer_effective", "grading"},
                                 "mesh");
        if (m.contains("n_inner")) c.mesh.n_inner = cfg::integer(m["n_inner"], "mesh.n_inner");
        if (m.contains("n_layer")) c.mesh.n_layer = cfg::integer(m["n_layer"], "mesh.n_layer");
        if (m.contains("n_outer")) c.mesh.n_outer = cfg::integer(m["n_outer"], "mesh.n_outer");
        if (m.contains("n_inner_effective"))
            c.mesh.n_inner_effective = cfg::integer(m["n_inner_effective"], "mesh.n_inner_effective");
        if (m.contains("n_outer_effective"))
            c.mesh.n_outer_effective = cfg::integer(m["n_outer_effective"], "mesh.n_outer_effective");
        if (m.contains("grading")) c.mesh.grading = cfg::number(m["grading"], "mesh.grading");
    }
    if (root.contains("snapshot_stride"))
        c.snapshot_stride = cfg::integer(root["snapshot_stride"], "snapshot_stride");
    c.validate();
    return c;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j = json::parse(ss.str(), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ConfigError("malformed JSON in " + path);
    return j;
}

} // namespace ebc
