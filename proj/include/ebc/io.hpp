#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebc/ebc_families.hpp"
#include "ebc/full_solver.hpp"
#include "ebc/harness.hpp"
#include "ebc/mesh.hpp"
#include "ebc/regimes.hpp"

namespace ebc {

using json = nlohmann::json;

// Shortest round-trippable decimal form of a double.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) {
        // try shorter forms
        for (int digits = 1; digits <= 16; ++digits) {
            char probe[40];
            std::snprintf(probe, sizeof(probe), "%.*g", digits, x);
            std::sscanf(probe, "%lf", &back);
            if (back == x) return probe;
        }
    }
    return buf;
}

// Write-through-temp-then-rename so readers never observe partial files.
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// Snapshot CSV shared by the full and effective solvers (diffable schemas).
inline std::string snapshots_to_csv(const std::vector<ModeSolution>& solutions,
                                    const RadialMesh& mesh) {
    std::string out = "l,m,t,r,value\n";
    for (const ModeSolution& sol : solutions)
        for (std::size_t s = 0; s < sol.times.size(); ++s)
            for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
                out += std::to_string(sol.mode.l);
                out += ',';
                out += std::to_string(sol.mode.m);
                out += ',';
                out += format_double(sol.times[s]);
                out += ',';
                out += format_double(mesh.centers[i]);
                out += ',';
                out += format_double(sol.snapshots[s][i]);
                out += '\n';
            }
    return out;
}

inline json extended_limit_to_json(const ExtendedLimit& v) {
    switch (v.kind) {
        case ExtendedLimit::Kind::Zero: return json{{"kind", "zero"}};
        case ExtendedLimit::Kind::Finite:
            return json{{"kind", "finite"}, {"value", v.value}};
        case ExtendedLimit::Kind::Infinite: return json{{"kind", "infinite"}};
    }
    throw std::logic_error("extended_limit_to_json");
}

inline json family_to_json(const EbcFamily& f) {
    json j{{"family", f.name()}};
    using K = EbcFamily::Kind;
    switch (f.kind) {
        case K::RobinContact:
        case K::ConstantTraceRobin: j["b"] = f.b; break;
        case K::DtnCoupling:
            j["gamma"] = f.gamma;
            if (f.H.is_infinite())
                j["H"] = "inf";
            else
                j["H"] = f.H.value;
            break;
        case K::FluxJumpLB: j["beta"] = f.beta; break;
        default: break;
    }
    return j;
}

inline json regime_cell_to_json(const RegimeCell& cell) {
    json j;
    j["case"] = cell.case_id;
    j["b"] = extended_limit_to_json(cell.b);
    j["gamma"] = extended_limit_to_json(cell.gamma);
    j["beta"] = extended_limit_to_json(cell.beta);
    j["feasible"] = cell.feasible;
    if (!cell.feasible)
        j["reason"] = cell.reason;
    else
        j["boundary_condition"] = family_to_json(cell.family);
    j["requires_sigma_delta_cubed"] = cell.requires_sigma_delta_cubed;
    j["sigma_delta_cubed_ok"] = cell.sigma_delta_cubed_ok;
    return j;
}

enum class ReportFormat { Csv, Json, Gnuplot };

inline ReportFormat report_format_from_string(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    if (s == "gnuplot") return ReportFormat::Gnuplot;
    throw std::invalid_argument("unknown report format: " + s);
}

inline json report_to_json(const ConvergenceReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"delta", row.delta},
                            {"sup_t_error", row.sup_t_error},
                            {"sup_t_error_layer_included", row.sup_t_error_layer_included},
                            {"max_full_layer_mass", row.max_full_layer_mass},
                            {"full_runtime_s", row.full_runtime_s},
                            {"effective_runtime_s", row.effective_runtime_s}});
    json j;
    j["schema_version"] = 1;
    j["regime"] = regime_cell_to_json(r.cell);
    j["rows"] = rows;
    j["metadata"] = json{
        {"law",
         json{{"c_sigma", r.law.c_sigma},
              {"p_sigma", r.law.p_sigma},
              {"c_mu", r.law.c_mu},
              {"p_mu", r.law.p_mu}}},
        {"geometry", json{{"R1", r.geom.r1}, {"R2", r.geom.r2}}},
        {"k1", r.k1},
        {"k2", r.k2},
        {"lmax", r.lmax},
        {"T", r.T},
        {"dt", r.dt},
        {"theta", r.theta},
        {"mesh",
         json{{"n_inner", r.mesh.n_inner},
              {"n_layer", r.mesh.n_layer},
              {"n_outer", r.mesh.n_outer},
              {"n_inner_effective", r.mesh.n_inner_effective},
              {"n_outer_effective", r.mesh.n_outer_effective},
              {"grading", r.mesh.grading}}},
        {"snapshot_stride", r.snapshot_stride},
        {"initial_preset", r.initial_preset},
        {"forcing_preset", r.forcing_preset},
        {"sigma_delta_cubed_warning", r.sigma_delta_cubed_warning},
        {"version", r.version}};
    return j;
}

// Reads back what report_to_json wrote (numeric payload only; the regime
// cell is reconstructed from the law).
inline ConvergenceReport report_from_json(const json& j) {
    ConvergenceReport r;
    const json& meta = j.at("metadata");
    const json& law = meta.at("law");
    r.law = ScalingLaw(law.at("c_sigma").get<double>(), law.at("p_sigma").get<double>(),
                       law.at("c_mu").get<double>(), law.at("p_mu").get<double>());
    r.cell = classify(r.law);
    r.geom = SphereGeometry(meta.at("geometry").at("R1").get<double>(),
                            meta.at("geometry").at("R2").get<double>());
    r.k1 = meta.at("k1").get<double>();
    r.k2 = meta.at("k2").get<double>();
    r.lmax = meta.at("lmax").get<int>();
    r.T = meta.at("T").get<double>();
    r.dt = meta.at("dt").get<double>();
    r.theta = meta.at("theta").get<double>();
    r.mesh.n_inner = meta.at("mesh").at("n_inner").get<int>();
    r.mesh.n_layer = meta.at("mesh").at("n_layer").get<int>();
    r.mesh.n_outer = meta.at("mesh").at("n_outer").get<int>();
    r.mesh.n_inner_effective = meta.at("mesh").at("n_inner_effective").get<int>();
    r.mesh.n_outer_effective = meta.at("mesh").at("n_outer_effective").get<int>();
    r.mesh.grading = meta.at("mesh").at("grading").get<double>();
    r.snapshot_stride = meta.at("snapshot_stride").get<int>();
    r.initial_preset = meta.at("initial_preset").get<std::string>();
    r.forcing_preset = meta.at("forcing_preset").get<std::string>();
    r.sigma_delta_cubed_warning = meta.at("sigma_delta_cubed_warning").get<bool>();
    r.version = meta.at("version").get<std::string>();
    for (const json& row : j.at("rows")) {
        ConvergenceRow c;
        c.delta = row.at("delta").get<double>();
        c.sup_t_error = row.at("sup_t_error").get<double>();
        c.sup_t_error_layer_included = row.at("sup_t_error_layer_included").get<double>();
        c.max_full_layer_mass = row.at("max_full_layer_mass").get<double>();
        c.full_runtime_s = row.at("full_runtime_s").get<double>();
        c.effective_runtime_s = row.at("effective_runtime_s").get<double>();
        r.rows.push_back(c);
    }
    return r;
}

inline std::string report_to_csv(const ConvergenceReport& r) {
    std::string out = "delta,sup_t_error,error_ratio,full_runtime_s,eff_runtime_s\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        out += format_double(row.delta);
        out += ',';
        out += format_double(row.sup_t_error);
        out += ',';
        if (i > 0 && row.sup_t_error > 0.0)
            out += format_double(r.rows[i - 1].sup_t_error / row.sup_t_error);
        out += ',';
        out += format_double(row.full_runtime_s);
        out += ',';
        out += format_double(row.effective_runtime_s);
        out += '\n';
    }
    return out;
}

inline std::string report_to_gnuplot(const ConvergenceReport& r,
                                     const std::string& csv_name = "report.csv") {
    std::string s;
    s += "# log-log sup_t L2 error vs delta\n";
    s += "set logscale xy\n";
    s += "set xlabel 'delta'\n";
    s += "set ylabel 'sup_t L2 error'\n";
    s += "set datafile separator ','\n";
    s += "set key left top\n";
    s += "set title '" + r.cell.family.name() + " regime'\n";
    s += "plot '" + csv_name + "' skip 1 using 1:2 with linespoints title 'error'\n";
    return s;
}

inline std::string emit_report(const ConvergenceReport& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: return report_to_csv(r);
        case ReportFormat::Json: return report_to_json(r).dump(2) + "\n";
        case ReportFormat::Gnuplot: return report_to_gnuplot(r);
    }
    throw std::invalid_argument("emit_report: unknown format");
}

inline json solve_summary_json(const std::vector<ModeSolution>& solutions,
                               const RadialMesh& mesh, double T, double dt,
                               double wall_seconds) {
    const double final_norm = ball_l2_norm(solutions, mesh, T);
    json j;
    j["final_l2_norm"] = final_norm;
    j["step_count"] = static_cast<long long>(std::llround(T / dt));
    j["mode_count"] = solutions.size();
    j["cell_count"] = mesh.cell_count();
    j["wall_seconds"] = wall_seconds;
    return j;
}

} // namespace ebc
