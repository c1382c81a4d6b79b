#include "loxo/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "json.hpp"

namespace loxo {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ValidationError("config key '" + key + "': " + why);
}

void reject_unknown_keys(const json& j, const std::string& where,
                         const std::set<std::string>& known) {
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            throw ValidationError("config key '" +
                                  (where.empty() ? key : where + "." + key) +
                                  "' is not recognized");
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) bad_key(key, "missing");
    if (!j.at(key).is_number()) bad_key(key, "expected a number");
    return j.at(key).get<double>();
}

double optional_number(const json& j, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) bad_key(key, "expected a number");
    return j.at(key).get<double>();
}

SurfaceKind parse_kind(const json& j) {
    if (!j.contains("kind")) bad_key("kind", "missing");
    if (!j.at("kind").is_string()) bad_key("kind", "expected \"I\", \"II\" or \"III\"");
    const std::string s = j.at("kind").get<std::string>();
    if (s == "I") return SurfaceKind::TypeI;
    if (s == "II") return SurfaceKind::TypeII;
    if (s == "III") return SurfaceKind::TypeIII;
    bad_key("kind", "expected \"I\", \"II\" or \"III\", got \"" + s + "\"");
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    reject_unknown_keys(j, "", {"kind", "dimension", "profile", "c", "theta0",
                                "branch", "u0", "u1", "v0", "steps",
                                "strict_unit_speed", "tolerances", "output"});
    RunConfig cfg;
    cfg.kind = parse_kind(j);

    const double dim = optional_number(j, "dimension", 4.0);
    if (dim < 4.0 || dim != static_cast<double>(static_cast<std::size_t>(dim)))
        bad_key("dimension", "expected an integer >= 4");
    cfg.dimension = static_cast<std::size_t>(dim);

    if (!j.contains("profile") || !j.at("profile").is_object())
        bad_key("profile", "missing or not an object");
    const json& prof = j.at("profile");
    reject_unknown_keys(prof, "profile", {"epsilon", "components", "constants"});

    const double eps = require_number(prof, "epsilon");
    if (eps != 1.0 && eps != -1.0) bad_key("profile.epsilon", "expected +1 or -1");
    cfg.epsilon = static_cast<int>(eps);

    if (!prof.contains("components") || !prof.at("components").is_object())
        bad_key("profile.components", "missing or not an object");
    for (const auto& [key, value] : prof.at("components").items()) {
        char* end = nullptr;
        const long idx = std::strtol(key.c_str(), &end, 10);
        if (*end != '\0' || idx < 1)
            bad_key("profile.components." + key, "index must be a positive integer");
        if (!value.is_string())
            bad_key("profile.components." + key, "expected an expression string");
        cfg.components[static_cast<std::size_t>(idx)] = value.get<std::string>();
    }
    if (prof.contains("constants")) {
        if (!prof.at("constants").is_object())
            bad_key("profile.constants", "expected an object");
        for (const auto& [key, value] : prof.at("constants").items()) {
            if (!value.is_number())
                bad_key("profile.constants." + key, "expected a number");
            cfg.constants[key] = value.get<double>();
        }
    }

    cfg.c = require_number(j, "c");
    cfg.theta0 = require_number(j, "theta0");
    cfg.u0 = require_number(j, "u0");
    cfg.u1 = require_number(j, "u1");
    cfg.v0 = optional_number(j, "v0", 0.0);

    const double branch = optional_number(j, "branch", 1.0);
    if (branch != 1.0 && branch != -1.0) bad_key("branch", "expected +1 or -1");
    cfg.branch = static_cast<int>(branch);

    const double steps = optional_number(j, "steps", 1000.0);
    if (steps < 0.0 || steps != static_cast<double>(static_cast<std::size_t>(steps)))
        bad_key("steps", "expected a non-negative integer");
    cfg.steps = static_cast<std::size_t>(steps);

    if (j.contains("strict_unit_speed")) {
        if (!j.at("strict_unit_speed").is_boolean())
            bad_key("strict_unit_speed", "expected true or false");
        cfg.strict_unit_speed = j.at("strict_unit_speed").get<bool>();
    }

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) bad_key("tolerances", "expected an object");
        reject_unknown_keys(t, "tolerances",
                            {"quadrature", "degeneracy", "unit_speed", "angle",
                             "metric", "ode_gap"});
        cfg.tol.quadrature = optional_number(t, "quadrature", cfg.tol.quadrature);
        cfg.tol.degeneracy = optional_number(t, "degeneracy", cfg.tol.degeneracy);
        cfg.tol.unit_speed = optional_number(t, "unit_speed", cfg.tol.unit_speed);
        cfg.tol.angle = optional_number(t, "angle", cfg.tol.angle);
        cfg.tol.metric = optional_number(t, "metric", cfg.tol.metric);
        cfg.tol.ode_gap = optional_number(t, "ode_gap", cfg.tol.ode_gap);
        for (double v : {cfg.tol.quadrature, cfg.tol.degeneracy,
                         cfg.tol.unit_speed, cfg.tol.angle, cfg.tol.metric,
                         cfg.tol.ode_gap})
            if (!(v > 0.0)) bad_key("tolerances", "tolerances must be positive");
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        if (!o.is_object()) bad_key("output", "expected an object");
        reject_unknown_keys(o, "output", {"dir", "curve_csv", "report_json"});
        if (o.contains("dir")) cfg.output_dir = o.at("dir").get<std::string>();
        if (o.contains("curve_csv"))
            cfg.curve_csv = o.at("curve_csv").get<std::string>();
        if (o.contains("report_json"))
            cfg.report_json = o.at("report_json").get<std::string>();
    }
    return cfg;
}

void write_curve_csv(const SampledCurve& curve, std::ostream& os) {
    os << "u,v";
    const std::size_t n = curve.samples.front().point.dim();
    for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
    os << "\n";
    for (const CurveSample& s : curve.samples) {
        os << fmt17(s.u) << ',' << fmt17(s.v);
        for (std::size_t i = 0; i < n; ++i) os << ',' << fmt17(s.point[i]);
        os << "\n";
    }
}

ordered_json tolerances_json(const Tolerances& t) {
    return ordered_json{{"quadrature", t.quadrature},
                        {"degeneracy", t.degeneracy},
                        {"unit_speed", t.unit_speed},
                        {"angle", t.angle},
                        {"metric", t.metric},
                        {"ode_gap", t.ode_gap}};
}

ordered_json report_json_doc(const RunConfig& cfg, const AngleSpec& angle,
                             const SampledCurve& curve,
                             const UnitSpeedReport& us,
                             const VerificationReport& vr) {
    ordered_json j;
    j["kind"] = to_string(cfg.kind);
    j["dimension"] = cfg.dimension;
    j["epsilon"] = cfg.epsilon;
    j["surface_causal"] = to_string(angle.surface_causal);
    j["theta0"] = cfg.theta0;
    j["theta_eff"] = angle.theta_eff;
    j["branch"] = cfg.branch;
    j["u0"] = cfg.u0;
    j["u1"] = cfg.u1;
    j["v0"] = cfg.v0;
    j["steps"] = cfg.steps;
    j["arc_length"] = curve.arc_length;
    j["tolerances"] = tolerances_json(cfg.tol);
    j["unit_speed"] = ordered_json{{"pass", us.pass},
                                   {"worst_violation", us.worst_violation},
                                   {"worst_u", us.worst_u}};
    j["verification"] =
        ordered_json{{"max_angle_deviation", vr.max_angle_deviation},
                     {"max_metric_residual", vr.max_metric_residual},
                     {"ode_vs_quadrature_max_gap", vr.ode_vs_quadrature_max_gap},
                     {"spacelike_violations", vr.spacelike_violations},
                     {"passed", vr.passed},
                     {"notes", vr.notes}};
    return j;
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") +
                              e.what());
    }
    return parse_config(j);
}

std::vector<MetricSample> classify(const RunConfig& cfg) {
    const ProfileCurve profile(cfg.kind, cfg.dimension, cfg.epsilon,
                               cfg.components, cfg.constants);
    const HelicoidalSurface surface(profile, cfg.c);
    std::vector<MetricSample> table;
    if (cfg.steps == 0 || cfg.u0 == cfg.u1) {
        table.push_back(surface.first_fundamental_form(cfg.u0, cfg.tol.degeneracy));
        return table;
    }
    if (!(cfg.u1 > cfg.u0)) bad_key("u1", "expected u1 >= u0");
    table.reserve(cfg.steps + 1);
    for (std::size_t k = 0; k <= cfg.steps; ++k) {
        const double u = cfg.u0 + (cfg.u1 - cfg.u0) * static_cast<double>(k) /
                                      static_cast<double>(cfg.steps);
        table.push_back(surface.first_fundamental_form(u, cfg.tol.degeneracy));
    }
    return table;
}

void write_classify_csv(const std::vector<MetricSample>& table,
                        std::ostream& out) {
    out << "u,E,F,G,causal\n";
    for (const MetricSample& m : table)
        out << fmt17(m.u) << ',' << fmt17(m.E) << ',' << fmt17(m.F) << ','
            << fmt17(m.G) << ',' << to_string(m.causal) << "\n";
}

int run_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                 bool classify_only) {
    try {
        const ProfileCurve profile(cfg.kind, cfg.dimension, cfg.epsilon,
                                   cfg.components, cfg.constants);
        const HelicoidalSurface surface(profile, cfg.c);

        if (classify_only) {
            write_classify_csv(classify(cfg), out);
            return 0;
        }

        if (!(cfg.u1 > cfg.u0)) bad_key("u1", "expected u1 > u0");
        if (cfg.steps < 4) bad_key("steps", "expected steps >= 4 for a solve");

        const UnitSpeedReport us = check_unit_speed(
            profile, cfg.u0, cfg.u1, 101, cfg.tol.unit_speed);
        if (!us.pass && cfg.strict_unit_speed)
            throw ValidationError(
                "profile is not arc-length parametrized: |speed form - "
                "epsilon| = " + fmt17(us.worst_violation) + " at u = " +
                fmt17(us.worst_u));

        const MetricSample m0 =
            surface.first_fundamental_form(cfg.u0, cfg.tol.degeneracy);
        if (m0.causal == SurfaceCausal::Degenerate)
            throw AdmissibilityError("metric is degenerate: EG - F^2 vanishes",
                                     cfg.u0, cfg.u0);
        const AngleSpec angle =
            make_angle_spec(m0.causal, cfg.epsilon, cfg.theta0);

        SolverOptions sopts;
        sopts.quadrature_tol = cfg.tol.quadrature;
        sopts.degeneracy_tol = cfg.tol.degeneracy;

        const LoxodromeProblem problem{surface, angle, cfg.branch, cfg.u0,
                                       cfg.v0};
        const SampledCurve curve =
            loxodrome_curve(problem, cfg.u1, cfg.steps, sopts);

        VerifyOptions vopts;
        vopts.angle_tol = cfg.tol.angle;
        vopts.metric_tol = cfg.tol.metric;
        vopts.ode_gap_tol = cfg.tol.ode_gap;
        VerificationReport vr = verify(curve, problem, vopts);
        if (!us.pass)
            vr.notes.push_back("unit-speed check failed (advisory): worst "
                               "violation " + fmt17(us.worst_violation));

        namespace fs = std::filesystem;
        fs::create_directories(cfg.output_dir);
        const fs::path csv_path = fs::path(cfg.output_dir) / cfg.curve_csv;
        const fs::path json_path = fs::path(cfg.output_dir) / cfg.report_json;
        {
            std::ofstream csv(csv_path, std::ios::binary);
            if (!csv) throw ValidationError("cannot write " + csv_path.string());
            write_curve_csv(curve, csv);
        }
        {
            std::ofstream rep(json_path, std::ios::binary);
            if (!rep) throw ValidationError("cannot write " + json_path.string());
            rep << report_json_doc(cfg, angle, curve, us, vr).dump(2) << "\n";
        }

        if (!vr.passed) {
            err << "verification failed: max_angle_deviation="
                << fmt17(vr.max_angle_deviation) << " max_metric_residual="
                << fmt17(vr.max_metric_residual) << " ode_gap="
                << fmt17(vr.ode_vs_quadrature_max_gap)
                << " spacelike_violations=" << vr.spacelike_violations << "\n";
            return 4;
        }
        out << "arc_length=" << fmt17(curve.arc_length)
            << " max_angle_deviation=" << fmt17(vr.max_angle_deviation) << "\n"
            << "wrote " << csv_path.string() << " and " << json_path.string()
            << "\n";
        return 0;
    } catch (const AdmissibilityError& e) {
        err << "inadmissible: " << e.what() << "\n";
        if (e.has_bracket)
            err << "bracket=[" << fmt17(e.bracket_lo) << ","
                << fmt17(e.bracket_hi) << "]\n";
        return 3;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace loxo
