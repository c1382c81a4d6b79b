#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "loxo/oracle.hpp"

// Config-driven pipeline behind the command-line tool:
//   parse profile -> unit-speed check -> classify -> solve -> verify -> write.
// Exit codes: 0 success, 2 validation error, 3 mathematical inadmissibility,
// 4 verification tolerance failure.

namespace loxo {

struct Tolerances {
    double quadrature = 1e-10; // quadrature error per unit of u
    double degeneracy = 1e-9;  // |EG - F^2| band, relative
    double unit_speed = 1e-8;  // |speed form - epsilon|
    double angle = 1e-6;       // oracle angle deviation
    double metric = 1e-8;      // oracle metric residual
    double ode_gap = 1e-7;     // RK4 vs quadrature
};

struct RunConfig {
    SurfaceKind kind = SurfaceKind::TypeI;
    std::size_t dimension = 4;
    int epsilon = 1;
    std::map<std::size_t, std::string> components;
    std::map<std::string, double> constants;
    double c = 1.0;
    double theta0 = 0.0;
    int branch = +1;
    double u0 = 0.0;
    double u1 = 0.0;
    double v0 = 0.0;
    std::size_t steps = 1000;
    bool strict_unit_speed = false;
    Tolerances tol;
    std::string output_dir = ".";
    std::string curve_csv = "curve.csv";
    std::string report_json = "report.json";
};

// Both throw ValidationError with the offending key in the message.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Metric samples on the uniform steps+1 grid over [u0, u1] (a single sample
// when u1 == u0 or steps == 0).
std::vector<MetricSample> classify(const RunConfig& cfg);

void write_classify_csv(const std::vector<MetricSample>& table,
                        std::ostream& out);

// Full pipeline; returns the process exit code and reports problems on err.
// With classify_only the classification table is written to out instead of
// solving.
int run_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                 bool classify_only = false);

} // namespace loxo
