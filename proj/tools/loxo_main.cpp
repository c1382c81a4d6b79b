#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "loxo/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "loxo: spacelike loxodromes on helicoidal surfaces in Lorentz n-space"};

    std::string config_path;
    bool classify_only = false;
    bool strict_unit_speed = false;
    long long steps_override = -1;
    std::string output_dir;

    app.add_option("--config", config_path, "JSON problem description")
        ->required();
    app.add_flag("--classify-only", classify_only,
                 "write the metric classification table instead of solving");
    app.add_flag("--strict-unit-speed", strict_unit_speed,
                 "fail when the profile is not arc-length parametrized");
    app.add_option("--steps", steps_override, "override the sample count");
    app.add_option("--output-dir", output_dir, "directory for CSV and report");

    CLI11_PARSE(app, argc, argv);

    loxo::RunConfig cfg;
    try {
        cfg = loxo::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (strict_unit_speed) cfg.strict_unit_speed = true;
    if (steps_override >= 0) cfg.steps = static_cast<std::size_t>(steps_override);
    if (!output_dir.empty()) cfg.output_dir = output_dir;

    return loxo::run_pipeline(cfg, std::cout, std::cerr, classify_only);
}
