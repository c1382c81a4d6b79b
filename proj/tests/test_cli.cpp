#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "loxo/run.hpp"

using namespace loxo;
namespace fs = std::filesystem;

namespace {

std::string config_path(const std::string& name) {
    return std::string(LOXO_CONFIG_DIR) + "/" + name;
}

fs::path fresh_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    const fs::path dir = fs::temp_directory_path() /
                         ("loxo_" + tag + "_" + std::to_string(rng()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Exit status of the command-line binary run through the shell.
int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + LOXO_CLI_PATH + "\" " + args;
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return (rc >> 8) & 0xff;
}

std::string minimal_config(const std::string& extra = "") {
    return R"({
      "kind": "I",
      "profile": { "epsilon": 1, "components": { "1": "u", "4": "1" } },
      "c": 1.0, "theta0": 0.5, "u0": 2.0, "u1": 3.0)" +
           extra + "\n}";
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char ch : text)
        if (ch == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("config parsing fills defaults") {
    const RunConfig cfg = parse_config_text(minimal_config());
    CHECK(cfg.kind == SurfaceKind::TypeI);
    CHECK(cfg.dimension == 4);
    CHECK(cfg.epsilon == 1);
    CHECK(cfg.c == 1.0);
    CHECK(cfg.theta0 == 0.5);
    CHECK(cfg.branch == 1);
    CHECK(cfg.v0 == 0.0);
    CHECK(cfg.steps == 1000);
    CHECK_FALSE(cfg.strict_unit_speed);
    CHECK(cfg.output_dir == ".");
    CHECK(cfg.curve_csv == "curve.csv");
    CHECK(cfg.report_json == "report.json");
    CHECK(cfg.tol.quadrature == 1e-10);
    CHECK(cfg.tol.angle == 1e-6);
}

TEST_CASE("config errors name the offending key") {
    const auto message_of = [](const std::string& text) {
        try {
            parse_config_text(text);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };

    CHECK(message_of("{ not json").find("not valid JSON") != std::string::npos);
    CHECK(message_of(R"({"profile":{}})").find("'kind'") != std::string::npos);
    CHECK(message_of(R"({"kind":"IV","profile":{"epsilon":1,"components":{}},
                        "c":1,"theta0":0,"u0":0,"u1":1})")
              .find("'kind'") != std::string::npos);
    CHECK(message_of(minimal_config(R"(, "pitch": 2)")).find("'pitch'") !=
          std::string::npos);
    CHECK(message_of(minimal_config(R"(, "branch": 2)")).find("'branch'") !=
          std::string::npos);
    CHECK(message_of(minimal_config(R"(, "steps": -5)")).find("'steps'") !=
          std::string::npos);
    CHECK(message_of(minimal_config(R"(, "dimension": 3)")).find("'dimension'") !=
          std::string::npos);
    CHECK(message_of(minimal_config(R"(, "steps": 2.5)")).find("'steps'") !=
          std::string::npos);
    CHECK(message_of(minimal_config(R"(, "strict_unit_speed": "yes")"))
              .find("'strict_unit_speed'") != std::string::npos);
    CHECK(message_of(minimal_config(R"(, "tolerances": {"angle": -1})"))
              .find("'tolerances'") != std::string::npos);
    CHECK(message_of(minimal_config(R"(, "tolerances": {"fuzz": 1})"))
              .find("'tolerances.fuzz'") != std::string::npos);
    CHECK(message_of(
              R"({"kind":"I","profile":{"epsilon":0,"components":{"1":"u"}},
                  "c":1,"theta0":0,"u0":0,"u1":1})")
              .find("'profile.epsilon'") != std::string::npos);
    CHECK(message_of(
              R"({"kind":"I","profile":{"epsilon":1,"components":{"x":"u"}},
                  "c":1,"theta0":0,"u0":0,"u1":1})")
              .find("'profile.components.x'") != std::string::npos);

    // The shipped broken fixture is missing its pitch.
    try {
        load_config(config_path("fixtures/invalid_missing_c.json"));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("'c'") != std::string::npos);
    }
}

TEST_CASE("classification table") {
    RunConfig cfg = parse_config_text(minimal_config());
    cfg.u0 = 0.5;
    cfg.u1 = 2.0;
    cfg.steps = 5;

    const auto table = classify(cfg);
    REQUIRE(table.size() == 6);
    const SurfaceCausal want[6] = {
        SurfaceCausal::Timelike,  SurfaceCausal::Timelike,
        SurfaceCausal::Spacelike, SurfaceCausal::Spacelike,
        SurfaceCausal::Spacelike, SurfaceCausal::Spacelike};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(table[i].u == doctest::Approx(0.5 + 0.3 * double(i)));
        CHECK(table[i].E == 1.0);
        CHECK(table[i].F == 0.0);
        CHECK(table[i].G ==
              doctest::Approx(table[i].u * table[i].u - 1.0));
        CHECK(table[i].causal == want[i]);
    }

    std::ostringstream csv;
    write_classify_csv(table, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("u,E,F,G,causal\n", 0) == 0);
    CHECK(count_lines(text) == 7);
    CHECK(text.find("timelike") != std::string::npos);
    CHECK(text.find("spacelike") != std::string::npos);

    SUBCASE("steps = 0 samples only u0") {
        cfg.steps = 0;
        const auto one = classify(cfg);
        REQUIRE(one.size() == 1);
        CHECK(one[0].u == 0.5);
    }
    SUBCASE("a pinched sample is reported as degenerate") {
        cfg.u0 = cfg.u1 = 1.0;
        const auto one = classify(cfg);
        REQUIRE(one.size() == 1);
        CHECK(one[0].causal == SurfaceCausal::Degenerate);
    }
    SUBCASE("reversed range is rejected") {
        cfg.u0 = 2.0;
        cfg.u1 = 0.5;
        CHECK_THROWS_AS(classify(cfg), ValidationError);
    }
}

TEST_CASE("pipeline success writes curve and report") {
    RunConfig cfg = load_config(config_path("type1_right.json"));
    const fs::path dir = fresh_dir("ok");
    cfg.output_dir = dir.string();

    std::ostringstream out, err;
    const int rc = run_pipeline(cfg, out, err);
    CHECK(rc == 0);
    CHECK(err.str().empty());
    CHECK(out.str().find("arc_length=") != std::string::npos);

    const std::string csv = slurp(dir / "curve.csv");
    CHECK(csv.rfind("u,v,x1,x2,x3,x4\n", 0) == 0);
    CHECK(count_lines(csv) == 1002);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.rfind("\n2,0,", 0) == std::string::npos); // header first
    CHECK(csv.find("\n2,0,") != std::string::npos);     // u0, v0 row

    // Full-precision values survive a text round trip.
    std::istringstream rows(csv);
    std::string line;
    std::getline(rows, line); // header
    std::getline(rows, line);
    CHECK(line.rfind("2,0,", 0) == 0);
    double last_u = 0.0;
    while (std::getline(rows, line))
        last_u = std::strtod(line.c_str(), nullptr);
    CHECK(last_u == 3.0);

    const nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(rep.at("kind") == "I");
    CHECK(rep.at("dimension") == 4);
    CHECK(rep.at("surface_causal") == "spacelike");
    CHECK(rep.at("theta_eff").get<double>() ==
          doctest::Approx(std::cos(0.7853981633974483)));
    CHECK(rep.at("arc_length").get<double>() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(rep.at("unit_speed").at("pass") == true);
    CHECK(rep.at("verification").at("passed") == true);
    CHECK(rep.at("verification").at("spacelike_violations") == 0);
}

TEST_CASE("pipeline exit codes") {
    SUBCASE("validation failure: strict unit speed") {
        RunConfig cfg = parse_config_text(minimal_config());
        cfg.components[4] = "0.5*u";
        cfg.strict_unit_speed = true;
        cfg.output_dir = fresh_dir("strict").string();
        std::ostringstream out, err;
        CHECK(run_pipeline(cfg, out, err) == 2);
        CHECK(err.str().find("arc-length") != std::string::npos);
    }
    SUBCASE("advisory unit speed leads to verification failure") {
        RunConfig cfg = parse_config_text(minimal_config());
        cfg.components[4] = "0.5*u";
        const fs::path dir = fresh_dir("advisory");
        cfg.output_dir = dir.string();
        std::ostringstream out, err;
        CHECK(run_pipeline(cfg, out, err) == 4);
        CHECK(err.str().find("verification failed") != std::string::npos);
        const nlohmann::json rep =
            nlohmann::json::parse(slurp(dir / "report.json"));
        CHECK(rep.at("unit_speed").at("pass") == false);
        CHECK(rep.at("verification").at("passed") == false);
        bool advisory = false;
        for (const auto& note : rep.at("verification").at("notes"))
            if (note.get<std::string>().find("advisory") != std::string::npos)
                advisory = true;
        CHECK(advisory);
    }
    SUBCASE("inadmissible range") {
        RunConfig cfg = load_config(config_path("fixtures/degenerate_range.json"));
        cfg.output_dir = fresh_dir("degen").string();
        std::ostringstream out, err;
        CHECK(run_pipeline(cfg, out, err) == 3);
        CHECK(err.str().find("inadmissible:") != std::string::npos);
        CHECK(err.str().find("bracket=[") != std::string::npos);
    }
    SUBCASE("wrong angle sign still writes its outputs") {
        RunConfig cfg = load_config(config_path("fixtures/wrong_angle_sign.json"));
        const fs::path dir = fresh_dir("sign");
        cfg.output_dir = dir.string();
        std::ostringstream out, err;
        CHECK(run_pipeline(cfg, out, err) == 4);
        CHECK(fs::exists(dir / "curve.csv"));
        const nlohmann::json rep =
            nlohmann::json::parse(slurp(dir / "report.json"));
        CHECK(rep.at("verification").at("passed") == false);
        CHECK(rep.at("verification").at("max_angle_deviation").get<double>() >
              1.0);
    }
}

TEST_CASE("command-line binary") {
    SUBCASE("success and determinism") {
        const fs::path d1 = fresh_dir("cli1");
        const fs::path d2 = fresh_dir("cli2");
        const std::string cfg = config_path("type1_right.json");
        CHECK(run_cli("--config \"" + cfg + "\" --output-dir \"" + d1.string() +
                      "\" > /dev/null 2>&1") == 0);
        CHECK(run_cli("--config \"" + cfg + "\" --output-dir \"" + d2.string() +
                      "\" > /dev/null 2>&1") == 0);
        CHECK(slurp(d1 / "curve.csv") == slurp(d2 / "curve.csv"));
        CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
    }
    SUBCASE("classification mode") {
        const fs::path dir = fresh_dir("clic");
        const fs::path table = dir / "table.csv";
        CHECK(run_cli("--config \"" + config_path("type1_right.json") +
                      "\" --classify-only > \"" + table.string() + "\"") == 0);
        CHECK(slurp(table).rfind("u,E,F,G,causal\n", 0) == 0);
    }
    SUBCASE("steps override changes the row count") {
        const fs::path dir = fresh_dir("clis");
        CHECK(run_cli("--config \"" + config_path("type1_right.json") +
                      "\" --steps 200 --output-dir \"" + dir.string() +
                      "\" > /dev/null") == 0);
        CHECK(count_lines(slurp(dir / "curve.csv")) == 202);
    }
    SUBCASE("strict flag forces exit 2") {
        const fs::path dir = fresh_dir("clif");
        const fs::path cfg = dir / "loose.json";
        {
            std::ofstream f(cfg);
            f << R"({
              "kind": "I",
              "profile": { "epsilon": 1,
                           "components": { "1": "u", "4": "0.5*u" } },
              "c": 1.0, "theta0": 0.5, "u0": 2.0, "u1": 3.0, "steps": 100
            })";
        }
        CHECK(run_cli("--config \"" + cfg.string() + "\" --strict-unit-speed " +
                      "--output-dir \"" + dir.string() +
                      "\" > /dev/null 2>&1") == 2);
    }
    SUBCASE("missing required flag") {
        CHECK(run_cli("> /dev/null 2>&1") != 0);
    }
    SUBCASE("broken fixtures map to their exit codes") {
        const fs::path dir = fresh_dir("clix");
        CHECK(run_cli("--config \"" +
                      config_path("fixtures/invalid_missing_c.json") +
                      "\" > /dev/null 2>&1") == 2);
        const fs::path errfile = dir / "stderr.txt";
        CHECK(run_cli("--config \"" +
                      config_path("fixtures/degenerate_range.json") +
                      "\" --output-dir \"" + dir.string() + "\" 2> \"" +
                      errfile.string() + "\"") == 3);
        CHECK(slurp(errfile).find("bracket=[") != std::string::npos);
        CHECK(run_cli("--config \"" +
                      config_path("fixtures/wrong_angle_sign.json") +
                      "\" --output-dir \"" + dir.string() +
                      "\" > /dev/null 2>&1") == 4);
    }
}
