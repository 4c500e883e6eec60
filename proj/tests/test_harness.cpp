#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gch/experiments.hpp"
#include "gch/report.hpp"

using namespace gch;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kBaseConfig = R"(
[grid]
L = 20
N = 256

[time]
dt = 1e-3
t_end = 0.05
output_every = 10

[besov]
p = 2

[initial]
kind = gaussian
amplitude = 0.25
width = 2.0
normalize = 0.25

[run]
experiment = spectral
seed = 7
)";

}  // namespace

TEST_CASE("config parsing: round trip of every field") {
    RunConfig cfg = parse_config_text(kBaseConfig);
    CHECK(cfg.grid.half_length == 20.0);
    CHECK(cfg.grid.n_points == 256);
    CHECK(cfg.time.dt == 1e-3);
    CHECK(cfg.time.t_end == 0.05);
    CHECK(cfg.time.output_every == 10);
    CHECK(cfg.besov_p == 2.0);
    CHECK(cfg.initial.kind == InitialDataSpec::Kind::gaussian);
    CHECK(cfg.initial.amplitude == 0.25);
    CHECK(cfg.initial.normalize_besov == 0.25);
    CHECK(cfg.experiment == "spectral");
    CHECK(cfg.seed == 7);
    CHECK(cfg.raw_text == std::string(kBaseConfig));
}

TEST_CASE("config parsing: diagnostics carry line numbers") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("[grid]\nL = 20\nbogus = 1\n", "line 3");
    expect_error("[grid]\nL = 20\nbogus = 1\n", "unknown key 'bogus'");
    expect_error("[nosuch]\n", "unknown section");
    expect_error("L = 20\n", "outside any section");
    expect_error("[grid]\nL = abc\n", "expected a number");
    expect_error("[grid]\nN = 12.5\n", "expected an integer");
    expect_error("[grid]\njunk line\n", "expected 'key = value'");
    expect_error("[initial]\nkind = triangle\n", "unknown initial kind");
}

TEST_CASE("config parsing: validation of derived objects") {
    CHECK_THROWS_AS(parse_config_text("[grid]\nN = 100\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[time]\ndt = -1\n"), std::invalid_argument);
}

TEST_CASE("config hash is a pure function of the text") {
    RunConfig a = parse_config_text(kBaseConfig);
    RunConfig b = parse_config_text(kBaseConfig);
    CHECK(a.hash() == b.hash());
    RunConfig c = parse_config_text(std::string(kBaseConfig) + "\n# trailing comment\n");
    CHECK(a.hash() != c.hash());
}

TEST_CASE("load_config rejects missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("report files are byte-identical across reruns") {
    RunConfig cfg = parse_config_text(kBaseConfig);
    cfg.experiment = "spectral";

    auto run_to = [&](const fs::path& dir) {
        ExperimentReport rep = run_experiment(cfg);
        write_report(rep, dir.string());
    };

    const fs::path d1 = fs::temp_directory_path() / "gch_rep_a";
    const fs::path d2 = fs::temp_directory_path() / "gch_rep_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    run_to(d1);
    run_to(d2);

    for (const auto& entry : fs::directory_iterator(d1)) {
        const std::string name = entry.path().filename().string();
        if (name == "timing.txt") continue;  // wall-clock sidecar, not covered
        CAPTURE(name);
        CHECK(slurp(entry.path()) == slurp(d2 / name));
    }
    CHECK(fs::exists(d1 / "report.json"));
    CHECK(fs::exists(d1 / "plot.gp"));
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("report JSON echoes the config verbatim") {
    RunConfig cfg = parse_config_text(kBaseConfig);
    ExperimentReport rep;
    rep.name = "echo_check";
    rep.config = cfg;
    rep.verdicts.push_back({"dummy", true, 1.0, 2.0, ""});
    const fs::path dir = fs::temp_directory_path() / "gch_rep_echo";
    fs::remove_all(dir);
    write_report(rep, dir.string());
    const std::string json = slurp(dir / "report.json");
    CHECK(json.find("echo_check") != std::string::npos);
    CHECK(json.find("amplitude = 0.25") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("experiment dispatch") {
    RunConfig cfg = parse_config_text(kBaseConfig);
    cfg.experiment = "nonexistent";
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);

    cfg.experiment = "spectral";
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.name == "spectral_suite");
    CHECK(rep.all_passed());
}

TEST_CASE("trajectory and field CSV writers") {
    RunConfig cfg = parse_config_text(kBaseConfig);
    DyadicFilterBank bank(cfg.grid);
    FieldPair init = make_initial_data(cfg.initial, cfg.grid, bank);
    Trajectory traj = simulate(init.m, cfg.time, bank, BesovParams::critical(2.0));
    REQUIRE_FALSE(traj.aborted);

    const fs::path dir = fs::temp_directory_path() / "gch_csv";
    fs::create_directories(dir);
    write_trajectory_csv(traj, (dir / "traj.csv").string());
    write_fields_csv(init, (dir / "fields.csv").string());

    std::string tcsv = slurp(dir / "traj.csv");
    CHECK(tcsv.rfind("t,", 0) == 0);
    std::string fcsv = slurp(dir / "fields.csv");
    CHECK(fcsv.rfind("x,", 0) == 0);
    // One row per snapshot plus header.
    size_t rows = std::count(tcsv.begin(), tcsv.end(), '\n');
    CHECK(rows == traj.snapshots.size() + 1);
    fs::remove_all(dir);
}
