#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "coolsim/config.hpp"
#include "coolsim/io.hpp"

using namespace coolsim;
using nlohmann::json;

TEST_CASE("empty document yields the published defaults with resolved detuning") {
    const RunConfig c = load_config_json(json::object());
    CHECK(c.params.eta == 1e-5);
    CHECK(c.params.omega_l == 5.0);
    CHECK(c.params.s_exponent == 1.0);
    CHECK(c.params.g0 == 5e-4);
    CHECK(c.params.drive_E == 388.0);
    CHECK(c.params.m0 == 100.0);
    CHECK(c.params.n0 == 0.0);
    CHECK(c.params.occupation.m_k == 100.0);
    CHECK(c.schedule.segments.size() == 1);
    CHECK(c.schedule.segments[0].kappa == 0.05);
    // delta_c resolved from the target delta_eff = 1 fixed point
    CHECK(c.params.delta_c == doctest::Approx(1.0752).epsilon(1e-3));
    CHECK(c.trajectory == TrajectoryModel::StationaryEnvelope);
}

TEST_CASE("field overrides and complex forms parse") {
    const json doc = json::parse(R"({
      "params": {"c1": [3.0, -2.0], "c2": 5.0, "eta": 2e-5,
                 "occupation": {"type": "bose_einstein", "T": 40.0}},
      "schedule": {"segments": [[0.0, 0.05], [17.15, 1.0]]},
      "grid": {"dt": 2e-3, "t_max": 30.0},
      "mode": "qswitch",
      "trajectory": "ode",
      "nu_i_convention": "b",
      "workers": 3
    })");
    const RunConfig c = load_config_json(doc);
    CHECK(c.params.c1 == complexd(3.0, -2.0));
    CHECK(c.params.c2 == complexd(5.0, 0.0));
    CHECK(c.params.occupation.kind == Occupation::Kind::BoseEinstein);
    CHECK(c.params.occupation.temperature == 40.0);
    CHECK(c.schedule.segments.size() == 2);
    CHECK(c.grid.dt == 2e-3);
    CHECK(c.grid.n_steps == 15000);
    CHECK(c.mode == RunMode::QSwitch);
    CHECK(c.trajectory == TrajectoryModel::FullOde);
    CHECK(c.nu_convention == NuConvention::B);
    CHECK(c.workers == 3);
}

TEST_CASE("unknown keys and conflicting detuning specs are rejected") {
    CHECK_THROWS_AS(load_config_json(json::parse(R"({"paramz": {}})")), ConfigError);
    CHECK_THROWS_AS(load_config_json(json::parse(
                        R"({"params": {"delta_c": 1.0, "delta_c_prime_target": 1.0}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_config_json(json::parse(R"({"mode": "warp"})")), ConfigError);
    CHECK_THROWS_AS(load_config_json(json::parse(R"({"params": {"c1": "x"}})")),
                    ConfigError);
}

TEST_CASE("explicit delta_c bypasses the fixed point") {
    const RunConfig c =
        load_config_json(json::parse(R"({"params": {"delta_c": 0.9}})"));
    CHECK(c.params.delta_c == 0.9);
    CHECK(c.delta_c_given);
}

TEST_CASE("missing config file raises a config error naming the path") {
    try {
        load_config_file("/nonexistent/coolsim.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/coolsim.json") !=
              std::string::npos);
    }
}

TEST_CASE("resolved echo materializes defaults and round-trips") {
    const RunConfig c = load_config_json(json::object());
    const auto echo = resolved_json(c);
    CHECK(echo.contains("params"));
    CHECK(echo["params"]["drive_E"] == 388.0);
    CHECK(echo["grid"]["dt"] == 1e-3);
    CHECK(echo["mode"] == "run");
    CHECK(echo["trajectory"] == "envelope");
    CHECK(echo["version"] == std::string(kVersion));

    // the echo must itself be a loadable config describing the same run
    json doc = json::parse(echo.dump());
    doc.erase("version");
    doc["params"].erase("delta_c_prime_target");  // delta_c is materialized
    doc["grid"].erase("t_max");
    const RunConfig again = load_config_json(doc);
    CHECK(again.params.delta_c == c.params.delta_c);
    CHECK(again.grid.n_steps == c.grid.n_steps);
}

TEST_CASE("CSV writer: single header row and %.12e cells") {
    CHECK(format_sci(0.05025) == "5.025000000000e-02");

    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "coolsim_io_test.csv";
    const std::vector<double> t{0.0, 0.25};
    const std::vector<double> v{100.0, 99.5};
    write_csv(path.string(), {"t", "N_b"}, {&t, &v});

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,N_b");
    std::getline(in, line);
    CHECK(line == "0.000000000000e+00,1.000000000000e+02");
    std::remove(path.string().c_str());

    const std::vector<double> ragged{1.0};
    CHECK_THROWS_AS(write_csv(path.string(), {"a", "b"}, {&t, &ragged}),
                    std::invalid_argument);
}
