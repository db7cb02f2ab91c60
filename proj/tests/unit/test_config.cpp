#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gpqla/config.hpp"
#include "gpqla/errors.hpp"

using namespace gpqla;
using nlohmann::json;

TEST_SUITE("config") {
  TEST_CASE("defaults validate") { CHECK_NOTHROW(validate(RunConfig{})); }

  TEST_CASE("json round trip") {
    const json j = {{"grid", 128},
                    {"dx", 0.05},
                    {"g", 2.5},
                    {"steps", 300},
                    {"sample_every", 3},
                    {"spectra_every", 30},
                    {"seed", 77},
                    {"out", "somewhere"},
                    {"fit_windows", {"10:20", {{"k_min", 5}, {"k_max", 9}, {"which", "c"}}}},
                    {"init", {{"type", "gaussian_vortices"},
                              {"h", 0.1},
                              {"a", 0.04},
                              {"w_g", 0.2},
                              {"vortices", {{{"x", 10}, {"y", 11}, {"n", 2}}, {{"x", 30}, {"y", 31}, {"n", -2}}}}}}};
    const RunConfig c = config_from_json(j);
    CHECK(c.grid == 128);
    CHECK(c.dx == 0.05);
    CHECK(c.seed == 77);
    REQUIRE(c.fit_windows.size() == 2);
    CHECK(c.fit_windows[0].k_max == 20);
    CHECK(c.fit_windows[1].which == SpectrumKind::c);
    REQUIRE(c.init.vortices.size() == 2);
    CHECK(c.init.vortices[1].winding == -2);
    const RunConfig d = config_from_json(config_to_json(c));
    CHECK(config_to_json(d) == config_to_json(c));
  }

  TEST_CASE("init by name and random phase block") {
    RunConfig c = config_from_json({{"init", "uniform"}});
    CHECK(c.init.type == InitType::uniform);
    c = config_from_json({{"grid", 64}, {"init", {{"type", "random_phase"}, {"m", 16}}}});
    CHECK(c.init.m == 16);
    CHECK_NOTHROW(validate(c));
    c.init.m = 5;
    CHECK_THROWS_AS(validate(c), ConfigError);
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(config_from_json({{"gird", 64}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"grid", "big"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"init", "vortex_soup"}}), ConfigError);
    CHECK_THROWS_AS(validate(config_from_json({{"g", -1.0}})), ConfigError);
    CHECK_NOTHROW(validate(config_from_json({{"g", -1.0}, {"allow_negative_g", true}})));
    CHECK_THROWS_AS(validate(config_from_json({{"grid", 2}})), ConfigError);
    CHECK_THROWS_AS(validate(config_from_json({{"sample_every", -1}})), ConfigError);
    CHECK_THROWS_AS(parse_fit_window("10-20"), ConfigError);
    CHECK_THROWS_AS(parse_fit_window("20:10:x"), ConfigError);
  }

  TEST_CASE("fit window strings") {
    const FitWindow w = parse_fit_window("50:100");
    CHECK(w.k_min == 50);
    CHECK(w.k_max == 100);
    CHECK(w.which == SpectrumKind::ic);
    CHECK(parse_fit_window("1.5:9:c").which == SpectrumKind::c);
  }

  TEST_CASE("load from file") {
    const auto p = std::filesystem::temp_directory_path() / "gpqla_cfg_test.json";
    std::ofstream(p) << R"({"grid": 32, "dx": 0.2, "init": {"type": "random_phase", "m": 4}})";
    const RunConfig c = load_config(p);
    CHECK(c.grid == 32);
    CHECK(initial_state(c).psi.L() == 32);
    CHECK_THROWS_AS(load_config(p.string() + ".missing"), ConfigError);
  }
}
