#include <sstream>

#include <doctest.h>

#include "d2d/cli.hpp"
#include "d2d/config.hpp"
#include "d2d/units.hpp"

using namespace d2d;

TEST_CASE("empty config carries the default scenario") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.spec.params.cell_radius_m == 500.0);
    CHECK(cfg.spec.params.d2d_density == 2e-5);
    CHECK(cfg.spec.params.p_max_cell_w == doctest::Approx(0.1));
    CHECK(cfg.spec.params.p_max_d2d_w == doctest::Approx(1e-4));
    CHECK(cfg.spec.params.noise_w == doctest::Approx(dbm_to_watts(-143.97)).epsilon(1e-12));
    CHECK(cfg.spec.beta_grid_db.size() == 19); // -6:1.5:21
    CHECK(cfg.spec.beta_grid_db.front() == -6.0);
    CHECK(cfg.spec.beta_grid_db.back() == 21.0);
    CHECK(cfg.spec.n_drops == 1000);
}

TEST_CASE("power values need explicit units") {
    CHECK(parse_config("p_max_cell = 100 mW\n").spec.params.p_max_cell_w ==
          doctest::Approx(0.1));
    CHECK(parse_config("p_max_cell = 0.1 W\n").spec.params.p_max_cell_w == doctest::Approx(0.1));
    CHECK(parse_config("noise = -143.97 dBm\n").spec.params.noise_w ==
          doctest::Approx(4.0086773e-18).epsilon(1e-6));
    CHECK_THROWS_AS(parse_config("p_max_cell = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("p_max_cell = 0.1 kW\n"), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("cell_radius = 500\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    const RunConfig cfg = parse_config("# header\n\nseed = 9  # trailing\n");
    CHECK(cfg.spec.seed == 9);
}

TEST_CASE("grid forms: range and list") {
    CHECK(parse_config("beta_grid_db = 0:3:9\n").spec.beta_grid_db ==
          std::vector<double>{0.0, 3.0, 6.0, 9.0});
    CHECK(parse_config("beta_grid_db = -6,0,21\n").spec.beta_grid_db ==
          std::vector<double>{-6.0, 0.0, 21.0});
    CHECK_THROWS_AS(parse_config("beta_grid_db = 0:-1:9\n"), ConfigError);
}

TEST_CASE("policy keys are mutually exclusive") {
    CHECK_THROWS_AS(parse_config("gmin = 1e-7\nps = 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("ps = 0.5\nauto_optimal_ps = true\n"), ConfigError);
    const RunConfig cfg = parse_config("ps = 0.5\n");
    CHECK(cfg.spec.fixed_ps == 0.5);
    CHECK_FALSE(cfg.spec.auto_optimal_ps);
}

TEST_CASE("scheme parsing") {
    CHECK(parse_config("scheme = centralized\n").spec.scheme == Scheme::Centralized);
    CHECK_THROWS_AS(parse_config("scheme = psychic\n"), ConfigError);
}

TEST_CASE("invalid scenario values are rejected on parse") {
    CHECK_THROWS_AS(parse_config("pathloss_exp = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("cell_radius_m = -5\n"), std::invalid_argument);
}

TEST_CASE("dump/parse round trip is canonical") {
    RunConfig cfg = parse_config(
        "d2d_density = 5e-5\nscheme = distributed\nps = 0.37\nseed = 17\nthreads = 3\n"
        "beta_grid_db = -6:1.5:21\np_max_d2d = 0.2 mW\nout = run.csv\n");
    const std::string once = dump_config(cfg);
    const std::string twice = dump_config(parse_config(once));
    CHECK(once == twice);
    const RunConfig back = parse_config(once);
    CHECK(back.spec.params.d2d_density == cfg.spec.params.d2d_density);
    CHECK(back.spec.params.p_max_d2d_w == cfg.spec.params.p_max_d2d_w);
    CHECK(back.spec.fixed_ps == cfg.spec.fixed_ps);
    CHECK(back.spec.seed == cfg.spec.seed);
    CHECK(back.out_path == cfg.out_path);
    CHECK(back.spec.beta_grid_db == cfg.spec.beta_grid_db);
}

TEST_CASE("sweep assignment applies one key") {
    RunConfig cfg = parse_config("");
    apply_assignment(cfg, "d2d_density", "3e-05");
    CHECK(cfg.spec.params.d2d_density == 3e-5);
    CHECK_THROWS_AS(apply_assignment(cfg, "bogus", "1"), ConfigError);
}

TEST_CASE("analyze CSV has the documented schema") {
    RunConfig cfg = parse_config("beta_grid_db = 0,6\ndrops = 1\n");
    std::ostringstream os;
    cli::cmd_analyze(cfg, os);
    const std::string text = os.str();
    CHECK(text.rfind("beta_db,cell_cov_exact,cell_cov_closed,cell_cov_lb,d2d_cov_exact,"
                     "d2d_cov_approx,tc,sum_rate\n",
                     0) == 0);
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 3); // header + two grid rows
}

TEST_CASE("sweep concatenates tagged rows") {
    RunConfig cfg = parse_config("beta_grid_db = 0,6\n");
    std::ostringstream os;
    cli::cmd_sweep(cfg, "d2d_density", {"1e-05", "3e-05"}, "analyze", os);
    const std::string text = os.str();
    CHECK(text.rfind("sweep_key,sweep_value,beta_db", 0) == 0);
    CHECK(text.find("d2d_density,1e-05,") != std::string::npos);
    CHECK(text.find("d2d_density,3e-05,") != std::string::npos);
}
