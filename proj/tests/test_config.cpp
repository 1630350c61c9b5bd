#include <doctest.h>

#include "comboo/config.hpp"
#include "comboo/errors.hpp"

using namespace comboo;

TEST_CASE("minimal config is filled with problem defaults") {
    ExperimentConfig cfg = parse_config(R"({"problem":"toy","T":10,"seeds":3})");
    CHECK(cfg.problem == "toy");
    CHECK(cfg.T == 10);
    CHECK(cfg.seed_indices == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(cfg.resolution == std::vector<int>{101});
    REQUIRE(cfg.z.size() == 2);
    CHECK(cfg.z[0] == doctest::Approx(-2.1));
    CHECK(cfg.z[1] == doctest::Approx(-2.3));
    CHECK(cfg.beta_kind == BetaSchedule::Kind::Experimental);
    CHECK(cfg.beta_coef == doctest::Approx(0.4));
    CHECK(cfg.noise_sd_f == std::vector<double>{0.05, 0.05});
    CHECK(cfg.kernels_f.size() == 2);
    CHECK(cfg.kernels_g.size() == 2);
    CHECK_FALSE(cfg.require_feasible_init);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"T":10})"), ConfigError); // missing problem
    CHECK_THROWS_AS(parse_config(R"({"problem":"toy","bogus_key":1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem":"no_such_problem"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem":"toy","beta":{"delta":1.5}})"),
                    ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"problem":"toy","beta":{"delta":1.5}})"),
                         "delta must be in (0,1)", ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem":"toy","beta":{"gamma":2}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem":"toy","T":-1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem":"toy","z":[1.0]})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"problem":"toy","kernel_f":{"type":"warp"}})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(
            R"({"problem":"toy","kernel_f":{"type":"matern","nu":2.0}})"),
        ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem":"toy","baseline":"qnehvi"})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem":"toy","mode":"continuous"})"),
                    ConfigError);
}

TEST_CASE("round trip through serialization") {
    ExperimentConfig cfg = parse_config(
        R"({"problem":"branin_currin","T":20,"n_init":6,"seeds":[4,9],
            "beta":{"kind":"lemma1","delta":0.2},"mode":"discretized-continuous",
            "baseline":"random","resolution":[11,21],"out_dir":"results"})");
    std::string text = serialize_config(cfg);
    ExperimentConfig again = parse_config(text);
    CHECK(serialize_config(again) == text);
    CHECK(again.T == 20);
    CHECK(again.seed_indices == std::vector<std::uint64_t>{4, 9});
    CHECK(again.beta_kind == BetaSchedule::Kind::Lemma1);
    CHECK(again.delta == doctest::Approx(0.2));
    CHECK(again.mode == SearchMode::DiscretizedContinuous);
    CHECK(again.baseline_random);
    CHECK(again.resolution == std::vector<int>{11, 21});
    CHECK(again.out_dir == "results");
}

TEST_CASE("kernel overrides: single spec broadcast or per-function list") {
    ExperimentConfig broadcast = parse_config(
        R"({"problem":"toy","kernel_f":{"type":"rbf","amplitude":2.0,"lengthscale_sq":0.3}})");
    REQUIRE(broadcast.kernels_f.size() == 2);
    for (const auto& k : broadcast.kernels_f) {
        const auto* rbf = std::get_if<RbfKernel>(&k);
        REQUIRE(rbf != nullptr);
        CHECK(rbf->amplitude == 2.0);
        CHECK(rbf->lengthscale_sq == 0.3);
    }
    CHECK_THROWS_AS(
        parse_config(R"({"problem":"toy","kernel_f":[{"type":"rbf"}]})"),
        ConfigError); // needs exactly m entries
}

TEST_CASE("problem and run-config resolution") {
    ExperimentConfig cfg =
        parse_config(R"({"problem":"toy","noise_sd_f":0.1,"seeds":2})");
    ProblemSpec p = problem_from_config(cfg);
    CHECK(p.noise_sd_f[0] == doctest::Approx(0.1));
    CHECK(p.noise_sd_f[1] == doctest::Approx(0.1));
    CHECK(p.noise_sd_g[0] == doctest::Approx(0.05)); // untouched default

    RunConfig rc = run_config_from(cfg, p, 1234);
    CHECK(rc.beta.m == 2);
    CHECK(rc.beta.c == 2);
    CHECK(rc.beta.domain_size == doctest::Approx(1234.0));
    CHECK(rc.z.z == p.default_z);
    CHECK(rc.kernels_f.size() == 2);
}

TEST_CASE("c2_dtlz2 defaults carry the feasible-initialization flag") {
    ExperimentConfig cfg = parse_config(R"({"problem":"c2_dtlz2"})");
    CHECK(cfg.require_feasible_init);
    CHECK(cfg.resolution == std::vector<int>{11});
}
