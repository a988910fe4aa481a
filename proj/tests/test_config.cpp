#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "cliquefilter/config.hpp"
#include "cliquefilter/errors.hpp"
#include "cliquefilter/survival_prior.hpp"

using namespace cliquefilter;

namespace {

const std::string kMinimal =
    "modality = lidar\n"
    "s_max_m = 1.2\n"
    "s_obs_m = 1.0\n"
    "duration_s = 400\n"
    "dt_s = 1\n"
    "period_s = 100\n"
    "n_objects = 8\n"
    "runs = 100\n"
    "base_seed = 1\n";

ExperimentConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

}  // namespace

TEST_CASE("a minimal config materializes every default") {
  const ExperimentConfig cfg = parse_text(kMinimal);
  CHECK(cfg.modality == Modality::kLidar);
  CHECK(cfg.s_max_m == 1.2);
  CHECK(cfg.s_obs_m == 1.0);
  CHECK(cfg.duration_s == 400.0);
  CHECK(cfg.n_objects == 8);
  CHECK(cfg.runs == 100);
  CHECK(cfg.base_seed == 1);
  CHECK(cfg.prior_kind == "exponential");
  // Median of the default prior sits at half the run.
  CHECK(cfg.prior_rate_per_s == doctest::Approx(default_exponential_rate(400.0)));
  CHECK(cfg.survival_prior().cdf(200.0) == doctest::Approx(0.5));
  CHECK(cfg.variants.size() == 4);
  CHECK(cfg.suppression_iff);
  CHECK(cfg.suppression_jcfr);
  CHECK(cfg.out_dir == "out");
  CHECK(cfg.jobs == 0);

  SUBCASE("derived spec objects carry the config values") {
    CHECK(cfg.world_spec().n_objects == 8);
    CHECK(cfg.world_spec().survival_min == doctest::Approx(0.3 * 400.0));
    CHECK(cfg.world_spec().survival_max == doctest::Approx(1.1 * 400.0));
    CHECK(cfg.trajectory_spec().duration == 400.0);
    CHECK(cfg.sensor_spec().s_max == 1.2);
    CHECK(cfg.variant_config(FilterVariant::kJcfr).s_obs == 1.0);
    CHECK(cfg.variant_config(FilterVariant::kIff).suppression);
  }
}

TEST_CASE("comments, blank lines and whitespace are tolerated") {
  const ExperimentConfig cfg = parse_text(
      "# experiment setup\n"
      "\n"
      "  modality =   camera  \n" +
      kMinimal.substr(kMinimal.find('\n') + 1) + "\n# trailing comment\n");
  CHECK(cfg.modality == Modality::kCamera);
}

TEST_CASE("parse errors name the source and line or field") {
  SUBCASE("missing required field") {
    CHECK_THROWS_WITH_AS(parse_text("modality = lidar\n"),
                         doctest::Contains("s_max_m"), ConfigError);
  }
  SUBCASE("unknown key names its line") {
    CHECK_THROWS_WITH_AS(parse_text(kMinimal + "mystery_knob = 3\n"),
                         doctest::Contains("test.cfg:10"), ConfigError);
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_WITH_AS(parse_text(kMinimal + "s_max_m = 2.0\n"),
                         doctest::Contains("duplicate"), ConfigError);
  }
  SUBCASE("malformed number") {
    CHECK_THROWS_AS(parse_text(kMinimal + "p_miss = often\n"), ConfigError);
  }
  SUBCASE("missing separator") {
    CHECK_THROWS_AS(parse_text(kMinimal + "p_miss 0.4\n"), ConfigError);
  }
  SUBCASE("unknown modality") {
    std::string text = kMinimal;
    text.replace(text.find("lidar"), 5, "sonar");
    CHECK_THROWS_AS(parse_text(text), ConfigError);
  }
}

TEST_CASE("cross-field validation") {
  SUBCASE("duration must cover at least two trajectory periods") {
    std::string text = kMinimal;
    text.replace(text.find("duration_s = 400"), 16, "duration_s = 150");
    CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("period"), ConfigError);
  }
  SUBCASE("s_obs must not exceed s_max") {
    CHECK_THROWS_AS(parse_text("modality = lidar\ns_max_m = 1.0\ns_obs_m = 1.5\n"
                               "duration_s = 400\ndt_s = 1\nperiod_s = 100\n"
                               "n_objects = 8\nruns = 1\nbase_seed = 1\n"),
                    ConfigError);
  }
  SUBCASE("threshold ordering") {
    CHECK_THROWS_AS(parse_text(kMinimal + "rho_h = 0.1\nrho_l = 0.7\n"), ConfigError);
  }
  SUBCASE("delta bounds") {
    CHECK_THROWS_AS(parse_text(kMinimal + "delta = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_text(kMinimal + "delta = 1\n"), ConfigError);
  }
  SUBCASE("runs must be positive") {
    std::string text = kMinimal;
    text.replace(text.find("runs = 100"), 10, "runs = 0");
    CHECK_THROWS_AS(parse_text(text), ConfigError);
  }
}

TEST_CASE("serialize and reparse reproduces the configuration exactly") {
  const ExperimentConfig cfg = parse_text(kMinimal + "p_miss = 0.25\nvariants = iff,jcfr\n");
  const std::string dumped = serialize_config(cfg);
  std::istringstream in(dumped);
  const ExperimentConfig again = parse_config(in, "roundtrip");
  CHECK(again == cfg);
  REQUIRE(cfg.variants.size() == 2);
  CHECK(cfg.variants[0] == FilterVariant::kIff);
  CHECK(cfg.variants[1] == FilterVariant::kJcfr);
}

TEST_CASE("global suppression key fans out unless overridden per variant") {
  SUBCASE("global off") {
    const ExperimentConfig cfg = parse_text(kMinimal + "suppression = off\n");
    CHECK_FALSE(cfg.suppression_iff);
    CHECK_FALSE(cfg.suppression_jff);
    CHECK_FALSE(cfg.suppression_jcf);
    CHECK_FALSE(cfg.suppression_jcfr);
    CHECK_FALSE(cfg.variant_config(FilterVariant::kJcf).suppression);
  }
  SUBCASE("per-variant override wins") {
    const ExperimentConfig cfg =
        parse_text(kMinimal + "suppression = off\nsuppression_jcfr = on\n");
    CHECK_FALSE(cfg.suppression_iff);
    CHECK(cfg.suppression_jcfr);
  }
  SUBCASE("boolean spellings") {
    CHECK(parse_text(kMinimal + "suppression_iff = true\n").suppression_iff);
    CHECK_FALSE(parse_text(kMinimal + "suppression_iff = 0\n").suppression_iff);
    CHECK_THROWS_AS(parse_text(kMinimal + "suppression_iff = maybe\n"), ConfigError);
  }
}

TEST_CASE("piecewise priors parse their knot list") {
  const ExperimentConfig cfg = parse_text(
      kMinimal + "prior_kind = piecewise_linear\nprior_knots = 0:0,200:0.4,400:1\n");
  REQUIRE(cfg.prior_knots.size() == 3);
  CHECK(cfg.prior_knots[1].first == 200.0);
  CHECK(cfg.prior_knots[1].second == 0.4);
  CHECK(cfg.survival_prior().cdf(100.0) == doctest::Approx(0.2));

  SUBCASE("round-trips through serialization") {
    std::istringstream in(serialize_config(cfg));
    CHECK(parse_config(in, "roundtrip") == cfg);
  }
  SUBCASE("piecewise without knots is an error") {
    CHECK_THROWS_AS(parse_text(kMinimal + "prior_kind = piecewise_linear\n"), ConfigError);
  }
  SUBCASE("unknown prior kind is an error") {
    CHECK_THROWS_AS(parse_text(kMinimal + "prior_kind = weibull\n"), ConfigError);
  }
}

TEST_CASE("format_double survives round-trips at full precision") {
  for (double v : {0.1, 1.0 / 3.0, 123456.789e-12, 2.0, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
