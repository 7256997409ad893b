#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pamlab/special.hpp"

using namespace pamlab;
using Catch::Matchers::WithinRel;

// Reference values computed with 25-digit arbitrary-precision arithmetic.
TEST_CASE("standard Gaussian absolute moments match reference values") {
  CHECK_THAT(abs_moment_std_gauss(0.4), WithinRel(0.8412484333770466, 1e-14));
  CHECK_THAT(abs_moment_std_gauss(0.5), WithinRel(0.8221789586624586, 1e-14));
  CHECK_THAT(abs_moment_std_gauss(-0.5), WithinRel(1.7200799746490391, 1e-14));
  CHECK_THAT(abs_moment_std_gauss(0.3), WithinRel(0.8668921729571168, 1e-14));
  CHECK_THAT(abs_moment_std_gauss(-0.3), WithinRel(1.2946549440006073, 1e-14));
}

TEST_CASE("standard Gaussian absolute moments at integer orders") {
  CHECK_THAT(abs_moment_std_gauss(0.0), WithinRel(1.0, 1e-15));
  CHECK_THAT(abs_moment_std_gauss(1.0),
             WithinRel(std::sqrt(2.0 / std::numbers::pi), 1e-15));
  CHECK_THAT(abs_moment_std_gauss(2.0), WithinRel(1.0, 1e-14));
}

TEST_CASE("absolute moment rejects non-integrable order") {
  CHECK_THROWS_AS(abs_moment_std_gauss(-1.0), error);
  CHECK_THROWS_AS(abs_moment_std_gauss(-1.2), error);
}

TEST_CASE("kernel normalization equals sqrt(pi) 2^{h-1/2}") {
  for (double h : {0.3, 0.5, 0.65, 0.9}) {
    const double closed = std::sqrt(std::numbers::pi) * std::exp2(h - 0.5);
    CHECK_THAT(kernel_norm_constant(h), WithinRel(closed, 1e-14));
  }
}

// M(0.4, 0.5, -z) reference values; reached through the noncentral moment at
// p = -0.8, sigma = 1, mean = sqrt(2z).
TEST_CASE("noncentral absolute moment matches confluent reference values") {
  const double base = abs_moment_std_gauss(-0.8);
  const struct {
    double z, m;
  } table[] = {
      {0.1, 0.9236167121783416},  {2.0, 0.2663271574295126},
      {10.0, 0.07736132661683834}, {50.0, 0.03925081338936679},
      {200.0, 0.02241860276683857}, {5000.0, 0.006175576942749634},
  };
  for (const auto& row : table) {
    const double mean = std::sqrt(2.0 * row.z);
    CHECK_THAT(abs_moment_gauss(-0.8, mean, 1.0),
               WithinRel(base * row.m, 1e-12));
  }
}

TEST_CASE("noncentral absolute moment basic properties") {
  CHECK_THAT(abs_moment_gauss(-0.8, 0.0, 1.0),
             WithinRel(abs_moment_std_gauss(-0.8), 1e-14));
  CHECK_THAT(abs_moment_gauss(-0.6, -1.7, 1.0),
             WithinRel(abs_moment_gauss(-0.6, 1.7, 1.0), 1e-14));
  // sigma scaling: E|N(m, s^2)|^p = s^p E|N(m/s, 1)|^p
  CHECK_THAT(abs_moment_gauss(-0.8, 0.3, 0.01),
             WithinRel(std::pow(0.01, -0.8) * abs_moment_gauss(-0.8, 30.0, 1.0),
                       1e-12));
  // far mean: E|N(m,1)|^p -> |m|^p
  CHECK_THAT(abs_moment_gauss(-0.8, 100.0, 1.0),
             WithinRel(std::pow(100.0, -0.8), 1e-3));
}
