#pragma once

// Gaussian absolute moments and the kernel normalization constant.

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "pamlab/core.hpp"

namespace pamlab {

// E|X|^p for X ~ N(0,1); finite exactly when p > -1. The zeroth moment is
// pinned to 1 so exponent-0 identities hold without a Gamma-function ulp.
inline double abs_moment_std_gauss(double p) {
  require(p > -1.0, errc::invalid_param, "Gaussian absolute moment needs p > -1");
  if (p == 0.0) return 1.0;
  return std::exp2(0.5 * p) * std::tgamma(0.5 * (p + 1.0)) /
         std::sqrt(std::numbers::pi);
}

// Kernel normalization c_h = Gamma(1-h) / E|X|^{1-2h}, fixed so the factorized
// one-gap kernel reproduces the closed form Gamma(1-h) w^{h-1}.
inline double kernel_norm_constant(double h) {
  require(h > 0.0 && h < 1.0, errc::invalid_param, "Hurst index outside (0,1)");
  return std::tgamma(1.0 - h) / abs_moment_std_gauss(1.0 - 2.0 * h);
}

// E|Y|^p for Y ~ N(mean, sigma^2), p > -1. Confluent-hypergeometric form of
// the noncentral absolute moment.
inline double abs_moment_gauss(double p, double mean, double sigma) {
  require(sigma > 0.0, errc::invalid_param, "sigma must be positive");
  const double t = mean / sigma;
  const double m = boost::math::hypergeometric_1F1(-0.5 * p, 0.5, -0.5 * t * t);
  return std::pow(sigma, p) * abs_moment_std_gauss(p) * m;
}

}  // namespace pamlab
