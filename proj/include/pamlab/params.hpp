#pragma once

// Hurst-parameter profiles and the derived aggregates every other module
// consumes. Spatial exponents are reordered on construction so all rough
// coordinates (h_k < 3/4) precede the regular ones.

#include <algorithm>
#include <vector>

#include "pamlab/core.hpp"

namespace pamlab {

struct DerivedAggregates {
  int d_star = 0;        // count of h_k < 3/4
  int d_upper = 0;       // d - d_star
  double h_star = 0.0;   // sum over h_k < 3/4
  double h_upper = 0.0;  // sum over h_k >= 3/4
  double h_total = 0.0;  // sum of all h_k
  double beta_star = 0.0;  // sum of (4 h_k - 3) over h_k >= 3/4
};

struct HurstProfile {
  double h0 = 0.5;
  std::vector<double> h;  // rough coordinates first
  int d = 0;
  DerivedAggregates agg;
};

inline HurstProfile make_profile(double h0, std::vector<double> h) {
  require(!h.empty(), errc::invalid_param, "spatial dimension must be positive");
  require(h0 >= 0.5 && h0 <= 1.0, errc::invalid_param, "h0 outside [1/2, 1]");
  for (double hk : h)
    require(hk > 0.0 && hk < 1.0, errc::invalid_param,
            "spatial exponent outside (0,1)");

  std::stable_partition(h.begin(), h.end(), [](double x) { return x < 0.75; });

  HurstProfile p;
  p.h0 = h0;
  p.h = std::move(h);
  p.d = static_cast<int>(p.h.size());
  for (double hk : p.h) {
    p.agg.h_total += hk;
    if (hk < 0.75) {
      ++p.agg.d_star;
      p.agg.h_star += hk;
    } else {
      ++p.agg.d_upper;
      p.agg.h_upper += hk;
      p.agg.beta_star += 4.0 * hk - 3.0;
    }
  }
  return p;
}

}  // namespace pamlab
