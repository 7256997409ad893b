// Exact, arithmetic-only classification of a HurstProfile against the
// solvability conditions: per-chaos finiteness, the white-in-time regime,
// series convergence via sufficient regions, and interpolation parameters
// for the one-dimensional rough band. Also hosts rectangular region scans.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pamlab/core.hpp"
#include "pamlab/params.hpp"

namespace pamlab {

// Four strict inequalities deciding finiteness of every chaos moment.
struct ChaosVerdict {
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool cond4 = false;
  bool finite_all_chaos = false;
};

inline ChaosVerdict classify_chaos(const HurstProfile& p) {
  const DerivedAggregates& a = p.agg;
  ChaosVerdict v;
  v.cond1 = a.h_star > 0.75 * a.d_star - 1.0;
  v.cond2 = a.h_total + 2.0 * p.h0 > static_cast<double>(p.d);
  v.cond3 = a.h_star + 2.0 * p.h0 > 0.75 * a.d_star + 0.5;
  v.cond4 = a.h_total + 2.0 * a.h_star + 4.0 * p.h0 >
            static_cast<double>(p.d) + 1.5 * a.d_star;
  v.finite_all_chaos = v.cond1 && v.cond2 && v.cond3 && v.cond4;
  return v;
}

// White-in-time regime (h0 = 1/2 exactly): finiteness reduces to two
// inequalities. They occupy the cond2/cond3 slots (their counterparts in the
// general verdict evaluated at h0 = 1/2); cond1 and cond4 are implied by
// cond2 and cond3 in this regime and are reported as true.
inline ChaosVerdict classify_chaos_white_time(const HurstProfile& p) {
  require(p.h0 == 0.5, errc::wrong_regime,
          "white-time classifier requires h0 = 1/2");
  const DerivedAggregates& a = p.agg;
  ChaosVerdict v;
  v.cond1 = true;
  v.cond2 = a.h_total > static_cast<double>(p.d) - 1.0;
  v.cond3 = a.h_star > 0.75 * a.d_star - 0.5;
  v.cond4 = true;
  v.finite_all_chaos = v.cond2 && v.cond3;
  return v;
}

// Necessary condition for solvability: |H| + 2 h0 > (3d+2)/4. For d = 1 this
// reads H + 2 h0 > 5/4.
inline bool necessary_condition(const HurstProfile& p) {
  return p.agg.h_total + 2.0 * p.h0 > (3.0 * p.d + 2.0) / 4.0;
}

// Sufficient condition via fractional integration: h0 + H* > (3/4) d* and
// |H| > d - 1 give moments of all orders.
inline bool hls_sufficient(const HurstProfile& p) {
  return p.h0 + p.agg.h_star > 0.75 * p.agg.d_star &&
         p.agg.h_total > static_cast<double>(p.d) - 1.0;
}

inline bool white_time_solvable(const HurstProfile& p) {
  return p.agg.h_total > static_cast<double>(p.d) - 1.0 &&
         p.agg.h_star > 0.75 * p.agg.d_star - 0.5;
}

// Sufficient regions for d = 1, h0 in (1/2, 1):
//   A1 = { h in (1/20, 1/4) : 2 h0 + h > 5/4 }
//   A2 = { h in (0, 1/20)   : 4 h0 + 12 h > 3 }
inline bool in_area_a1(double h0, double h) {
  return h0 > 0.5 && h0 < 1.0 && h > 0.05 && h < 0.25 &&
         2.0 * h0 + h > 1.25;
}

inline bool in_area_a2(double h0, double h) {
  return h0 > 0.5 && h0 < 1.0 && h > 0.0 && h < 0.05 &&
         4.0 * h0 + 12.0 * h > 3.0;
}

enum class series_status {
  convergent_hls,
  convergent_white_time,
  convergent_a1a2,
  divergent_necessity,
  unknown,
};

inline const char* series_status_name(series_status s) {
  switch (s) {
    case series_status::convergent_hls: return "ConvergentHLS";
    case series_status::convergent_white_time: return "ConvergentWhiteTime";
    case series_status::convergent_a1a2: return "ConvergentA1A2";
    case series_status::divergent_necessity: return "DivergentNecessity";
    case series_status::unknown: return "Unknown";
  }
  return "Unknown";
}

struct SeriesVerdict {
  series_status status = series_status::unknown;
  std::string witness;  // deciding inequality or region, empty for Unknown
};

namespace detail {
inline const char* first_failing_cond(const ChaosVerdict& v) {
  if (!v.cond1) return "cond1";
  if (!v.cond2) return "cond2";
  if (!v.cond3) return "cond3";
  if (!v.cond4) return "cond4";
  return "";
}
}  // namespace detail

// Fixed priority: necessity violation, then white-time, then the fractional
// integration region, then A1/A2, then Unknown. Divergence is reported only
// on a failed necessary condition, convergence only on a proved sufficient
// one; the gap in between stays Unknown.
inline SeriesVerdict classify_series(const HurstProfile& p) {
  const ChaosVerdict chaos = classify_chaos(p);
  if (!chaos.finite_all_chaos)
    return {series_status::divergent_necessity,
            detail::first_failing_cond(chaos)};
  if (!necessary_condition(p))
    return {series_status::divergent_necessity, "necessary"};
  if (p.h0 == 0.5 && white_time_solvable(p))
    return {series_status::convergent_white_time, "white-time"};
  if (hls_sufficient(p))
    return {series_status::convergent_hls, "hls"};
  if (p.d == 1) {
    if (in_area_a1(p.h0, p.h[0]))
      return {series_status::convergent_a1a2, "a1"};
    if (in_area_a2(p.h0, p.h[0]))
      return {series_status::convergent_a1a2, "a2"};
  }
  return {series_status::unknown, ""};
}

// Interpolation exponents for the moment bounds on the one-dimensional band
// h0 in (1/2, 3/4), h in (0, 1/4). Conjugate pairs 1/p + 1/q = 1 and the
// splittings k + k' = 1, m + m' = 1.
struct InterpolationParams {
  double p = 0.0;
  double q = 0.0;
  double m = 0.0;
  double m_prime = 0.0;
  double k = 0.0;
  double k_prime = 0.0;
};

// Constructs parameters on the set
//   S = { h + 2 h0 > 5/4, h + h0 <= 3/4, 12 h + 4 h0 > 3 }
// by taking k' at the midpoint of its admissible interval
//   max(2 / (5 (1-2h)), (4 h0 - 2) / (1-2h)) < k' < (12 (h + 2 h0) - 13) / (5 (1-2h))
// and q a hair below its upper bound. Returns absent outside S, when the k'
// interval is empty, or if any of the three constraint lines fails the
// numerical re-check.
inline std::optional<InterpolationParams> find_interpolation_params(
    const HurstProfile& p) {
  require(p.d == 1, errc::wrong_regime,
          "interpolation parameters are defined for d = 1 only");
  require(p.h0 > 0.5 && p.h0 < 0.75, errc::wrong_regime,
          "interpolation parameters require h0 in (1/2, 3/4)");
  const double h = p.h[0];
  require(h > 0.0 && h < 0.25, errc::wrong_regime,
          "interpolation parameters require h in (0, 1/4)");

  const double h0 = p.h0;
  // The middle condition is closed; absorb the rounding of h + h0 so points
  // exactly on the line stay inside regardless of the sum's rounding
  // direction.
  const bool in_s = (h + 2.0 * h0 > 1.25) && (h + h0 <= 0.75 + 1e-12) &&
                    (12.0 * h + 4.0 * h0 > 3.0);
  if (!in_s) return std::nullopt;

  const double r = 1.0 - 2.0 * h;  // roughness factor, positive on the band
  const double k_lo = std::max(2.0 / (5.0 * r), (4.0 * h0 - 2.0) / r);
  const double k_hi = (12.0 * (h + 2.0 * h0) - 13.0) / (5.0 * r);
  if (!(k_lo < k_hi)) return std::nullopt;

  constexpr double eps = 1e-6;
  InterpolationParams out;
  out.k_prime = 0.5 * (k_lo + k_hi);
  out.k = 1.0 - out.k_prime;
  out.q = 3.0 / (out.k_prime * r + 2.0) - eps;
  out.p = out.q / (out.q - 1.0);
  out.m_prime = (2.0 - out.k_prime * r) / (4.0 * (1.0 - h0));
  out.m = 1.0 - out.m_prime;

  const double s0 = 1.0 - h0;
  const double line1_hi = 3.0 / (out.k_prime * r + 2.0);
  const double line2_hi = 3.0 / (2.0 * out.k_prime * r + 4.0 * out.m_prime * s0);
  const double line2_cap = 1.0 / (2.0 * out.m_prime * s0);
  const double line3_hi = 5.0 / (2.0 * out.k * r + 8.0 * out.m * s0);
  const double line3_cap = 1.0 / (2.0 * out.m * s0);
  const bool ok = out.q > 1.0 && out.q < line1_hi &&
                  out.q < line2_hi && line2_hi < line2_cap &&
                  out.p > 1.0 && out.p < line3_hi && line3_hi < line3_cap;
  if (!ok) return std::nullopt;
  return out;
}

// Half-open axis [lo, hi): nodes lo + k * step for k = 0, 1, ... while the
// value stays strictly below hi.
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

struct ScanRow {
  double h0 = 0.0;
  double h = 0.0;
  std::string verdict;
  std::string witness;
};

enum class scan_classifier { chaos, series };

namespace detail {
inline std::vector<double> axis_nodes(const GridAxis& ax, const char* name) {
  require(ax.step > 0.0, errc::invalid_param,
          std::string(name) + " axis step must be positive");
  std::vector<double> nodes;
  for (int k = 0;; ++k) {
    const double x = ax.lo + k * ax.step;
    if (!(x < ax.hi)) break;
    nodes.push_back(x);
  }
  return nodes;
}
}  // namespace detail

// Evaluates the chosen classifier on every node of the rectangular grid,
// d = 1, row-major (h0 outer, h inner). The grid must sit inside the open
// box (1/2, 1) x (0, 1).
inline std::vector<ScanRow> region_scan(const GridAxis& h0_axis,
                                        const GridAxis& h_axis,
                                        scan_classifier which) {
  require(h0_axis.lo > 0.5 && h0_axis.hi <= 1.0, errc::invalid_param,
          "h0 grid must lie inside (1/2, 1)");
  require(h_axis.lo > 0.0 && h_axis.hi <= 1.0, errc::invalid_param,
          "h grid must lie inside (0, 1)");
  const std::vector<double> h0s = detail::axis_nodes(h0_axis, "h0");
  const std::vector<double> hs = detail::axis_nodes(h_axis, "h");
  if (h0s.empty() || hs.empty())
    fail(errc::empty_grid, "region grid has no nodes");

  std::vector<ScanRow> rows;
  rows.reserve(h0s.size() * hs.size());
  for (double h0 : h0s) {
    for (double h : hs) {
      const HurstProfile p = make_profile(h0, {h});
      ScanRow row;
      row.h0 = h0;
      row.h = h;
      if (which == scan_classifier::chaos) {
        const ChaosVerdict v = classify_chaos(p);
        row.verdict = v.finite_all_chaos ? "Finite" : "NotFinite";
        row.witness = detail::first_failing_cond(v);
      } else {
        const SeriesVerdict v = classify_series(p);
        row.verdict = series_status_name(v.status);
        row.witness = v.witness;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace pamlab
