#pragma once

// One-dimensional quadrature for integrands of the form
//
//   f(x) = g(x) * prod_j |x - p_j|^{-gamma_j},   gamma_j < 1,
//
// on a finite interval. The interval is split at every singular point; on a
// panel whose endpoint p carries exponent gamma > 0, the grading substitution
// x = p + v^{1/(1-gamma)} turns the owning factor times the Jacobian into the
// constant 1/(1-gamma), so the singularity is absorbed analytically. For
// gamma < 0 the factor is continuous but has a fractional kink, and the same
// substitution would move the kink into the composed integrand; the map
// x = p + v^{4/(1-gamma)} is used instead, leaving an exact v^3 residue and a
// composition smooth enough for Gauss-Legendre speed. The distance of an
// evaluation point to each p_j is computed in v-space (never by
// re-subtracting x - p_j near the owning endpoint), which keeps the other
// power factors fully accurate next to their singularities.
//
// Panels are filled with composite 16-point Gauss-Legendre rules and doubled
// until two refinement levels agree to the requested tolerance; the last
// doubling difference is reported as the error estimate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "pamlab/core.hpp"

namespace pamlab {

struct SingularPoint {
  double x = 0.0;
  double gamma = 0.0;  // integrand factor |x - this.x|^{-gamma}, gamma < 1
};

struct QuadOptions {
  double rtol = 1e-9;
  int max_doublings = 14;
  int initial_panels = 2;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::int64_t evals = 0;
};

namespace detail {

// 16-point Gauss-Legendre abscissae (positive half) and weights on [-1,1].
inline constexpr double gl16_x[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr double gl16_w[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

struct Panel {
  double lo = 0.0;       // x-space endpoints, lo < hi
  double hi = 0.0;
  int owner = -1;        // index of the singular point owning the graded end
  bool graded_left = false;  // owner sits at lo (else at hi) when owner >= 0
};

// Evaluates one composite pass of a panel with m subintervals in map space.
// G receives (x, dist) where dist[j] is the exact distance |x - p_j|.
template <class G>
double panel_pass(const Panel& pan, const std::vector<SingularPoint>& pts,
                  int m, G&& g, std::vector<double>& dist,
                  std::int64_t& evals) {
  const double len = pan.hi - pan.lo;
  const std::size_t np = pts.size();

  double map_len = len;
  double map_exp = 1.0;        // x-distance to the graded end is v^map_exp
  bool cubic_residue = false;  // gamma < 0 leaves an exact v^3 in the weight
  if (pan.owner >= 0) {
    const double gamma = pts[static_cast<std::size_t>(pan.owner)].gamma;
    if (gamma >= 0.0) {
      map_exp = 1.0 / (1.0 - gamma);
      map_len = std::pow(len, 1.0 - gamma);
    } else {
      // The positive-exponent map would have exponent below 1 here and put a
      // fractional kink at v = 0. Exponent 4/(1-gamma) keeps the composition
      // smooth; the Jacobian times the owning factor is map_exp * v^3.
      map_exp = 4.0 / (1.0 - gamma);
      map_len = std::pow(len, (1.0 - gamma) / 4.0);
      cubic_residue = true;
    }
  }

  const double h = map_len / m;
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    const double vmid = (k + 0.5) * h;
    double sub = 0.0;
    for (int q = 0; q < 16; ++q) {
      const double node = q < 8 ? -gl16_x[q] : gl16_x[q - 8];
      const double wq = q < 8 ? gl16_w[q] : gl16_w[q - 8];
      const double v = vmid + 0.5 * h * node;
      // Distance to the graded endpoint, exact in map space.
      const double d = pan.owner >= 0 ? std::pow(v, map_exp) : v;
      const double x = (pan.owner >= 0 && !pan.graded_left) ? pan.hi - d
                                                            : pan.lo + d;
      double weight = wq * 0.5 * h * map_exp;
      if (cubic_residue) weight *= v * v * v;
      double powers = 1.0;
      for (std::size_t j = 0; j < np; ++j) {
        double dj;
        if (static_cast<int>(j) == pan.owner) {
          dj = d;
          // The owning factor d^{-gamma} combines with the grading Jacobian
          // into the weight above; nothing is multiplied in here.
        } else {
          const double anchor = (pan.owner >= 0)
                                    ? (pan.graded_left ? pan.lo : pan.hi)
                                    : pan.lo;
          const double base = anchor - pts[j].x;
          dj = std::abs(pan.owner >= 0 && !pan.graded_left ? base - d
                                                           : base + d);
          if (pts[j].gamma != 0.0) powers *= std::pow(dj, -pts[j].gamma);
        }
        dist[j] = dj;
      }
      sub += weight * powers * g(x, dist);
      ++evals;
    }
    total += sub;
  }
  return total;
}

template <class G>
QuadResult refine_panel(const Panel& pan, const std::vector<SingularPoint>& pts,
                        const QuadOptions& opts, G&& g) {
  std::vector<double> dist(pts.size());
  QuadResult r;
  int m = std::max(1, opts.initial_panels);
  double prev = panel_pass(pan, pts, m, g, dist, r.evals);
  for (int pass = 0; pass < opts.max_doublings; ++pass) {
    m *= 2;
    const double cur = panel_pass(pan, pts, m, g, dist, r.evals);
    const double diff = std::abs(cur - prev);
    if (diff <= opts.rtol * std::max(std::abs(cur), 1e-300)) {
      r.value = cur;
      r.error = diff;
      return r;
    }
    prev = cur;
  }
  fail(errc::non_convergent, "panel refinement did not reach tolerance");
}

}  // namespace detail

// Integrates g(x) * prod_j |x - p_j|^{-gamma_j} over [a, b]. The callback G
// receives (x, dist) with dist[j] = |x - p_j| exact; it must NOT include the
// power factors itself (the engine multiplies them), but may use the
// distances for any additional structure.
template <class G>
QuadResult integrate_power_product(double a, double b,
                                   std::vector<SingularPoint> pts, G&& g,
                                   QuadOptions opts = {}) {
  require(a < b, errc::invalid_param, "integration interval is empty");
  for (const auto& p : pts)
    require(p.gamma < 1.0, errc::non_integrable,
            "power-law exponent must be below 1");

  std::sort(pts.begin(), pts.end(),
            [](const SingularPoint& l, const SingularPoint& r) { return l.x < r.x; });
  for (std::size_t j = 0; j + 1 < pts.size(); ++j)
    require(pts[j].x != pts[j + 1].x, errc::invalid_param,
            "coincident singular points must be merged by the caller");

  // Panel boundaries: interval ends plus interior singular points.
  std::vector<double> cuts{a};
  for (const auto& p : pts)
    if (p.x > a && p.x < b) cuts.push_back(p.x);
  cuts.push_back(b);

  // Any nonzero exponent (positive or negative, below 1) is absorbed by the
  // grading map when its point sits at a panel end.
  auto gamma_at = [&](double x) -> std::pair<int, double> {
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (pts[j].x == x && pts[j].gamma != 0.0)
        return {static_cast<int>(j), pts[j].gamma};
    return {-1, 0.0};
  };

  QuadResult total;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c];
    const double hi = cuts[c + 1];
    const auto [jl, gl] = gamma_at(lo);
    const auto [jr, gr] = gamma_at(hi);

    std::vector<detail::Panel> panels;
    if (jl >= 0 && jr >= 0) {
      const double mid = 0.5 * (lo + hi);
      panels.push_back({lo, mid, jl, true});
      panels.push_back({mid, hi, jr, false});
    } else if (jl >= 0) {
      panels.push_back({lo, hi, jl, true});
    } else if (jr >= 0) {
      panels.push_back({lo, hi, jr, false});
    } else {
      panels.push_back({lo, hi, -1, false});
    }

    for (const auto& pan : panels) {
      const QuadResult r = detail::refine_panel(pan, pts, opts, g);
      total.value += r.value;
      total.error += r.error;
      total.evals += r.evals;
    }
  }
  return total;
}

// Convenience overload for smooth integrands.
template <class G>
QuadResult integrate_smooth(double a, double b, G&& g, QuadOptions opts = {}) {
  return integrate_power_product(
      a, b, {}, [&](double x, const std::vector<double>&) { return g(x); },
      opts);
}

}  // namespace pamlab
