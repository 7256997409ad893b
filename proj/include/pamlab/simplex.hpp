// Time-simplex combinatorics: gap variables w_i and their ratio variables
// lambda_i, the admissible exponent-shift set D_n over the alphabet
// {0, A, 2A}, and the rho-exponents attached to each admissible index.
#pragma once

#include <cmath>
#include <vector>

#include "pamlab/core.hpp"
#include "pamlab/params.hpp"

namespace pamlab {

// Ordered interior times 0 < s_1 < ... < s_n < t.
struct SimplexPoint {
  double t = 1.0;
  std::vector<double> s;
};

inline SimplexPoint make_simplex_point(double t, std::vector<double> s) {
  require(t > 0.0, errc::invalid_param, "horizon t must be positive");
  require(!s.empty(), errc::invalid_param, "simplex point needs n >= 1 times");
  double prev = 0.0;
  for (double x : s) {
    require(x > prev, errc::invalid_param,
            "times must be strictly increasing in (0, t)");
    prev = x;
  }
  require(prev < t, errc::invalid_param, "last time must stay below t");
  return {t, std::move(s)};
}

// w_i = s_{i+1} - s_i with s_{n+1} = t; lambda_1 = 1 and
// lambda_i = sqrt(w_{i-1} / (w_{i-1} + w_i)) for i >= 2.
struct GapProfile {
  std::vector<double> w;
  std::vector<double> lambda;
};

inline GapProfile gaps(const SimplexPoint& point) {
  const size_t n = point.s.size();
  GapProfile out;
  out.w.resize(n);
  for (size_t i = 0; i + 1 < n; ++i) out.w[i] = point.s[i + 1] - point.s[i];
  out.w[n - 1] = point.t - point.s[n - 1];
  for (double wi : out.w)
    require(wi > 0.0, errc::degenerate_gap, "gap collapsed to w <= 0");

  out.lambda.resize(n);
  out.lambda[0] = 1.0;
  for (size_t i = 1; i < n; ++i)
    out.lambda[i] = std::sqrt(out.w[i - 1] / (out.w[i - 1] + out.w[i]));
  return out;
}

// One admissible index: entries alpha_i in {0, A, 2A} with
// sum alpha = (n-1) A, no adjacent zero pair, no adjacent 2A pair, and the
// exponent list rho_i = (1/2)((3/2) d + beta*/2 - 2|H| - alpha_i) for
// i <= n-1, rho_n = (1/2)(d - |H| - alpha_n).
struct AlphaIndex {
  std::vector<double> alpha;
  std::vector<double> rho;
};

// A = d/2 - |H| + beta*/2, the case-splitting quantity.
inline double alpha_unit(const HurstProfile& p) {
  return 0.5 * p.d - p.agg.h_total + 0.5 * p.agg.beta_star;
}

enum class moment_case { case_i, case_ii };

// CaseI iff A > 0; the boundary A = 0 belongs to CaseII.
inline moment_case case_split(const HurstProfile& p) {
  return alpha_unit(p) > 0.0 ? moment_case::case_i : moment_case::case_ii;
}

namespace detail {

inline void enumerate_alpha_rec(int n, int remaining_sum, int last_digit,
                                std::vector<int>& digits,
                                std::vector<std::vector<int>>& out) {
  const int pos = static_cast<int>(digits.size());
  if (pos == n) {
    if (remaining_sum == 0) out.push_back(digits);
    return;
  }
  const int slots_after = n - pos - 1;
  for (int dgt = 0; dgt <= 2; ++dgt) {
    if (pos > 0 && last_digit == 0 && dgt == 0) continue;
    if (pos > 0 && last_digit == 2 && dgt == 2) continue;
    const int rest = remaining_sum - dgt;
    if (rest < 0 || rest > 2 * slots_after) continue;
    digits.push_back(dgt);
    enumerate_alpha_rec(n, rest, dgt, digits, out);
    digits.pop_back();
  }
}

}  // namespace detail

// Complete admissible set D_n in lexicographic order over the digit
// alphabet 0 < A < 2A. Only the CaseI regime (A > 0) uses D_n.
inline std::vector<AlphaIndex> enumerate_alpha(int n, const HurstProfile& p) {
  require(n >= 1, errc::invalid_param, "chaos order n must be >= 1");
  const double unit = alpha_unit(p);
  require(unit > 0.0, errc::wrong_regime,
          "admissible index set requires A = d/2 - |H| + beta*/2 > 0");

  std::vector<std::vector<int>> digit_sets;
  std::vector<int> digits;
  digits.reserve(n);
  detail::enumerate_alpha_rec(n, n - 1, -1, digits, digit_sets);

  const double rho_head =
      0.5 * (1.5 * p.d + 0.5 * p.agg.beta_star - 2.0 * p.agg.h_total);
  const double rho_tail = 0.5 * (p.d - p.agg.h_total);

  std::vector<AlphaIndex> out;
  out.reserve(digit_sets.size());
  for (const auto& ds : digit_sets) {
    AlphaIndex ai;
    ai.alpha.resize(n);
    ai.rho.resize(n);
    for (int i = 0; i < n; ++i) {
      ai.alpha[i] = ds[i] * unit;
      const double base = (i < n - 1) ? rho_head : rho_tail;
      ai.rho[i] = base - 0.5 * ai.alpha[i];
    }
    out.push_back(std::move(ai));
  }
  return out;
}

}  // namespace pamlab
