#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "pamlab/simplex.hpp"

using namespace pamlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent exhaustive filter over {0,1,2}^n used to cross-check the
// pruned enumeration.
std::vector<std::vector<int>> brute_force_digits(int n) {
  std::vector<std::vector<int>> out;
  const int total = static_cast<int>(std::pow(3, n));
  for (int code = 0; code < total; ++code) {
    std::vector<int> d(n);
    int c = code;
    for (int i = n - 1; i >= 0; --i) {
      d[i] = c % 3;
      c /= 3;
    }
    int sum = 0;
    for (int x : d) sum += x;
    if (sum != n - 1) continue;
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i) {
      if (d[i] + d[i + 1] == 0) ok = false;
      if (d[i] == 2 && d[i + 1] == 2) ok = false;
    }
    if (ok) out.push_back(std::move(d));
  }
  return out;
}

std::vector<int> to_digits(const AlphaIndex& ai, double unit) {
  std::vector<int> d(ai.alpha.size());
  for (size_t i = 0; i < ai.alpha.size(); ++i)
    d[i] = static_cast<int>(std::lround(ai.alpha[i] / unit));
  return d;
}

}  // namespace

TEST_CASE("gap profile at reference points") {
  const auto g1 = gaps(make_simplex_point(1.0, {0.25, 0.5, 0.75}));
  REQUIRE(g1.w.size() == 3);
  CHECK_THAT(g1.w[0], WithinRel(0.25, 1e-15));
  CHECK_THAT(g1.w[1], WithinRel(0.25, 1e-15));
  CHECK_THAT(g1.w[2], WithinRel(0.25, 1e-15));
  CHECK(g1.lambda[0] == 1.0);
  CHECK_THAT(g1.lambda[1], WithinRel(std::sqrt(0.5), 1e-15));
  CHECK_THAT(g1.lambda[2], WithinRel(std::sqrt(0.5), 1e-15));

  const auto g2 = gaps(make_simplex_point(1.0, {0.1, 0.9}));
  CHECK_THAT(g2.w[0], WithinRel(0.8, 1e-15));
  CHECK_THAT(g2.w[1], WithinRel(0.1, 1e-12));
  CHECK(g2.lambda[0] == 1.0);
  CHECK_THAT(g2.lambda[1], WithinRel(std::sqrt(8.0 / 9.0), 1e-13));

  const auto g3 = gaps(make_simplex_point(2.0, {1.0}));
  REQUIRE(g3.w.size() == 1);
  CHECK_THAT(g3.w[0], WithinRel(1.0, 1e-15));
  CHECK(g3.lambda == std::vector<double>{1.0});
}

TEST_CASE("gap sum telescopes to t - s1") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + static_cast<int>(u(gen) * 6);
    std::vector<double> s(n);
    for (double& x : s) x = u(gen);
    std::sort(s.begin(), s.end());
    bool distinct = s[0] > 0.0 && s[n - 1] < 1.0;
    for (int i = 0; i + 1 < n; ++i) distinct = distinct && s[i] < s[i + 1];
    if (!distinct) continue;
    const auto g = gaps(make_simplex_point(1.0, s));
    double total = 0.0;
    for (double w : g.w) total += w;
    CHECK_THAT(total, WithinRel(1.0 - s[0], 1e-12));
    for (size_t i = 1; i < g.lambda.size(); ++i) {
      CHECK(g.lambda[i] > 0.0);
      CHECK(g.lambda[i] < 1.0);
      CHECK_THAT(g.lambda[i] * g.lambda[i],
                 WithinRel(g.w[i - 1] / (g.w[i - 1] + g.w[i]), 1e-12));
    }
  }
}

TEST_CASE("simplex point validation") {
  CHECK_THROWS_AS(make_simplex_point(1.0, {}), error);
  CHECK_THROWS_AS(make_simplex_point(1.0, {0.0, 0.5}), error);
  CHECK_THROWS_AS(make_simplex_point(1.0, {0.5, 0.5}), error);
  CHECK_THROWS_AS(make_simplex_point(1.0, {0.5, 0.4}), error);
  CHECK_THROWS_AS(make_simplex_point(1.0, {0.5, 1.0}), error);
  CHECK_THROWS_AS(make_simplex_point(-1.0, {0.5}), error);
}

TEST_CASE("gaps re-checks for degenerate spacing") {
  // Bypass the validating constructor to exercise the in-line guard.
  SimplexPoint bad;
  bad.t = 1.0;
  bad.s = {0.5, 0.5};
  try {
    gaps(bad);
    FAIL("expected DegenerateGap");
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_gap);
  }
}

TEST_CASE("case split at reference points") {
  CHECK(case_split(make_profile(0.6, {0.1})) == moment_case::case_i);
  CHECK_THAT(alpha_unit(make_profile(0.6, {0.1})), WithinRel(0.4, 1e-12));

  CHECK(case_split(make_profile(0.6, {0.9})) == moment_case::case_ii);
  CHECK_THAT(alpha_unit(make_profile(0.6, {0.9})), WithinAbs(-0.1, 1e-12));

  CHECK(case_split(make_profile(0.6, {0.5})) == moment_case::case_ii);
  CHECK_THAT(alpha_unit(make_profile(0.6, {0.5})), WithinAbs(0.0, 1e-15));
}

TEST_CASE("case split matches the aggregate form") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> uh(0.01, 0.99);
  std::uniform_int_distribution<int> ud(1, 4);
  for (int it = 0; it < 500; ++it) {
    std::vector<double> h(ud(gen));
    for (double& x : h) x = uh(gen);
    const auto p = make_profile(0.7, h);
    const bool case_one = case_split(p) == moment_case::case_i;
    const bool aggregate_form =
        1.5 * p.agg.d_star - 2.0 * p.agg.h_star > p.d - p.agg.h_total;
    CHECK(case_one == aggregate_form);
  }
}

TEST_CASE("admissible indices at small orders") {
  const auto p = make_profile(0.6, {0.1});  // A = 0.4
  const double a = alpha_unit(p);

  const auto d1 = enumerate_alpha(1, p);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].alpha == std::vector<double>{0.0});

  const auto d2 = enumerate_alpha(2, p);
  REQUIRE(d2.size() == 2);
  CHECK(to_digits(d2[0], a) == std::vector<int>{0, 1});
  CHECK(to_digits(d2[1], a) == std::vector<int>{1, 0});

  const auto d3 = enumerate_alpha(3, p);
  REQUIRE(d3.size() == 4);
  // Lexicographic in the digit alphabet 0 < A < 2A.
  CHECK(to_digits(d3[0], a) == std::vector<int>{0, 1, 1});
  CHECK(to_digits(d3[1], a) == std::vector<int>{0, 2, 0});
  CHECK(to_digits(d3[2], a) == std::vector<int>{1, 0, 1});
  CHECK(to_digits(d3[3], a) == std::vector<int>{1, 1, 0});
}

TEST_CASE("admissible indices match exhaustive filtering up to n = 6") {
  const auto p = make_profile(0.6, {0.1});
  const double a = alpha_unit(p);
  for (int n = 1; n <= 6; ++n) {
    const auto fast = enumerate_alpha(n, p);
    const auto slow = brute_force_digits(n);
    REQUIRE(fast.size() == slow.size());
    std::set<std::vector<int>> seen;
    for (const auto& ai : fast) seen.insert(to_digits(ai, a));
    for (const auto& d : slow) CHECK(seen.count(d) == 1);
    // Enumeration order is lexicographic.
    for (size_t i = 0; i + 1 < fast.size(); ++i)
      CHECK(to_digits(fast[i], a) < to_digits(fast[i + 1], a));
  }
}

TEST_CASE("rho exponents satisfy the sum identity") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> uh(0.01, 0.6);
  std::uniform_int_distribution<int> ud(1, 3);
  for (int it = 0; it < 100; ++it) {
    std::vector<double> h(ud(gen));
    for (double& x : h) x = uh(gen);
    const auto p = make_profile(0.8, h);
    if (alpha_unit(p) <= 0.0) continue;
    for (int n = 1; n <= 6; ++n) {
      const auto dn = enumerate_alpha(n, p);
      for (const auto& ai : dn) {
        double alpha_sum = 0.0;
        double rho_sum = 0.0;
        for (int i = 0; i < n; ++i) {
          alpha_sum += ai.alpha[i];
          rho_sum += ai.rho[i];
        }
        CHECK_THAT(alpha_sum, WithinAbs((n - 1) * alpha_unit(p), 1e-10));
        const double expected =
            0.5 * ((n - 1) * (1.5 * p.d + 0.5 * p.agg.beta_star -
                              2.0 * p.agg.h_total) +
                   (p.d - p.agg.h_total) - alpha_sum);
        CHECK_THAT(rho_sum, WithinAbs(expected, 1e-10));
      }
    }
  }
}

TEST_CASE("admissible index regime checks") {
  try {
    enumerate_alpha(2, make_profile(0.6, {0.5}));  // A = 0
    FAIL("expected WrongRegime");
  } catch (const error& e) {
    CHECK(e.code() == errc::wrong_regime);
  }
  try {
    enumerate_alpha(2, make_profile(0.6, {0.9}));  // A = -0.1
    FAIL("expected WrongRegime");
  } catch (const error& e) {
    CHECK(e.code() == errc::wrong_regime);
  }
  CHECK_THROWS_AS(enumerate_alpha(0, make_profile(0.6, {0.1})), error);
}
