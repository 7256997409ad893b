#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "pamlab/regions.hpp"

using namespace pamlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

template <class F>
errc thrown_code(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected pamlab::error");
  return errc::io_error;
}

}  // namespace

TEST_CASE("chaos verdict at reference points") {
  const auto a = classify_chaos(make_profile(0.6, {0.1}));
  CHECK(a.cond1);
  CHECK(a.cond2);
  CHECK(a.cond3);
  CHECK(a.cond4);
  CHECK(a.finite_all_chaos);

  const auto b = classify_chaos(make_profile(0.55, {0.1}));
  CHECK(b.cond1);
  CHECK(b.cond2);
  CHECK_FALSE(b.cond3);
  CHECK_FALSE(b.cond4);
  CHECK_FALSE(b.finite_all_chaos);

  const auto c = classify_chaos(make_profile(0.6, {0.3, 0.8}));
  CHECK(c.cond1);
  CHECK(c.cond2);
  CHECK(c.cond3);
  CHECK(c.cond4);
  CHECK(c.finite_all_chaos);
}

TEST_CASE("chaos verdict is the conjunction of its conditions") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> uh0(0.5, 1.0);
  std::uniform_real_distribution<double> uh(0.01, 0.99);
  std::uniform_int_distribution<int> ud(1, 4);
  for (int it = 0; it < 500; ++it) {
    std::vector<double> h(ud(gen));
    for (double& x : h) x = uh(gen);
    const auto v = classify_chaos(make_profile(uh0(gen), h));
    CHECK(v.finite_all_chaos == (v.cond1 && v.cond2 && v.cond3 && v.cond4));
  }
}

TEST_CASE("white-time verdict at reference points") {
  const auto a = classify_chaos_white_time(make_profile(0.5, {0.3}));
  CHECK(a.cond2);
  CHECK(a.cond3);
  CHECK(a.finite_all_chaos);

  const auto b = classify_chaos_white_time(make_profile(0.5, {0.25}));
  CHECK(b.cond2);
  CHECK_FALSE(b.cond3);  // boundary counts as failure
  CHECK_FALSE(b.finite_all_chaos);

  const auto c = classify_chaos_white_time(make_profile(0.5, {0.8, 0.8, 0.3}));
  CHECK_FALSE(c.cond2);  // |H| = 1.9 <= d - 1 = 2
  CHECK_FALSE(c.finite_all_chaos);
}

TEST_CASE("white-time classifier rejects colored time") {
  CHECK(thrown_code([] {
          classify_chaos_white_time(make_profile(0.6, {0.3}));
        }) == errc::wrong_regime);
}

TEST_CASE("white-time verdict agrees with the general one at h0 = 1/2") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> uh(0.01, 0.99);
  std::uniform_int_distribution<int> ud(1, 4);
  for (int it = 0; it < 500; ++it) {
    std::vector<double> h(ud(gen));
    for (double& x : h) x = uh(gen);
    const auto p = make_profile(0.5, h);
    CHECK(classify_chaos_white_time(p).finite_all_chaos ==
          classify_chaos(p).finite_all_chaos);
  }
}

TEST_CASE("series statuses at reference points") {
  // Both points below satisfy the fractional-integration sufficiency
  // h0 + H* > (3/4) d* with |H| > d - 1, which outranks A1/A2 in the
  // priority chain, even though they also lie inside A1 and A2.
  const auto a = classify_series(make_profile(0.7, {0.1}));
  CHECK(a.status == series_status::convergent_hls);
  CHECK(a.witness == "hls");
  CHECK(in_area_a1(0.7, 0.1));

  const auto b = classify_series(make_profile(0.9, {0.04}));
  CHECK(b.status == series_status::convergent_hls);
  CHECK(b.witness == "hls");
  CHECK(in_area_a2(0.9, 0.04));

  const auto c = classify_series(make_profile(0.55, {0.04}));
  CHECK(c.status == series_status::divergent_necessity);
  CHECK(c.witness == "cond3");

  // A1 decides where sufficiency fails: 0.58 + 0.12 = 0.70 <= 0.75.
  const auto d = classify_series(make_profile(0.58, {0.12}));
  CHECK(d.status == series_status::convergent_a1a2);
  CHECK(d.witness == "a1");

  // A2 decides below h = 1/20: 4(0.65) + 12(0.04) = 3.08 > 3.
  const auto e = classify_series(make_profile(0.65, {0.04}));
  CHECK(e.status == series_status::convergent_a1a2);
  CHECK(e.witness == "a2");

  const auto f = classify_series(make_profile(0.5, {0.3}));
  CHECK(f.status == series_status::convergent_white_time);

  const auto g = classify_series(make_profile(0.5, {0.25}));
  CHECK(g.status == series_status::divergent_necessity);

  // Inside the open gap: necessity holds, no sufficient region applies.
  const auto u = classify_series(make_profile(0.61, {0.04}));
  CHECK(u.status == series_status::unknown);
  CHECK(u.witness.empty());

  // Smooth single coordinate always lands in the sufficiency region.
  const auto s = classify_series(make_profile(0.6, {0.8}));
  CHECK(s.status == series_status::convergent_hls);

  // d = 2 mixed profile.
  const auto m = classify_series(make_profile(0.8, {0.3, 0.8}));
  CHECK(m.status == series_status::convergent_hls);

  // d = 2, chaos finite, sufficiency fails, A1/A2 unavailable for d > 1.
  const auto w = classify_series(make_profile(0.85, {0.3, 0.3}));
  CHECK(w.status == series_status::unknown);
}

TEST_CASE("series convergence implies per-chaos finiteness") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> uh0(0.5, 1.0);
  std::uniform_real_distribution<double> uh(0.01, 0.99);
  std::uniform_int_distribution<int> ud(1, 3);
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> h(ud(gen));
    for (double& x : h) x = uh(gen);
    const auto p = make_profile(uh0(gen), h);
    const auto s = classify_series(p).status;
    const bool convergent = s == series_status::convergent_hls ||
                            s == series_status::convergent_white_time ||
                            s == series_status::convergent_a1a2;
    if (convergent) CHECK(classify_chaos(p).finite_all_chaos);
  }
}

TEST_CASE("white-in-time series verdicts are two-valued") {
  for (int j = 1; j < 100; ++j) {
    const double h = 0.01 * j;
    const auto s = classify_series(make_profile(0.5, {h})).status;
    if (h > 0.25)
      CHECK(s == series_status::convergent_white_time);
    else
      CHECK(s == series_status::divergent_necessity);
  }
}

TEST_CASE("chaos finiteness is monotone in h0") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> uh(0.01, 0.99);
  std::uniform_int_distribution<int> ud(1, 4);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> h(ud(gen));
    for (double& x : h) x = uh(gen);
    bool seen_finite = false;
    for (int i = 0; i <= 50; ++i) {
      const double h0 = 0.5 + 0.01 * i;
      const bool fin = classify_chaos(make_profile(h0, h)).finite_all_chaos;
      if (seen_finite) CHECK(fin);
      seen_finite = seen_finite || fin;
    }
  }
}

TEST_CASE("d = 1 rough finiteness reduces to H + 2 h0 > 5/4") {
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double h0 = 0.5 + (i + 0.5) * 0.005;  // (0.5, 1)
      const double h = (j + 0.5) * 0.005;         // (0, 0.5)
      const bool fin = classify_chaos(make_profile(h0, {h})).finite_all_chaos;
      const bool closed_form = h + 2.0 * h0 > 1.25;
      if (fin == closed_form) ++agree;
    }
  }
  CHECK(agree == 100 * 100);
}

TEST_CASE("A1 and A2 sit inside the necessity region") {
  for (int i = 1; i < 100; ++i) {
    for (int j = 1; j < 200; ++j) {
      const double h0 = 0.5 + 0.005 * i;
      const double h = 0.005 * j;
      if (!(in_area_a1(h0, h) || in_area_a2(h0, h))) continue;
      const auto p = make_profile(h0, {h});
      CHECK(necessary_condition(p));
      CHECK(classify_series(p).status != series_status::divergent_necessity);
    }
  }
}

TEST_CASE("interpolation parameters at the reference point") {
  const auto opt = find_interpolation_params(make_profile(0.58, {0.12}));
  REQUIRE(opt.has_value());
  const auto& ip = *opt;
  CHECK_THAT(ip.k_prime, WithinRel(0.5736842105263158, 1e-12));
  CHECK_THAT(ip.k, WithinRel(0.4263157894736842, 1e-12));
  CHECK_THAT(ip.q, WithinRel(1.231526093596059, 1e-12));
  CHECK_THAT(ip.p, WithinRel(5.31916759129832, 1e-12));
  CHECK_THAT(ip.m_prime, WithinRel(0.930952380952381, 1e-12));
  CHECK_THAT(ip.m, WithinRel(0.06904761904761905, 1e-12));
  CHECK_THAT(1.0 / ip.p + 1.0 / ip.q, WithinRel(1.0, 1e-12));
}

TEST_CASE("interpolation parameters absent outside S") {
  CHECK_FALSE(find_interpolation_params(make_profile(0.55, {0.05})).has_value());
  // Outside S because 0.70 + 0.10 > 3/4, although the series converges there.
  const auto p = make_profile(0.70, {0.10});
  CHECK_FALSE(find_interpolation_params(p).has_value());
  CHECK(classify_series(p).status == series_status::convergent_hls);
}

TEST_CASE("interpolation parameters reject the wrong regime") {
  CHECK(thrown_code([] {
          find_interpolation_params(make_profile(0.8, {0.1}));
        }) == errc::wrong_regime);
  CHECK(thrown_code([] {
          find_interpolation_params(make_profile(0.5, {0.1}));
        }) == errc::wrong_regime);
  CHECK(thrown_code([] {
          find_interpolation_params(make_profile(0.6, {0.3}));
        }) == errc::wrong_regime);
  CHECK(thrown_code([] {
          find_interpolation_params(make_profile(0.6, {0.1, 0.1}));
        }) == errc::wrong_regime);
}

TEST_CASE("interpolation parameters exist exactly on S") {
  for (int i = 1; i < 50; ++i) {
    for (int j = 1; j < 50; ++j) {
      const double h0 = 0.5 + 0.005 * i;
      const double h = 0.005 * j;
      // Node (i, j) is h0 = (100+i)/200, h = j/200; the three strict or
      // closed conditions of S reduce to exact integer comparisons, which
      // keeps nodes lying exactly on a boundary line out of S.
      const bool in_s = (j + 2 * i > 50) && (i + j <= 50) && (3 * j + i > 50);
      const auto opt = find_interpolation_params(make_profile(h0, {h}));
      CHECK(opt.has_value() == in_s);
      if (!opt) continue;

      const auto& ip = *opt;
      CHECK(ip.p > 1.0);
      CHECK(ip.q > 1.0);
      CHECK_THAT(1.0 / ip.p + 1.0 / ip.q, WithinRel(1.0, 1e-12));
      CHECK_THAT(ip.k + ip.k_prime, WithinRel(1.0, 1e-12));
      CHECK_THAT(ip.m + ip.m_prime, WithinRel(1.0, 1e-12));
      CHECK(ip.k >= 0.0);
      CHECK(ip.k <= 1.0);
      CHECK(ip.m >= 0.0);
      CHECK(ip.m <= 1.0);

      const double r = 1.0 - 2.0 * h;
      const double s0 = 1.0 - h0;
      CHECK(ip.q < 3.0 / (ip.k_prime * r + 2.0));
      const double line2 = 3.0 / (2.0 * ip.k_prime * r + 4.0 * ip.m_prime * s0);
      CHECK(ip.q < line2);
      CHECK(line2 < 1.0 / (2.0 * ip.m_prime * s0));
      const double line3 = 5.0 / (2.0 * ip.k * r + 8.0 * ip.m * s0);
      CHECK(ip.p < line3);
      CHECK(line3 < 1.0 / (2.0 * ip.m * s0));
    }
  }
}

TEST_CASE("region scan over a 3x3 series grid") {
  const auto rows = region_scan({0.55, 0.96, 0.2}, {0.05, 0.46, 0.2},
                                scan_classifier::series);
  REQUIRE(rows.size() == 9);
  CHECK_THAT(rows[0].h0, WithinRel(0.55, 1e-15));
  CHECK_THAT(rows[0].h, WithinRel(0.05, 1e-15));
  CHECK(rows[0].verdict == "DivergentNecessity");
  CHECK_THAT(rows[8].h0, WithinRel(0.95, 1e-12));
  CHECK_THAT(rows[8].h, WithinRel(0.45, 1e-12));
  CHECK(rows[8].verdict == "ConvergentHLS");

  // Row-major: h0 varies slowest.
  CHECK_THAT(rows[1].h0, WithinRel(0.55, 1e-15));
  CHECK_THAT(rows[1].h, WithinRel(0.25, 1e-12));
  CHECK_THAT(rows[3].h0, WithinRel(0.75, 1e-12));
  CHECK_THAT(rows[3].h, WithinRel(0.05, 1e-15));
}

TEST_CASE("region scan single-cell and degenerate grids") {
  const auto one = region_scan({0.6, 0.61, 1.0}, {0.1, 0.11, 1.0},
                               scan_classifier::chaos);
  REQUIRE(one.size() == 1);
  CHECK(one[0].verdict == "Finite");
  CHECK(one[0].witness.empty());

  const auto corner = region_scan({0.6, 0.7, 5.0}, {0.1, 0.4, 5.0},
                                  scan_classifier::series);
  REQUIRE(corner.size() == 1);
  CHECK_THAT(corner[0].h0, WithinRel(0.6, 1e-15));
  CHECK_THAT(corner[0].h, WithinRel(0.1, 1e-15));
}

TEST_CASE("region scan rejects bad grids") {
  CHECK(thrown_code([] {
          region_scan({0.6, 0.6, 0.1}, {0.1, 0.4, 0.1},
                      scan_classifier::series);
        }) == errc::empty_grid);
  CHECK(thrown_code([] {
          region_scan({0.5, 0.9, 0.1}, {0.1, 0.4, 0.1},
                      scan_classifier::series);
        }) == errc::invalid_param);
  CHECK(thrown_code([] {
          region_scan({0.55, 0.9, 0.1}, {0.1, 1.5, 0.1},
                      scan_classifier::series);
        }) == errc::invalid_param);
  CHECK(thrown_code([] {
          region_scan({0.55, 0.9, -0.1}, {0.1, 0.4, 0.1},
                      scan_classifier::series);
        }) == errc::invalid_param);
}

TEST_CASE("region scan is deterministic") {
  const auto a = region_scan({0.55, 0.96, 0.05}, {0.05, 0.46, 0.05},
                             scan_classifier::series);
  const auto b = region_scan({0.55, 0.96, 0.05}, {0.05, 0.46, 0.05},
                             scan_classifier::series);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].h0 == b[i].h0);
    CHECK(a[i].h == b[i].h);
    CHECK(a[i].verdict == b[i].verdict);
    CHECK(a[i].witness == b[i].witness);
  }
}
