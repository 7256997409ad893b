#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "pamlab/brascamplieb.hpp"
#include "pamlab/regions.hpp"
#include "pamlab/rng.hpp"

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

RationalMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  RationalMatrix m(static_cast<int>(rows.size()),
                   static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

BLDatum pam_datum_with(const std::vector<double>& z) {
  BLDatum d;
  d.ambient_dim = 4;
  d.maps = detail::pam_maps();
  d.exponents = z;
  return d;
}

const SubspaceReport& report_for(const DimensionConditionReport& rep,
                                 const std::vector<int>& subset) {
  for (const auto& r : rep.reports)
    if (r.subset == subset) return r;
  FAIL("subset report not found");
  return rep.reports.front();
}

}  // namespace

TEST_CASE("exact rank and nullspace on hand-built matrices") {
  RationalMatrix id3 = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(detail::rank(id3) == 3);
  CHECK(detail::nullspace_basis(id3).cols == 0);

  // second row is twice the first: rank 1, nullspace of dimension 2
  RationalMatrix dep = from_rows({{1, 2, -1}, {2, 4, -2}});
  CHECK(detail::rank(dep) == 1);
  RationalMatrix ns = detail::nullspace_basis(dep);
  CHECK(ns.cols == 2);
  RationalMatrix prod = detail::product(dep, ns);
  for (const rational& x : prod.v) CHECK(x == 0);
  CHECK(detail::rank(ns) == 2);
}

TEST_CASE("exact rank agrees with a floating pivoted factorization") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + static_cast<int>(rng.uniform01() * 5.0);
    const int c = 1 + static_cast<int>(rng.uniform01() * 7.0);
    RationalMatrix m(r, c);
    Eigen::MatrixXd md(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        const int e = static_cast<int>(rng.uniform01() * 7.0) - 3;
        m.at(i, j) = e;
        md(i, j) = e;
      }
    // small integer entries factor exactly in doubles, so the pivoted LU
    // rank is an independent oracle for the rational elimination
    const int exact = detail::rank(m);
    CHECK(exact == static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(md).rank()));

    RationalMatrix ns = detail::nullspace_basis(m);
    CHECK(ns.cols == c - exact);
    for (const rational& x : detail::product(m, ns).v) CHECK(x == 0);
    if (ns.cols > 0) CHECK(detail::rank(ns) == ns.cols);
  }
}

TEST_CASE("dimension condition reproduces the three coupled inequalities") {
  const auto rep = dimension_condition(pam_datum_with(std::vector<double>(6, 0.9)));
  CHECK(rep.reports.size() == 63);

  const auto& pair_block = report_for(rep, {3, 4, 6});
  CHECK(pair_block.dim_v == 2);
  CHECK(pair_block.lhs == 2);
  CHECK(pair_block.image_codims == std::vector<int>{0, 0, 1, 1, 0, 1});
  CHECK_THAT(pair_block.rhs, WithinAbs(2.7, 1e-12));
  CHECK_FALSE(pair_block.holds);

  const auto& diag = report_for(rep, {1, 2, 5, 6});
  CHECK(diag.dim_v == 1);
  CHECK(diag.lhs == 3);
  CHECK(diag.image_codims == std::vector<int>{1, 1, 0, 0, 1, 1});
  CHECK_THAT(diag.rhs, WithinAbs(3.6, 1e-12));
  CHECK_FALSE(diag.holds);

  const auto& full = report_for(rep, {1, 2, 3, 4, 5, 6});
  CHECK(full.dim_v == 0);
  CHECK(full.lhs == 4);
  CHECK(full.image_codims == std::vector<int>(6, 1));
  CHECK_THAT(full.rhs, WithinAbs(5.4, 1e-12));
  CHECK_FALSE(full.holds);

  CHECK_FALSE(rep.all_hold);
  CHECK(dimension_condition(pam_datum_with(std::vector<double>(6, 0.6))).all_hold);

  // reports arrive in subset-lexicographic order
  CHECK(rep.reports.front().subset == std::vector<int>{1});
  CHECK(rep.reports[1].subset == std::vector<int>{1, 2});
  CHECK(rep.reports.back().subset == std::vector<int>{6});
}

TEST_CASE("dimension condition validates its input") {
  BLDatum bad;
  bad.ambient_dim = 4;
  bad.maps.push_back(from_rows({{1, 0, 0, 0}, {1, 0, 0, 0}}));
  bad.exponents = {0.5};
  CHECK(thrown_code([&] { dimension_condition(bad); }) ==
        errc::rank_deficient_map);

  CHECK(thrown_code([] {
          dimension_condition(pam_datum_with(std::vector<double>(6, 0.0)));
        }) == errc::invalid_param);
  CHECK(thrown_code([] {
          dimension_condition(pam_datum_with(std::vector<double>(6, 1.5)));
        }) == errc::invalid_param);
  CHECK(thrown_code([] {
          dimension_condition(pam_datum_with({0.5, 0.5}));
        }) == errc::invalid_param);

  BLDatum wide;
  wide.ambient_dim = 9;
  wide.maps.push_back(RationalMatrix(1, 9));
  wide.maps[0].at(0, 0) = 1;
  wide.exponents = {0.5};
  CHECK(thrown_code([&] { dimension_condition(wide); }) == errc::invalid_param);

  BLDatum mis;
  mis.ambient_dim = 4;
  mis.maps.push_back(from_rows({{1, 0, 0}}));
  mis.exponents = {0.5};
  CHECK(thrown_code([&] { dimension_condition(mis); }) == errc::invalid_param);
}

TEST_CASE("six-map datum carries the documented bounds") {
  const auto p = make_profile(0.85, {0.2});
  const double a_unit = alpha_unit(p);
  CHECK_THAT(a_unit, WithinAbs(0.3, 1e-12));

  const PamDatumBounds pb = build_pam_datum(p, a_unit);
  CHECK(pb.datum.ambient_dim == 4);
  CHECK(pb.datum.maps.size() == 6);
  CHECK(pb.datum.exponents.empty());
  CHECK_THAT(pb.rho1, WithinAbs(0.55, 1e-12));
  CHECK_THAT(pb.rho2, WithinAbs(0.40, 1e-12));
  CHECK_THAT(pb.gamma, WithinAbs(0.30, 1e-12));
  const std::vector<double> want{0.55, 0.55, 0.40, 0.40, 0.30, 0.30};
  REQUIRE(pb.lower.size() == 6);
  for (std::size_t j = 0; j < 6; ++j)
    CHECK_THAT(pb.lower[j], WithinAbs(want[j], 1e-12));
  CHECK(pb.source_feasible);

  // the doubled gap weight only moves the inner pair of bounds
  const PamDatumBounds pb2 = build_pam_datum(p, 2.0 * a_unit);
  CHECK_THAT(pb2.rho2, WithinAbs(0.25, 1e-12));
  CHECK_THAT(pb2.rho1, WithinAbs(0.55, 1e-12));

  // map rows: gaps, outer times, cross differences on (s1, s2, r1, r2)
  CHECK(pb.datum.maps[0] == from_rows({{0, 0, -1, 1}}));
  CHECK(pb.datum.maps[1] == from_rows({{-1, 1, 0, 0}}));
  CHECK(pb.datum.maps[2] == from_rows({{0, 0, 0, 1}}));
  CHECK(pb.datum.maps[3] == from_rows({{0, 1, 0, 0}}));
  CHECK(pb.datum.maps[4] == from_rows({{1, 0, -1, 0}}));
  CHECK(pb.datum.maps[5] == from_rows({{0, 1, 0, -1}}));

  // the maps do not depend on the spatial dimension, only the bounds do
  const auto p2 = make_profile(0.6, {0.3, 0.85});
  const PamDatumBounds pb_d2 = build_pam_datum(p2, alpha_unit(p2));
  for (std::size_t j = 0; j < 6; ++j)
    CHECK(pb_d2.datum.maps[j] == pb.datum.maps[j]);

  CHECK(thrown_code([&] { build_pam_datum(p, 0.5); }) == errc::invalid_param);
  const auto pii = make_profile(0.6, {0.9});
  CHECK(thrown_code([&] { build_pam_datum(pii, alpha_unit(pii)); }) ==
        errc::wrong_regime);
}

TEST_CASE("bounds at or above one are flagged at the source") {
  // two rough coordinates with tiny exponents push rho1 past 1
  const auto p = make_profile(0.9, {0.1, 0.1});
  const PamDatumBounds pb = build_pam_datum(p, alpha_unit(p));
  CHECK_THAT(pb.rho1, WithinAbs(1.3, 1e-12));
  CHECK_FALSE(pb.source_feasible);
  CHECK_FALSE(find_feasible_exponents(pb).has_value());
}

TEST_CASE("feasible exponents exist inside the admissible region") {
  const auto p = make_profile(0.7, {0.3});
  CHECK(classify_chaos(p).finite_all_chaos);
  const PamDatumBounds pb = build_pam_datum(p, alpha_unit(p));
  const auto z = find_feasible_exponents(pb);
  REQUIRE(z.has_value());
  REQUIRE(z->size() == 6);
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK((*z)[j] > pb.lower[j]);
    CHECK((*z)[j] < 1.0);
  }
  // the returned point satisfies every lattice inequality
  BLDatum chk = pb.datum;
  chk.exponents = *z;
  CHECK(dimension_condition(chk).all_hold);

  // deterministic: the center is a fixed point of the search
  const auto z_again = find_feasible_exponents(pb);
  REQUIRE(z_again.has_value());
  CHECK(*z_again == *z);

  // loose regression on the center itself
  CHECK_THAT((*z)[0], WithinAbs(0.476323, 1e-3));
  CHECK_THAT((*z)[2], WithinAbs(0.373743, 1e-3));
}

TEST_CASE("infeasibility tracks the failing finiteness condition") {
  const auto p = make_profile(0.55, {0.1});
  const ChaosVerdict v = classify_chaos(p);
  CHECK_FALSE(v.cond3);
  CHECK_FALSE(v.finite_all_chaos);
  for (double mult : {1.0, 2.0}) {
    const PamDatumBounds pb = build_pam_datum(p, mult * alpha_unit(p));
    CHECK(pb.source_feasible);  // each bound is below 1 on its own
    CHECK_FALSE(find_feasible_exponents(pb).has_value());
  }
}

TEST_CASE("trivial one-map datum is feasible and admits the unit witness") {
  PamDatumBounds triv;
  triv.datum.ambient_dim = 1;
  triv.datum.maps.assign(1, RationalMatrix(1, 1));
  triv.datum.maps[0].at(0, 0) = 1;
  triv.lower = {0.0};
  const auto z = find_feasible_exponents(triv);
  REQUIRE(z.has_value());
  CHECK((*z)[0] > 0.0);
  CHECK((*z)[0] < 1.0);
  // z = 1 sits on the boundary of the same polytope
  BLDatum unit = triv.datum;
  unit.exponents = {1.0};
  CHECK(dimension_condition(unit).all_hold);
}

TEST_CASE("feasibility matches the chaos classifier on a coarse grid") {
  const int n = 12;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double h0 = 0.5 + (i + 0.5) * 0.5 / n;
      const double h = (j + 0.5) * 0.5 / n;
      const auto p = make_profile(h0, {h});
      bool feasible = false;
      for (double mult : {1.0, 2.0})
        if (find_feasible_exponents(build_pam_datum(p, mult * alpha_unit(p))))
          feasible = true;
      CHECK(feasible == classify_chaos(p).finite_all_chaos);
    }
}

TEST_CASE("raising a lower bound never rescues an infeasible instance") {
  Rng rng(515);
  int infeasible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const double h0 = 0.5 + 0.5 * rng.uniform01();
    const double h = 0.5 * rng.uniform01();
    const auto p = make_profile(std::min(h0, 0.999), {std::max(h, 1e-3)});
    const double mult = rng.uniform01() < 0.5 ? 1.0 : 2.0;
    PamDatumBounds pb = build_pam_datum(p, mult * alpha_unit(p));
    if (find_feasible_exponents(pb).has_value()) continue;
    ++infeasible_seen;
    const std::size_t j = static_cast<std::size_t>(rng.uniform01() * 6.0) % 6;
    pb.lower[j] += rng.uniform01() * (1.2 - pb.lower[j]);
    CHECK_FALSE(find_feasible_exponents(pb).has_value());
  }
  CHECK(infeasible_seen > 0);
}
