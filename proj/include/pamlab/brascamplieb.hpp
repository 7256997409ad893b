#pragma once

// Dimension-condition checker for families of surjective linear maps. The
// checker enumerates the lattice of kernel intersections V = cap ker(l_j),
// computes every rank in exact rational arithmetic, and tests
// codim(V) >= sum_j z_j codim(l_j(V)) for each lattice member. For the
// built-in six-map datum this lattice carries the whole argument; for
// arbitrary external data it is a necessary-condition screen rather than a
// full decision procedure, so verdicts on such data are lattice-restricted.
//
// The module also builds the specific six-map datum behind the second-chaos
// moment bounds, together with the strict integrability lower bounds on its
// exponents, and searches the resulting polytope for a feasible exponent
// vector (returning its analytic center for reproducibility).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "pamlab/core.hpp"
#include "pamlab/params.hpp"
#include "pamlab/simplex.hpp"
#include "pamlab/threads.hpp"

namespace pamlab {

using rational = boost::multiprecision::cpp_rational;

// Dense row-major rational matrix, sized for exact rank work on small maps.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<rational> v;

  RationalMatrix() = default;
  RationalMatrix(int r, int c)
      : rows(r), cols(c), v(static_cast<std::size_t>(r) * c) {}

  rational& at(int i, int j) {
    return v[static_cast<std::size_t>(i) * cols + j];
  }
  const rational& at(int i, int j) const {
    return v[static_cast<std::size_t>(i) * cols + j];
  }
  bool operator==(const RationalMatrix& o) const {
    return rows == o.rows && cols == o.cols && v == o.v;
  }
};

// A family of surjective linear maps on a common ambient space, with one
// exponent per map. Exponents may be left empty while a feasible vector is
// still being searched for.
struct BLDatum {
  int ambient_dim = 0;
  std::vector<RationalMatrix> maps;
  std::vector<double> exponents;  // z_j in (0, 1] when present
};

namespace detail {

// In-place reduced row echelon form. Returns the pivot columns; the rank is
// their count. Exact rational pivoting, no magnitude thresholds.
inline std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
    const rational inv = m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) /= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      const rational f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(RationalMatrix m) {
  return static_cast<int>(rref(m).size());
}

// Basis of the right nullspace, one column per free variable, read off the
// reduced echelon form.
inline RationalMatrix nullspace_basis(RationalMatrix m) {
  const int n = m.cols;
  const std::vector<int> pivots = rref(m);
  std::vector<int> free_cols;
  {
    std::size_t p = 0;
    for (int c = 0; c < n; ++c) {
      if (p < pivots.size() && pivots[p] == c)
        ++p;
      else
        free_cols.push_back(c);
    }
  }
  RationalMatrix basis(n, static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis.at(free_cols[k], static_cast<int>(k)) = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p)
      basis.at(pivots[p], static_cast<int>(k)) =
          -m.at(static_cast<int>(p), free_cols[k]);
  }
  return basis;
}

inline RationalMatrix product(const RationalMatrix& a,
                              const RationalMatrix& b) {
  require(a.cols == b.rows, errc::invalid_param,
          "matrix product shape mismatch");
  RationalMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

inline void validate_bl_maps(const BLDatum& d) {
  require(d.ambient_dim >= 1 && d.ambient_dim <= 8, errc::invalid_param,
          "ambient dimension must lie in 1..8");
  require(!d.maps.empty() && d.maps.size() <= 12, errc::invalid_param,
          "map count must lie in 1..12");
  for (const auto& m : d.maps) {
    require(m.cols == d.ambient_dim, errc::invalid_param,
            "map column count must equal the ambient dimension");
    require(m.rows >= 1 && m.rows <= d.ambient_dim, errc::invalid_param,
            "map target dimension must lie in 1..ambient");
    require(rank(m) == m.rows, errc::rank_deficient_map,
            "map matrix is not surjective");
  }
}

// Exponent-independent geometry of one lattice member: the kernel
// intersection over the subset, its codimension, and the image codimension
// of every map restricted to it.
struct SubsetGeometry {
  std::vector<int> subset;  // 1-based map indices
  int dim_v = 0;
  int lhs = 0;
  std::vector<int> image_codims;  // one entry per map, subset or not
};

struct GeometryBatch {
  std::vector<SubsetGeometry> v;
  GeometryBatch& operator+=(const GeometryBatch& o) {
    v.insert(v.end(), o.v.begin(), o.v.end());
    return *this;
  }
};

// Geometry of every nonempty subset, in subset-lexicographic order.
inline std::vector<SubsetGeometry> subspace_lattice(const BLDatum& d) {
  const int m = static_cast<int>(d.maps.size());
  const std::size_t n_masks = (std::size_t{1} << m) - 1;
  GeometryBatch all = parallel_indexed_sum<GeometryBatch>(
      n_masks, [&](std::size_t idx) {
        const std::size_t mask = idx + 1;
        SubsetGeometry g;
        int stacked_rows = 0;
        for (int j = 0; j < m; ++j)
          if (mask & (std::size_t{1} << j)) {
            g.subset.push_back(j + 1);
            stacked_rows += d.maps[j].rows;
          }
        RationalMatrix stacked(stacked_rows, d.ambient_dim);
        int r = 0;
        for (int j : g.subset) {
          const RationalMatrix& mp = d.maps[static_cast<std::size_t>(j - 1)];
          for (int i = 0; i < mp.rows; ++i, ++r)
            for (int c = 0; c < mp.cols; ++c) stacked.at(r, c) = mp.at(i, c);
        }
        const RationalMatrix basis = nullspace_basis(stacked);
        g.dim_v = basis.cols;
        g.lhs = d.ambient_dim - g.dim_v;
        g.image_codims.reserve(d.maps.size());
        for (const auto& mp : d.maps)
          g.image_codims.push_back(mp.rows - rank(product(mp, basis)));
        GeometryBatch b;
        b.v.push_back(std::move(g));
        return b;
      });
  std::sort(all.v.begin(), all.v.end(),
            [](const SubsetGeometry& a, const SubsetGeometry& b) {
              return a.subset < b.subset;
            });
  return std::move(all.v);
}

}  // namespace detail

// Verdict for one lattice member V: the dimension condition requires the
// integer codim(V) to dominate the exponent-weighted image codimensions.
struct SubspaceReport {
  std::vector<int> subset;
  int dim_v = 0;
  int lhs = 0;                    // codim(V), exact
  std::vector<int> image_codims;  // codim(l_j(V)) per map, exact
  double rhs = 0.0;               // sum_j z_j * image_codims[j]
  bool holds = false;             // lhs >= rhs
};

struct DimensionConditionReport {
  std::vector<SubspaceReport> reports;  // subset-lexicographic order
  bool all_hold = false;
};

// Checks the dimension condition over every kernel intersection. All ranks
// are exact; only the final weighted comparison against the real exponents
// happens in floating point.
inline DimensionConditionReport dimension_condition(const BLDatum& d) {
  detail::validate_bl_maps(d);
  require(d.exponents.size() == d.maps.size(), errc::invalid_param,
          "one exponent per map is required");
  for (double z : d.exponents)
    require(z > 0.0 && z <= 1.0, errc::invalid_param,
            "exponents must lie in (0, 1]");

  DimensionConditionReport rep;
  rep.all_hold = true;
  for (auto& g : detail::subspace_lattice(d)) {
    SubspaceReport r;
    r.subset = std::move(g.subset);
    r.dim_v = g.dim_v;
    r.lhs = g.lhs;
    r.image_codims = std::move(g.image_codims);
    r.rhs = 0.0;
    for (std::size_t j = 0; j < d.exponents.size(); ++j)
      r.rhs += d.exponents[j] * r.image_codims[j];
    r.holds = static_cast<double>(r.lhs) >= r.rhs;
    rep.all_hold = rep.all_hold && r.holds;
    rep.reports.push_back(std::move(r));
  }
  return rep;
}

namespace detail {

// The six maps on R^4 with coordinates (s1, s2, r1, r2): the two time gaps,
// the two outer times, and the two cross differences.
inline std::vector<RationalMatrix> pam_maps() {
  const int rows[6][4] = {
      {0, 0, -1, 1},   // r2 - r1
      {-1, 1, 0, 0},   // s2 - s1
      {0, 0, 0, 1},    // r2
      {0, 1, 0, 0},    // s2
      {1, 0, -1, 0},   // s1 - r1
      {0, 1, 0, -1},   // s2 - r2
  };
  std::vector<RationalMatrix> maps;
  maps.reserve(6);
  for (const auto& row : rows) {
    RationalMatrix m(1, 4);
    for (int c = 0; c < 4; ++c) m.at(0, c) = row[c];
    maps.push_back(std::move(m));
  }
  return maps;
}

}  // namespace detail

// Six-map datum plus the strict lower bounds its exponents must exceed. The
// upper cap is always 1. A bound at or above 1 leaves no admissible exponent
// and is flagged here rather than silently clipped.
struct PamDatumBounds {
  BLDatum datum;              // exponents left empty
  std::vector<double> lower;  // strict lower bound per exponent
  double rho1 = 0.0;
  double rho2 = 0.0;
  double gamma = 0.0;
  bool source_feasible = false;  // every lower bound sits below 1
};

// Builds the datum for a positive-gap profile. alpha2 selects which of the
// two admissible gap weights the inner pair of bounds uses: the unit gap A
// or its double.
inline PamDatumBounds build_pam_datum(const HurstProfile& p, double alpha2) {
  require(case_split(p) == moment_case::case_i, errc::wrong_regime,
          "the six-map datum applies in the positive-gap regime only");
  const double a_unit = alpha_unit(p);
  const double tol = 1e-9 * std::max(1.0, std::abs(a_unit));
  require(std::abs(alpha2 - a_unit) <= tol ||
              std::abs(alpha2 - 2.0 * a_unit) <= tol,
          errc::invalid_param, "alpha2 must equal the unit gap A or 2A");

  PamDatumBounds pb;
  pb.datum.ambient_dim = 4;
  pb.datum.maps = detail::pam_maps();
  pb.rho1 = 0.5 * (1.5 * p.agg.d_star - 2.0 * p.agg.h_star);
  pb.rho2 = pb.rho1 - 0.5 * alpha2;
  pb.gamma = 2.0 - 2.0 * p.h0;
  pb.lower = {pb.rho1, pb.rho1, pb.rho2, pb.rho2, pb.gamma, pb.gamma};
  pb.source_feasible = true;
  for (double lb : pb.lower) pb.source_feasible = pb.source_feasible && lb < 1.0;
  return pb;
}

// Searches the exponent polytope { lower_j < z_j <= 1, every lattice
// inequality } and returns its analytic center when it is nonempty. The
// decision itself only needs the minimal corner: every constraint is
// monotone increasing in z, so the polytope is nonempty exactly when the
// corner just above the lower bounds satisfies all lattice inequalities.
// Strict bounds are enforced with a 1e-9 interior margin.
inline std::optional<std::vector<double>> find_feasible_exponents(
    const PamDatumBounds& pb) {
  detail::validate_bl_maps(pb.datum);
  const std::size_t m = pb.datum.maps.size();
  require(pb.lower.size() == m, errc::invalid_param,
          "one lower bound per map is required");

  constexpr double kMargin = 1e-9;
  std::vector<double> lo(m);
  for (std::size_t j = 0; j < m; ++j) {
    lo[j] = std::max(pb.lower[j], 0.0);  // exponents live in (0, 1]
    if (!(lo[j] + kMargin <= 1.0)) return std::nullopt;
  }

  // Lattice inequalities as rows: coeff . z <= lhs. Constant rows (all image
  // codimensions zero) hold identically and carry no exponent information.
  std::vector<std::vector<int>> coeff;
  std::vector<double> limit;
  for (const auto& g : detail::subspace_lattice(pb.datum)) {
    bool nonzero = false;
    for (int c : g.image_codims) nonzero = nonzero || c != 0;
    if (!nonzero) continue;
    coeff.push_back(g.image_codims);
    limit.push_back(static_cast<double>(g.lhs));
  }

  std::vector<double> z0(m);
  for (std::size_t j = 0; j < m; ++j) z0[j] = lo[j] + kMargin;
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += coeff[k][j] * z0[j];
    if (s > limit[k] + 1e-12) return std::nullopt;
  }

  // Analytic center: maximize the sum of log slacks over the bound pairs and
  // the lattice rows by damped Newton steps.
  const int mi = static_cast<int>(m);
  Eigen::VectorXd l = Eigen::Map<const Eigen::VectorXd>(lo.data(), mi);
  Eigen::MatrixXd C(static_cast<int>(coeff.size()), mi);
  Eigen::VectorXd b(static_cast<int>(coeff.size()));
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    b(static_cast<int>(k)) = limit[k];
    for (std::size_t j = 0; j < m; ++j)
      C(static_cast<int>(k), static_cast<int>(j)) = coeff[k][j];
  }

  auto strictly_feasible = [&](const Eigen::VectorXd& z) {
    for (int j = 0; j < mi; ++j)
      if (!(z(j) > l(j) && z(j) < 1.0)) return false;
    const Eigen::VectorXd s = b - C * z;
    for (int k = 0; k < s.size(); ++k)
      if (!(s(k) > 0.0)) return false;
    return true;
  };
  auto barrier = [&](const Eigen::VectorXd& z) {
    double phi = 0.0;
    for (int j = 0; j < mi; ++j)
      phi += std::log(z(j) - l(j)) + std::log(1.0 - z(j));
    const Eigen::VectorXd s = b - C * z;
    for (int k = 0; k < s.size(); ++k) phi += std::log(s(k));
    return phi;
  };

  Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(z0.data(), mi);
  {
    const Eigen::VectorXd mid = 0.5 * (l.array() + 1.0).matrix();
    double t = 1.0;
    Eigen::VectorXd cand = mid;
    int shrink = 0;
    while (!strictly_feasible(cand) && shrink < 60) {
      t *= 0.5;
      cand = z + t * (mid - z);
      ++shrink;
    }
    if (strictly_feasible(cand))
      z = cand;
    else
      return std::vector<double>(z.data(), z.data() + mi);  // boundary case
  }

  for (int iter = 0; iter < 100; ++iter) {
    const Eigen::VectorXd s = b - C * z;
    Eigen::VectorXd g(mi);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(mi, mi);
    for (int j = 0; j < mi; ++j) {
      const double dl = z(j) - l(j), du = 1.0 - z(j);
      g(j) = 1.0 / dl - 1.0 / du;
      H(j, j) += 1.0 / (dl * dl) + 1.0 / (du * du);
    }
    for (int k = 0; k < s.size(); ++k) {
      g -= C.row(k).transpose() / s(k);
      H += C.row(k).transpose() * C.row(k) / (s(k) * s(k));
    }
    const Eigen::VectorXd dz = H.ldlt().solve(g);
    const double decrement = g.dot(dz);
    if (decrement < 1e-13) break;
    double t = 1.0;
    bool stepped = false;
    const double phi0 = barrier(z);
    for (int bt = 0; bt < 60 && !stepped; ++bt) {
      const Eigen::VectorXd cand = z + t * dz;
      if (strictly_feasible(cand) &&
          barrier(cand) >= phi0 + 0.25 * t * decrement) {
        z = cand;
        stepped = true;
      }
      t *= 0.5;
    }
    if (!stepped) break;
  }
  return std::vector<double>(z.data(), z.data() + mi);
}

}  // namespace pamlab
