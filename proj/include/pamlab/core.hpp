#pragma once

// Shared result types and error signalling used across the library.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pamlab {

enum class errc {
  invalid_param,
  empty_grid,
  non_convergent,
  non_integrable,
  budget_too_small,
  regime_unavailable,
  wrong_regime,
  degenerate_gap,
  precondition_violated,
  rank_deficient_map,
  parse_error,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_param: return "InvalidParam";
    case errc::empty_grid: return "EmptyGrid";
    case errc::non_convergent: return "NonConvergent";
    case errc::non_integrable: return "NonIntegrable";
    case errc::budget_too_small: return "BudgetTooSmall";
    case errc::regime_unavailable: return "RegimeUnavailable";
    case errc::wrong_regime: return "WrongRegime";
    case errc::degenerate_gap: return "DegenerateGap";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::rank_deficient_map: return "RankDeficientMap";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

enum class method_kind { exact, quadrature, monte_carlo };

inline const char* method_name(method_kind m) {
  switch (m) {
    case method_kind::exact: return "exact";
    case method_kind::quadrature: return "quadrature";
    case method_kind::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

// Numerical result with its provenance. std_error is 0 only for exact or
// converged-quadrature values, never for Monte Carlo.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  method_kind method = method_kind::exact;
  std::int64_t budget = 0;
  bool infinite_variance = false;
  bool divergent = false;        // the quantity itself is infinite
  bool surrogate_upper = false;  // value bounds the target from above
};

}  // namespace pamlab
