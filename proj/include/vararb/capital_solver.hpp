#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "vararb/loss_model.hpp"
#include "vararb/partition.hpp"
#include "vararb/risk_measures.hpp"

namespace vararb {

/// Every solver result is an optimum over this class only.
inline constexpr std::string_view kSolverRestriction =
    "interval-tranche class: optimum over deterministic contiguous interval tranches only; "
    "randomized structures are reported separately";

/// Regulator's penalty on the number of desks, overhead(N) >= 0 and
/// nondecreasing in N.
class OverheadSchedule {
 public:
  enum class Kind { None, Linear, Table };

  static OverheadSchedule none();
  /// overhead(N) = cost_per_desk * N. Throws Errc::InvalidOverhead if negative.
  static OverheadSchedule linear(double cost_per_desk);
  /// overhead(N) = costs[N - 1]. Throws Errc::InvalidOverhead unless the
  /// costs are nonnegative and nondecreasing.
  static OverheadSchedule table(std::vector<double> costs);

  Kind kind() const noexcept { return kind_; }
  double cost_per_desk() const noexcept { return per_desk_; }
  const std::vector<double>& costs() const noexcept { return costs_; }

  /// Throws Errc::InvalidOverhead when a table does not reach n.
  double operator()(std::size_t n) const;

 private:
  Kind kind_ = Kind::None;
  double per_desk_ = 0.0;
  std::vector<double> costs_;
};

struct SolveResult {
  std::size_t best_n = 1;
  Partition partition;
  double capital = 0.0;    // sum of tranche VaRs
  double objective = 0.0;  // capital + overhead(best_n)
};

struct SolverOptions {
  /// Largest number of distinct support points accepted.
  std::size_t max_support = 5000;
};

/// Minimal sum of tranche VaRs over all splits of the sorted support into at
/// most n contiguous groups, by dynamic programming. Ties prefer fewer groups,
/// then the lexicographically smallest cut vector. Cuts sit midway between
/// adjacent groups.
///
/// Throws Errc::TooManyAtoms for the uniform law (discretize it first) or
/// when the support exceeds options.max_support; Errc::NInsufficient if n == 0.
SolveResult solve_tranche_dp(const LossModel& model, RiskLevel level, std::size_t n,
                             const SolverOptions& options = {});

/// Exhaustive enumeration of the same problem for at most 12 support points.
/// Test oracle for solve_tranche_dp; throws Errc::TooManyAtoms beyond that.
double brute_force_oracle(const LossModel& model, RiskLevel level, std::size_t n);

/// Minimizes capital(N) + overhead(N) over N = 1..n_max; ties go to the
/// smaller N.
SolveResult solve_with_overhead(const LossModel& model, RiskLevel level, std::size_t n_max,
                                const OverheadSchedule& overhead,
                                const SolverOptions& options = {});

/// Equal-weight grid lower + (i + 1)(upper - lower)/points, i < points, of a
/// uniform law, as an empirical model the solver accepts.
LossModel discretize_uniform(const LossModel& model, std::size_t points);

}  // namespace vararb
