#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vararb/loss_model.hpp"
#include "vararb/partition.hpp"

namespace vararb {

/// Confidence level alpha in (0, 1).
class RiskLevel {
 public:
  /// Throws Errc::InvalidLevel.
  explicit RiskLevel(double alpha);

  double alpha() const noexcept { return alpha_; }
  /// 1 - alpha.
  double tail() const noexcept { return 1.0 - alpha_; }

  /// True when a unit that is hit with probability `mass` carries zero VaR,
  /// i.e. mass < 1 - alpha. The comparison keeps a margin of
  /// kProbabilityTolerance so decimal levels such as 0.95 behave as their
  /// exact decimal values (1/20 is not below 1 - 0.95).
  bool undetectable(double mass) const noexcept {
    return mass < tail() - kProbabilityTolerance;
  }

 private:
  double alpha_;
};

/// VaR_alpha(X) = inf{x : Pr(X <= x) > alpha}; losses count positively.
double value_at_risk(const LossModel& model, RiskLevel level);

/// (1 / (1 - alpha)) * integral of the strict quantile over (alpha, 1).
double expected_shortfall(const LossModel& model, RiskLevel level);

/// VaR of the tranche X * 1{X in iv}, in closed form.
///
/// With q = Pr(X in iv, X > 0) the tranche is zero with probability 1 - q;
/// its VaR is 0 when 1 - q > alpha, otherwise the smallest x in iv with
/// (1 - q) + Pr(X in iv, 0 < X <= x) > alpha.
double var_of_tranche(const LossModel& model, const Interval& iv, RiskLevel level);

/// Expected shortfall of the tranche X * 1{X in iv}, in closed form.
double es_of_tranche(const LossModel& model, const Interval& iv, RiskLevel level);

/// sum_i VaR(X_i) - VaR(X) over the tranches of `partition`. Negative values
/// witness the failure of subadditivity. Throws Errc::PartitionMismatch.
double additivity_gap(const LossModel& model, const Partition& partition, RiskLevel level);

/// Order-statistic VaR estimate of a sample: the k-th smallest value with k
/// the smallest rank satisfying k / n > alpha. Throws Errc::EmptySupport.
double empirical_var(std::span<const double> sample, RiskLevel level);

/// Same estimator for a sample made of `zeros` zero entries plus the
/// (unsorted) positive values `positives`.
double empirical_var(std::vector<double> positives, std::size_t zeros, RiskLevel level);

}  // namespace vararb
