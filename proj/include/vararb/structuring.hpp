#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vararb/loss_model.hpp"
#include "vararb/partition.hpp"
#include "vararb/risk_measures.hpp"

namespace vararb {

/// Smallest N with 1/N strictly below 1 - alpha, i.e. floor(1/(1-alpha)) + 1.
std::size_t min_subsidiaries(RiskLevel level);

/// Cut points whose every tranche carries probability strictly below
/// 1 - alpha, so that each tranche has zero VaR.
///
/// Without `n` the fewest feasible tranches are used: equal-mass quantile cuts
/// for the uniform law, maximal contiguous groups of support points for atomic
/// laws (cuts sit midway between groups). A larger `n` subdivides further.
///
/// Throws Errc::AtomTooHeavy when a single atom has mass >= 1 - alpha (no
/// partition can hide it; see randomized_assign) and Errc::NInsufficient when
/// `n` is below the minimal feasible count.
Partition build_partition(const LossModel& model, RiskLevel level,
                          std::optional<std::size_t> n = std::nullopt);

/// A loss split into tranches X_i = X * 1{X in tranche i}.
struct TrancheDecomposition {
  LossModel model;
  Partition partition;
  std::vector<double> masses;
  std::vector<double> tranche_vars;
  std::vector<double> tranche_es;

  /// Capital budgeted by the units together: sum of tranche VaRs.
  double total_capital() const;
};

/// Throws Errc::PartitionMismatch when the cuts do not end at the maximal loss.
TrancheDecomposition decompose(const LossModel& model, const Partition& partition,
                               RiskLevel level);

/// Per-tranche losses for the realization x: x in its own tranche, 0 elsewhere.
/// Throws Errc::OutOfSupport for x outside [0, M].
std::vector<double> split_realization(const TrancheDecomposition& decomposition, double x);

struct RandomizedScheme {
  std::size_t subsidiaries = 1;
  std::uint64_t seed = 0;
};

struct SchemeVerdict {
  bool valid = false;
  double activation_probability = 1.0;  // 1 / N
  double tail_bound = 0.0;              // 1 - alpha; valid iff strictly above 1 / N
};

/// Accepts the scheme iff each subsidiary is called with probability 1/N
/// strictly below 1 - alpha.
SchemeVerdict validate_scheme(const RandomizedScheme& scheme, RiskLevel level);

/// VaR of one subsidiary in the limit of many trials: the loss X with
/// probability 1/N, zero otherwise.
double subsidiary_var(const RandomizedScheme& scheme, const LossModel& model, RiskLevel level);

/// Expected shortfall of one subsidiary, same law as subsidiary_var.
double subsidiary_es(const RandomizedScheme& scheme, const LossModel& model, RiskLevel level);

/// Outcome of handing each trial's whole loss to one uniformly drawn
/// subsidiary. Logically a trials x subsidiaries matrix with one nonzero
/// entry per row; stored as the drawn index and the loss.
class SubsidiaryAssignment {
 public:
  SubsidiaryAssignment(std::size_t subsidiaries, std::vector<std::uint32_t> assigned,
                       std::vector<double> losses);

  std::size_t subsidiaries() const noexcept { return subsidiaries_; }
  std::size_t trials() const noexcept { return losses_.size(); }

  std::size_t assigned(std::size_t trial) const { return assigned_[trial]; }
  double loss(std::size_t trial) const { return losses_[trial]; }
  double at(std::size_t trial, std::size_t subsidiary) const {
    return assigned_[trial] == subsidiary ? losses_[trial] : 0.0;
  }

  std::vector<double> row(std::size_t trial) const;
  std::vector<double> column(std::size_t subsidiary) const;
  std::vector<std::size_t> activation_counts() const;

 private:
  std::size_t subsidiaries_;
  std::vector<std::uint32_t> assigned_;
  std::vector<double> losses_;
};

/// Throws Errc::InvalidBounds when the scheme has no subsidiaries.
SubsidiaryAssignment randomized_assign(const RandomizedScheme& scheme,
                                       std::span<const double> losses);

}  // namespace vararb
