#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vararb/loss_model.hpp"

namespace vararb {

/// Cut points 0 = x_0 < x_1 < ... < x_N = M splitting [0, M] into N tranches.
///
/// Tranche i is [x_i, x_{i+1}); the last one is closed. The single-tranche
/// partition {0, 0} of an identically-zero loss is the one permitted
/// degenerate case.
class Partition {
 public:
  /// Throws Errc::InvalidBounds unless the cuts start at 0, are finite and
  /// strictly increasing, and number at least two.
  explicit Partition(std::vector<double> cuts);

  /// The one-tranche partition {0, max_loss}.
  static Partition whole(double max_loss);

  std::size_t size() const noexcept { return cuts_.size() - 1; }
  std::span<const double> cuts() const noexcept { return cuts_; }
  double upper() const noexcept { return cuts_.back(); }

  Interval tranche(std::size_t i) const;

  /// Index of the tranche holding x; x must lie in [0, upper()].
  std::size_t locate(double x) const noexcept;

 private:
  std::vector<double> cuts_;
};

/// Throws Errc::PartitionMismatch unless the partition ends exactly at the
/// model's maximal loss.
void require_spans(const Partition& partition, const LossModel& model);

}  // namespace vararb
