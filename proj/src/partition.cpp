#include "vararb/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vararb/error.hpp"

namespace vararb {

Partition::Partition(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.size() < 2) {
    throw Error(Errc::InvalidBounds, "a partition needs at least two cut points");
  }
  if (cuts_.front() != 0.0) {
    throw Error(Errc::InvalidBounds, "the first cut point must be 0");
  }
  for (double c : cuts_) {
    if (!std::isfinite(c)) throw Error(Errc::InvalidBounds, "cut points must be finite");
  }
  const bool zero_loss = cuts_.size() == 2 && cuts_[1] == 0.0;
  if (zero_loss) return;
  for (std::size_t i = 1; i < cuts_.size(); ++i) {
    if (!(cuts_[i - 1] < cuts_[i])) {
      throw Error(Errc::InvalidBounds,
                  "cut points must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

Partition Partition::whole(double max_loss) { return Partition({0.0, max_loss}); }

Interval Partition::tranche(std::size_t i) const {
  const bool last = i + 1 == size();
  return Interval{cuts_[i], cuts_[i + 1], last};
}

std::size_t Partition::locate(double x) const noexcept {
  const auto it = std::upper_bound(cuts_.begin(), cuts_.end(), x);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cuts_.begin() - 1, 0));
  return std::min(idx, size() - 1);
}

void require_spans(const Partition& partition, const LossModel& model) {
  if (partition.upper() != model.max_loss()) {
    throw Error(Errc::PartitionMismatch,
                "partition ends at " + std::to_string(partition.upper()) +
                    " but the maximal loss is " + std::to_string(model.max_loss()));
  }
}

}  // namespace vararb
