#include "vararb/capital_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "vararb/error.hpp"

namespace vararb {
namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();
constexpr std::size_t kOracleMaxSupport = 12;

// VaR of X * 1{X in support points j..k}, with the arithmetic of
// var_of_tranche: sequential mass sums for atoms, integer counts for samples.
class GroupVar {
 public:
  GroupVar(const LossModel& model, RiskLevel level) : alpha_(level.alpha()) {
    if (const auto* a = model.as_atoms()) {
      values_ = a->values;
      probs_ = a->probs;
      // Each atom group costs O(group size); tabulate them once.
      const std::size_t m = values_.size();
      table_.resize(m * (m + 1) / 2);
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j; k < m; ++k) table_[slot(j, k)] = atom_group(j, k);
      }
    } else {
      samples_ = &model.as_empirical()->samples;
      const auto& s = *samples_;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == 0 || s[i] != s[i - 1]) {
          values_.push_back(s[i]);
          starts_.push_back(i);
        }
      }
      starts_.push_back(s.size());
      rank_ = order_statistic_rank(s.size(), alpha_);
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  double value(std::size_t i) const noexcept { return values_[i]; }

  double operator()(std::size_t j, std::size_t k) const {
    return samples_ != nullptr ? sample_group(j, k) : table_[slot(j, k)];
  }

 private:
  std::size_t slot(std::size_t j, std::size_t k) const noexcept {
    // Row j of the upper triangle starts after rows 0..j-1.
    return j * values_.size() - j * (j - 1) / 2 + (k - j);
  }

  double atom_group(std::size_t j, std::size_t k) const {
    std::size_t first = j;
    while (first <= k && values_[first] <= 0.0) ++first;
    if (first > k) return 0.0;
    double q = 0.0;
    for (std::size_t i = first; i <= k; ++i) q += probs_[i];
    double running = 1.0 - q;
    if (running > alpha_) return 0.0;
    for (std::size_t i = first; i <= k; ++i) {
      running += probs_[i];
      if (running > alpha_) return values_[i];
    }
    return values_[k];
  }

  double sample_group(std::size_t j, std::size_t k) const {
    const std::size_t first = values_[j] > 0.0 ? starts_[j] : starts_[j + 1];
    const std::size_t last = starts_[k + 1];
    if (first >= last) return 0.0;
    const std::size_t zeros = samples_->size() - (last - first);
    if (rank_ <= zeros) return 0.0;
    return (*samples_)[first + (rank_ - zeros - 1)];
  }

  double alpha_;
  std::vector<double> values_;
  std::vector<double> probs_;
  const std::vector<double>* samples_ = nullptr;
  std::vector<std::size_t> starts_;
  std::size_t rank_ = 0;
  std::vector<double> table_;
};

// best(g, j): least capital splitting support points j..m-1 into exactly g
// nonempty contiguous groups, accumulated as c(first) + best(rest).
class SuffixTable {
 public:
  SuffixTable(const GroupVar& cost, std::size_t max_groups)
      : cost_(cost), m_(cost.size()), groups_(std::min(max_groups, cost.size())),
        best_((groups_ + 1) * (m_ + 1), kInfeasible) {
    at(0, m_) = 0.0;
    for (std::size_t g = 1; g <= groups_; ++g) {
      for (std::size_t j = m_; j-- > 0;) {
        double best = kInfeasible;
        for (std::size_t k = j; k < m_; ++k) {
          const double rest = at(g - 1, k + 1);
          if (rest == kInfeasible) continue;
          best = std::min(best, cost_(j, k) + rest);
        }
        at(g, j) = best;
      }
    }
  }

  std::size_t max_groups() const noexcept { return groups_; }
  double whole(std::size_t g) const { return best_[g * (m_ + 1)]; }

  /// Fewest groups attaining the minimum over 1..n groups.
  std::size_t fewest_optimal(std::size_t n) const {
    std::size_t arg = 1;
    for (std::size_t g = 2; g <= std::min(n, groups_); ++g) {
      if (whole(g) < whole(arg)) arg = g;
    }
    return arg;
  }

  /// Cut values of the optimal split into g groups with the earliest cuts.
  std::vector<double> cuts(std::size_t g, double max_loss) const {
    std::vector<double> out{0.0};
    std::size_t j = 0;
    for (std::size_t left = g; left > 1; --left) {
      std::size_t k = j;
      while (cost_(j, k) + at(left - 1, k + 1) != at(left, j)) ++k;
      const double below = cost_.value(k);
      const double above = cost_.value(k + 1);
      const double mid = below + 0.5 * (above - below);
      out.push_back(mid > below ? mid : above);
      j = k + 1;
    }
    out.push_back(max_loss);
    return out;
  }

 private:
  double& at(std::size_t g, std::size_t j) { return best_[g * (m_ + 1) + j]; }
  double at(std::size_t g, std::size_t j) const { return best_[g * (m_ + 1) + j]; }

  const GroupVar& cost_;
  std::size_t m_;
  std::size_t groups_;
  std::vector<double> best_;
};

std::size_t support_size(const LossModel& model) {
  if (const auto* a = model.as_atoms()) return a->values.size();
  const auto& s = model.as_empirical()->samples;
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == 0 || s[i] != s[i - 1]) ++distinct;
  }
  return distinct;
}

void require_discrete(const LossModel& model, std::size_t limit) {
  if (model.as_uniform() != nullptr) {
    throw Error(Errc::TooManyAtoms,
                "the uniform law has a continuum of support points; discretize it first");
  }
  const std::size_t m = support_size(model);
  if (m > limit) {
    throw Error(Errc::TooManyAtoms, std::to_string(m) + " support points exceed the limit of " +
                                        std::to_string(limit));
  }
}

}  // namespace

OverheadSchedule OverheadSchedule::none() { return OverheadSchedule{}; }

OverheadSchedule OverheadSchedule::linear(double cost_per_desk) {
  if (!std::isfinite(cost_per_desk) || cost_per_desk < 0.0) {
    throw Error(Errc::InvalidOverhead, "cost per desk must be finite and nonnegative");
  }
  OverheadSchedule s;
  s.kind_ = Kind::Linear;
  s.per_desk_ = cost_per_desk;
  return s;
}

OverheadSchedule OverheadSchedule::table(std::vector<double> costs) {
  if (costs.empty()) throw Error(Errc::InvalidOverhead, "overhead table is empty");
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!std::isfinite(costs[i]) || costs[i] < 0.0) {
      throw Error(Errc::InvalidOverhead, "overhead table entries must be finite and nonnegative");
    }
    if (i > 0 && costs[i] < costs[i - 1]) {
      throw Error(Errc::InvalidOverhead, "overhead table must be nondecreasing in N");
    }
  }
  OverheadSchedule s;
  s.kind_ = Kind::Table;
  s.costs_ = std::move(costs);
  return s;
}

double OverheadSchedule::operator()(std::size_t n) const {
  switch (kind_) {
    case Kind::None: return 0.0;
    case Kind::Linear: return per_desk_ * static_cast<double>(n);
    case Kind::Table:
      if (n == 0 || n > costs_.size()) {
        throw Error(Errc::InvalidOverhead, "overhead table has no entry for N = " +
                                               std::to_string(n));
      }
      return costs_[n - 1];
  }
  return 0.0;
}

SolveResult solve_tranche_dp(const LossModel& model, RiskLevel level, std::size_t n,
                             const SolverOptions& options) {
  if (n == 0) throw Error(Errc::NInsufficient, "at least one desk is required");
  require_discrete(model, options.max_support);
  const GroupVar cost(model, level);
  const SuffixTable table(cost, n);
  const std::size_t groups = table.fewest_optimal(n);
  const double capital = table.whole(groups);
  return SolveResult{groups, Partition(table.cuts(groups, model.max_loss())), capital, capital};
}

double brute_force_oracle(const LossModel& model, RiskLevel level, std::size_t n) {
  if (n == 0) throw Error(Errc::NInsufficient, "at least one desk is required");
  require_discrete(model, kOracleMaxSupport);

  std::vector<double> points;
  if (const auto* a = model.as_atoms()) {
    points = a->values;
  } else {
    for (double v : model.as_empirical()->samples) {
      if (points.empty() || points.back() != v) points.push_back(v);
    }
  }
  const std::size_t m = points.size();
  auto group_var = [&](std::size_t j, std::size_t k) {
    const Interval iv = k + 1 < m ? Interval{points[j], points[k + 1], false}
                                  : Interval{points[j], points[m - 1], true};
    return var_of_tranche(model, iv, level);
  };

  // Bit b of `boundaries` set: a group ends after support point b.
  double best = kInfeasible;
  const std::uint32_t compositions = std::uint32_t{1} << (m - 1);
  for (std::uint32_t boundaries = 0; boundaries < compositions; ++boundaries) {
    if (static_cast<std::size_t>(std::popcount(boundaries)) + 1 > n) continue;
    double total = 0.0;
    std::size_t end = m - 1;
    for (std::size_t b = m - 1; b-- > 0;) {
      if ((boundaries >> b) & 1U) {
        total = group_var(b + 1, end) + total;
        end = b;
      }
    }
    total = group_var(0, end) + total;
    best = std::min(best, total);
  }
  return best;
}

SolveResult solve_with_overhead(const LossModel& model, RiskLevel level, std::size_t n_max,
                                const OverheadSchedule& overhead, const SolverOptions& options) {
  if (n_max == 0) throw Error(Errc::NInsufficient, "at least one desk is required");
  require_discrete(model, options.max_support);
  for (std::size_t n = 1; n <= n_max; ++n) (void)overhead(n);

  const GroupVar cost(model, level);
  const SuffixTable table(cost, n_max);

  // capital(N) is the best over at most N groups; one table serves every N.
  std::size_t best_n = 1;
  std::size_t best_groups = 1;
  double best_objective = kInfeasible;
  std::size_t groups = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    groups = table.fewest_optimal(n);
    const double objective = table.whole(groups) + overhead(n);
    if (objective < best_objective) {
      best_objective = objective;
      best_n = n;
      best_groups = groups;
    }
  }
  return SolveResult{best_n, Partition(table.cuts(best_groups, model.max_loss())),
                     table.whole(best_groups), best_objective};
}

LossModel discretize_uniform(const LossModel& model, std::size_t points) {
  const auto* u = model.as_uniform();
  if (u == nullptr) return model;
  if (points == 0) throw Error(Errc::EmptySupport, "a grid needs at least one point");
  std::vector<double> grid(points);
  const double width = u->upper - u->lower;
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = u->lower + (static_cast<double>(i + 1) / static_cast<double>(points)) * width;
  }
  grid.back() = u->upper;
  return LossModel::empirical(std::move(grid));
}

}  // namespace vararb
