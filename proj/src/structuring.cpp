#include "vararb/structuring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vararb/error.hpp"
#include "vararb/random.hpp"

namespace vararb {
namespace {

constexpr std::uint64_t kAssignmentStream = 1;

// Distinct support points of an atomic law and the index range of the
// greedy groups built over them.
struct Support {
  std::vector<double> values;
  // Mass of points [first, last] as computed for the law at hand.
  std::vector<double> probs;          // atoms only
  std::vector<std::size_t> through;   // empirical only: samples <= values[i]
  std::size_t sample_size = 0;

  double mass(std::size_t first, std::size_t last) const {
    if (sample_size > 0) {
      const std::size_t before = first == 0 ? 0 : through[first - 1];
      return static_cast<double>(through[last] - before) / static_cast<double>(sample_size);
    }
    double m = 0.0;
    for (std::size_t i = first; i <= last; ++i) m += probs[i];
    return m;
  }
};

Support support_of(const LossModel& model) {
  Support s;
  if (const auto* a = model.as_atoms()) {
    s.values = a->values;
    s.probs = a->probs;
    return s;
  }
  const auto& samples = model.as_empirical()->samples;
  s.sample_size = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 == samples.size() || samples[i + 1] != samples[i]) {
      s.values.push_back(samples[i]);
      s.through.push_back(i + 1);
    }
  }
  return s;
}

// A cut strictly above `below` and at most `above`.
double cut_between(double below, double above) {
  const double mid = below + 0.5 * (above - below);
  return mid > below ? mid : above;
}

std::vector<double> equal_mass_cuts(const LossModel::Uniform& u, std::size_t n) {
  std::vector<double> cuts(n + 1);
  cuts[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    cuts[k] = u.lower + (static_cast<double>(k) / static_cast<double>(n)) * (u.upper - u.lower);
  }
  cuts[n] = u.upper;
  return cuts;
}

std::vector<double> greedy_group_cuts(const LossModel& model, RiskLevel level) {
  const Support s = support_of(model);
  std::vector<double> cuts{0.0};
  std::size_t first = 0;
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    if (!level.undetectable(s.mass(first, i))) {
      cuts.push_back(cut_between(s.values[i - 1], s.values[i]));
      first = i;
    }
  }
  cuts.push_back(model.max_loss());
  return cuts;
}

// Splits the widest tranche in two until there are n; sub-tranches never
// carry more mass than their parent.
void subdivide(std::vector<double>& cuts, std::size_t n) {
  while (cuts.size() < n + 1) {
    std::size_t widest = 0;
    double best = -1.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double lo = cuts[i];
      const double hi = cuts[i + 1];
      const double mid = lo + 0.5 * (hi - lo);
      if (hi - lo > best && mid > lo && mid < hi) {
        best = hi - lo;
        widest = i;
      }
    }
    if (best < 0.0) {
      throw Error(Errc::NInsufficient, "cannot subdivide the loss range into " +
                                           std::to_string(n) + " tranches");
    }
    const double lo = cuts[widest];
    cuts.insert(cuts.begin() + static_cast<std::ptrdiff_t>(widest) + 1,
                lo + 0.5 * (cuts[widest + 1] - lo));
  }
}

}  // namespace

std::size_t min_subsidiaries(RiskLevel level) {
  // floor(1/(1-alpha)) + 1, settled with the same comparison validate_scheme
  // applies so both agree on decimal levels.
  auto n = static_cast<std::size_t>(std::max(1.0, std::floor(1.0 / level.tail()) - 1.0));
  while (!level.undetectable(1.0 / static_cast<double>(n))) ++n;
  return n;
}

Partition build_partition(const LossModel& model, RiskLevel level, std::optional<std::size_t> n) {
  if (n && *n == 0) {
    throw Error(Errc::NInsufficient, "at least one tranche is required");
  }
  const double heaviest = model.heaviest_atom();
  if (!level.undetectable(heaviest)) {
    throw Error(Errc::AtomTooHeavy,
                "an atom of mass " + std::to_string(heaviest) +
                    " is not below 1 - alpha = " + std::to_string(level.tail()) +
                    "; use the randomized subsidiary scheme");
  }

  std::vector<double> cuts;
  if (const auto* u = model.as_uniform()) {
    const std::size_t minimal = min_subsidiaries(level);
    const std::size_t count = n.value_or(minimal);
    if (count < minimal) {
      throw Error(Errc::NInsufficient, std::to_string(count) +
                                           " tranches cannot each carry mass below " +
                                           std::to_string(level.tail()) + "; need at least " +
                                           std::to_string(minimal));
    }
    cuts = equal_mass_cuts(*u, count);
  } else {
    cuts = greedy_group_cuts(model, level);
    const std::size_t minimal = cuts.size() - 1;
    if (n && *n < minimal) {
      throw Error(Errc::NInsufficient, std::to_string(*n) +
                                           " tranches cannot each carry mass below " +
                                           std::to_string(level.tail()) + "; need at least " +
                                           std::to_string(minimal));
    }
    if (n) subdivide(cuts, *n);
  }

  Partition partition(std::move(cuts));
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (!level.undetectable(model.mass_in(partition.tranche(i)))) {
      throw Error(Errc::NInsufficient, "tranche " + std::to_string(i) +
                                           " exceeds the mass bound after placement");
    }
  }
  return partition;
}

double TrancheDecomposition::total_capital() const {
  return std::accumulate(tranche_vars.begin(), tranche_vars.end(), 0.0);
}

TrancheDecomposition decompose(const LossModel& model, const Partition& partition,
                               RiskLevel level) {
  require_spans(partition, model);
  TrancheDecomposition d{model, partition, {}, {}, {}};
  d.masses.reserve(partition.size());
  d.tranche_vars.reserve(partition.size());
  d.tranche_es.reserve(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const Interval iv = partition.tranche(i);
    d.masses.push_back(model.mass_in(iv));
    d.tranche_vars.push_back(var_of_tranche(model, iv, level));
    d.tranche_es.push_back(es_of_tranche(model, iv, level));
  }
  return d;
}

std::vector<double> split_realization(const TrancheDecomposition& decomposition, double x) {
  const double upper = decomposition.partition.upper();
  if (!(x >= 0.0 && x <= upper)) {
    throw Error(Errc::OutOfSupport,
                "loss " + std::to_string(x) + " is outside [0, " + std::to_string(upper) + "]");
  }
  std::vector<double> parts(decomposition.partition.size(), 0.0);
  parts[decomposition.partition.locate(x)] = x;
  return parts;
}

SchemeVerdict validate_scheme(const RandomizedScheme& scheme, RiskLevel level) {
  SchemeVerdict verdict;
  verdict.tail_bound = level.tail();
  if (scheme.subsidiaries == 0) return verdict;
  verdict.activation_probability = 1.0 / static_cast<double>(scheme.subsidiaries);
  verdict.valid = level.undetectable(verdict.activation_probability);
  return verdict;
}

double subsidiary_var(const RandomizedScheme& scheme, const LossModel& model, RiskLevel level) {
  if (validate_scheme(scheme, level).valid) return 0.0;
  // Pr(unit <= x) = (1 - 1/N) + F(x) / N exceeds alpha iff F(x) > 1 - N(1 - alpha).
  const double inner = 1.0 - static_cast<double>(scheme.subsidiaries) * level.tail();
  if (inner <= kProbabilityTolerance) return model.min_loss();
  return model.quantile_strict(std::min(inner, std::nextafter(1.0, 0.0)));
}

double subsidiary_es(const RandomizedScheme& scheme, const LossModel& model, RiskLevel level) {
  if (scheme.subsidiaries == 0) {
    throw Error(Errc::InvalidBounds, "a scheme needs at least one subsidiary");
  }
  const auto n = static_cast<double>(scheme.subsidiaries);
  const double inner = 1.0 - n * level.tail();
  // Integral of the unit's quantile over (alpha, 1) equals (1/N) times the
  // integral of X's quantile over (max(inner, 0), 1).
  const double upper_integral = inner > 0.0
                                    ? (1.0 - inner) * expected_shortfall(model, RiskLevel(inner))
                                    : model.mean();
  return upper_integral / n / level.tail();
}

SubsidiaryAssignment::SubsidiaryAssignment(std::size_t subsidiaries,
                                           std::vector<std::uint32_t> assigned,
                                           std::vector<double> losses)
    : subsidiaries_(subsidiaries), assigned_(std::move(assigned)), losses_(std::move(losses)) {}

std::vector<double> SubsidiaryAssignment::row(std::size_t trial) const {
  std::vector<double> out(subsidiaries_, 0.0);
  out[assigned_[trial]] = losses_[trial];
  return out;
}

std::vector<double> SubsidiaryAssignment::column(std::size_t subsidiary) const {
  std::vector<double> out(losses_.size(), 0.0);
  for (std::size_t t = 0; t < losses_.size(); ++t) {
    if (assigned_[t] == subsidiary) out[t] = losses_[t];
  }
  return out;
}

std::vector<std::size_t> SubsidiaryAssignment::activation_counts() const {
  std::vector<std::size_t> counts(subsidiaries_, 0);
  for (auto i : assigned_) ++counts[i];
  return counts;
}

SubsidiaryAssignment randomized_assign(const RandomizedScheme& scheme,
                                       std::span<const double> losses) {
  if (scheme.subsidiaries == 0 ||
      scheme.subsidiaries > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::InvalidBounds, "subsidiary count out of range");
  }
  auto stream = RandomStream::substream(scheme.seed, kAssignmentStream);
  std::vector<std::uint32_t> assigned(losses.size());
  for (auto& i : assigned) i = static_cast<std::uint32_t>(stream.index(scheme.subsidiaries));
  return SubsidiaryAssignment(scheme.subsidiaries, std::move(assigned),
                              std::vector<double>(losses.begin(), losses.end()));
}

}  // namespace vararb
