#include "vararb/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vararb/error.hpp"

namespace vararb {
namespace {

// Positive atoms of an atom list that fall in iv, as an index range.
struct AtomRange {
  std::size_t first;
  std::size_t last;  // one past the end
};

AtomRange positive_atoms_in(const LossModel::Atoms& a, const Interval& iv) {
  auto first = static_cast<std::size_t>(
      std::lower_bound(a.values.begin(), a.values.end(), iv.lo) - a.values.begin());
  while (first < a.values.size() && a.values[first] <= 0.0) ++first;
  auto last = first;
  while (last < a.values.size() && iv.contains(a.values[last])) ++last;
  return {first, last};
}

// Positive samples of a sorted sample that fall in iv, as an index range.
AtomRange positive_samples_in(const std::vector<double>& s, const Interval& iv) {
  auto first = std::lower_bound(s.begin(), s.end(), iv.lo);
  first = std::max(first, std::upper_bound(s.begin(), s.end(), 0.0));
  auto last = iv.hi_inclusive ? std::upper_bound(first, s.end(), iv.hi)
                              : std::lower_bound(first, s.end(), iv.hi);
  last = std::max(first, last);
  return {static_cast<std::size_t>(first - s.begin()), static_cast<std::size_t>(last - s.begin())};
}

// Integral of the strict quantile over (alpha, 1) for an n-point sample whose
// sorted r-th entry is value(r).
template <class ValueAt>
double sample_tail_integral(std::size_t n, double alpha, ValueAt value) {
  const std::size_t k = order_statistic_rank(n, alpha);
  const auto nd = static_cast<double>(n);
  double upper = 0.0;
  for (std::size_t r = k; r < n; ++r) upper += value(r);
  return value(k - 1) * (static_cast<double>(k) / nd - alpha) + upper / nd;
}

// Integral of the quantile over (alpha, 1) for atoms with the given running
// cumulative masses; the final cumulative mass is taken as exactly 1.
template <class AtomAt>
double atom_tail_integral(std::size_t count, double start_mass, double alpha, AtomAt atom) {
  double integral = 0.0;
  double below = start_mass;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [value, prob] = atom(i);
    const double through = (i + 1 == count) ? 1.0 : below + prob;
    integral += value * std::max(0.0, through - std::max(below, alpha));
    below = through;
  }
  return integral;
}

}  // namespace

RiskLevel::RiskLevel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::InvalidLevel, "risk level " + std::to_string(alpha) + " is not in (0, 1)");
  }
}

double value_at_risk(const LossModel& model, RiskLevel level) {
  return model.quantile_strict(level.alpha());
}

double expected_shortfall(const LossModel& model, RiskLevel level) {
  const double alpha = level.alpha();
  double integral = 0.0;
  if (const auto* a = model.as_atoms()) {
    integral = atom_tail_integral(a->values.size(), 0.0, alpha, [a](std::size_t i) {
      return std::pair{a->values[i], a->probs[i]};
    });
  } else if (const auto* e = model.as_empirical()) {
    integral = sample_tail_integral(e->samples.size(), alpha,
                                    [e](std::size_t r) { return e->samples[r]; });
  } else {
    const auto* u = model.as_uniform();
    return u->lower + 0.5 * (u->upper - u->lower) * (1.0 + alpha);
  }
  return integral / level.tail();
}

double var_of_tranche(const LossModel& model, const Interval& iv, RiskLevel level) {
  const double alpha = level.alpha();
  if (const auto* a = model.as_atoms()) {
    const auto [first, last] = positive_atoms_in(*a, iv);
    if (first == last) return 0.0;
    double q = 0.0;
    for (std::size_t i = first; i < last; ++i) q += a->probs[i];
    double running = 1.0 - q;
    if (running > alpha) return 0.0;
    for (std::size_t i = first; i < last; ++i) {
      running += a->probs[i];
      if (running > alpha) return a->values[i];
    }
    return a->values[last - 1];
  }
  if (const auto* e = model.as_empirical()) {
    const auto [first, last] = positive_samples_in(e->samples, iv);
    const std::size_t n = e->samples.size();
    const std::size_t zeros = n - (last - first);
    const std::size_t k = order_statistic_rank(n, alpha);
    if (k <= zeros) return 0.0;
    return e->samples[first + (k - zeros - 1)];
  }
  const auto* u = model.as_uniform();
  const double lo = std::max(iv.lo, u->lower);
  const double hi = std::min(iv.hi, u->upper);
  if (!(hi > lo)) return 0.0;
  const double width = u->upper - u->lower;
  const double zero_mass = 1.0 - (hi - lo) / width;
  if (zero_mass > alpha) return 0.0;
  return std::min(lo + (alpha - zero_mass) * width, hi);
}

double es_of_tranche(const LossModel& model, const Interval& iv, RiskLevel level) {
  const double alpha = level.alpha();
  double integral = 0.0;
  if (const auto* a = model.as_atoms()) {
    const auto [first, last] = positive_atoms_in(*a, iv);
    if (first == last) return 0.0;
    double q = 0.0;
    for (std::size_t i = first; i < last; ++i) q += a->probs[i];
    integral = atom_tail_integral(last - first, 1.0 - q, alpha, [a, first](std::size_t i) {
      return std::pair{a->values[first + i], a->probs[first + i]};
    });
  } else if (const auto* e = model.as_empirical()) {
    const auto [first, last] = positive_samples_in(e->samples, iv);
    const std::size_t n = e->samples.size();
    const std::size_t zeros = n - (last - first);
    integral = sample_tail_integral(n, alpha, [&](std::size_t r) {
      return r < zeros ? 0.0 : e->samples[first + (r - zeros)];
    });
  } else {
    const auto* u = model.as_uniform();
    const double lo = std::max(iv.lo, u->lower);
    const double hi = std::min(iv.hi, u->upper);
    if (!(hi > lo)) return 0.0;
    const double width = u->upper - u->lower;
    const double q = (hi - lo) / width;
    const double zero_mass = 1.0 - q;
    // Quantile is lo + (u - zero_mass) * width on [zero_mass, 1).
    const double start = std::max(alpha, zero_mass);
    const double skipped = start - zero_mass;
    integral = (1.0 - start) * lo + 0.5 * width * (q * q - skipped * skipped);
  }
  return integral / level.tail();
}

double additivity_gap(const LossModel& model, const Partition& partition, RiskLevel level) {
  require_spans(partition, model);
  double parts = 0.0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    parts += var_of_tranche(model, partition.tranche(i), level);
  }
  return parts - value_at_risk(model, level);
}

double empirical_var(std::span<const double> sample, RiskLevel level) {
  if (sample.empty()) throw Error(Errc::EmptySupport, "empirical VaR of an empty sample");
  std::vector<double> work(sample.begin(), sample.end());
  const std::size_t k = order_statistic_rank(work.size(), level.alpha());
  auto nth = work.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(work.begin(), nth, work.end());
  return *nth;
}

double empirical_var(std::vector<double> positives, std::size_t zeros, RiskLevel level) {
  const std::size_t n = positives.size() + zeros;
  if (n == 0) throw Error(Errc::EmptySupport, "empirical VaR of an empty sample");
  const std::size_t k = order_statistic_rank(n, level.alpha());
  if (k <= zeros) return 0.0;
  auto nth = positives.begin() + static_cast<std::ptrdiff_t>(k - zeros - 1);
  std::nth_element(positives.begin(), nth, positives.end());
  return *nth;
}

}  // namespace vararb
