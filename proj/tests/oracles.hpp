#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls the closed forms it is meant to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vararb/loss_model.hpp"

namespace vararb::oracle {

/// inf{x : cdf(x) > p} by scanning every support point of a discrete law.
inline double scan_quantile(const LossModel& model, double p) {
  std::vector<double> candidates;
  if (const auto* a = model.as_atoms()) candidates = a->values;
  if (const auto* e = model.as_empirical()) candidates = e->samples;
  for (double x : candidates) {
    if (model.cdf(x) > p) return x;
  }
  return candidates.back();
}

/// inf{x : f(x) > level} for a nondecreasing f on [lo, hi], by bisection.
template <class F>
double bisect_threshold(F f, double level, double lo, double hi) {
  if (f(lo) > level) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > level) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// Distribution function of the tranche X * 1{X in iv}, built only from
/// mass_in on sub-intervals: Pr(T <= x) = Pr(X not in iv or X = 0) +
/// Pr(X in iv, 0 < X <= x).
inline double tranche_cdf(const LossModel& model, const Interval& iv, double x) {
  if (x < 0.0) return 0.0;
  const double whole = model.mass_in(iv);
  const double at_zero = iv.lo <= 0.0 ? model.mass_in(Interval{0.0, 0.0, true}) : 0.0;
  const double positive = whole - at_zero;
  double below = 0.0;
  if (x >= iv.lo) {
    const double top = std::min(x, iv.hi);
    const bool closed = x < iv.hi || iv.hi_inclusive;
    below = model.mass_in(Interval{iv.lo, top, closed}) - at_zero;
  }
  return (1.0 - positive) + below;
}

/// VaR of the tranche by bisection on tranche_cdf.
inline double tranche_var_bisection(const LossModel& model, const Interval& iv, double alpha) {
  return bisect_threshold([&](double x) { return tranche_cdf(model, iv, x); }, alpha, 0.0,
                          model.max_loss());
}

/// ES of the tranche by midpoint quadrature of its bisected quantile.
inline double tranche_es_quadrature(const LossModel& model, const Interval& iv, double alpha,
                                    int nodes = 4000) {
  const double h = (1.0 - alpha) / nodes;
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = alpha + (i + 0.5) * h;
    sum += bisect_threshold([&](double x) { return tranche_cdf(model, iv, x); }, u, 0.0,
                            model.max_loss());
  }
  return sum * h / (1.0 - alpha);
}

/// The tranche X * 1{X in iv} of a discrete law, written out as its own law.
inline LossModel explicit_tranche(const LossModel& model, const Interval& iv) {
  if (const auto* e = model.as_empirical()) {
    std::vector<double> out;
    for (double x : e->samples) out.push_back(iv.contains(x) ? x : 0.0);
    return LossModel::empirical(std::move(out));
  }
  const auto* a = model.as_atoms();
  std::vector<double> values;
  std::vector<double> probs;
  double q = 0.0;
  for (std::size_t i = 0; i < a->values.size(); ++i) {
    if (iv.contains(a->values[i]) && a->values[i] > 0.0) q += a->probs[i];
  }
  if (1.0 - q > 0.0) {
    values.push_back(0.0);
    probs.push_back(1.0 - q);
  }
  for (std::size_t i = 0; i < a->values.size(); ++i) {
    if (iv.contains(a->values[i]) && a->values[i] > 0.0) {
      values.push_back(a->values[i]);
      probs.push_back(a->probs[i]);
    }
  }
  return LossModel::atoms(values, probs);
}

/// Smallest N with N * (den - num) > den, i.e. 1/N < 1 - num/den exactly.
inline std::size_t exact_min_units(std::uint64_t num, std::uint64_t den) {
  std::size_t n = 1;
  while (n * (den - num) <= den) ++n;
  return n;
}

/// Random atom list with m distinct values on a coarse grid and random masses.
inline LossModel random_atoms(std::mt19937_64& rng, std::size_t m, bool allow_zero = true) {
  std::uniform_int_distribution<int> grid(allow_zero ? 0 : 1, 60);
  std::vector<double> values;
  while (values.size() < m) {
    const double v = grid(rng) * 0.5;
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<double> probs(m);
  double total = 0.0;
  for (double& p : probs) total += (p = weight(rng));
  for (double& p : probs) p /= total;
  return LossModel::atoms(values, probs);
}

}  // namespace vararb::oracle
