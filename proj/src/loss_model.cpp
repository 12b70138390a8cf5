#include "vararb/loss_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "vararb/error.hpp"
#include "vararb/random.hpp"

namespace vararb {
namespace {

constexpr std::uint64_t kSamplingStream = 0;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_loss_value(double v, std::string_view what) {
  if (!std::isfinite(v)) {
    throw Error(Errc::InvalidBounds, std::string(what) + " is not finite");
  }
  if (v < 0.0) {
    throw Error(Errc::NegativeLoss, std::string(what) + " = " + format_value(v) + " is negative");
  }
}

}  // namespace

Interval Interval::make(double lo, double hi, bool hi_inclusive) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(Errc::InvalidBounds, "interval endpoints must be finite");
  }
  if (lo < 0.0) {
    throw Error(Errc::InvalidBounds, "interval lower end " + format_value(lo) + " is negative");
  }
  if (!(lo < hi || (hi_inclusive && lo == hi))) {
    throw Error(Errc::InvalidBounds,
                "interval [" + format_value(lo) + ", " + format_value(hi) + "] is empty");
  }
  return Interval{lo, hi, hi_inclusive};
}

std::size_t order_statistic_rank(std::size_t n, double p) {
  const auto nd = static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::clamp(std::floor(nd * p) + 1.0, 1.0, nd));
  // floor(n * p) + 1 can be off by one where n * p rounds; settle it with the
  // exact comparison the cdf uses.
  while (k > 1 && static_cast<double>(k - 1) / nd > p) --k;
  while (k < n && !(static_cast<double>(k) / nd > p)) ++k;
  return k;
}

LossModel LossModel::build(const ModelDescriptor& descriptor) {
  return std::visit(
      Overloaded{
          [](const AtomsSpec& s) { return atoms(s.values, s.probs); },
          [](const EmpiricalSpec& s) { return empirical(s.samples); },
          [](const UniformSpec& s) { return uniform(s.lower, s.upper); },
      },
      descriptor);
}

LossModel LossModel::atoms(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() && probs.empty()) {
    throw Error(Errc::EmptySupport, "atom list is empty");
  }
  if (values.size() != probs.size()) {
    throw Error(Errc::MalformedInput, "atom values and probabilities differ in length");
  }
  for (double v : values) check_loss_value(v, "atom value");
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p <= 0.0) {
      throw Error(Errc::ProbsNotNormalized,
                  "atom probability " + format_value(p) + " is not strictly positive");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw Error(Errc::ProbsNotNormalized,
                "atom probabilities sum to " + format_value(total) + ", not 1");
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Atoms rep;
  for (std::size_t i : order) {
    if (!rep.values.empty() && rep.values.back() == values[i]) {
      rep.probs.back() += probs[i];
    } else {
      rep.values.push_back(values[i]);
      rep.probs.push_back(probs[i]);
    }
  }
  rep.cumulative.resize(rep.probs.size());
  std::partial_sum(rep.probs.begin(), rep.probs.end(), rep.cumulative.begin());
  rep.cumulative.back() = 1.0;

  const double max_loss = rep.values.back();
  return LossModel(std::move(rep), max_loss);
}

LossModel LossModel::empirical(std::vector<double> samples) {
  if (samples.empty()) {
    throw Error(Errc::EmptySupport, "empirical sample is empty");
  }
  for (double v : samples) check_loss_value(v, "sample");
  std::sort(samples.begin(), samples.end());
  const double max_loss = samples.back();
  return LossModel(Empirical{std::move(samples)}, max_loss);
}

LossModel LossModel::uniform(double lower, double upper) {
  check_loss_value(lower, "uniform lower bound");
  if (!std::isfinite(upper) || !(lower < upper)) {
    throw Error(Errc::InvalidBounds, "uniform law needs lower < upper, got [" +
                                         format_value(lower) + ", " + format_value(upper) + "]");
  }
  return LossModel(Uniform{lower, upper}, upper);
}

LossModel::Kind LossModel::kind() const noexcept {
  switch (rep_.index()) {
    case 0: return Kind::Atoms;
    case 1: return Kind::Empirical;
    default: return Kind::Uniform;
  }
}

double LossModel::min_loss() const noexcept {
  return std::visit(Overloaded{
                        [](const Atoms& a) { return a.values.front(); },
                        [](const Empirical& e) { return e.samples.front(); },
                        [](const Uniform& u) { return u.lower; },
                    },
                    rep_);
}

double LossModel::mean() const noexcept {
  return std::visit(
      Overloaded{
          [](const Atoms& a) {
            return std::inner_product(a.values.begin(), a.values.end(), a.probs.begin(), 0.0);
          },
          [](const Empirical& e) {
            return std::accumulate(e.samples.begin(), e.samples.end(), 0.0) /
                   static_cast<double>(e.samples.size());
          },
          [](const Uniform& u) { return 0.5 * (u.lower + u.upper); },
      },
      rep_);
}

double LossModel::cdf(double x) const noexcept {
  return std::visit(
      Overloaded{
          [x](const Atoms& a) {
            const auto it = std::upper_bound(a.values.begin(), a.values.end(), x);
            if (it == a.values.begin()) return 0.0;
            return a.cumulative[static_cast<std::size_t>(it - a.values.begin()) - 1];
          },
          [x](const Empirical& e) {
            const auto count = std::upper_bound(e.samples.begin(), e.samples.end(), x) -
                               e.samples.begin();
            return static_cast<double>(count) / static_cast<double>(e.samples.size());
          },
          [x](const Uniform& u) {
            if (x <= u.lower) return 0.0;
            if (x >= u.upper) return 1.0;
            return (x - u.lower) / (u.upper - u.lower);
          },
      },
      rep_);
}

double LossModel::quantile_strict(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(Errc::InvalidLevel, "probability level " + format_value(p) + " is not in (0, 1)");
  }
  return std::visit(
      Overloaded{
          [p](const Atoms& a) {
            const auto it = std::upper_bound(a.cumulative.begin(), a.cumulative.end(), p);
            return a.values[static_cast<std::size_t>(it - a.cumulative.begin())];
          },
          [p](const Empirical& e) {
            return e.samples[order_statistic_rank(e.samples.size(), p) - 1];
          },
          [p](const Uniform& u) { return u.lower + p * (u.upper - u.lower); },
      },
      rep_);
}

double LossModel::mass_in(const Interval& iv) const noexcept {
  return std::visit(
      Overloaded{
          [&iv](const Atoms& a) {
            double mass = 0.0;
            auto i = static_cast<std::size_t>(
                std::lower_bound(a.values.begin(), a.values.end(), iv.lo) - a.values.begin());
            for (; i < a.values.size() && iv.contains(a.values[i]); ++i) mass += a.probs[i];
            return mass;
          },
          [&iv](const Empirical& e) {
            const auto first = std::lower_bound(e.samples.begin(), e.samples.end(), iv.lo);
            const auto last = iv.hi_inclusive
                                  ? std::upper_bound(first, e.samples.end(), iv.hi)
                                  : std::lower_bound(first, e.samples.end(), iv.hi);
            return static_cast<double>(last - first) / static_cast<double>(e.samples.size());
          },
          [&iv](const Uniform& u) {
            const double overlap = std::min(iv.hi, u.upper) - std::max(iv.lo, u.lower);
            return overlap > 0.0 ? overlap / (u.upper - u.lower) : 0.0;
          },
      },
      rep_);
}

std::vector<double> LossModel::sample(std::uint64_t seed, std::size_t n) const {
  auto stream = RandomStream::substream(seed, kSamplingStream);
  std::vector<double> out(n);
  std::visit(Overloaded{
                 [&](const Atoms& a) {
                   for (double& x : out) {
                     const double u = stream.uniform01();
                     const auto it = std::upper_bound(a.cumulative.begin(), a.cumulative.end(), u);
                     x = a.values[static_cast<std::size_t>(it - a.cumulative.begin())];
                   }
                 },
                 [&](const Empirical& e) {
                   for (double& x : out) x = e.samples[stream.index(e.samples.size())];
                 },
                 [&](const Uniform& u) {
                   for (double& x : out) x = u.lower + stream.uniform01() * (u.upper - u.lower);
                 },
             },
             rep_);
  return out;
}

LossModel LossModel::scaled(double c) const {
  if (!std::isfinite(c) || c <= 0.0) {
    throw Error(Errc::InvalidBounds, "scale factor must be positive and finite");
  }
  return std::visit(
      Overloaded{
          [c](const Atoms& a) {
            Atoms out = a;
            for (double& v : out.values) v *= c;
            const double max_loss = out.values.back();
            return LossModel(std::move(out), max_loss);
          },
          [c](const Empirical& e) {
            Empirical out = e;
            for (double& v : out.samples) v *= c;
            const double max_loss = out.samples.back();
            return LossModel(std::move(out), max_loss);
          },
          [c](const Uniform& u) { return uniform(u.lower * c, u.upper * c); },
      },
      rep_);
}

double LossModel::heaviest_atom() const noexcept {
  return std::visit(
      Overloaded{
          [](const Atoms& a) { return *std::max_element(a.probs.begin(), a.probs.end()); },
          [](const Empirical& e) {
            std::size_t best = 0;
            for (std::size_t i = 0; i < e.samples.size();) {
              std::size_t j = i;
              while (j < e.samples.size() && e.samples[j] == e.samples[i]) ++j;
              best = std::max(best, j - i);
              i = j;
            }
            return static_cast<double>(best) / static_cast<double>(e.samples.size());
          },
          [](const Uniform&) { return 0.0; },
      },
      rep_);
}

}  // namespace vararb
