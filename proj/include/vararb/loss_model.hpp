#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace vararb {

/// Absolute tolerance on the total probability of an atom list.
inline constexpr double kProbabilityTolerance = 1e-12;

struct AtomsSpec {
  std::vector<double> values;
  std::vector<double> probs;
};

struct EmpiricalSpec {
  std::vector<double> samples;
};

struct UniformSpec {
  double lower = 0.0;
  double upper = 1.0;
};

using ModelDescriptor = std::variant<AtomsSpec, EmpiricalSpec, UniformSpec>;

/// A range of loss amounts [lo, hi), or [lo, hi] when hi_inclusive is set.
///
/// Tranches of a partition are lo-inclusive and hi-exclusive except the last,
/// which is closed so that the maximal loss belongs to exactly one tranche.
/// A closed interval may degenerate to the single point lo == hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_inclusive = false;

  /// Validated constructor; throws Errc::InvalidBounds.
  static Interval make(double lo, double hi, bool hi_inclusive = false);

  bool contains(double x) const noexcept {
    return lo <= x && (x < hi || (hi_inclusive && x <= hi));
  }
};

/// Smallest rank k in [1, n] with k / n > p, evaluated in the same double
/// arithmetic as the empirical cdf. The strict-inequality quantile of an
/// n-point sample is its k-th order statistic.
std::size_t order_statistic_rank(std::size_t n, double p);

/// Bounded nonnegative loss distribution: finitely many atoms, an empirical
/// sample, or a uniform law. Immutable once built.
class LossModel {
 public:
  enum class Kind { Atoms, Empirical, Uniform };

  struct Atoms {
    std::vector<double> values;      // strictly increasing
    std::vector<double> probs;       // strictly positive
    std::vector<double> cumulative;  // running sums of probs, last entry 1
  };
  struct Empirical {
    std::vector<double> samples;  // sorted
  };
  struct Uniform {
    double lower;
    double upper;
  };

  /// Throws Errc::{NegativeLoss, ProbsNotNormalized, EmptySupport,
  /// InvalidBounds, MalformedInput}. Atom lists are sorted and duplicate
  /// values merged; empirical samples are sorted.
  static LossModel build(const ModelDescriptor& descriptor);
  static LossModel atoms(std::vector<double> values, std::vector<double> probs);
  static LossModel empirical(std::vector<double> samples);
  static LossModel uniform(double lower, double upper);

  Kind kind() const noexcept;
  bool has_atoms() const noexcept { return kind() != Kind::Uniform; }

  /// The bound M with X in [0, M] almost surely (largest support point).
  double max_loss() const noexcept { return max_loss_; }
  /// Smallest support point.
  double min_loss() const noexcept;
  double mean() const noexcept;

  /// Pr(X <= x).
  double cdf(double x) const noexcept;

  /// inf{x : Pr(X <= x) > p} for p in (0, 1); throws Errc::InvalidLevel.
  double quantile_strict(double p) const;

  /// Pr(X in iv).
  double mass_in(const Interval& iv) const noexcept;

  /// n draws by inversion of the cdf; a pure function of (model, seed, n).
  std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

  /// Law of c * X for c > 0.
  LossModel scaled(double c) const;

  /// Largest single-point probability (0 for the uniform law).
  double heaviest_atom() const noexcept;

  const Atoms* as_atoms() const noexcept { return std::get_if<Atoms>(&rep_); }
  const Empirical* as_empirical() const noexcept { return std::get_if<Empirical>(&rep_); }
  const Uniform* as_uniform() const noexcept { return std::get_if<Uniform>(&rep_); }

 private:
  using Rep = std::variant<Atoms, Empirical, Uniform>;
  LossModel(Rep rep, double max_loss) : rep_(std::move(rep)), max_loss_(max_loss) {}

  Rep rep_;
  double max_loss_;
};

/// Parses the loss CSV format: a header line `loss`, then one nonnegative
/// decimal per row. Errors name the 1-based line number and `source`.
/// Throws Errc::{MalformedInput, NegativeLoss, EmptySupport}.
std::vector<double> parse_loss_csv(std::istream& in, std::string_view source);

/// Reads a loss CSV file into an empirical model; Errc::Io if unreadable.
LossModel read_loss_csv(const std::filesystem::path& path);

}  // namespace vararb
