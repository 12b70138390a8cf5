#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "vararb/error.hpp"
#include "vararb/structuring.hpp"

using namespace vararb;

namespace {

const LossModel kUnit = LossModel::uniform(0, 1);
const RiskLevel kA95(0.95);

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no vararb::Error thrown";
  return Errc::Io;
}

}  // namespace

TEST(MinSubsidiaries, Examples) {
  EXPECT_EQ(min_subsidiaries(RiskLevel(0.95)), 21u);
  EXPECT_EQ(min_subsidiaries(RiskLevel(0.5)), 3u);
  EXPECT_EQ(min_subsidiaries(RiskLevel(0.99)), 101u);
  EXPECT_EQ(min_subsidiaries(RiskLevel(0.9)), 11u);
}

TEST(MinSubsidiaries, MatchesExactRationalOracle) {
  for (std::uint64_t num = 1; num < 1000; ++num) {
    const RiskLevel level(static_cast<double>(num) / 1000.0);
    EXPECT_EQ(min_subsidiaries(level), oracle::exact_min_units(num, 1000)) << num;
  }
  EXPECT_EQ(min_subsidiaries(RiskLevel(0.3)), oracle::exact_min_units(3, 10));
}

TEST(BuildPartition, UniformMinimalEqualMass) {
  const auto p = build_partition(kUnit, kA95);
  ASSERT_EQ(p.size(), 21u);
  for (std::size_t k = 0; k <= 21; ++k) EXPECT_NEAR(p.cuts()[k], k / 21.0, 1e-15);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_NEAR(kUnit.mass_in(p.tranche(i)), 1.0 / 21, 1e-15);
  }
}

TEST(BuildPartition, Errors) {
  EXPECT_EQ(error_of([] { build_partition(LossModel::atoms({0, 10}, {0.5, 0.5}), kA95); }),
            Errc::AtomTooHeavy);
  // ten intervals cannot all carry mass below 0.05
  EXPECT_EQ(error_of([] { build_partition(kUnit, kA95, 10); }), Errc::NInsufficient);
  EXPECT_EQ(error_of([] { build_partition(kUnit, kA95, 20); }), Errc::NInsufficient);
  EXPECT_EQ(error_of([] { build_partition(kUnit, kA95, 0); }), Errc::NInsufficient);
  // 0.05 exactly is not strictly below 1 - 0.95
  EXPECT_EQ(error_of([] {
              build_partition(LossModel::empirical({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14,
                                                    15, 16, 17, 18, 19, 19}),
                              kA95);
            }),
            Errc::AtomTooHeavy);
}

TEST(BuildPartition, MassBoundHoldsForEveryModel) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    for (double a : {0.5, 0.9, 0.95, 0.99}) {
      const RiskLevel level(a);
      LossModel m = trial % 3 == 0 ? LossModel::uniform(0.1 * (trial % 5), 2 + trial % 3)
                    : trial % 3 == 1
                        ? LossModel::empirical(kUnit.sample(trial, 50 + 37 * trial))
                        : LossModel::atoms({1, 2, 3}, {0.3, 0.3, 0.4});
      if (!level.undetectable(m.heaviest_atom())) {
        EXPECT_EQ(error_of([&] { build_partition(m, level); }), Errc::AtomTooHeavy);
        continue;
      }
      const auto p = build_partition(m, level);
      EXPECT_EQ(p.cuts().front(), 0.0);
      EXPECT_EQ(p.upper(), m.max_loss());
      double total = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double mass = m.mass_in(p.tranche(i));
        EXPECT_LT(mass, level.tail());
        total += mass;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
      // One fewer tranche must be refused.
      if (p.size() > 1) {
        EXPECT_EQ(error_of([&] { build_partition(m, level, p.size() - 1); }),
                  Errc::NInsufficient);
      }
      // More tranches are always possible.
      const auto finer = build_partition(m, level, p.size() + 3);
      EXPECT_EQ(finer.size(), p.size() + 3);
      for (std::size_t i = 0; i < finer.size(); ++i) {
        EXPECT_LT(m.mass_in(finer.tranche(i)), level.tail());
      }
    }
  }
}

TEST(BuildPartition, AtomicLawGroupsAvoidSplittingAtoms) {
  // Ten atoms of mass 0.04 each plus 0.6 spread: groups must keep each atom whole.
  std::vector<double> values, probs;
  for (int i = 0; i < 10; ++i) {
    values.push_back(i + 1);
    probs.push_back(0.04);
  }
  for (int i = 0; i < 30; ++i) {
    values.push_back(20 + i);
    probs.push_back(0.02);
  }
  const auto m = LossModel::atoms(values, probs);
  const auto p = build_partition(m, kA95);
  EXPECT_EQ(p.size(), 25u);  // 10 singletons, then 15 pairs of 0.02
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(m.mass_in(p.tranche(i)), 0.04, 1e-15);
  const auto d = decompose(m, p, kA95);
  EXPECT_EQ(d.total_capital(), 0.0);
}

TEST(Decompose, Examples) {
  const auto d21 = decompose(kUnit, build_partition(kUnit, kA95), kA95);
  EXPECT_EQ(d21.tranche_vars, std::vector<double>(21, 0.0));
  EXPECT_EQ(d21.total_capital(), 0.0);
  EXPECT_NEAR(std::accumulate(d21.masses.begin(), d21.masses.end(), 0.0), 1.0, 1e-12);

  // Two halves: Pr(T <= x) = 0.5 + x on the low half, x on the high half.
  const auto halves = decompose(kUnit, Partition({0, 0.5, 1}), kA95);
  ASSERT_EQ(halves.tranche_vars.size(), 2u);
  EXPECT_NEAR(halves.tranche_vars[0], 0.45, 1e-15);
  EXPECT_NEAR(halves.tranche_vars[1], 0.95, 1e-15);
  EXPECT_NEAR(halves.tranche_vars[0], oracle::tranche_var_bisection(kUnit, Interval{0, 0.5}, 0.95),
              1e-12);
  EXPECT_NEAR(halves.tranche_vars[1],
              oracle::tranche_var_bisection(kUnit, Interval{0.5, 1, true}, 0.95), 1e-12);
  // Their tail averages.
  EXPECT_NEAR(halves.tranche_es[0], 0.475, 1e-15);
  EXPECT_NEAR(halves.tranche_es[1], 0.975, 1e-15);

  const auto three = LossModel::atoms({0, 5, 10}, {0.5, 0.3, 0.2});
  const auto whole = decompose(three, Partition::whole(10), kA95);
  EXPECT_EQ(whole.tranche_vars, std::vector<double>{value_at_risk(three, kA95)});
  EXPECT_EQ(error_of([&] { decompose(three, Partition({0, 5, 12}), kA95); }),
            Errc::PartitionMismatch);
  EXPECT_EQ(error_of([&] { decompose(three, Partition({0, 5, 9}), kA95); }),
            Errc::PartitionMismatch);
}

TEST(Decompose, ZeroCapitalTheorem) {
  const std::vector<LossModel> models{kUnit, LossModel::uniform(0, 250), LossModel::uniform(3, 4),
                                      LossModel::empirical(kUnit.sample(8, 5000))};
  for (const auto& m : models) {
    for (double a : {0.9, 0.95, 0.99}) {
      const RiskLevel level(a);
      const auto d = decompose(m, build_partition(m, level), level);
      EXPECT_EQ(d.total_capital(), 0.0);
      EXPECT_GT(value_at_risk(m, level), 0.0);
      const double es_parts = std::accumulate(d.tranche_es.begin(), d.tranche_es.end(), 0.0);
      EXPECT_GE(es_parts, expected_shortfall(m, level) * (1 - 1e-12));
    }
  }
}

TEST(SplitRealization, Examples) {
  const auto d = decompose(kUnit, Partition({0, 0.5, 1}), kA95);
  EXPECT_EQ(split_realization(d, 0.7), (std::vector<double>{0, 0.7}));
  EXPECT_EQ(split_realization(d, 0.5), (std::vector<double>{0, 0.5}));
  EXPECT_EQ(split_realization(d, 1.0), (std::vector<double>{0, 1.0}));
  EXPECT_EQ(split_realization(d, 0.0), (std::vector<double>{0, 0}));
  EXPECT_EQ(error_of([&] { split_realization(d, 1.5); }), Errc::OutOfSupport);
  EXPECT_EQ(error_of([&] { split_realization(d, -0.1); }), Errc::OutOfSupport);
  EXPECT_EQ(error_of([&] { split_realization(d, NAN); }), Errc::OutOfSupport);
}

TEST(SplitRealization, ReconstructsBitwise) {
  const auto d = decompose(kUnit, build_partition(kUnit, RiskLevel(0.99)), RiskLevel(0.99));
  const auto xs = kUnit.sample(77, 10000);
  for (double x : xs) {
    const auto parts = split_realization(d, x);
    EXPECT_EQ(std::accumulate(parts.begin(), parts.end(), 0.0), x);
    EXPECT_EQ(std::count_if(parts.begin(), parts.end(), [](double v) { return v != 0.0; }),
              x != 0.0 ? 1 : 0);
    // The tranche holding x is the one whose interval contains it.
    const auto idx = static_cast<std::size_t>(
        std::find(parts.begin(), parts.end(), x) - parts.begin());
    EXPECT_TRUE(d.partition.tranche(idx).contains(x));
  }
}

TEST(SplitRealization, EmpiricalTrancheVarConvergesToAnalytic) {
  const std::size_t trials = 100000;
  const auto xs = kUnit.sample(5, trials);
  for (const auto& cuts : {std::vector<double>{0, 0.5, 1}, std::vector<double>{0, 0.2, 0.3, 1},
                           std::vector<double>{0, 0.9, 1}}) {
    const auto d = decompose(kUnit, Partition(cuts), kA95);
    std::vector<std::vector<double>> columns(d.partition.size());
    for (double x : xs) {
      const auto parts = split_realization(d, x);
      for (std::size_t i = 0; i < parts.size(); ++i) columns[i].push_back(parts[i]);
    }
    // Two standard errors of the order-statistic level around alpha.
    const double band = 2.0 * std::sqrt(0.95 * 0.05 / trials);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const double emp = empirical_var(columns[i], kA95);
      const Interval iv = d.partition.tranche(i);
      EXPECT_GE(emp, var_of_tranche(kUnit, iv, RiskLevel(0.95 - band)));
      EXPECT_LE(emp, var_of_tranche(kUnit, iv, RiskLevel(0.95 + band)));
      if (d.tranche_vars[i] == 0.0) EXPECT_EQ(emp, 0.0);
    }
  }
}

TEST(ValidateScheme, Examples) {
  EXPECT_TRUE(validate_scheme({21, 0}, kA95).valid);
  const auto twenty = validate_scheme({20, 0}, kA95);
  EXPECT_FALSE(twenty.valid);
  EXPECT_EQ(twenty.activation_probability, 0.05);
  const auto ten = validate_scheme({10, 0}, kA95);
  EXPECT_FALSE(ten.valid);
  const auto x100 = LossModel::atoms({100}, {1.0});
  EXPECT_EQ(subsidiary_var({10, 0}, x100, kA95), 100.0);
  EXPECT_EQ(subsidiary_var({20, 0}, x100, kA95), 100.0);
  EXPECT_EQ(subsidiary_var({21, 0}, x100, kA95), 0.0);
  EXPECT_FALSE(validate_scheme({0, 0}, kA95).valid);
}

TEST(ValidateScheme, AgreesWithMinSubsidiaries) {
  for (double a : {0.5, 0.75, 0.9, 0.95, 0.975, 0.99}) {
    const RiskLevel level(a);
    const auto n = min_subsidiaries(level);
    EXPECT_TRUE(validate_scheme({n, 1}, level).valid);
    EXPECT_FALSE(validate_scheme({n - 1, 1}, level).valid);
  }
}

TEST(SubsidiaryVar, MatchesExplicitOneHotLaw) {
  // A subsidiary bears X with probability 1/N: mixture with an atom at 0.
  const auto m = LossModel::atoms({1, 2, 4}, {0.5, 0.25, 0.25});
  for (std::size_t n : {2, 3, 5, 10, 19, 20, 21, 40}) {
    const double w = 1.0 / n;
    const auto unit = LossModel::atoms({0, 1, 2, 4}, {1 - w, 0.5 * w, 0.25 * w, 0.25 * w});
    EXPECT_EQ(subsidiary_var({n, 0}, m, kA95), value_at_risk(unit, kA95)) << n;
    EXPECT_NEAR(subsidiary_es({n, 0}, m, kA95), expected_shortfall(unit, kA95), 1e-12) << n;
  }
}

TEST(RandomizedAssign, SingleSubsidiaryTakesEverything) {
  const std::vector<double> losses{1, 2, 3};
  const auto a = randomized_assign({1, 9}, losses);
  for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(a.row(t), std::vector<double>{losses[t]});
  EXPECT_EQ(error_of([&] { randomized_assign({0, 9}, losses); }), Errc::InvalidBounds);
}

TEST(RandomizedAssign, CoverageAndZeroSubsidiaryVar) {
  const std::vector<double> losses(100000, 100.0);
  const auto a = randomized_assign({21, 42}, losses);
  for (std::size_t t = 0; t < a.trials(); ++t) {
    const auto row = a.row(t);
    EXPECT_EQ(std::accumulate(row.begin(), row.end(), 0.0), losses[t]);
  }
  for (std::size_t i = 0; i < 21; ++i) EXPECT_EQ(empirical_var(a.column(i), kA95), 0.0);
}

TEST(RandomizedAssign, ActivationFrequencies) {
  const std::size_t trials = 100000;
  const std::vector<double> losses(trials, 1.0);
  for (std::size_t n : {2, 7, 21, 101}) {
    const auto counts = randomized_assign({n, 1234 + n}, losses).activation_counts();
    const double p = 1.0 / n;
    const double tol = 3.0 * std::sqrt(p * (1 - p) / trials);
    for (auto c : counts) EXPECT_NEAR(static_cast<double>(c) / trials, p, tol) << n;
  }
}

TEST(RandomizedAssign, Deterministic) {
  const auto losses = kUnit.sample(3, 1000);
  const auto a = randomized_assign({7, 5}, losses);
  const auto b = randomized_assign({7, 5}, losses);
  const auto c = randomized_assign({7, 6}, losses);
  bool same = true, differs = false;
  for (std::size_t t = 0; t < 1000; ++t) {
    same = same && a.assigned(t) == b.assigned(t);
    differs = differs || a.assigned(t) != c.assigned(t);
  }
  EXPECT_TRUE(same);
  EXPECT_TRUE(differs);
}
