#include "vararb/simulation.hpp"

#include <numeric>

#include "vararb/capital_solver.hpp"
#include "vararb/risk_measures.hpp"
#include "vararb/structuring.hpp"

namespace vararb {
namespace {

// Per-unit positive losses of the simulated trials; zeros are only counted.
struct UnitSamples {
  explicit UnitSamples(std::size_t units) : positives(units) {}

  void add(std::size_t unit, double loss) {
    if (loss > 0.0) positives[unit].push_back(loss);
  }

  double var(std::size_t unit, std::size_t trials, RiskLevel level) const {
    return empirical_var(positives[unit], trials - positives[unit].size(), level);
  }

  std::vector<std::vector<double>> positives;
};

void fill_tranches(CapitalReport& report, const TrancheDecomposition& d) {
  const auto cuts = d.partition.cuts();
  report.cuts.assign(cuts.begin(), cuts.end());
  report.n = d.partition.size();
  for (std::size_t i = 0; i < d.partition.size(); ++i) {
    report.tranches.push_back(UnitFigures{i, cuts[i], cuts[i + 1], d.masses[i],
                                          d.tranche_vars[i], std::nullopt, d.tranche_es[i]});
  }
}

void simulate_tranches(CapitalReport& report, const TrancheDecomposition& d,
                       const Command& command, RiskLevel level) {
  const auto losses = d.model.sample(command.seed, command.trials);
  UnitSamples units(d.partition.size());
  bool exact = true;
  for (double x : losses) {
    const auto parts = split_realization(d, x);
    exact = exact && std::accumulate(parts.begin(), parts.end(), 0.0) == x;
    for (std::size_t i = 0; i < parts.size(); ++i) units.add(i, parts[i]);
  }
  for (auto& unit : report.tranches) {
    unit.empirical_var = units.var(unit.index, losses.size(), level);
  }
  report.empirical_var_total = empirical_var(losses, level);
  report.coverage_exact = exact;
  report.trials = command.trials;
}

void randomize(CapitalReport& report, const LossModel& model, const Command& command,
               RiskLevel level) {
  const RandomizedScheme scheme{command.subsidiaries.value_or(min_subsidiaries(level)),
                                command.seed};
  const auto losses = model.sample(command.seed, command.trials);
  const auto assignment = randomized_assign(scheme, losses);

  UnitSamples units(scheme.subsidiaries);
  bool exact = true;
  for (std::size_t t = 0; t < assignment.trials(); ++t) {
    const auto row = assignment.row(t);
    exact = exact && std::accumulate(row.begin(), row.end(), 0.0) == losses[t];
    units.add(assignment.assigned(t), assignment.loss(t));
  }

  const double unit_var = subsidiary_var(scheme, model, level);
  const double unit_es = subsidiary_es(scheme, model, level);
  const double activation = 1.0 / static_cast<double>(scheme.subsidiaries);
  report.n = scheme.subsidiaries;
  for (std::size_t i = 0; i < scheme.subsidiaries; ++i) {
    report.tranches.push_back(UnitFigures{i, std::nullopt, std::nullopt, activation, unit_var,
                                          units.var(i, losses.size(), level), unit_es});
  }
  report.empirical_var_total = empirical_var(losses, level);
  report.coverage_exact = exact;
  report.trials = command.trials;
}

}  // namespace

LossModel load_model(const Command& command) {
  if (const auto* path = std::get_if<std::filesystem::path>(&command.source)) {
    return read_loss_csv(*path);
  }
  return LossModel::build(std::get<ModelDescriptor>(command.source));
}

CapitalReport run_simulation(const Command& command) {
  const RiskLevel level(command.alpha);
  LossModel model = load_model(command);

  CapitalReport report;
  report.command = std::string(subcommand_name(command.subcommand));
  report.alpha = command.alpha;
  report.model = command.source_text;
  report.seed = command.seed;
  report.restriction = std::string(kSolverRestriction);

  std::optional<Partition> partition;
  switch (command.subcommand) {
    case Subcommand::Var:
    case Subcommand::Es:
      partition = Partition::whole(model.max_loss());
      break;
    case Subcommand::Decompose:
    case Subcommand::Simulate:
      partition = build_partition(model, level, command.tranches);
      break;
    case Subcommand::Solve: {
      if (model.as_uniform() != nullptr) {
        model = discretize_uniform(model, kSolverGridPoints);
        report.model += " (grid of " + std::to_string(kSolverGridPoints) + " points)";
      }
      const auto result = solve_with_overhead(model, level, *command.max_desks, command.overhead);
      partition = result.partition;
      report.objective = result.objective;
      break;
    }
    case Subcommand::Randomize:
      break;
  }

  report.var_total = value_at_risk(model, level);
  report.es_total = expected_shortfall(model, level);
  if (partition) {
    const auto d = decompose(model, *partition, level);
    fill_tranches(report, d);
    if (command.subcommand == Subcommand::Simulate) simulate_tranches(report, d, command, level);
  } else {
    randomize(report, model, command, level);
  }
  finalize_totals(report);
  return report;
}

}  // namespace vararb
