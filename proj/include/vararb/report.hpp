#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vararb/cli.hpp"

namespace vararb {

/// Figures for one unit: a tranche, or a subsidiary of a randomized scheme
/// (which has no interval, hence no lo/hi).
struct UnitFigures {
  std::size_t index = 0;
  std::optional<double> lo;
  std::optional<double> hi;
  double mass = 0.0;
  double analytic_var = 0.0;
  std::optional<double> empirical_var;
  double analytic_es = 0.0;
};

struct CapitalReport {
  std::string command;
  double alpha = 0.95;
  std::string model;
  std::size_t n = 0;
  std::vector<double> cuts;
  std::vector<UnitFigures> tranches;
  double var_total = 0.0;
  std::optional<double> empirical_var_total;
  double es_total = 0.0;
  double sum_tranche_vars = 0.0;
  double sum_tranche_es = 0.0;
  double additivity_gap = 0.0;
  std::optional<double> objective;      // solve only: capital + overhead(n)
  std::optional<bool> coverage_exact;   // simulated runs: units sum to the loss
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string restriction;
};

/// Fills the sums and the gap from the per-unit entries and var_total.
void finalize_totals(CapitalReport& report);

/// JSON: one object, keys in declaration order. CSV: header, one row per
/// unit, then a totals row. Doubles round-trip exactly.
std::string serialize_report(const CapitalReport& report, ReportFormat format);

/// Writes the serialized report to `out`, or to `fallback` when no path is
/// given. Throws Errc::Io naming the path.
std::string emit_report(const CapitalReport& report, ReportFormat format,
                        const std::optional<std::filesystem::path>& out, std::ostream& fallback);

}  // namespace vararb
