#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "vararb/capital_solver.hpp"
#include "vararb/loss_model.hpp"

namespace vararb {

enum class Subcommand { Var, Es, Decompose, Randomize, Solve, Simulate };
enum class ReportFormat { Json, Csv };

std::string_view subcommand_name(Subcommand sub) noexcept;

/// Rejected command line. flag() names the offending option (or the
/// subcommand position); the process exits with status 2.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string flag, const std::string& message)
      : std::runtime_error(flag + ": " + message), flag_(std::move(flag)) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

/// Where the loss comes from: a --dist descriptor or a --input CSV file.
using LossSource = std::variant<ModelDescriptor, std::filesystem::path>;

struct Command {
  Subcommand subcommand = Subcommand::Var;
  double alpha = 0.95;
  LossSource source = UniformSpec{};
  std::string source_text;  // --dist value verbatim, or "csv:<path>"
  std::optional<std::size_t> tranches;
  std::optional<std::size_t> subsidiaries;
  std::optional<std::size_t> max_desks;
  OverheadSchedule overhead = OverheadSchedule::none();
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
  ReportFormat format = ReportFormat::Json;
  std::optional<std::filesystem::path> out;
};

/// Parses `--dist uniform:a,b` or `--dist atoms:v1:p1,v2:p2,...`.
ModelDescriptor parse_dist(std::string_view text);

/// Parses `--overhead none | linear:c | table:c1,c2,...`.
OverheadSchedule parse_overhead(std::string_view text);

/// Parsed command line, or the help text when --help was given.
using CliOutcome = std::variant<Command, std::string>;

/// `args` excludes the program name. Throws UsageError.
CliOutcome parse_cli(std::span<const std::string> args);

}  // namespace vararb
