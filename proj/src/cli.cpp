#include "vararb/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <vector>

#include "vararb/error.hpp"

namespace vararb {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view flag, std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw UsageError(std::string(flag), "`" + std::string(text) + "` is not a number");
  }
  return value;
}

std::uint64_t to_unsigned(std::string_view flag, std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw UsageError(std::string(flag), "`" + std::string(text) + "` is not a nonnegative integer");
  }
  return value;
}

std::size_t to_count(std::string_view flag, std::string_view text) {
  const auto value = to_unsigned(flag, text);
  if (value == 0) throw UsageError(std::string(flag), "must be at least 1");
  return static_cast<std::size_t>(value);
}

Subcommand to_subcommand(std::string_view name) {
  for (auto sub : {Subcommand::Var, Subcommand::Es, Subcommand::Decompose, Subcommand::Randomize,
                   Subcommand::Solve, Subcommand::Simulate}) {
    if (subcommand_name(sub) == name) return sub;
  }
  throw UsageError("command", "unknown subcommand `" + std::string(name) +
                                  "` (expected var, es, decompose, randomize, solve or simulate)");
}

}  // namespace

std::string_view subcommand_name(Subcommand sub) noexcept {
  switch (sub) {
    case Subcommand::Var: return "var";
    case Subcommand::Es: return "es";
    case Subcommand::Decompose: return "decompose";
    case Subcommand::Randomize: return "randomize";
    case Subcommand::Solve: return "solve";
    case Subcommand::Simulate: return "simulate";
  }
  return "";
}

ModelDescriptor parse_dist(std::string_view text) {
  const auto colon = text.find(':');
  const auto family = text.substr(0, colon);
  const auto body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (family == "uniform") {
    const auto bounds = split(body, ',');
    if (bounds.size() != 2) {
      throw UsageError("--dist", "expected uniform:a,b, got `" + std::string(text) + "`");
    }
    return UniformSpec{to_double("--dist", bounds[0]), to_double("--dist", bounds[1])};
  }
  if (family == "atoms") {
    AtomsSpec spec;
    for (auto atom : split(body, ',')) {
      const auto fields = split(atom, ':');
      if (fields.size() != 2) {
        throw UsageError("--dist", "expected value:prob, got `" + std::string(atom) + "`");
      }
      spec.values.push_back(to_double("--dist", fields[0]));
      spec.probs.push_back(to_double("--dist", fields[1]));
    }
    return spec;
  }
  throw UsageError("--dist", "unknown distribution `" + std::string(text) +
                                 "` (expected uniform:a,b or atoms:v1:p1,v2:p2,...)");
}

OverheadSchedule parse_overhead(std::string_view text) {
  try {
    if (text == "none") return OverheadSchedule::none();
    if (text.starts_with("linear:")) {
      return OverheadSchedule::linear(to_double("--overhead", text.substr(7)));
    }
    if (text.starts_with("table:")) {
      std::vector<double> costs;
      for (auto c : split(text.substr(6), ',')) costs.push_back(to_double("--overhead", c));
      return OverheadSchedule::table(std::move(costs));
    }
  } catch (const Error& e) {
    throw UsageError("--overhead", e.what());
  }
  throw UsageError("--overhead", "expected none, linear:c or table:c1,c2,..., got `" +
                                     std::string(text) + "`");
}

CliOutcome parse_cli(std::span<const std::string> args) {
  CLI::App app{"Value-at-Risk capital under firm restructuring", "vararb"};
  std::string command_name;
  std::optional<std::string> alpha, dist, input, tranches, subsidiaries, max_desks, overhead,
      trials, seed, format, out;

  app.add_option("command", command_name,
                 "var | es | decompose | randomize | solve | simulate")
      ->required();
  app.add_option("--alpha", alpha, "risk level in (0, 1); default 0.95");
  app.add_option("--dist", dist, "uniform:a,b | atoms:v1:p1,v2:p2,...");
  app.add_option("--input", input, "CSV of losses (header `loss`)");
  app.add_option("--tranches", tranches, "number of tranches (decompose, simulate)");
  app.add_option("--subsidiaries", subsidiaries, "number of subsidiaries (randomize)");
  app.add_option("--max-desks", max_desks, "largest number of desks (solve)");
  app.add_option("--overhead", overhead, "none | linear:c | table:c1,c2,... (solve)");
  app.add_option("--trials", trials, "Monte Carlo trials; default 100000");
  app.add_option("--seed", seed, "random seed; default 42");
  app.add_option("--format", format, "json | csv; default json");
  app.add_option("--out", out, "output path; default stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return app.help();
  } catch (const CLI::ExtrasError& e) {
    throw UsageError(args.empty() ? "command" : "argument", e.what());
  } catch (const CLI::ParseError& e) {
    throw UsageError("command line", e.what());
  }

  Command cmd;
  cmd.subcommand = to_subcommand(command_name);
  if (alpha) {
    cmd.alpha = to_double("--alpha", *alpha);
    if (!(cmd.alpha > 0.0 && cmd.alpha < 1.0)) {
      throw UsageError("--alpha", "InvalidLevel: " + *alpha + " is not in (0, 1)");
    }
  }
  if (dist.has_value() == input.has_value()) {
    throw UsageError(dist ? "--input" : "--dist", "exactly one of --dist and --input is required");
  }
  if (dist) {
    cmd.source = parse_dist(*dist);
    cmd.source_text = *dist;
  } else {
    cmd.source = std::filesystem::path(*input);
    cmd.source_text = "csv:" + *input;
  }
  if (tranches) cmd.tranches = to_count("--tranches", *tranches);
  if (subsidiaries) cmd.subsidiaries = to_count("--subsidiaries", *subsidiaries);
  if (max_desks) cmd.max_desks = to_count("--max-desks", *max_desks);
  if (overhead) cmd.overhead = parse_overhead(*overhead);
  if (trials) cmd.trials = to_count("--trials", *trials);
  if (seed) cmd.seed = to_unsigned("--seed", *seed);
  if (format) {
    if (*format == "json") {
      cmd.format = ReportFormat::Json;
    } else if (*format == "csv") {
      cmd.format = ReportFormat::Csv;
    } else {
      throw UsageError("--format", "expected json or csv, got `" + *format + "`");
    }
  }
  if (out) cmd.out = std::filesystem::path(*out);

  if (cmd.subcommand == Subcommand::Solve && !cmd.max_desks) {
    throw UsageError("--max-desks", "required by solve");
  }
  return cmd;
}

}  // namespace vararb
