// Command-line front end: vararb <command> [flags]; see --help.
//
// Exit status: 0 on success, 2 on a usage error, 1 on any runtime error.

#include <iostream>
#include <string>
#include <vector>

#include "vararb/cli.hpp"
#include "vararb/error.hpp"
#include "vararb/report.hpp"
#include "vararb/simulation.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  vararb::Command command;
  try {
    auto outcome = vararb::parse_cli(args);
    if (const auto* help = std::get_if<std::string>(&outcome)) {
      std::cout << *help;
      return 0;
    }
    command = std::get<vararb::Command>(std::move(outcome));
  } catch (const vararb::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto report = vararb::run_simulation(command);
    vararb::emit_report(report, command.format, command.out, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
