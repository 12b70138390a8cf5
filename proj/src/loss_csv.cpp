#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "vararb/error.hpp"
#include "vararb/loss_model.hpp"

namespace vararb {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ": row " + std::to_string(line);
}

}  // namespace

std::vector<double> parse_loss_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw Error(Errc::EmptySupport, std::string(source) + ": missing header `loss`");
  }
  ++line_no;
  if (trim(line) != "loss") {
    throw Error(Errc::MalformedInput,
                where(source, line_no) + ": expected header `loss`, got `" + line + "`");
  }

  std::vector<double> losses;
  while (std::getline(in, line)) {
    ++line_no;
    const auto field = trim(line);
    if (field.empty()) continue;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size() || !std::isfinite(value)) {
      throw Error(Errc::MalformedInput,
                  where(source, line_no) + ": `" + std::string(field) + "` is not a number");
    }
    if (value < 0.0) {
      throw Error(Errc::NegativeLoss,
                  where(source, line_no) + ": loss " + std::string(field) + " is negative");
    }
    losses.push_back(value);
  }
  if (losses.empty()) {
    throw Error(Errc::EmptySupport, std::string(source) + ": no loss rows");
  }
  return losses;
}

LossModel read_loss_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::Io, "cannot open " + path.string());
  }
  return LossModel::empirical(parse_loss_csv(in, path.string()));
}

}  // namespace vararb
