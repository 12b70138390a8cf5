#include "vararb/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vararb/error.hpp"

namespace vararb {
namespace {

using Json = nlohmann::ordered_json;

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::string to_json(const CapitalReport& r) {
  Json units = Json::array();
  for (const auto& u : r.tranches) {
    Json unit;
    unit["index"] = u.index;
    unit["lo"] = optional_json(u.lo);
    unit["hi"] = optional_json(u.hi);
    unit["mass"] = u.mass;
    unit["analytic_var"] = u.analytic_var;
    unit["empirical_var"] = optional_json(u.empirical_var);
    unit["analytic_es"] = u.analytic_es;
    units.push_back(std::move(unit));
  }
  Json doc;
  doc["command"] = r.command;
  doc["alpha"] = r.alpha;
  doc["model"] = r.model;
  doc["n"] = r.n;
  doc["cuts"] = r.cuts;
  doc["tranches"] = std::move(units);
  doc["var_total"] = r.var_total;
  doc["empirical_var_total"] = optional_json(r.empirical_var_total);
  doc["es_total"] = r.es_total;
  doc["sum_tranche_vars"] = r.sum_tranche_vars;
  doc["sum_tranche_es"] = r.sum_tranche_es;
  doc["additivity_gap"] = r.additivity_gap;
  doc["objective"] = optional_json(r.objective);
  doc["coverage_exact"] = optional_json(r.coverage_exact);
  doc["trials"] = r.trials;
  doc["seed"] = r.seed;
  doc["restriction"] = r.restriction;
  return doc.dump(2) + "\n";
}

std::string to_csv(const CapitalReport& r) {
  std::ostringstream os;
  os << "tranche,lo,hi,mass,analytic_var,empirical_var,analytic_es\n";
  double mass = 0.0;
  double empirical_sum = 0.0;
  bool all_empirical = !r.tranches.empty();
  for (const auto& u : r.tranches) {
    os << u.index << ',' << number(u.lo) << ',' << number(u.hi) << ',' << number(u.mass) << ','
       << number(u.analytic_var) << ',' << number(u.empirical_var) << ','
       << number(u.analytic_es) << '\n';
    mass += u.mass;
    if (u.empirical_var) {
      empirical_sum += *u.empirical_var;
    } else {
      all_empirical = false;
    }
  }
  const std::string empirical = all_empirical ? number(empirical_sum) : std::string();
  const std::optional<double> lo = r.cuts.empty() ? std::nullopt : std::optional(r.cuts.front());
  const std::optional<double> hi = r.cuts.empty() ? std::nullopt : std::optional(r.cuts.back());
  os << "total," << number(lo) << ',' << number(hi) << ',' << number(mass) << ','
     << number(r.sum_tranche_vars) << ',' << empirical << ','
     << number(r.sum_tranche_es) << '\n';
  return os.str();
}

}  // namespace

void finalize_totals(CapitalReport& report) {
  report.sum_tranche_vars = 0.0;
  report.sum_tranche_es = 0.0;
  for (const auto& u : report.tranches) {
    report.sum_tranche_vars += u.analytic_var;
    report.sum_tranche_es += u.analytic_es;
  }
  report.additivity_gap = report.sum_tranche_vars - report.var_total;
}

std::string serialize_report(const CapitalReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? to_json(report) : to_csv(report);
}

std::string emit_report(const CapitalReport& report, ReportFormat format,
                        const std::optional<std::filesystem::path>& out, std::ostream& fallback) {
  std::string doc = serialize_report(report, format);
  if (!out) {
    fallback << doc;
    return doc;
  }
  std::ofstream file(*out, std::ios::binary);
  file << doc;
  file.close();
  if (!file) throw Error(Errc::Io, "cannot write report to " + out->string());
  return doc;
}

}  // namespace vararb
