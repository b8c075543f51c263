#include "jetlie/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "jetlie/error.hpp"

namespace jetlie {

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::Text;
  throw ConfigError("unknown format '" + std::string(name) + "' (expected json or text)");
}

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json json_vector(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(json_number(x));
  return out;
}

CheckRecord run_check(std::string name, std::string anchor, double tolerance,
                      const std::function<CheckOutcome()>& fn) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.anchor = std::move(anchor);
  rec.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto out = fn();
    rec.values = std::move(out.values);
    if (out.tolerance) rec.tolerance = *out.tolerance;
    rec.values["residual"] = json_number(out.residual);
    rec.passed = out.ok && out.residual <= rec.tolerance;
  } catch (const Error& e) {
    rec.values["error"] = e.what();
    rec.passed = false;
  }
  const auto stop = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void Report::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

int Report::passed_count() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckRecord& c) { return c.passed; }));
}

int Report::failed_count() const { return static_cast<int>(checks.size()) - passed_count(); }

Json to_json(const Report& r, bool include_wall_time) {
  Json out;
  out["schema"] = kReportSchema;
  out["suite"] = r.suite;
  out["config"] = r.config;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j;
    j["name"] = c.name;
    j["anchor"] = c.anchor;
    j["values"] = c.values;
    j["tolerance"] = json_number(c.tolerance);
    j["passed"] = c.passed;
    if (include_wall_time) j["wall_ms"] = c.wall_ms;
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  out["summary"] = {{"total", r.checks.size()},
                    {"passed", r.passed_count()},
                    {"failed", r.failed_count()}};
  return out;
}

std::string to_text(const Report& r, bool include_wall_time) {
  std::ostringstream os;
  os << "suite " << r.suite << "\n";
  for (const auto& c : r.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  [" << c.anchor << "]\n";
    os << "     tolerance " << json_number(c.tolerance).dump();
    if (include_wall_time) os << "  wall " << c.wall_ms << " ms";
    os << "\n";
    for (const auto& [key, value] : c.values.items()) {
      os << "     " << key << " = " << value.dump() << "\n";
    }
  }
  os << r.passed_count() << "/" << r.checks.size() << " checks passed\n";
  return os.str();
}

std::string emit(const Report& r, ReportFormat format, bool include_wall_time) {
  if (format == ReportFormat::Text) return to_text(r, include_wall_time);
  return to_json(r, include_wall_time).dump(2) + "\n";
}

void write_report(const Report& r, ReportFormat format, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report to '" + path.string() + "'");
  out << emit(r, format);
  if (!out.flush()) throw Error("cannot write report to '" + path.string() + "'");
}

}  // namespace jetlie
