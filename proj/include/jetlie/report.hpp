#pragma once

/**
 * @file report.hpp
 * @brief Check records, reports and their JSON and text serializations.
 *
 * JSON layout (schema "jetlie.report/1"):
 *   { "schema", "suite", "config": {...},
 *     "checks": [ { "name", "anchor", "values": {...}, "tolerance", "passed",
 *                   "wall_ms" } ... ],
 *     "summary": { "total", "passed", "failed" } }
 * Checks are sorted by name. Non-finite numbers are written as the strings
 * "inf", "-inf" and "nan".
 */

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace jetlie {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "jetlie.report/1";

enum class ReportFormat { Json, Text };

/// "json" or "text"; anything else is a ConfigError.
ReportFormat parse_format(std::string_view name);

/// A number, or its spelling when it is not finite.
Json json_number(double v);
Json json_vector(const std::vector<double>& v);

struct CheckRecord {
  std::string name;
  std::string anchor;  ///< the identity being checked, as a short formula
  Json values = Json::object();
  double tolerance = 0.0;
  bool passed = false;
  double wall_ms = 0.0;
};

struct CheckOutcome {
  Json values = Json::object();
  double residual = 0.0;  ///< compared against the tolerance
  bool ok = true;         ///< extra conditions besides the residual
  /// A tolerance that can only be known after sampling; replaces the one
  /// passed to run_check.
  std::optional<double> tolerance;
};

/// Runs @p fn under a timer. Passes when ok holds and residual <= tolerance
/// (a NaN residual fails). A library Error thrown by @p fn fails the check
/// and is recorded under values.error.
CheckRecord run_check(std::string name, std::string anchor, double tolerance,
                      const std::function<CheckOutcome()>& fn);

struct Report {
  std::string suite;
  Json config = Json::object();
  std::vector<CheckRecord> checks;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  void append(const Report& other);
  /// Stable sort by check name.
  void sort_checks();
  int passed_count() const;
  int failed_count() const;
  bool all_passed() const { return failed_count() == 0; }
};

Json to_json(const Report& r, bool include_wall_time = true);
std::string to_text(const Report& r, bool include_wall_time = true);
std::string emit(const Report& r, ReportFormat format, bool include_wall_time = true);

/// Writes emit(r, format) to @p path, creating parent directories. Throws
/// Error when the file cannot be written.
void write_report(const Report& r, ReportFormat format, const std::filesystem::path& path);

}  // namespace jetlie
