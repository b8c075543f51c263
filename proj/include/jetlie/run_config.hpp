#pragma once

/**
 * @file run_config.hpp
 * @brief Configuration of one command-line run and its execution.
 *
 * Config files hold one "key value" pair per line; blank lines and lines
 * starting with '#' are ignored. Keys: suite, group, omega, cocycle, degree,
 * tol, seed, format, output, lattice. The value is the rest of the line, so
 * "lattice Z+aZ alpha=sqrt2-symbolic" is one entry.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "jetlie/report.hpp"

namespace jetlie {

inline constexpr const char* kOutputDirVariable = "JETLIE_OUTPUT_DIR";

enum class Command { Verify, Bracket, Vanest, Period };

struct RunConfig {
  Command command = Command::Verify;
  std::string suite = "all";
  std::optional<std::string> group;
  std::optional<std::string> omega;
  std::optional<std::string> cocycle;
  int degree = 7;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::optional<std::string> output;
  std::optional<std::string> lattice;
};

/// Sets one key; throws ConfigError for unknown keys and malformed values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
/// Applies every line of @p path in order.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Rejects unknown names, a bad format or degree, and missing arguments of
/// the command, without computing anything.
void validate(const RunConfig& config);

/// Validates, then runs the command.
Report run(const RunConfig& config);

/// --output when given, else $JETLIE_OUTPUT_DIR/<report name>.<json|txt>
/// when the variable is set, else nothing (standard output).
std::optional<std::filesystem::path> output_path(const RunConfig& config);

}  // namespace jetlie
