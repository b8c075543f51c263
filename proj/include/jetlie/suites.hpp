#pragma once

/**
 * @file suites.hpp
 * @brief Named verification suites and the single-computation reports
 * behind the command line.
 *
 * Every check draws its samples from a generator seeded by the run seed and
 * the check name, so a report depends only on its configuration.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetlie/report.hpp"

namespace jetlie {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<double> tol;  ///< replaces every check tolerance when set
  int degree = 7;             ///< simplex rule degree for van Est integrals
};

/// tangent-axioms, brackets, extensions, vanest, periods, quotients,
/// examples-ek-dl, all
std::vector<std::string> suite_names();
void check_suite_name(const std::string& name);

/// Checks of the named suite, sorted by name. Throws ConfigError for unknown
/// names.
Report run_suite(const std::string& name, const SuiteOptions& options);

/// Structure constants of the group, or of its extension by @p cocycle
/// compared with the algebra extended by the derivative of the cocycle.
Report bracket_report(const std::string& group, const std::optional<std::string>& cocycle,
                      const SuiteOptions& options);

/// d^2 f0 = w / 2, L(f0) = w and the cocycle identity of f0.
Report vanest_report(const std::string& group, const std::string& omega,
                     const SuiteOptions& options);

/// Period of w over the fundamental torus cycle, the discreteness of the
/// group it generates and, with @p lattice, its membership in that lattice.
Report period_report(const std::string& group, const std::string& omega,
                     const std::optional<std::string>& lattice, const SuiteOptions& options);

}  // namespace jetlie
