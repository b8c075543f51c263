#pragma once

/**
 * @file catalog.hpp
 * @brief Named 2-forms, cocycles and lattices used by the command line and
 * the verification suites.
 *
 * Names:
 *   omega     symplectic | zero | coboundary
 *   cocycle   heis | zero | coboundary:<lin|quad|cubic> | vanest:<omega>
 *   lattice   Z | Z<n> | Z+aZ alpha=sqrt<d>-symbolic | Z+aZ alpha=<number>
 */

#include <string>
#include <string_view>
#include <vector>

#include "jetlie/cocycle.hpp"
#include "jetlie/group.hpp"
#include "jetlie/lattice.hpp"
#include "jetlie/quadrature.hpp"

namespace jetlie {

/// b = (1, -1/2, 1/4, ...), the functional behind the "coboundary" form.
std::vector<double> coboundary_functional(int n);

std::vector<std::string> omega_catalog();
/// Throws ConfigError for unknown names or when the form needs a larger
/// dimension than @p g has.
AlgebraCocycle make_omega(const std::string& name, const ChartedGroup& g);

std::vector<std::string> potential_catalog();
/// Potentials h: R^n -> R with h(0) = 0.
SmoothProgram make_potential(const std::string& name, int n);

std::vector<std::string> cocycle_catalog();
/// "heis" needs an abelian catalog group of dimension >= 2.
GroupCocycle make_cocycle(const std::string& name, const ChartedGroup& g,
                          const QuadratureRule& rule = simplex_rule(7));

std::vector<std::string> lattice_catalog();
Lattice parse_lattice(std::string_view literal);

/// Name checks without building anything; throw ConfigError.
void check_group_name(const std::string& name);
void check_omega_name(const std::string& name);
void check_cocycle_name(const std::string& name);

struct CatalogEntry {
  std::string kind;
  std::string name;
  std::string description;
};

std::vector<CatalogEntry> catalog_entries();

}  // namespace jetlie
