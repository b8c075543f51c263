#pragma once

/**
 * @file quadrature.hpp
 * @brief Gauss-Legendre rules on the unit square and on the standard
 * 2-simplex {(t, s): t, s >= 0, t + s <= 1}.
 */

#include <array>
#include <vector>

namespace jetlie {

inline constexpr double kExactnessTolerance = 1e-12;

enum class QuadratureDomain { Square, Simplex };

struct QuadratureRule {
  QuadratureDomain domain = QuadratureDomain::Square;
  int degree = 0;  ///< declared total-degree exactness
  std::vector<std::array<double, 2>> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes and weights on [0, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor Gauss-Legendre rule on [0, 1]^2, exact to total degree @p degree.
QuadratureRule square_rule(int degree);

/// Collapsed rule on the simplex: (t, s) = (u (1 - v), u v) with Jacobian u.
QuadratureRule simplex_rule(int degree);

/// Integral of t^a s^b over the rule's reference domain.
double monomial_integral(QuadratureDomain domain, int a, int b);

/// Largest |rule(t^a s^b) - exact| over a + b <= rule.degree.
double exactness_residual(const QuadratureRule& rule);

/// Throws ToleranceError when exactness_residual exceeds @p tol.
void verify_exactness(const QuadratureRule& rule, double tol = kExactnessTolerance);

}  // namespace jetlie
