#include "jetlie/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jetlie/error.hpp"

namespace jetlie {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw PreconditionError("gauss_legendre: need at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = 0.5 * (1.0 - x);
    nodes[hi] = 0.5 * (1.0 + x);
    weights[lo] = weights[hi] = 0.5 * w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.5;
}

namespace {

int points_for(int degree) { return (degree + 2) / 2; }  // ceil((degree + 1) / 2)

}  // namespace

QuadratureRule square_rule(int degree) {
  if (degree < 0) throw PreconditionError("square_rule: negative degree");
  std::vector<double> x, w;
  gauss_legendre(points_for(degree), x, w);
  QuadratureRule rule{QuadratureDomain::Square, degree, {}, {}};
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      rule.nodes.push_back({x[i], x[j]});
      rule.weights.push_back(w[i] * w[j]);
    }
  }
  return rule;
}

QuadratureRule simplex_rule(int degree) {
  if (degree < 0) throw PreconditionError("simplex_rule: negative degree");
  std::vector<double> u, wu, v, wv;
  gauss_legendre(points_for(degree + 1), u, wu);
  gauss_legendre(points_for(degree), v, wv);
  QuadratureRule rule{QuadratureDomain::Simplex, degree, {}, {}};
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      rule.nodes.push_back({u[i] * (1.0 - v[j]), u[i] * v[j]});
      rule.weights.push_back(wu[i] * wv[j] * u[i]);
    }
  }
  return rule;
}

double monomial_integral(QuadratureDomain domain, int a, int b) {
  if (domain == QuadratureDomain::Square) return 1.0 / ((a + 1.0) * (b + 1.0));
  // a! b! / (a + b + 2)!
  double r = 1.0;
  for (int k = 1; k <= b; ++k) r *= static_cast<double>(k) / (a + k);
  return r / ((a + b + 1.0) * (a + b + 2.0));
}

double exactness_residual(const QuadratureRule& rule) {
  double worst = 0.0;
  for (int a = 0; a <= rule.degree; ++a) {
    for (int b = 0; a + b <= rule.degree; ++b) {
      double q = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        q += rule.weights[k] * std::pow(rule.nodes[k][0], a) * std::pow(rule.nodes[k][1], b);
      }
      worst = std::max(worst, std::abs(q - monomial_integral(rule.domain, a, b)));
    }
  }
  return worst;
}

void verify_exactness(const QuadratureRule& rule, double tol) {
  const double r = exactness_residual(rule);
  if (!(r <= tol)) {
    throw ToleranceError("quadrature rule of degree " + std::to_string(rule.degree) +
                         " misses monomials by " + std::to_string(r));
  }
}

}  // namespace jetlie
