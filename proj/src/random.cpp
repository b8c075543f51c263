#include "jetlie/random.hpp"

#include <functional>

namespace jetlie {

double uniform(Rng& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return d(rng);
}

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng, scale);
  return v;
}

std::vector<double> random_ball_point(Rng& rng, std::size_t n, double radius) {
  while (true) {
    auto v = random_vector(rng, n, 1.0);
    double r2 = 0.0;
    for (double x : v) r2 += x * x;
    if (r2 <= 1.0) {
      for (auto& x : v) x *= radius;
      return v;
    }
  }
}

JetScalar random_jet(Rng& rng, int order, double scale) {
  JetScalar a(order);
  for (unsigned m = 0; m < a.size(); ++m) a[m] = uniform(rng, scale);
  return a;
}

JetVector random_jet_vector(Rng& rng, int order, std::size_t dim, double scale) {
  std::vector<JetScalar> comps;
  comps.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) comps.push_back(random_jet(rng, order, scale));
  return JetVector(std::move(comps));
}

namespace {

int pick(Rng& rng, int n) {
  std::uniform_int_distribution<int> d(0, n - 1);
  return d(rng);
}

double small_constant(Rng& rng) {
  // quarters keep constant arithmetic exact
  return static_cast<double>(pick(rng, 17) - 8) / 4.0;
}

Expr poly_expr(Rng& rng, ProgramBuilder& b, int depth) {
  if (depth == 0 || pick(rng, 4) == 0) {
    if (b.arity() == 0 || pick(rng, 5) == 0) return b.constant(small_constant(rng));
    return b.input(pick(rng, b.arity()));
  }
  const Expr l = poly_expr(rng, b, depth - 1);
  const Expr r = poly_expr(rng, b, depth - 1);
  switch (pick(rng, 3)) {
    case 0: return l + r;
    case 1: return l - r;
    default: return l * r;
  }
}

Expr trans_expr(Rng& rng, ProgramBuilder& b, int depth) {
  if (depth == 0 || pick(rng, 5) == 0) {
    if (b.arity() == 0 || pick(rng, 5) == 0) return b.constant(small_constant(rng));
    return b.input(pick(rng, b.arity()));
  }
  const Expr a = trans_expr(rng, b, depth - 1);
  switch (pick(rng, 12)) {
    case 0: return a + trans_expr(rng, b, depth - 1);
    case 1: return a - trans_expr(rng, b, depth - 1);
    case 2: return a * trans_expr(rng, b, depth - 1);
    case 3: return a / (2.0 + sin(trans_expr(rng, b, depth - 1)));
    case 4: return sin(a);
    case 5: return cos(a);
    case 6: return exp(0.5 * sin(a));
    case 7: return log(1.5 + cos(a));
    case 8: return sqrt(1.0 + a * a);
    case 9: return atan(a);
    case 10: return atan2(a, 2.0 + cos(trans_expr(rng, b, depth - 1)));
    default: return powi(a, pick(rng, 3) + 2);
  }
}

SmoothProgram random_program(Rng& rng, int arity, int codim, int depth,
                             const std::function<Expr(Rng&, ProgramBuilder&, int)>& gen) {
  ProgramBuilder b(arity);
  std::vector<Expr> outs;
  outs.reserve(static_cast<std::size_t>(codim));
  for (int i = 0; i < codim; ++i) outs.push_back(gen(rng, b, depth));
  return b.build(outs);
}

}  // namespace

SmoothProgram random_polynomial_program(Rng& rng, int arity, int codim, int depth) {
  return random_program(rng, arity, codim, depth, poly_expr);
}

SmoothProgram random_transcendental_program(Rng& rng, int arity, int codim, int depth) {
  return random_program(rng, arity, codim, depth, trans_expr);
}

}  // namespace jetlie
