#include "jetlie/vanest.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <utility>

#include "jetlie/error.hpp"
#include "jetlie/jet.hpp"

namespace jetlie {

namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::vector<double> concat(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_dims(const ChartedGroup& g, const AlgebraCocycle& w) {
  if (w.dim() != g.dim()) {
    throw PreconditionError("cocycle dimension " + std::to_string(w.dim()) +
                            " does not match group " + g.name());
  }
}

// gamma(t, s) = t m(x, s y) + s m(x, (1 - t) y) for expression inputs
std::vector<Expr> gamma_exprs(ProgramBuilder& b, const SmoothProgram& mult, std::span<const Expr> x,
                              std::span<const Expr> y, Expr t, Expr s) {
  const std::size_t n = x.size();
  std::vector<Expr> a1(x.begin(), x.end()), a2(x.begin(), x.end());
  for (std::size_t i = 0; i < n; ++i) {
    a1.push_back(s * y[i]);
    a2.push_back((1.0 - t) * y[i]);
  }
  const auto p = b.call(mult, a1);
  const auto q = b.call(mult, a2);
  std::vector<Expr> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(t * p[i] + s * q[i]);
  return out;
}

// inputs (x, y, t, s), outputs gamma(t, s)
SmoothProgram gamma_program(const ChartedGroup& g) {
  const int n = g.dim();
  ProgramBuilder b(2 * n + 2);
  const auto x = b.inputs(0, n), y = b.inputs(n, n);
  return b.build(gamma_exprs(b, g.mult(), x, y, b.input(2 * n), b.input(2 * n + 1)));
}

JetVector unit_square_jet(double t, double s) {
  const double flat[] = {t, s, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  return JetVector::from_blocks(2, 2, flat);
}

std::vector<double> node_term(const LeftInvariantTwoForm& form, const SmoothProgram& sigma,
                              const QuadratureRule& rule, std::size_t k) {
  const JetVector z = sigma.eval(unit_square_jet(rule.nodes[k][0], rule.nodes[k][1]));
  auto term = form(z.block(0), z.block(1), z.block(2));
  for (auto& v : term) v *= rule.weights[k];
  return term;
}

void require_sigma(const LeftInvariantTwoForm& form, const SmoothProgram& sigma) {
  if (sigma.arity() != 2 || sigma.codim() != form.group().dim()) {
    throw PreconditionError("pullback_integral: map must send R^2 to the chart of " +
                            form.group().name());
  }
}

std::vector<double> sum_terms(const std::vector<std::vector<double>>& terms, int d) {
  std::vector<double> total(static_cast<std::size_t>(d), 0.0);
  for (const auto& t : terms) {
    for (std::size_t a = 0; a < total.size(); ++a) total[a] += t[a];
  }
  return total;
}

bool is_polynomial(const SmoothProgram& p) {
  return std::all_of(p.nodes().begin(), p.nodes().end(), [](const Node& node) {
    switch (node.op) {
      case Op::Const:
      case Op::Input:
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Neg:
        return true;
      case Op::PowInt:
        return node.k >= 0;
      default:
        return false;
    }
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// left-invariant forms

LeftInvariantTwoForm::LeftInvariantTwoForm(ChartedGroup group, AlgebraCocycle base)
    : group_(std::move(group)), base_(std::move(base)) {
  require_dims(group_, base_);
}

std::vector<double> LeftInvariantTwoForm::translation_inverse(std::span<const double> z) const {
  const int n = group_.dim();
  if (static_cast<int>(z.size()) != n) throw PreconditionError("translation_inverse: bad point");
  if (!(norm(z) < group_.domain_radius())) {
    throw DomainError("translation_inverse: point outside the chart of " + group_.name());
  }
  const std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
  const auto jac = jacobian(group_.mult(), concat(z, zero));  // n x 2n
  Eigen::MatrixXd d2(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d2(i, j) = jac[static_cast<std::size_t>(i * 2 * n + n + j)];
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(d2);
  if (!(lu.rcond() > kSingularTranslationTolerance)) {
    throw DomainError("translation_inverse: singular translation Jacobian in " + group_.name());
  }
  const Eigen::MatrixXd inv = lu.inverse();
  std::vector<double> out(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] = inv(i, j);
  }
  return out;
}

std::vector<double> LeftInvariantTwoForm::operator()(std::span<const double> z,
                                                     std::span<const double> a1,
                                                     std::span<const double> a2) const {
  const int n = group_.dim();
  if (static_cast<int>(a1.size()) != n || static_cast<int>(a2.size()) != n) {
    throw PreconditionError("form_at: tangent vectors must have the group dimension");
  }
  const auto theta = translation_inverse(z);
  std::vector<double> p(static_cast<std::size_t>(n), 0.0), q(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double t = theta[static_cast<std::size_t>(i * n + j)];
      p[static_cast<std::size_t>(i)] += t * a1[static_cast<std::size_t>(j)];
      q[static_cast<std::size_t>(i)] += t * a2[static_cast<std::size_t>(j)];
    }
  }
  return base_(p, q);
}

std::vector<double> form_at(const LeftInvariantTwoForm& form, std::span<const double> z,
                            std::span<const double> a1, std::span<const double> a2) {
  return form(z, a1, a2);
}

// ---------------------------------------------------------------------------
// simplices

SmoothProgram gamma_map(const ChartedGroup& g, std::span<const double> x,
                        std::span<const double> y) {
  const int n = g.dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw PreconditionError("gamma_map: points must have the group dimension");
  }
  if (!g.is_global()) {
    const double r = g.domain_radius();
    if (!(norm(x) < r) || !(norm(y) < r)) throw DomainError("gamma_map: point outside the chart");
    std::vector<double> sy(y.begin(), y.end());
    for (int k = 0; k <= 16; ++k) {
      for (int i = 0; i < n; ++i) sy[static_cast<std::size_t>(i)] = (k / 16.0) * y[static_cast<std::size_t>(i)];
      if (!(norm(g.multiply(x, sy)) < r)) {
        throw DomainError("gamma_map: product path leaves the chart of " + g.name());
      }
    }
  }
  ProgramBuilder b(2);
  std::vector<Expr> xs, ys;
  for (int i = 0; i < n; ++i) {
    xs.push_back(b.constant(x[static_cast<std::size_t>(i)]));
    ys.push_back(b.constant(y[static_cast<std::size_t>(i)]));
  }
  return b.build(gamma_exprs(b, g.mult(), xs, ys, b.input(0), b.input(1)));
}

std::vector<double> pullback_integral(const LeftInvariantTwoForm& form, const SmoothProgram& sigma,
                                      const QuadratureRule& rule) {
  require_sigma(form, sigma);
  const auto count = static_cast<std::ptrdiff_t>(rule.nodes.size());
  std::vector<std::vector<double>> terms(rule.nodes.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      terms[static_cast<std::size_t>(k)] = node_term(form, sigma, rule, static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(jetlie_pullback_integral)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return sum_terms(terms, form.base().target_dim());
}

std::vector<double> pullback_integral_serial(const LeftInvariantTwoForm& form,
                                             const SmoothProgram& sigma,
                                             const QuadratureRule& rule) {
  require_sigma(form, sigma);
  std::vector<std::vector<double>> terms;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) terms.push_back(node_term(form, sigma, rule, k));
  return sum_terms(terms, form.base().target_dim());
}

std::vector<double> integrate_f0(const ChartedGroup& g, const AlgebraCocycle& w,
                                 std::span<const double> x, std::span<const double> y,
                                 const QuadratureRule& rule) {
  if (rule.domain != QuadratureDomain::Simplex) throw PreconditionError("integrate_f0: need a simplex rule");
  return pullback_integral(LeftInvariantTwoForm(g, w), gamma_map(g, x, y), rule);
}

std::vector<double> integrate_f0_serial(const ChartedGroup& g, const AlgebraCocycle& w,
                                        std::span<const double> x, std::span<const double> y,
                                        const QuadratureRule& rule) {
  if (rule.domain != QuadratureDomain::Simplex) throw PreconditionError("integrate_f0: need a simplex rule");
  return pullback_integral_serial(LeftInvariantTwoForm(g, w), gamma_map(g, x, y), rule);
}

SmoothProgram f0_program(const ChartedGroup& g, const AlgebraCocycle& w,
                         const QuadratureRule& rule) {
  require_dims(g, w);
  if (rule.domain != QuadratureDomain::Simplex) throw PreconditionError("f0_program: need a simplex rule");
  const int n = g.dim();
  const int d = w.target_dim();
  const auto gamma = gamma_program(g);
  ProgramBuilder b(2 * n);
  const Expr zero = b.constant(0.0), one = b.constant(1.0);
  std::vector<Expr> total(static_cast<std::size_t>(d), zero);

  auto tangent_part = [&](std::span<const Expr> both) {
    return std::vector<Expr>(both.begin() + n, both.end());
  };
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    auto args = b.inputs();
    args.push_back(b.constant(rule.nodes[k][0]));
    args.push_back(b.constant(rule.nodes[k][1]));
    std::vector<Expr> dir_t(static_cast<std::size_t>(2 * n + 2), zero), dir_s(dir_t);
    dir_t[static_cast<std::size_t>(2 * n)] = one;
    dir_s[static_cast<std::size_t>(2 * n + 1)] = one;
    const auto gt = b.call_tangent(gamma, args, dir_t);
    const auto gs = b.call_tangent(gamma, args, dir_s);
    const std::vector<Expr> z(gt.begin(), gt.begin() + n);

    // theta(z) a = D2 m(z^-1, .) at z applied to a
    auto point = b.call(g.inv(), z);
    point.insert(point.end(), z.begin(), z.end());
    auto translate = [&](std::span<const Expr> a) {
      std::vector<Expr> dir(static_cast<std::size_t>(n), zero);
      dir.insert(dir.end(), a.begin(), a.end());
      return tangent_part(b.call_tangent(g.mult(), point, dir));
    };
    const auto p = translate(tangent_part(gt));
    const auto q = translate(tangent_part(gs));

    for (int a = 0; a < d; ++a) {
      Expr acc = zero;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double c = w.omega(a, i, j);
          if (c == 0.0) continue;
          const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
          acc = acc + c * (p[ui] * q[uj] - p[uj] * q[ui]);
        }
      }
      auto& slot = total[static_cast<std::size_t>(a)];
      slot = slot + rule.weights[k] * acc;
    }
  }
  return b.build(total);
}

// ---------------------------------------------------------------------------
// cocycle

double default_d2_tolerance(const ChartedGroup& g) {
  return is_polynomial(g.mult()) && is_polynomial(g.inv()) ? kD2TolerancePolynomial
                                                           : kD2ToleranceTranscendental;
}

D2Check check_d2(const ChartedGroup& g, const AlgebraCocycle& w, const QuadratureRule& rule,
                 double tol) {
  const GroupCocycle f0("f0", g.dim(), f0_program(g, w, rule), g.domain_radius());
  D2Check r;
  r.tol = tol < 0.0 ? default_d2_tolerance(g) : tol;
  r.d2 = mixed_second_derivative(f0);
  r.expected = w.tensor();
  for (auto& v : r.expected) v *= 0.5;
  for (std::size_t k = 0; k < r.d2.size(); ++k) {
    r.max_diff = std::max(r.max_diff, std::abs(r.d2[k] - r.expected[k]));
  }
  r.passed = r.max_diff <= r.tol;
  return r;
}

GroupCocycle vanest_cocycle(const ChartedGroup& g, const AlgebraCocycle& w,
                            const QuadratureRule& rule, std::string name) {
  require_dims(g, w);
  w.verify(structure_constants(g));
  return GroupCocycle(std::move(name), g.dim(), f0_program(g, w, rule), g.domain_radius() / 2.0);
}

double quadrature_error_estimate(const ChartedGroup& g, const AlgebraCocycle& w,
                                 std::uint64_t seed, int count, const QuadratureRule& rule) {
  const auto f = vanest_cocycle(g, w, rule);
  const auto fine = vanest_cocycle(g, w, simplex_rule(2 * rule.degree));
  double worst = 0.0;
  auto compare = [&](std::span<const double> x, std::span<const double> y) {
    const auto a = f(x, y), b = fine(x, y);
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  };
  for (const auto& [g0, g1, g2] : sample_triples(g, f, seed, count)) {
    const auto g01 = g.multiply(g0, g1), g12 = g.multiply(g1, g2);
    compare(g01, g2);
    compare(g0, g1);
    compare(g0, g12);
    compare(g1, g2);
  }
  return worst;
}

double vanest_identity_tolerance(const ChartedGroup& g, const AlgebraCocycle& w,
                                 std::uint64_t seed, int count, const QuadratureRule& rule) {
  return std::max(1e-8, 10.0 * quadrature_error_estimate(g, w, seed, count, rule));
}

// ---------------------------------------------------------------------------
// periods

TwoCycle fundamental_torus_cycle(int n) {
  if (n < 2) throw PreconditionError("fundamental_torus_cycle: need n >= 2");
  ProgramBuilder b(2);
  std::vector<Expr> out{b.input(0), b.input(1)};
  for (int i = 2; i < n; ++i) out.push_back(b.constant(0.0));
  std::vector<double> et(static_cast<std::size_t>(n), 0.0), es(et);
  et[0] = 1.0;
  es[1] = 1.0;
  return TwoCycle{b.build(out), et, es};
}

TwoCycle constant_cycle(std::span<const double> point) {
  const std::vector<double> zero(point.size(), 0.0);
  return TwoCycle{constant_program(2, point), zero, zero};
}

double periodicity_residual(const TwoCycle& sigma, int samples) {
  double worst = 0.0;
  auto check = [&](const std::optional<std::vector<double>>& shift, bool along_t) {
    if (!shift) return;
    if (static_cast<int>(shift->size()) != sigma.map.codim()) {
      throw PreconditionError("periodicity_residual: shift has the wrong dimension");
    }
    for (int k = 0; k < samples; ++k) {
      const double u = samples == 1 ? 0.5 : static_cast<double>(k) / (samples - 1);
      const std::vector<double> lo = along_t ? std::vector<double>{0.0, u} : std::vector<double>{u, 0.0};
      const std::vector<double> hi = along_t ? std::vector<double>{1.0, u} : std::vector<double>{u, 1.0};
      const auto a = sigma.map(lo), b = sigma.map(hi);
      for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(b[i] - a[i] - (*shift)[i]));
      }
    }
  };
  check(sigma.t_shift, true);
  check(sigma.s_shift, false);
  return worst;
}

std::vector<double> period(const ChartedGroup& g, const AlgebraCocycle& w, const TwoCycle& sigma,
                           const QuadratureRule& rule) {
  if (rule.domain != QuadratureDomain::Square) throw PreconditionError("period: need a square rule");
  const LeftInvariantTwoForm form(g, w);
  require_sigma(form, sigma.map);
  const double r = periodicity_residual(sigma);
  if (!(r <= kPeriodicityTolerance)) {
    throw ToleranceError("period: declared edge identifications fail by " + std::to_string(r));
  }
  return pullback_integral(form, sigma.map, rule);
}

}  // namespace jetlie
