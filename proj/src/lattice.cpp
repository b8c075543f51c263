#include "jetlie/lattice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "jetlie/error.hpp"
#include "jetlie/vanest.hpp"

namespace jetlie {

using Vec = std::vector<double>;

std::string_view to_string(Discreteness d) noexcept {
  switch (d) {
    case Discreteness::Discrete:
      return "discrete";
    case Discreteness::NotDiscrete:
      return "not-discrete";
    case Discreteness::Unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

Eigen::MatrixXd generator_matrix(const Lattice& l) {
  Eigen::MatrixXd g(l.ambient_dim(), l.rank());
  for (int j = 0; j < l.rank(); ++j) {
    for (int i = 0; i < l.ambient_dim(); ++i) {
      g(i, j) = l.generators()[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
  }
  return g;
}

bool real_independent(const Lattice& l) {
  if (l.rank() > l.ambient_dim()) return false;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(generator_matrix(l));
  const auto& s = svd.singularValues();
  return s.size() == 0 || s(s.size() - 1) > kIndependenceTolerance * s(0);
}

int exact_real_rank(const Lattice& l) {
  ExactMatrix<QuadraticNumber> m(static_cast<std::size_t>(l.ambient_dim()));
  for (int i = 0; i < l.ambient_dim(); ++i) {
    for (const auto& g : l.exact_generators()) m[static_cast<std::size_t>(i)].push_back(g[static_cast<std::size_t>(i)]);
  }
  return exact_rank(std::move(m));
}

// rows: rational and irrational parts of each ambient coordinate
ExactMatrix<Rational> rational_split(const Lattice& l) {
  ExactMatrix<Rational> m(static_cast<std::size_t>(2 * l.ambient_dim()));
  for (int i = 0; i < l.ambient_dim(); ++i) {
    for (const auto& g : l.exact_generators()) {
      const auto& x = g[static_cast<std::size_t>(i)];
      m[static_cast<std::size_t>(2 * i)].push_back(x.rational_part());
      m[static_cast<std::size_t>(2 * i + 1)].push_back(x.irrational_part());
    }
  }
  return m;
}

void require_dim(const Lattice& l, std::size_t n, const char* what) {
  if (static_cast<int>(n) != l.ambient_dim()) {
    throw PreconditionError(std::string(what) + ": vector length does not match the lattice");
  }
}

Vec minus(std::span<const double> x, std::span<const double> y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

Vec combine(const Lattice& l, std::span<const double> k) {
  Vec out(static_cast<std::size_t>(l.ambient_dim()), 0.0);
  for (std::size_t j = 0; j < k.size(); ++j) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += k[j] * l.generators()[j][i];
  }
  return out;
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(int ambient_dim, std::vector<std::vector<double>> generators)
    : d_(ambient_dim), gens_(std::move(generators)) {
  if (d_ < 1) throw PreconditionError("Lattice: ambient dimension must be positive");
  for (const auto& g : gens_) {
    require_dim(*this, g.size(), "Lattice");
    if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; })) {
      throw PreconditionError("Lattice: generators must be nonzero");
    }
    if (!std::all_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); })) {
      throw PreconditionError("Lattice: generators must be finite");
    }
  }
}

Lattice::Lattice(int ambient_dim, std::vector<QVector> exact_generators) : d_(ambient_dim) {
  if (d_ < 1) throw PreconditionError("Lattice: ambient dimension must be positive");
  long radicand = 0;
  for (const auto& g : exact_generators) {
    require_dim(*this, g.size(), "Lattice");
    if (std::all_of(g.begin(), g.end(), [](const QuadraticNumber& v) { return v.is_zero(); })) {
      throw PreconditionError("Lattice: generators must be nonzero");
    }
    Vec approx;
    for (const auto& v : g) {
      if (!v.is_rational()) {
        if (radicand != 0 && radicand != v.radicand()) {
          throw PreconditionError("Lattice: exact coordinates must share one irrational");
        }
        radicand = v.radicand();
      }
      approx.push_back(v.to_double());
    }
    gens_.push_back(std::move(approx));
  }
  // express every coordinate over the common radicand
  if (radicand != 0) {
    for (auto& g : exact_generators) {
      for (auto& v : g) v = QuadraticNumber(v.rational_part(), v.irrational_part(), radicand);
    }
  }
  exact_ = std::move(exact_generators);
}

Lattice Lattice::integer(int d) {
  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) {
    Vec e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    gens.push_back(std::move(e));
  }
  return Lattice(d, std::move(gens));
}

Lattice Lattice::integer_plus(const QuadraticNumber& alpha) {
  return Lattice(1, std::vector<QVector>{{QuadraticNumber(1)}, {alpha}});
}

const std::vector<QVector>& Lattice::exact_generators() const {
  if (!exact_) throw PreconditionError("Lattice: no exact coordinates");
  return *exact_;
}

Vec Lattice::element(std::span<const long long> coefficients) const {
  if (static_cast<int>(coefficients.size()) != rank()) {
    throw PreconditionError("Lattice::element: one coefficient per generator");
  }
  Vec k(coefficients.begin(), coefficients.end());
  return combine(*this, k);
}

QVector Lattice::exact_element(std::span<const long long> coefficients) const {
  if (static_cast<int>(coefficients.size()) != rank()) {
    throw PreconditionError("Lattice::exact_element: one coefficient per generator");
  }
  const auto& gens = exact_generators();
  QVector out(static_cast<std::size_t>(d_), QuadraticNumber(0));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += QuadraticNumber(coefficients[j]) * gens[j][i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// discreteness and reduction

Discreteness is_discrete(const Lattice& l) {
  if (l.rank() == 0) return Discreteness::Discrete;
  if (l.has_exact()) {
    const int real_rank = exact_real_rank(l);
    const int rational_rank = exact_rank(rational_split(l));
    return rational_rank == real_rank ? Discreteness::Discrete : Discreteness::NotDiscrete;
  }
  return real_independent(l) ? Discreteness::Discrete : Discreteness::Unknown;
}

Vec lattice_coords(const Lattice& l, std::span<const double> x) {
  require_dim(l, x.size(), "lattice_coords");
  if (!real_independent(l)) {
    throw PreconditionError("lattice_coords: generators are not independent over R");
  }
  const Eigen::MatrixXd g = generator_matrix(l);
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::VectorXd c = g.completeOrthogonalDecomposition().pseudoInverse() * v;
  return Vec(c.data(), c.data() + c.size());
}

Vec reduce(const Lattice& l, std::span<const double> x) {
  if (is_discrete(l) != Discreteness::Discrete) {
    throw PreconditionError("reduce: the lattice is not known to be discrete");
  }
  auto c = lattice_coords(l, x);
  for (auto& v : c) {
    const double r = std::round(v);
    v = std::abs(v - r) <= kLatticeSnapTolerance ? r : std::floor(v);
  }
  return minus(x, combine(l, c));
}

double distance_to_lattice(const Lattice& l, std::span<const double> x) {
  auto c = lattice_coords(l, x);
  for (auto& v : c) v = std::round(v);
  return norm(minus(x, combine(l, c)));
}

bool coset_equal(const Lattice& l, std::span<const double> x, std::span<const double> y) {
  require_dim(l, x.size(), "coset_equal");
  require_dim(l, y.size(), "coset_equal");
  if (is_discrete(l) != Discreteness::Discrete) {
    throw PreconditionError(
        "coset_equal: floating-point membership needs a discrete lattice; use exact coordinates");
  }
  const Vec d = minus(x, y);
  const auto c = lattice_coords(l, d);
  if (norm(minus(d, combine(l, c))) > kLatticeSnapTolerance * (1.0 + norm(d))) return false;
  return std::all_of(c.begin(), c.end(),
                     [](double v) { return std::abs(v - std::round(v)) <= kLatticeSnapTolerance; });
}

bool coset_equal(const Lattice& l, const QVector& x, const QVector& y) {
  require_dim(l, x.size(), "coset_equal");
  require_dim(l, y.size(), "coset_equal");
  const auto a = rational_split(l);
  if (exact_rank(a) != l.rank()) {
    throw PreconditionError("coset_equal: generators are dependent over Q");
  }
  std::vector<Rational> b;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const QuadraticNumber diff = x[i] - y[i];
    if (!diff.is_rational() && !l.exact_generators().empty()) {
      // the common radicand of the lattice must match
      const long r = l.exact_generators()[0][0].radicand();
      if (diff.radicand() != r) throw PreconditionError("coset_equal: foreign irrational");
    }
    b.push_back(diff.rational_part());
    b.push_back(diff.irrational_part());
  }
  const auto sol = exact_solve(a, b);
  if (!sol) return false;
  return std::all_of(sol->begin(), sol->end(),
                     [](const Rational& r) { return denominator(r) == 1; });
}

// ---------------------------------------------------------------------------
// shifts

namespace {

ChartedGroup shifted_chart(const ChartedGroup& g, std::span<const double> h) {
  const int n = g.dim();
  ProgramBuilder bm(2 * n);
  std::vector<Expr> args;
  for (int i = 0; i < 2 * n; ++i) args.push_back(bm.input(i) + h[static_cast<std::size_t>(i % n)]);
  auto prod = bm.call(g.mult(), args);
  for (int i = 0; i < n; ++i) {
    prod[static_cast<std::size_t>(i)] = prod[static_cast<std::size_t>(i)] - 2.0 * h[static_cast<std::size_t>(i)];
  }
  ProgramBuilder bi(n);
  std::vector<Expr> iargs;
  for (int i = 0; i < n; ++i) iargs.push_back(bi.input(i) + h[static_cast<std::size_t>(i)]);
  auto inv = bi.call(g.inv(), iargs);
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)] = inv[static_cast<std::size_t>(i)] + h[static_cast<std::size_t>(i)];
  return ChartedGroup(g.name() + "@shift", n, bm.build(prod), bi.build(inv), g.domain_radius());
}

}  // namespace

ShiftInvarianceReport shift_invariance_check(const ChartedGroup& g, const Lattice& l,
                                             int first_coord,
                                             std::span<const std::vector<long long>> shifts,
                                             double tol, std::uint64_t seed) {
  const int n = g.dim();
  if (first_coord < 0 || first_coord + l.ambient_dim() > n) {
    throw PreconditionError("shift_invariance_check: lattice coordinates outside the chart");
  }
  ShiftInvarianceReport r;
  r.reference = structure_constants(g);
  Rng rng(seed);
  for (const auto& k : shifts) {
    const auto v = l.element(k);
    Vec h(static_cast<std::size_t>(n), 0.0);
    std::copy(v.begin(), v.end(), h.begin() + first_coord);
    const auto shifted = shifted_chart(g, h);
    // a chart that is not periodic loses its identity under the shift
    double dc = std::numeric_limits<double>::infinity();
    try {
      dc = max_abs_diff(structure_constants(shifted), r.reference);
    } catch (const ToleranceError&) {
    }
    double dv = 0.0;
    for (int s = 0; s < 20; ++s) {
      const auto x = random_ball_point(rng, n, g.sample_radius());
      const auto y = random_ball_point(rng, n, g.sample_radius());
      const auto a = shifted.multiply(x, y), b = g.multiply(x, y);
      const auto ia = shifted.inverse(x), ib = g.inverse(x);
      for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        dv = std::max({dv, std::abs(a[ui] - b[ui]), std::abs(ia[ui] - ib[ui])});
      }
    }
    r.constant_diffs.push_back(dc);
    r.value_residuals.push_back(dv);
    r.max_constant_diff = std::max(r.max_constant_diff, dc);
    r.max_value_residual = std::max(r.max_value_residual, dv);
  }
  r.passed = r.max_constant_diff <= tol && r.max_value_residual <= kLatticeSnapTolerance;
  return r;
}

HeisenbergOverTorus heisenberg_over_torus(const QuadratureRule& rule) {
  HeisenbergOverTorus h;
  h.base = make_group("torus2");
  const auto w = symplectic_cocycle(2);
  h.cocycle = vanest_cocycle(h.base, w, rule, "vanest:symplectic");
  h.extension = extend_group(h.base, h.cocycle);
  h.period = period(h.base, w, fundamental_torus_cycle(2))[0];
  h.periods = Lattice(1, std::vector<Vec>{{h.period}});
  return h;
}

ReducedIdentityResult reduced_cocycle_identity(const ChartedGroup& g, const GroupCocycle& f,
                                               const Lattice& l, std::uint64_t seed, int count,
                                               double tol) {
  if (f.target_dim() != l.ambient_dim()) {
    throw PreconditionError("reduced_cocycle_identity: lattice and cocycle values differ in dimension");
  }
  ReducedIdentityResult r;
  const auto d = static_cast<std::size_t>(l.ambient_dim());
  for (const auto& [g0, g1, g2] : sample_triples(g, f, seed, count)) {
    const std::vector<double> terms[4] = {f(g.multiply(g0, g1), g2), f(g0, g1),
                                          f(g0, g.multiply(g1, g2)), f(g1, g2)};
    const double signs[4] = {1.0, 1.0, -1.0, -1.0};
    Vec raw(d, 0.0), red(d, 0.0);
    for (int t = 0; t < 4; ++t) {
      const auto rt = reduce(l, terms[t]);
      if (rt != terms[t]) ++r.wrapped_terms;
      for (std::size_t i = 0; i < d; ++i) {
        raw[i] += signs[t] * terms[t][i];
        red[i] += signs[t] * rt[i];
      }
    }
    r.raw_defect = std::max(r.raw_defect, norm(raw));
    r.reduced_defect = std::max(r.reduced_defect, distance_to_lattice(l, red));
    r.integrality_defect = std::max(r.integrality_defect, distance_to_lattice(l, minus(red, raw)));
  }
  r.passed = r.reduced_defect <= tol && r.integrality_defect <= 1e-12;
  return r;
}

}  // namespace jetlie
