#include "jetlie/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

using Vec = std::vector<double>;

Vec concat(std::span<const double> a, std::span<const double> b) {
  Vec out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

void require_compatible(const ChartedGroup& g, const GroupCocycle& f) {
  if (g.dim() != f.group_dim()) {
    throw PreconditionError("cocycle " + f.name() + " is defined on a group of dimension " +
                            std::to_string(f.group_dim()) + ", not " + std::to_string(g.dim()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupCocycle

GroupCocycle::GroupCocycle(std::string name, int group_dim, SmoothProgram program, double radius)
    : name_(std::move(name)), n_(group_dim), program_(std::move(program)), radius_(radius) {
  if (group_dim < 1) throw PreconditionError("cocycle group dimension must be positive");
  if (program_.arity() != 2 * group_dim) {
    throw PreconditionError("cocycle program must take two group elements");
  }
  if (program_.codim() < 1) throw PreconditionError("cocycle target must be nonzero");
  if (!(radius > 0.0)) throw PreconditionError("cocycle radius must be positive");
}

std::vector<double> GroupCocycle::operator()(std::span<const double> x,
                                             std::span<const double> y) const {
  return program_.eval(concat(x, y));
}

GroupCocycle zero_cocycle(int group_dim, int d) {
  const Vec zeros(static_cast<std::size_t>(d), 0.0);
  return GroupCocycle("zero", group_dim, constant_program(2 * group_dim, zeros),
                      std::numeric_limits<double>::infinity());
}

GroupCocycle linear_combination(double a, const GroupCocycle& f1, double b, const GroupCocycle& f2) {
  if (f1.group_dim() != f2.group_dim() || f1.target_dim() != f2.target_dim()) {
    throw PreconditionError("linear_combination: cocycles differ in shape");
  }
  ProgramBuilder bld(2 * f1.group_dim());
  const auto in = bld.inputs();
  const auto v1 = bld.call(f1.program(), in);
  const auto v2 = bld.call(f2.program(), in);
  std::vector<Expr> out;
  for (std::size_t k = 0; k < v1.size(); ++k) out.push_back(a * v1[k] + b * v2[k]);
  return GroupCocycle("(" + f1.name() + ")+(" + f2.name() + ")", f1.group_dim(), bld.build(out),
                      std::min(f1.radius(), f2.radius()));
}

GroupCocycle coboundary_of(const ChartedGroup& g, const SmoothProgram& h, std::string name) {
  const int n = g.dim();
  if (h.arity() != n) throw PreconditionError("coboundary_of: potential has the wrong arity");
  const auto h0 = h.eval(Vec(static_cast<std::size_t>(n), 0.0));
  if (norm_inf(h0) > kNormalizationTolerance) {
    throw PreconditionError("coboundary_of: potential does not vanish at the identity");
  }
  ProgramBuilder b(2 * n);
  const auto x = b.inputs(0, n), y = b.inputs(n, n);
  const auto xy = b.call(g.mult(), b.inputs());
  const auto hxy = b.call(h, xy), hx = b.call(h, x), hy = b.call(h, y);
  std::vector<Expr> out;
  for (std::size_t k = 0; k < hxy.size(); ++k) out.push_back(hy[k] - hxy[k] + hx[k]);
  if (name.empty()) name = "coboundary";
  return GroupCocycle(std::move(name), n, b.build(out), g.domain_radius());
}

SmoothProgram random_potential(Rng& rng, int n) {
  ProgramBuilder b(n);
  const auto x = b.inputs();
  Expr h = b.constant(0.0);
  for (int i = 0; i < n; ++i) h = h + uniform(rng) * x[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      h = h + uniform(rng) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    }
  }
  h = h + uniform(rng) * sin(x[0]) * x[static_cast<std::size_t>(n - 1)];
  return b.build({h});
}

double cocycle_sample_radius(const ChartedGroup& g, const GroupCocycle& f) {
  return std::min({f.radius(), g.domain_radius(), 4.0}) / 4.0;
}

std::vector<std::array<Vec, 3>> sample_triples(const ChartedGroup& g, const GroupCocycle& f,
                                               std::uint64_t seed, int count) {
  require_compatible(g, f);
  Rng rng(seed);
  const double r = cocycle_sample_radius(g, f);
  const auto n = static_cast<std::size_t>(g.dim());
  std::vector<std::array<Vec, 3>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::array<Vec, 3> t;
    for (auto& p : t) p = random_ball_point(rng, n, r);
    out.push_back(std::move(t));
  }
  return out;
}

double normalization_residual(const ChartedGroup& g, const GroupCocycle& f, std::uint64_t seed,
                              int count) {
  const Vec e(static_cast<std::size_t>(g.dim()), 0.0);
  double worst = 0.0;
  for (const auto& t : sample_triples(g, f, seed, count)) {
    worst = std::max({worst, norm_inf(f(e, t[0])), norm_inf(f(t[0], e))});
  }
  return worst;
}

namespace {

double identity_defect(const ChartedGroup& g, const GroupCocycle& f, const std::array<Vec, 3>& t) {
  const auto l1 = f(g.multiply(t[0], t[1]), t[2]);
  const auto l2 = f(t[0], t[1]);
  const auto r1 = f(t[0], g.multiply(t[1], t[2]));
  const auto r2 = f(t[1], t[2]);
  double worst = 0.0;
  for (std::size_t k = 0; k < l1.size(); ++k) {
    worst = std::max(worst, std::abs((l1[k] + l2[k]) - (r1[k] + r2[k])));
  }
  return worst;
}

}  // namespace

double cocycle_identity_residual(const ChartedGroup& g, const GroupCocycle& f, std::uint64_t seed,
                                 int count) {
  const auto triples = sample_triples(g, f, seed, count);
  std::vector<double> defects(triples.size(), 0.0);
  std::exception_ptr error;
  const auto m = static_cast<long>(triples.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) {
    try {
      defects[static_cast<std::size_t>(i)] = identity_defect(g, f, triples[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(jetlie_cocycle_identity)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return defects.empty() ? 0.0 : *std::max_element(defects.begin(), defects.end());
}

double cocycle_identity_residual_serial(const ChartedGroup& g, const GroupCocycle& f,
                                        std::uint64_t seed, int count) {
  double worst = 0.0;
  for (const auto& t : sample_triples(g, f, seed, count)) worst = std::max(worst, identity_defect(g, f, t));
  return worst;
}

void verify_group_cocycle(const ChartedGroup& g, const GroupCocycle& f, std::uint64_t seed,
                          double identity_tol) {
  const double norm = normalization_residual(g, f, seed);
  if (!(norm <= kNormalizationTolerance)) {
    throw ToleranceError(f.name() + ": normalization residual " + std::to_string(norm));
  }
  const double id = cocycle_identity_residual(g, f, seed);
  if (!(id <= identity_tol)) {
    throw ToleranceError(f.name() + ": cocycle identity residual " + std::to_string(id));
  }
}

// ---------------------------------------------------------------------------
// AlgebraCocycle

AlgebraCocycle::AlgebraCocycle(int dim, int target_dim) : n_(dim), d_(target_dim) {
  if (dim < 0 || target_dim < 1) throw PreconditionError("bad algebra cocycle shape");
  w_.assign(static_cast<std::size_t>(target_dim) * dim * dim, 0.0);
}

AlgebraCocycle AlgebraCocycle::from_tensor(int dim, int target_dim, std::span<const double> tensor) {
  AlgebraCocycle w(dim, target_dim);
  if (tensor.size() != w.w_.size()) throw PreconditionError("cocycle tensor has wrong size");
  Vec v(static_cast<std::size_t>(target_dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      for (int a = 0; a < target_dim; ++a) v[static_cast<std::size_t>(a)] = tensor[w.index(a, i, j)];
      w.set(i, j, v);
    }
  }
  return w;
}

void AlgebraCocycle::set(int i, int j, std::span<const double> value) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) throw PreconditionError("cocycle: bad pair");
  if (static_cast<int>(value.size()) != d_) throw PreconditionError("cocycle: wrong value length");
  for (int a = 0; a < d_; ++a) {
    w_[index(a, i, j)] = value[static_cast<std::size_t>(a)];
    w_[index(a, j, i)] = -value[static_cast<std::size_t>(a)];
  }
}

std::vector<double> AlgebraCocycle::operator()(std::span<const double> x,
                                               std::span<const double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw PreconditionError("cocycle: wrong argument length");
  }
  Vec out(static_cast<std::size_t>(d_), 0.0);
  for (int a = 0; a < d_; ++a) {
    double s = 0.0;
    // pairs i < j, so swapping x and y negates every term exactly
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        s += omega(a, i, j) * (x[ui] * y[uj] - x[uj] * y[ui]);
      }
    }
    out[static_cast<std::size_t>(a)] = s;
  }
  return out;
}

double AlgebraCocycle::cocycle_residual(const LieAlgebraData& g) const {
  if (g.dim() != n_) throw PreconditionError("cocycle and algebra differ in dimension");
  auto e = [this](int i) {
    Vec v(static_cast<std::size_t>(n_), 0.0);
    v[static_cast<std::size_t>(i)] = 1.0;
    return v;
  };
  double worst = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        const auto a = (*this)(g.basis_bracket(i, j), e(k));
        const auto b = (*this)(g.basis_bracket(j, k), e(i));
        const auto c = (*this)(g.basis_bracket(k, i), e(j));
        for (int r = 0; r < d_; ++r) {
          const auto rr = static_cast<std::size_t>(r);
          worst = std::max(worst, std::abs(a[rr] + b[rr] + c[rr]));
        }
      }
    }
  }
  return worst;
}

void AlgebraCocycle::verify(const LieAlgebraData& g, double tol) const {
  const double r = cocycle_residual(g);
  if (!(r <= tol)) {
    throw ToleranceError("algebra cocycle condition fails with residual " + std::to_string(r));
  }
}

double max_abs_diff(const AlgebraCocycle& a, const AlgebraCocycle& b) {
  if (a.dim() != b.dim() || a.target_dim() != b.target_dim()) {
    throw PreconditionError("algebra cocycles differ in shape");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.tensor().size(); ++i) {
    worst = std::max(worst, std::abs(a.tensor()[i] - b.tensor()[i]));
  }
  return worst;
}

AlgebraCocycle symplectic_cocycle(int dim) {
  if (dim < 2) throw ConfigError("the symplectic cocycle needs dimension >= 2");
  AlgebraCocycle w(dim, 1);
  w.set(0, 1, Vec{1.0});
  return w;
}

AlgebraCocycle algebra_coboundary(const LieAlgebraData& g, std::span<const double> b) {
  const int n = g.dim();
  if (static_cast<int>(b.size()) != n) throw PreconditionError("coboundary functional has wrong length");
  AlgebraCocycle w(n, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += b[static_cast<std::size_t>(k)] * g.c(k, i, j);
      w.set(i, j, Vec{s});
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Extensions

ChartedGroup extend_group(const ChartedGroup& g, const GroupCocycle& f) {
  require_compatible(g, f);
  const int n = g.dim(), d = f.target_dim();
  ProgramBuilder bm(2 * (n + d));
  const auto x = bm.inputs(0, n), a = bm.inputs(n, d);
  const auto y = bm.inputs(n + d, n), b = bm.inputs(2 * n + d, d);
  std::vector<Expr> xy(x);
  xy.insert(xy.end(), y.begin(), y.end());
  auto out = bm.call(g.mult(), xy);
  const auto fxy = bm.call(f.program(), xy);
  for (std::size_t k = 0; k < static_cast<std::size_t>(d); ++k) out.push_back(a[k] + b[k] + fxy[k]);

  ProgramBuilder bi(n + d);
  const auto gx = bi.inputs(0, n), ga = bi.inputs(n, d);
  auto inv = bi.call(g.inv(), gx);
  std::vector<Expr> pair(gx);
  pair.insert(pair.end(), inv.begin(), inv.end());
  const auto fg = bi.call(f.program(), pair);
  for (std::size_t k = 0; k < static_cast<std::size_t>(d); ++k) inv.push_back(-ga[k] - fg[k]);

  ChartedGroup ext(g.name() + "+" + f.name(), n + d, bm.build(out), bi.build(inv),
                   std::min(f.radius(), g.domain_radius()) / 2.0);
  Rng rng(kDefaultSeed);
  verify_group_axioms(ext, rng, 50);
  return ext;
}

LieAlgebraData extend_algebra(const LieAlgebraData& g, const AlgebraCocycle& w) {
  const int n = g.dim(), d = w.target_dim();
  if (w.dim() != n) throw PreconditionError("extend_algebra: cocycle and algebra differ in dimension");
  w.verify(g);
  LieAlgebraData out(n + d);
  Vec col(static_cast<std::size_t>(n + d));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = g.c(k, i, j);
      for (int a = 0; a < d; ++a) col[static_cast<std::size_t>(n + a)] = w.omega(a, i, j);
      out.set_bracket(i, j, col);
    }
  }
  out.verify_jacobi();
  return out;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

/// D1D2 f(e_i, e_j), one value per target component.
Vec mixed_entry(const GroupCocycle& f, int i, int j, double lambda_tol) {
  const int n = f.group_dim();
  std::vector<JetScalar> in;
  in.reserve(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) in.push_back(JetScalar::variable(0.0, 2, 2, k == i ? 1.0 : 0.0));
  for (int k = 0; k < n; ++k) in.push_back(JetScalar::variable(0.0, 1, 2, k == j ? 1.0 : 0.0));
  const auto jet = f.program().eval(JetVector(std::move(in)));
  const double first = std::max(norm_inf(jet.block(1)), norm_inf(jet.block(2)));
  if (!(first <= lambda_tol)) {
    throw ToleranceError(f.name() + ": mixed jet at the identity has a first-order block of size " +
                         std::to_string(first) + " (not in the image of the vertical lift)");
  }
  return jet.block(3);
}

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<double> assemble_d2(const GroupCocycle& f, const std::vector<Vec>& entries) {
  const int n = f.group_dim(), d = f.target_dim();
  std::vector<double> d2(static_cast<std::size_t>(d * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& v = entries[static_cast<std::size_t>(i * n + j)];
      for (int a = 0; a < d; ++a) d2[static_cast<std::size_t>((a * n + i) * n + j)] = v[static_cast<std::size_t>(a)];
    }
  }
  return d2;
}

AlgebraCocycle antisymmetrize(const GroupCocycle& f, const std::vector<double>& d2) {
  const int n = f.group_dim(), d = f.target_dim();
  AlgebraCocycle w(n, d);
  Vec v(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int a = 0; a < d; ++a) {
        v[static_cast<std::size_t>(a)] = d2[static_cast<std::size_t>((a * n + i) * n + j)] -
                                         d2[static_cast<std::size_t>((a * n + j) * n + i)];
      }
      w.set(i, j, v);
    }
  }
  return w;
}

}  // namespace

std::vector<double> mixed_second_derivative(const GroupCocycle& f, double lambda_tol) {
  const auto pairs = all_pairs(f.group_dim());
  std::vector<Vec> entries;
  entries.reserve(pairs.size());
  for (const auto& [i, j] : pairs) entries.push_back(mixed_entry(f, i, j, lambda_tol));
  return assemble_d2(f, entries);
}

AlgebraCocycle differentiate_cocycle(const ChartedGroup& g, const GroupCocycle& f, double lambda_tol) {
  require_compatible(g, f);
  const auto pairs = all_pairs(f.group_dim());
  std::vector<Vec> entries(pairs.size());
  std::exception_ptr error;
  const auto m = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(static)
  for (long p = 0; p < m; ++p) {
    try {
      const auto& [i, j] = pairs[static_cast<std::size_t>(p)];
      entries[static_cast<std::size_t>(p)] = mixed_entry(f, i, j, lambda_tol);
    } catch (...) {
#pragma omp critical(jetlie_differentiate)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return antisymmetrize(f, assemble_d2(f, entries));
}

AlgebraCocycle differentiate_cocycle_serial(const ChartedGroup& g, const GroupCocycle& f,
                                            double lambda_tol) {
  require_compatible(g, f);
  return antisymmetrize(f, mixed_second_derivative(f, lambda_tol));
}

ExtensionComparison verify_extension_differentiation(const ChartedGroup& g, const GroupCocycle& f,
                                                     double tol) {
  ExtensionComparison r;
  r.from_group = structure_constants(extend_group(g, f));
  r.from_algebra = extend_algebra(structure_constants(g), differentiate_cocycle(g, f));
  r.max_diff = max_abs_diff(r.from_group, r.from_algebra);
  const int n = r.from_group.dim();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (std::abs(r.from_group.c(k, i, j) - r.from_algebra.c(k, i, j)) > tol) {
          r.mismatches.push_back({k, i, j});
        }
      }
    }
  }
  r.passed = r.max_diff <= tol;
  return r;
}

double cohomology_invariance_residual(const ChartedGroup& g, const GroupCocycle& f,
                                      const SmoothProgram& h) {
  const int n = g.dim(), d = f.target_dim();
  if (h.codim() != d) throw PreconditionError("potential and cocycle differ in target dimension");
  const auto shifted = linear_combination(1.0, f, 1.0, coboundary_of(g, h));
  const auto c1 = structure_constants(extend_group(g, f));
  const auto c2 = structure_constants(extend_group(g, shifted));
  const auto dh = jacobian(h, Vec(static_cast<std::size_t>(n), 0.0));
  const int m = n + d;
  Vec p(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i * m + i)] = 1.0;
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < n; ++i) {
      p[static_cast<std::size_t>((n + a) * m + i)] = -dh[static_cast<std::size_t>(a * n + i)];
    }
  }
  return max_abs_diff(change_basis(c1, p), c2);
}

}  // namespace jetlie
