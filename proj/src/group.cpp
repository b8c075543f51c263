#include "jetlie/group.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <exception>
#include <string>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

using Vec = std::vector<double>;
using cd = std::complex<double>;

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double diff_inf(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vec concat(std::span<const double> a, std::span<const double> b) {
  Vec out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_dim(const ChartedGroup& g, std::span<const double> v, const char* what) {
  if (static_cast<int>(v.size()) != g.dim()) {
    throw PreconditionError(std::string(what) + ": expected a vector of length " +
                            std::to_string(g.dim()));
  }
}

SmoothProgram build_conjugation(const SmoothProgram& mult, const SmoothProgram& inv, int n) {
  ProgramBuilder b(2 * n);
  const auto gx = b.inputs(0, n);
  const auto hx = b.inputs(n, n);
  std::vector<Expr> gh(gx);
  gh.insert(gh.end(), hx.begin(), hx.end());
  auto prod = b.call(mult, gh);
  const auto gi = b.call(inv, gx);
  prod.insert(prod.end(), gi.begin(), gi.end());
  return b.build(b.call(mult, prod));
}

std::array<Expr, 3> cross(const std::vector<Expr>& x, const std::vector<Expr>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

Expr dot(const std::vector<Expr>& x, const std::vector<Expr>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

Eigen::MatrixXcd real_matrix(const Eigen::MatrixXd& m) { return m.cast<cd>(); }

}  // namespace

// ---------------------------------------------------------------------------
// ChartedGroup

ChartedGroup::ChartedGroup(std::string name, int dim, SmoothProgram mult, SmoothProgram inv,
                           double domain_radius, std::optional<MatrixOracle> oracle)
    : name_(std::move(name)),
      dim_(dim),
      mult_(std::move(mult)),
      inv_(std::move(inv)),
      radius_(domain_radius),
      oracle_(std::move(oracle)) {
  if (dim < 1) throw PreconditionError("group dimension must be positive");
  if (mult_.arity() != 2 * dim || mult_.codim() != dim) {
    throw PreconditionError("multiplication program must map R^2n to R^n");
  }
  if (inv_.arity() != dim || inv_.codim() != dim) {
    throw PreconditionError("inversion program must map R^n to R^n");
  }
  if (!(domain_radius > 0.0)) throw PreconditionError("domain radius must be positive");
  if (oracle_ && static_cast<int>(oracle_->basis.size()) != dim) {
    throw PreconditionError("oracle basis size differs from group dimension");
  }
  conj_ = build_conjugation(mult_, inv_, dim);
}

double ChartedGroup::sample_radius() const noexcept { return std::min(radius_, 4.0) / 4.0; }

std::vector<double> ChartedGroup::multiply(std::span<const double> x,
                                           std::span<const double> y) const {
  require_dim(*this, x, "multiply");
  require_dim(*this, y, "multiply");
  return mult_.eval(concat(x, y));
}

std::vector<double> ChartedGroup::inverse(std::span<const double> x) const {
  require_dim(*this, x, "inverse");
  return inv_.eval(x);
}

GroupAxiomResiduals group_axiom_residuals(const ChartedGroup& g, Rng& rng, int samples) {
  GroupAxiomResiduals r;
  const auto n = static_cast<std::size_t>(g.dim());
  const Vec zero(n, 0.0);
  for (int s = 0; s < samples; ++s) {
    const auto x = random_ball_point(rng, n, g.sample_radius());
    const auto y = random_ball_point(rng, n, g.sample_radius());
    const auto z = random_ball_point(rng, n, g.sample_radius());
    r.right_identity = std::max(r.right_identity, diff_inf(g.multiply(x, zero), x));
    r.left_identity = std::max(r.left_identity, diff_inf(g.multiply(zero, y), y));
    const auto xi = g.inverse(x);
    r.right_inverse = std::max(r.right_inverse, norm_inf(g.multiply(x, xi)));
    r.left_inverse = std::max(r.left_inverse, norm_inf(g.multiply(xi, x)));
    const auto l = g.multiply(g.multiply(x, y), z);
    const auto rr = g.multiply(x, g.multiply(y, z));
    r.associativity = std::max(r.associativity, diff_inf(l, rr));
  }
  return r;
}

void verify_group_axioms(const ChartedGroup& g, Rng& rng, int samples) {
  const auto r = group_axiom_residuals(g, rng, samples);
  if (r.right_identity > 1e-12 || r.left_identity > 1e-12) {
    throw ToleranceError(g.name() + ": identity axiom residual " +
                         std::to_string(std::max(r.right_identity, r.left_identity)));
  }
  if (r.right_inverse > 1e-10 || r.left_inverse > 1e-10) {
    throw ToleranceError(g.name() + ": inverse axiom residual " +
                         std::to_string(std::max(r.right_inverse, r.left_inverse)));
  }
}

// ---------------------------------------------------------------------------
// Catalog

ChartedGroup abelian_group(int n, std::string name) {
  if (n < 1) throw ConfigError("abelian group dimension must be positive");
  ProgramBuilder bm(2 * n);
  std::vector<Expr> sum;
  for (int i = 0; i < n; ++i) sum.push_back(bm.input(i) + bm.input(n + i));
  ProgramBuilder bi(n);
  std::vector<Expr> neg;
  for (int i = 0; i < n; ++i) neg.push_back(-bi.input(i));
  MatrixOracle o;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
    e(i, i) = 1.0;
    o.basis.push_back(e);
  }
  o.chart_to_matrix = [n](std::span<const double> x) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = std::exp(x[static_cast<std::size_t>(i)]);
    return m;
  };
  if (name.empty()) name = "rn:" + std::to_string(n);
  return ChartedGroup(std::move(name), n, bm.build(sum), bi.build(neg),
                      std::numeric_limits<double>::infinity(), std::move(o));
}

ChartedGroup so3_group() {
  // Rotation vector chart x = 2 tan(theta/2) n, composed through the
  // quaternion product of (1, x/2) / |(1, x/2)|.
  ProgramBuilder bm(6);
  const auto x = bm.inputs(0, 3), y = bm.inputs(3, 3);
  const auto c = cross(x, y);
  const auto den = 1.0 - 0.25 * dot(x, y);
  std::vector<Expr> out;
  for (std::size_t i = 0; i < 3; ++i) out.push_back((x[i] + y[i] + 0.5 * c[i]) / den);
  ProgramBuilder bi(3);
  std::vector<Expr> neg;
  for (int i = 0; i < 3; ++i) neg.push_back(-bi.input(i));

  MatrixOracle o;
  for (int a = 0; a < 3; ++a) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(3, 3);
    // (L_a)_ij = -eps_aij
    const int i = (a + 1) % 3, j = (a + 2) % 3;
    l(i, j) = -1.0;
    l(j, i) = 1.0;
    o.basis.push_back(real_matrix(l));
  }
  o.chart_to_matrix = [](std::span<const double> xv) {
    const double s = std::sqrt(1.0 + 0.25 * (xv[0] * xv[0] + xv[1] * xv[1] + xv[2] * xv[2]));
    const double a = 1.0 / s;
    const Eigen::Vector3d v(0.5 * xv[0] / s, 0.5 * xv[1] / s, 0.5 * xv[2] / s);
    Eigen::Matrix3d vx;
    vx << 0, -v(2), v(1), v(2), 0, -v(0), -v(1), v(0), 0;
    const Eigen::Matrix3d r = (a * a - v.squaredNorm()) * Eigen::Matrix3d::Identity() +
                              2.0 * v * v.transpose() + 2.0 * a * vx;
    return real_matrix(r);
  };
  return ChartedGroup("so3", 3, bm.build(out), bi.build(neg), 1.5, std::move(o));
}

ChartedGroup su2_group() {
  // x is twice the vector part of a unit quaternion with positive scalar part.
  ProgramBuilder bm(6);
  const auto x = bm.inputs(0, 3), y = bm.inputs(3, 3);
  const auto ax = sqrt(1.0 - 0.25 * dot(x, x));
  const auto ay = sqrt(1.0 - 0.25 * dot(y, y));
  const auto c = cross(x, y);
  std::vector<Expr> out;
  for (std::size_t i = 0; i < 3; ++i) out.push_back(ax * y[i] + ay * x[i] + 0.5 * c[i]);
  ProgramBuilder bi(3);
  std::vector<Expr> neg;
  for (int i = 0; i < 3; ++i) neg.push_back(-bi.input(i));

  const cd I(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  MatrixOracle o;
  for (const auto& s : {s1, s2, s3}) o.basis.push_back(-0.5 * I * s);
  o.chart_to_matrix = [s1, s2, s3, I](std::span<const double> xv) {
    const double a = std::sqrt(1.0 - 0.25 * (xv[0] * xv[0] + xv[1] * xv[1] + xv[2] * xv[2]));
    Eigen::MatrixXcd m = a * Eigen::Matrix2cd::Identity() -
                         0.5 * I * (xv[0] * s1 + xv[1] * s2 + xv[2] * s3);
    return m;
  };
  return ChartedGroup("su2", 3, bm.build(out), bi.build(neg), 1.4, std::move(o));
}

ChartedGroup heisenberg_group() {
  // [[1, x, z], [0, 1, y], [0, 0, 1]]
  ProgramBuilder bm(6);
  const auto a = bm.inputs(0, 3), b = bm.inputs(3, 3);
  const std::vector<Expr> out{a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
  ProgramBuilder bi(3);
  const auto x = bi.inputs();
  const std::vector<Expr> inv{-x[0], -x[1], x[0] * x[1] - x[2]};
  MatrixOracle o;
  for (auto [r, c] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(3, 3);
    e(r, c) = 1.0;
    o.basis.push_back(real_matrix(e));
  }
  o.chart_to_matrix = [](std::span<const double> v) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
    m(0, 1) = v[0];
    m(1, 2) = v[1];
    m(0, 2) = v[2];
    return real_matrix(m);
  };
  return ChartedGroup("heisenberg3", 3, bm.build(out), bi.build(inv),
                      std::numeric_limits<double>::infinity(), std::move(o));
}

ChartedGroup affine_group() {
  // [[e^p, q], [0, 1]]
  ProgramBuilder bm(4);
  const auto p = bm.input(0), q = bm.input(1), p2 = bm.input(2), q2 = bm.input(3);
  const std::vector<Expr> out{p + p2, q + exp(p) * q2};
  ProgramBuilder bi(2);
  const std::vector<Expr> inv{-bi.input(0), -(exp(-bi.input(0)) * bi.input(1))};
  MatrixOracle o;
  Eigen::MatrixXd e11 = Eigen::MatrixXd::Zero(2, 2), e12 = Eigen::MatrixXd::Zero(2, 2);
  e11(0, 0) = 1.0;
  e12(0, 1) = 1.0;
  o.basis = {real_matrix(e11), real_matrix(e12)};
  o.chart_to_matrix = [](std::span<const double> v) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
    m(0, 0) = std::exp(v[0]);
    m(0, 1) = v[1];
    return real_matrix(m);
  };
  return ChartedGroup("affine1", 2, bm.build(out), bi.build(inv),
                      std::numeric_limits<double>::infinity(), std::move(o));
}

ChartedGroup make_group(const std::string& name) {
  if (name == "so3") return so3_group();
  if (name == "su2") return su2_group();
  if (name == "heisenberg3") return heisenberg_group();
  if (name == "affine1") return affine_group();
  if (name == "torus2") return abelian_group(2, "torus2");
  if (name.rfind("rn:", 0) == 0) {
    const std::string digits = name.substr(3);
    if (!digits.empty() && digits.size() <= 2 &&
        std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      const int n = std::stoi(digits);
      if (n >= 1) return abelian_group(n);
    }
    throw ConfigError("bad abelian group name '" + name + "' (expected rn:<n>, 1 <= n <= 99)");
  }
  throw ConfigError("unknown group '" + name + "'");
}

std::vector<std::string> group_catalog() {
  return {"so3", "su2", "heisenberg3", "affine1", "torus2", "rn:<n>"};
}

// ---------------------------------------------------------------------------
// Brackets

SmoothProgram left_invariant_field(const ChartedGroup& g, std::span<const double> v) {
  require_dim(g, v, "left_invariant_field");
  const int n = g.dim();
  const auto t2 = partial_tangent(g.mult(), 2, {n, n});
  ProgramBuilder b(n);
  std::vector<Expr> args = b.inputs();
  for (int i = 0; i < n; ++i) args.push_back(b.constant(0.0));
  for (double vi : v) args.push_back(b.constant(vi));
  return b.build(b.call(t2, args));
}

JetVector delta_jet(const ChartedGroup& g, std::span<const double> v, std::span<const double> w) {
  require_dim(g, v, "delta_jet");
  require_dim(g, w, "delta_jet");
  const Vec e(static_cast<std::size_t>(g.dim()), 0.0);
  // Tw o v = (e, w, v, DW v) and Tv o w = (e, v, w, DV w)
  const auto tw_v = from_tangent_coordinates(left_invariant_field(g, w).eval(seed(e, v, 1, 1)));
  const auto tv_w = from_tangent_coordinates(left_invariant_field(g, v).eval(seed(e, w, 1, 1)));
  try {
    return fiber_sub(tw_v, flip(tv_w), 2);
  } catch (const PreconditionError&) {
    // both terms must lie over (e, w); otherwise the chart is inconsistent
    throw ToleranceError("delta_jet: the two iterated tangents lie in different fibers");
  }
}

JetVector conjugation_jet(const ChartedGroup& g, std::span<const double> v,
                          std::span<const double> w) {
  require_dim(g, v, "conjugation_jet");
  require_dim(g, w, "conjugation_jet");
  std::vector<JetScalar> in;
  in.reserve(2 * v.size());
  for (double vi : v) in.push_back(JetScalar::variable(0.0, 2, 2, vi));
  for (double wi : w) in.push_back(JetScalar::variable(0.0, 1, 2, wi));
  return g.conjugation().eval(JetVector(std::move(in)));
}

double shape_residual(const JetVector& j, std::span<const double> w) {
  if (j.order() != 2 || j.dim() != w.size()) throw PreconditionError("shape_residual: bad jet");
  double r = 0.0;
  for (std::size_t i = 0; i < j.dim(); ++i) {
    r = std::max({r, std::abs(j[i][0]), std::abs(j[i][1] - w[i]), std::abs(j[i][2])});
  }
  return r;
}

namespace {

std::vector<double> read_bracket(const JetVector& j, std::span<const double> w, double tol,
                                 const char* method) {
  const double r = shape_residual(j, w);
  if (!(r <= tol)) {
    throw ToleranceError(std::string(method) + ": jet misses the (e, w, 0, b) shape by " +
                         std::to_string(r));
  }
  return j.block(3);
}

}  // namespace

std::vector<double> bracket_delta(const ChartedGroup& g, std::span<const double> v,
                                  std::span<const double> w, double shape_tol) {
  return read_bracket(delta_jet(g, v, w), w, shape_tol, "bracket_delta");
}

std::vector<double> bracket_conjugation(const ChartedGroup& g, std::span<const double> v,
                                        std::span<const double> w, double shape_tol) {
  return read_bracket(conjugation_jet(g, v, w), w, shape_tol, "bracket_conjugation");
}

namespace {

std::vector<double> basis_pair_bracket(const ChartedGroup& g, BracketMethod method, int i, int j) {
  Vec ei(static_cast<std::size_t>(g.dim()), 0.0), ej(ei);
  ei[static_cast<std::size_t>(i)] = 1.0;
  ej[static_cast<std::size_t>(j)] = 1.0;
  return method == BracketMethod::Delta ? bracket_delta(g, ei, ej) : bracket_conjugation(g, ei, ej);
}

std::vector<std::pair<int, int>> basis_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

LieAlgebraData assemble(int n, const std::vector<std::pair<int, int>>& pairs,
                        const std::vector<Vec>& values, double jacobi_tol) {
  LieAlgebraData out(n);
  for (std::size_t p = 0; p < pairs.size(); ++p) out.set_bracket(pairs[p].first, pairs[p].second, values[p]);
  out.verify_jacobi(jacobi_tol);
  return out;
}

}  // namespace

LieAlgebraData structure_constants(const ChartedGroup& g, BracketMethod method, double jacobi_tol) {
  const auto pairs = basis_pairs(g.dim());
  std::vector<Vec> values(pairs.size());
  std::exception_ptr error;
  const auto count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(static)
  for (long p = 0; p < count; ++p) {
    try {
      const auto& [i, j] = pairs[static_cast<std::size_t>(p)];
      values[static_cast<std::size_t>(p)] = basis_pair_bracket(g, method, i, j);
    } catch (...) {
#pragma omp critical(jetlie_structure_constants)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return assemble(g.dim(), pairs, values, jacobi_tol);
}

LieAlgebraData structure_constants_serial(const ChartedGroup& g, BracketMethod method,
                                          double jacobi_tol) {
  const auto pairs = basis_pairs(g.dim());
  std::vector<Vec> values;
  values.reserve(pairs.size());
  for (const auto& [i, j] : pairs) values.push_back(basis_pair_bracket(g, method, i, j));
  return assemble(g.dim(), pairs, values, jacobi_tol);
}

// ---------------------------------------------------------------------------
// Matrix oracle

namespace {

Eigen::MatrixXcd combine(const MatrixOracle& o, std::span<const double> v) {
  if (v.size() != o.basis.size()) throw PreconditionError("oracle: wrong vector length");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(o.basis[0].rows(), o.basis[0].cols());
  for (std::size_t i = 0; i < v.size(); ++i) m += v[i] * o.basis[i];
  return m;
}

}  // namespace

std::vector<double> oracle_bracket(const MatrixOracle& o, std::span<const double> v,
                                   std::span<const double> w) {
  const Eigen::MatrixXcd a = combine(o, v), b = combine(o, w);
  const Eigen::MatrixXcd c = a * b - b * a;
  const auto entries = c.size();
  const auto n = static_cast<Eigen::Index>(o.basis.size());
  Eigen::MatrixXd sys(2 * entries, n);
  Eigen::VectorXd rhs(2 * entries);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& bk = o.basis[static_cast<std::size_t>(k)];
    for (Eigen::Index e = 0; e < entries; ++e) {
      sys(e, k) = bk(e).real();
      sys(entries + e, k) = bk(e).imag();
    }
  }
  for (Eigen::Index e = 0; e < entries; ++e) {
    rhs(e) = c(e).real();
    rhs(entries + e) = c(e).imag();
  }
  const Eigen::VectorXd coeffs = sys.colPivHouseholderQr().solve(rhs);
  const double resid = (sys * coeffs - rhs).lpNorm<Eigen::Infinity>();
  if (resid > 1e-12 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())) {
    throw ToleranceError("oracle commutator leaves the span of the basis (residual " +
                         std::to_string(resid) + ")");
  }
  return Vec(coeffs.data(), coeffs.data() + coeffs.size());
}

LieAlgebraData oracle_structure_constants(const MatrixOracle& o) {
  const int n = static_cast<int>(o.basis.size());
  LieAlgebraData out(n);
  for (const auto& [i, j] : basis_pairs(n)) {
    Vec ei(static_cast<std::size_t>(n), 0.0), ej(ei);
    ei[static_cast<std::size_t>(i)] = 1.0;
    ej[static_cast<std::size_t>(j)] = 1.0;
    out.set_bracket(i, j, oracle_bracket(o, ei, ej));
  }
  return out;
}

double oracle_homomorphism_residual(const ChartedGroup& g, Rng& rng, int samples) {
  if (!g.oracle()) throw PreconditionError(g.name() + " has no matrix oracle");
  const auto& phi = g.oracle()->chart_to_matrix;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto x = random_ball_point(rng, static_cast<std::size_t>(g.dim()), g.sample_radius());
    const auto y = random_ball_point(rng, static_cast<std::size_t>(g.dim()), g.sample_radius());
    const Eigen::MatrixXcd d = phi(g.multiply(x, y)) - phi(x) * phi(y);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Mixed partials

MixedPartialResult mixed_partial_check(const SmoothProgram& f, InputSplit split,
                                       std::span<const double> x0, std::span<const double> y0,
                                       std::span<const double> v, std::span<const double> w,
                                       double tol) {
  const auto n1 = static_cast<std::size_t>(split.first);
  const auto n2 = static_cast<std::size_t>(split.second);
  if (split.first + split.second != f.arity() || x0.size() != n1 || v.size() != n1 ||
      y0.size() != n2 || w.size() != n2) {
    throw PreconditionError("mixed_partial_check: split does not match the inputs");
  }
  const auto base = f.eval(concat(x0, y0));
  Rng rng(kDefaultSeed);
  for (int s = 0; s < 8; ++s) {
    auto xs = random_vector(rng, n1, 0.25);
    auto ys = random_vector(rng, n2, 0.25);
    for (std::size_t i = 0; i < n1; ++i) xs[i] += x0[i];
    for (std::size_t i = 0; i < n2; ++i) ys[i] += y0[i];
    const auto fx = f.eval(concat(xs, y0));
    const auto fy = f.eval(concat(x0, ys));
    for (std::size_t k = 0; k < base.size(); ++k) {
      const double scale = std::max(1.0, std::abs(base[k]));
      if (std::abs(fx[k] - base[k]) > 1e-12 * scale) {
        throw PreconditionError("mixed_partial_check: f(., y0) is not constant near x0");
      }
      if (std::abs(fy[k] - base[k]) > 1e-12 * scale) {
        throw PreconditionError("mixed_partial_check: f(x0, .) is not constant near y0");
      }
    }
  }
  auto jet_at = [&](int xslot, int yslot) {
    std::vector<JetScalar> in;
    for (std::size_t i = 0; i < n1; ++i) in.push_back(JetScalar::variable(x0[i], xslot, 2, v[i]));
    for (std::size_t i = 0; i < n2; ++i) in.push_back(JetScalar::variable(y0[i], yslot, 2, w[i]));
    return f.eval(JetVector(std::move(in)));
  };
  MixedPartialResult r;
  r.t12 = jet_at(2, 1);
  r.t21 = jet_at(1, 2);
  r.difference = max_abs_diff(r.t12, r.t21);
  for (const auto* j : {&r.t12, &r.t21}) {
    for (unsigned m : {1u, 2u}) r.lambda_residual = std::max(r.lambda_residual, norm_inf(j->block(m)));
  }
  r.passed = r.difference <= tol && r.lambda_residual <= tol;
  return r;
}

}  // namespace jetlie
