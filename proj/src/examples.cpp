#include "jetlie/examples.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "jetlie/error.hpp"

namespace jetlie {

using Coeff = FourierLoopElement::Coeff;
using cd = std::complex<double>;

namespace {

Coeff cross(const Coeff& a, const Coeff& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

cd dot(const Coeff& a, const Coeff& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool is_zero(const Coeff& a) {
  return std::all_of(a.begin(), a.end(), [](const cd& z) { return z == cd(0.0, 0.0); });
}

std::map<int, Coeff> raw_bracket(const FourierLoopElement& f, const FourierLoopElement& g) {
  std::map<int, Coeff> out;
  for (const auto& [k, a] : f.coefficients()) {
    for (const auto& [l, b] : g.coefficients()) {
      auto& slot = out[k + l];
      const Coeff c = cross(a, b);
      for (int i = 0; i < 3; ++i) slot[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

// -(1/2) sum_l 2 pi i l c_{-l} . d_l
double raw_cocycle(const FourierLoopElement& f, const FourierLoopElement& g) {
  cd sum = 0.0;
  for (const auto& [l, d] : g.coefficients()) {
    if (l == 0) continue;
    const auto it = f.coefficients().find(-l);
    if (it == f.coefficients().end()) continue;
    sum += cd(0.0, 2.0 * std::numbers::pi * l) * dot(it->second, d);
  }
  return -0.5 * sum.real();
}

}  // namespace

// ---------------------------------------------------------------------------
// loops

FourierLoopElement::FourierLoopElement(std::map<int, Coeff> coefficients) {
  for (auto& [k, c] : coefficients) {
    if (!is_zero(c)) c_.emplace(k, c);
  }
  const double r = reality_residual();
  if (!(r <= kRealityTolerance * std::max(1.0, sup_norm()))) {
    throw PreconditionError("FourierLoopElement: coefficients do not describe a real loop");
  }
}

FourierLoopElement FourierLoopElement::constant(const std::array<double, 3>& value) {
  return FourierLoopElement({{0, Coeff{value[0], value[1], value[2]}}});
}

FourierLoopElement FourierLoopElement::random(Rng& rng, int max_frequency) {
  if (max_frequency < 0) throw PreconditionError("FourierLoopElement::random: negative frequency");
  std::map<int, Coeff> c;
  c[0] = Coeff{uniform(rng), uniform(rng), uniform(rng)};
  for (int k = 1; k <= max_frequency; ++k) {
    Coeff a;
    for (auto& z : a) z = cd(uniform(rng), uniform(rng));
    Coeff b;
    for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(i)] = std::conj(a[static_cast<std::size_t>(i)]);
    c[k] = a;
    c[-k] = b;
  }
  return FourierLoopElement(std::move(c));
}

int FourierLoopElement::degree() const noexcept {
  int d = 0;
  for (const auto& [k, c] : c_) d = std::max(d, std::abs(k));
  return d;
}

double FourierLoopElement::reality_residual() const {
  double worst = 0.0;
  for (const auto& [k, c] : c_) {
    const auto it = c_.find(-k);
    for (int i = 0; i < 3; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const cd mirror = it == c_.end() ? cd(0.0, 0.0) : std::conj(it->second[ui]);
      worst = std::max(worst, std::abs(c[ui] - mirror));
    }
  }
  return worst;
}

std::array<double, 3> FourierLoopElement::operator()(double t) const {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (const auto& [k, c] : c_) {
    const cd e = std::polar(1.0, 2.0 * std::numbers::pi * k * t);
    for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] += (c[static_cast<std::size_t>(i)] * e).real();
  }
  return out;
}

FourierLoopElement FourierLoopElement::derivative() const {
  std::map<int, Coeff> d;
  for (const auto& [k, c] : c_) {
    if (k == 0) continue;
    Coeff dc;
    for (int i = 0; i < 3; ++i) {
      dc[static_cast<std::size_t>(i)] = cd(0.0, 2.0 * std::numbers::pi * k) * c[static_cast<std::size_t>(i)];
    }
    d[k] = dc;
  }
  return FourierLoopElement(std::move(d));
}

double FourierLoopElement::sup_norm() const {
  double m = 0.0;
  for (const auto& [k, c] : c_) {
    for (const auto& z : c) m = std::max(m, std::abs(z));
  }
  return m;
}

namespace {

FourierLoopElement combine(const FourierLoopElement& f, double a, const FourierLoopElement& g,
                           double b) {
  std::map<int, Coeff> out;
  for (const auto& [k, c] : f.coefficients()) {
    for (int i = 0; i < 3; ++i) out[k][static_cast<std::size_t>(i)] += a * c[static_cast<std::size_t>(i)];
  }
  for (const auto& [k, c] : g.coefficients()) {
    for (int i = 0; i < 3; ++i) out[k][static_cast<std::size_t>(i)] += b * c[static_cast<std::size_t>(i)];
  }
  return FourierLoopElement(std::move(out));
}

}  // namespace

FourierLoopElement operator+(const FourierLoopElement& f, const FourierLoopElement& g) {
  return combine(f, 1.0, g, 1.0);
}

FourierLoopElement operator-(const FourierLoopElement& f, const FourierLoopElement& g) {
  return combine(f, 1.0, g, -1.0);
}

FourierLoopElement operator*(double s, const FourierLoopElement& f) {
  return combine(f, s, FourierLoopElement(), 0.0);
}

FourierLoopElement loop_bracket(const FourierLoopElement& f, const FourierLoopElement& g) {
  auto fg = raw_bracket(f, g);
  const auto gf = raw_bracket(g, f);
  for (auto& [k, c] : fg) {
    const Coeff& d = gf.at(k);
    for (int i = 0; i < 3; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      c[ui] = 0.5 * (c[ui] - d[ui]);
    }
  }
  return FourierLoopElement(std::move(fg));
}

double ek_cocycle(const FourierLoopElement& f, const FourierLoopElement& g) {
  return 0.5 * (raw_cocycle(f, g) - raw_cocycle(g, f));
}

double ek_cocycle_trapezoid(const FourierLoopElement& f, const FourierLoopElement& g, int points) {
  if (points < 1) throw PreconditionError("ek_cocycle_trapezoid: need a positive point count");
  const auto dg = g.derivative();
  double sum = 0.0;
  for (int j = 0; j < points; ++j) {
    const double t = static_cast<double>(j) / points;
    const auto a = f(t), b = dg(t);
    sum += a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  }
  return -0.5 * sum / points;
}

EkExtensionReport ek_extension_check(int max_frequency, int samples, std::uint64_t seed,
                                     double tol) {
  if (max_frequency < 0) throw PreconditionError("ek_extension_check: negative frequency");
  EkExtensionReport r;
  r.max_frequency = max_frequency;
  r.samples = samples;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const auto f = FourierLoopElement::random(rng, max_frequency);
    const auto g = FourierLoopElement::random(rng, max_frequency);
    const auto h = FourierLoopElement::random(rng, max_frequency);
    const auto fg = loop_bracket(f, g), gh = loop_bracket(g, h), hf = loop_bracket(h, f);

    r.antisymmetry_residual = std::max({r.antisymmetry_residual, (fg + loop_bracket(g, f)).sup_norm(),
                                        std::abs(ek_cocycle(f, g) + ek_cocycle(g, f))});
    const auto fgh = loop_bracket(fg, h);
    r.max_degree_seen = std::max(r.max_degree_seen, fgh.degree());
    const double loop = (fgh + loop_bracket(gh, f) + loop_bracket(hf, g)).sup_norm();
    const double central = std::abs(ek_cocycle(fg, h) + ek_cocycle(gh, f) + ek_cocycle(hf, g));
    r.cocycle_residual = std::max(r.cocycle_residual, central);
    r.jacobi_residual = std::max({r.jacobi_residual, loop, central});
  }
  r.passed = r.jacobi_residual <= tol && r.antisymmetry_residual == 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// exact algebras

QVector ExactLieAlgebra::bracket(const QVector& x, const QVector& y) const {
  if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim) {
    throw PreconditionError("ExactLieAlgebra::bracket: wrong vector length");
  }
  QVector out(static_cast<std::size_t>(dim), QuadraticNumber(0));
  for (int i = 0; i < dim; ++i) {
    if (x[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (i == j || y[static_cast<std::size_t>(j)].is_zero()) continue;
      const QuadraticNumber xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      for (int k = 0; k < dim; ++k) {
        const auto& c = at(k, i, j);
        if (!c.is_zero()) out[static_cast<std::size_t>(k)] += c * xy;
      }
    }
  }
  return out;
}

bool ExactLieAlgebra::jacobi_exact() const {
  auto unit = [&](int i) {
    QVector e(static_cast<std::size_t>(dim), QuadraticNumber(0));
    e[static_cast<std::size_t>(i)] = QuadraticNumber(1);
    return e;
  };
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      for (int k = j + 1; k < dim; ++k) {
        const auto a = bracket(bracket(unit(i), unit(j)), unit(k));
        const auto b = bracket(bracket(unit(j), unit(k)), unit(i));
        const auto c = bracket(bracket(unit(k), unit(i)), unit(j));
        for (int l = 0; l < dim; ++l) {
          const auto ul = static_cast<std::size_t>(l);
          if (!(a[ul] + b[ul] + c[ul]).is_zero()) return false;
        }
      }
    }
  }
  return true;
}

LieAlgebraData ExactLieAlgebra::to_double() const {
  std::vector<double> t;
  t.reserve(c.size());
  for (const auto& v : c) t.push_back(v.to_double());
  return LieAlgebraData::from_tensor(dim, t);
}

namespace {

// basis of u(n): i E_jj, then E_jk - E_kj and i (E_jk + E_kj) for j < k
std::vector<Eigen::MatrixXcd> unitary_basis(int n) {
  std::vector<Eigen::MatrixXcd> basis;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m(j, j) = cd(0.0, 1.0);
    basis.push_back(m);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n), y = x;
      x(j, k) = 1.0;
      x(k, j) = -1.0;
      y(j, k) = y(k, j) = cd(0.0, 1.0);
      basis.push_back(x);
      basis.push_back(y);
    }
  }
  return basis;
}

std::vector<double> unitary_coords(const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  std::vector<double> out;
  for (Eigen::Index j = 0; j < n; ++j) out.push_back(a(j, j).imag());
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      out.push_back(a(j, k).real());
      out.push_back(a(j, k).imag());
    }
  }
  return out;
}

}  // namespace

ExactLieAlgebra unitary_pair_algebra(int n) {
  if (n < 1) throw PreconditionError("unitary_pair_algebra: n must be positive");
  const auto basis = unitary_basis(n);
  const int m = n * n;
  ExactLieAlgebra g{2 * m, std::vector<QuadraticNumber>(static_cast<std::size_t>(8 * m * m * m),
                                                        QuadraticNumber(0))};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto& a = basis[static_cast<std::size_t>(i)];
      const auto& b = basis[static_cast<std::size_t>(j)];
      const auto coords = unitary_coords(a * b - b * a);
      for (int k = 0; k < m; ++k) {
        const double v = coords[static_cast<std::size_t>(k)];
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-12) throw Error("unitary_pair_algebra: non-integral constant");
        if (r == 0.0) continue;
        const QuadraticNumber q(static_cast<long long>(r));
        for (int block : {0, m}) {
          g.c[static_cast<std::size_t>(((k + block) * 2 * m + i + block) * 2 * m + j + block)] = q;
        }
      }
    }
  }
  return g;
}

ExactLieAlgebra quotient_algebra(const QuotientAlgebraSpec& spec) {
  const int n = spec.parent.dim;
  const int m = static_cast<int>(spec.complement.size());
  if (m + static_cast<int>(spec.central_ideal.size()) != n) {
    throw PreconditionError("quotient_algebra: complement and ideal must have total dimension " +
                            std::to_string(n));
  }
  // columns: complement, then ideal
  ExactMatrix<QuadraticNumber> basis(static_cast<std::size_t>(n));
  auto append = [&](const QVector& v) {
    if (static_cast<int>(v.size()) != n) throw PreconditionError("quotient_algebra: wrong vector length");
    for (int r = 0; r < n; ++r) basis[static_cast<std::size_t>(r)].push_back(v[static_cast<std::size_t>(r)]);
  };
  for (const auto& v : spec.complement) append(v);
  for (const auto& v : spec.central_ideal) append(v);
  if (exact_rank(basis) != n) throw PreconditionError("quotient_algebra: complement and ideal do not span");

  for (const auto& z : spec.central_ideal) {
    for (int j = 0; j < n; ++j) {
      QVector e(static_cast<std::size_t>(n), QuadraticNumber(0));
      e[static_cast<std::size_t>(j)] = QuadraticNumber(1);
      const auto br = spec.parent.bracket(z, e);
      if (!std::all_of(br.begin(), br.end(), [](const QuadraticNumber& v) { return v.is_zero(); })) {
        throw PreconditionError("quotient_algebra: ideal vector is not central");
      }
    }
  }

  ExactLieAlgebra q{m, std::vector<QuadraticNumber>(static_cast<std::size_t>(m * m * m), QuadraticNumber(0))};
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto v = spec.parent.bracket(spec.complement[static_cast<std::size_t>(i)],
                                         spec.complement[static_cast<std::size_t>(j)]);
      const auto x = exact_solve(basis, v);
      for (int k = 0; k < m; ++k) {
        const auto& c = (*x)[static_cast<std::size_t>(k)];
        q.c[static_cast<std::size_t>((k * m + i) * m + j)] = c;
        q.c[static_cast<std::size_t>((k * m + j) * m + i)] = -c;
      }
    }
  }
  return q;
}

DlQuotient dl_quotient(int n, const QuadraticNumber& theta) {
  if (n != 1 && n != 2) throw PreconditionError("dl_quotient: n must be 1 or 2");
  DlQuotient r;
  r.spec.parent = unitary_pair_algebra(n);
  const int dim = r.spec.parent.dim;
  const int m = n * n;
  QVector z(static_cast<std::size_t>(dim), QuadraticNumber(0));
  for (int j = 0; j < n; ++j) {
    z[static_cast<std::size_t>(j)] = QuadraticNumber(1);
    z[static_cast<std::size_t>(m + j)] = theta;
  }
  r.spec.central_ideal.push_back(z);
  for (int i = 1; i < dim; ++i) {
    QVector e(static_cast<std::size_t>(dim), QuadraticNumber(0));
    e[static_cast<std::size_t>(i)] = QuadraticNumber(1);
    r.spec.complement.push_back(e);
  }
  r.exact = quotient_algebra(r.spec);
  r.quotient = r.exact.to_double();
  r.center_dimension = r.quotient.center_dimension();
  r.jacobi_residual = r.quotient.jacobi_residual();
  r.jacobi_exact = r.exact.jacobi_exact();
  return r;
}

}  // namespace jetlie
