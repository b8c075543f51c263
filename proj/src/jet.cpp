#include "jetlie/jet.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

void require_same_order(const JetScalar& a, const JetScalar& b) {
  if (a.order() != b.order()) {
    throw PreconditionError("jet order mismatch: " + std::to_string(a.order()) + " vs " +
                            std::to_string(b.order()));
  }
}

int resolve_slot(int slot, int order, int upper) {
  const int s = slot == 0 ? upper : slot;
  if (s < 1 || s > upper) {
    throw PreconditionError("slot " + std::to_string(slot) + " out of range for order " +
                            std::to_string(order));
  }
  return s;
}

void require_order_room(int new_order) {
  if (new_order > kMaxJetOrder) {
    throw PreconditionError("jet order " + std::to_string(new_order) + " exceeds maximum " +
                            std::to_string(kMaxJetOrder));
  }
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

JetScalar::JetScalar(int order, double value) : order_(order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw PreconditionError("jet order must lie in [0, " + std::to_string(kMaxJetOrder) + "]");
  }
  c_[0] = value;
}

JetScalar JetScalar::variable(double base, int slot, int order, double direction) {
  JetScalar j(order, base);
  if (slot < 1 || slot > order) {
    throw PreconditionError("seed slot " + std::to_string(slot) + " out of range for order " +
                            std::to_string(order));
  }
  j.c_[1u << (slot - 1)] = direction;
  return j;
}

bool JetScalar::has_nilpotent_part() const noexcept {
  for (std::size_t m = 1; m < size(); ++m) {
    if (c_[m] != 0.0) return true;
  }
  return false;
}

JetScalar JetScalar::nilpotent_part() const noexcept {
  JetScalar r = *this;
  r.c_[0] = 0.0;
  return r;
}

JetScalar& JetScalar::operator+=(const JetScalar& o) {
  require_same_order(*this, o);
  for (std::size_t m = 0; m < size(); ++m) c_[m] += o.c_[m];
  return *this;
}

JetScalar& JetScalar::operator-=(const JetScalar& o) {
  require_same_order(*this, o);
  for (std::size_t m = 0; m < size(); ++m) c_[m] -= o.c_[m];
  return *this;
}

JetScalar& JetScalar::operator*=(const JetScalar& o) { return *this = jet_mul(*this, o); }
JetScalar& JetScalar::operator/=(const JetScalar& o) { return *this = *this / o; }

JetScalar& JetScalar::operator*=(double s) noexcept {
  for (std::size_t m = 0; m < size(); ++m) c_[m] *= s;
  return *this;
}

JetScalar& JetScalar::operator/=(double s) {
  if (s == 0.0) throw DomainError("division of a jet by zero");
  for (std::size_t m = 0; m < size(); ++m) c_[m] /= s;
  return *this;
}

bool operator==(const JetScalar& a, const JetScalar& b) noexcept {
  if (a.order_ != b.order_) return false;
  return std::equal(a.c_.begin(), a.c_.begin() + static_cast<long>(a.size()), b.c_.begin());
}

JetScalar jet_mul(const JetScalar& a, const JetScalar& b) {
  require_same_order(a, b);
  JetScalar r(a.order());
  const unsigned n = static_cast<unsigned>(a.size());
  for (unsigned s = 0; s < n; ++s) {
    double acc = 0.0;
    // every A subset of S, descending; B = S \ A
    unsigned sub = s;
    while (true) {
      acc += a[sub] * b[s ^ sub];
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    r[s] = acc;
  }
  return r;
}

JetScalar operator+(JetScalar a, const JetScalar& b) { return a += b; }
JetScalar operator-(JetScalar a, const JetScalar& b) { return a -= b; }
JetScalar operator*(const JetScalar& a, const JetScalar& b) { return jet_mul(a, b); }

JetScalar operator/(const JetScalar& a, const JetScalar& b) {
  require_same_order(a, b);
  const double b0 = b[0];
  if (b0 == 0.0) throw DomainError("jet division by a jet with zero base");
  JetScalar q(a.order());
  q[0] = a[0] / b0;
  const unsigned n = static_cast<unsigned>(a.size());
  // q b = a solved mask by mask; proper submasks are numerically smaller.
  for (unsigned s = 1; s < n; ++s) {
    double acc = a[s];
    for (unsigned sub = (s - 1) & s;; sub = (sub - 1) & s) {
      acc -= q[sub] * b[s ^ sub];
      if (sub == 0) break;
    }
    q[s] = acc / b0;
  }
  return q;
}

JetScalar operator-(JetScalar a) noexcept {
  for (std::size_t m = 0; m < a.size(); ++m) a[static_cast<unsigned>(m)] = -a[static_cast<unsigned>(m)];
  return a;
}

JetScalar operator+(JetScalar a, double s) noexcept { return a += s; }
JetScalar operator+(double s, JetScalar a) noexcept { return a += s; }
JetScalar operator-(JetScalar a, double s) noexcept { return a -= s; }
JetScalar operator-(double s, const JetScalar& a) noexcept { return (-a) += s; }
JetScalar operator*(JetScalar a, double s) noexcept { return a *= s; }
JetScalar operator*(double s, JetScalar a) noexcept { return a *= s; }
JetScalar operator/(JetScalar a, double s) { return a /= s; }

JetScalar compose_primitive(const JetScalar& a, std::span<const double> derivatives) {
  const int k = a.order();
  if (derivatives.size() < static_cast<std::size_t>(k) + 1) {
    throw PreconditionError("derivative table shorter than jet order + 1");
  }
  JetScalar result(k, derivatives[0]);
  if (k == 0) return result;
  const JetScalar delta = a.nilpotent_part();
  JetScalar power = delta;
  double factorial = 1.0;
  for (int m = 1; m <= k; ++m) {
    factorial *= m;
    const double coef = derivatives[static_cast<std::size_t>(m)] / factorial;
    for (std::size_t s = 1; s < result.size(); ++s) {
      result[static_cast<unsigned>(s)] += coef * power[static_cast<unsigned>(s)];
    }
    if (m < k) power = jet_mul(power, delta);
  }
  return result;
}

JetScalar exp(const JetScalar& a) {
  const double e = std::exp(a[0]);
  const std::array<double, 4> d{e, e, e, e};
  return compose_primitive(a, d);
}

JetScalar log(const JetScalar& a) {
  const double x = a[0];
  if (!(x > 0.0)) throw DomainError("log of nonpositive base " + std::to_string(x));
  const std::array<double, 4> d{std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)};
  return compose_primitive(a, d);
}

JetScalar sin(const JetScalar& a) {
  const double s = std::sin(a[0]);
  const double c = std::cos(a[0]);
  const std::array<double, 4> d{s, c, -s, -c};
  return compose_primitive(a, d);
}

JetScalar cos(const JetScalar& a) {
  const double s = std::sin(a[0]);
  const double c = std::cos(a[0]);
  const std::array<double, 4> d{c, -s, -c, s};
  return compose_primitive(a, d);
}

JetScalar sqrt(const JetScalar& a) {
  const double x = a[0];
  if (x < 0.0) throw DomainError("sqrt of negative base " + std::to_string(x));
  if (x == 0.0) {
    if (a.has_nilpotent_part()) throw DomainError("sqrt is not differentiable at 0");
    return JetScalar(a.order(), 0.0);
  }
  const double r = std::sqrt(x);
  const std::array<double, 4> d{r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x)};
  return compose_primitive(a, d);
}

JetScalar atan(const JetScalar& a) {
  const double z = a[0];
  const double q = 1.0 / (1.0 + z * z);
  const std::array<double, 4> d{std::atan(z), q, -2.0 * z * q * q, (6.0 * z * z - 2.0) * q * q * q};
  return compose_primitive(a, d);
}

JetScalar atan2(const JetScalar& y, const JetScalar& x) {
  require_same_order(y, x);
  const double x0 = x[0];
  const double y0 = y[0];
  if (x0 == 0.0 && y0 == 0.0) throw DomainError("atan2 undefined at the origin");
  // atan2(y, x) - atan2(y0, x0) = atan((x0 y - y0 x) / (x0 x + y0 y)) near the base.
  const JetScalar num = x0 * y - y0 * x;
  const JetScalar den = x0 * x + y0 * y;
  JetScalar r = atan(num / den);
  r[0] = std::atan2(y0, x0);
  return r;
}

JetScalar reciprocal(const JetScalar& a) { return JetScalar(a.order(), 1.0) / a; }

JetScalar powi(const JetScalar& a, int n) {
  if (n < 0) return reciprocal(powi(a, -n));
  JetScalar result(a.order(), 1.0);
  JetScalar base = a;
  unsigned e = static_cast<unsigned>(n);
  while (e != 0) {
    if (e & 1u) result = jet_mul(result, base);
    e >>= 1;
    if (e != 0) base = jet_mul(base, base);
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const JetScalar& a) {
  os << a[0];
  for (unsigned m = 1; m < a.size(); ++m) {
    if (a[m] == 0.0) continue;
    os << " + " << a[m] << "e";
    for (int b = 0; b < a.order(); ++b) {
      if (m & (1u << b)) os << (b + 1);
    }
  }
  return os;
}

// ---------------------------------------------------------------------------
// JetVector

JetVector::JetVector(int order, std::size_t dim) : order_(order), comps_(dim, JetScalar(order)) {}

JetVector::JetVector(std::vector<JetScalar> components) : comps_(std::move(components)) {
  if (!comps_.empty()) {
    order_ = comps_.front().order();
    for (const auto& c : comps_) {
      if (c.order() != order_) throw PreconditionError("jet vector components differ in order");
    }
  }
}

JetVector JetVector::constant(std::span<const double> base, int order) {
  JetVector v(order, base.size());
  for (std::size_t i = 0; i < base.size(); ++i) v.comps_[i][0] = base[i];
  return v;
}

JetVector JetVector::from_blocks(int order, std::size_t dim, std::span<const double> flat) {
  JetVector v(order, dim);
  const std::size_t n = std::size_t{1} << order;
  if (flat.size() != n * dim) throw PreconditionError("block layout has wrong length");
  for (unsigned m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < dim; ++i) v.comps_[i][m] = flat[m * dim + i];
  }
  return v;
}

std::vector<double> JetVector::block(unsigned mask) const {
  std::vector<double> out(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i][mask];
  return out;
}

void JetVector::set_block(unsigned mask, std::span<const double> values) {
  if (values.size() != comps_.size()) throw PreconditionError("block dimension mismatch");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i][mask] = values[i];
}

std::vector<double> JetVector::to_blocks() const {
  const std::size_t n = std::size_t{1} << order_;
  std::vector<double> flat(n * comps_.size());
  for (unsigned m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < comps_.size(); ++i) flat[m * comps_.size() + i] = comps_[i][m];
  }
  return flat;
}

JetVector seed(std::span<const double> base, std::span<const double> direction, int slot,
               int order) {
  if (base.size() != direction.size()) {
    throw PreconditionError("seed: base and direction dimensions differ");
  }
  if (slot < 1 || slot > order) {
    throw PreconditionError("seed: slot " + std::to_string(slot) + " out of range for order " +
                            std::to_string(order));
  }
  std::vector<JetScalar> comps;
  comps.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    comps.push_back(JetScalar::variable(base[i], slot, order, direction[i]));
  }
  return JetVector(std::move(comps));
}

namespace {

template <class Fn>
JetVector remap(const JetVector& v, int new_order, Fn&& target_of) {
  JetVector out(new_order, v.dim());
  const unsigned n = 1u << v.order();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    for (unsigned m = 0; m < n; ++m) out[i][target_of(m)] = v[i][m];
  }
  return out;
}

void require_same_shape(const JetVector& v, const JetVector& w) {
  if (v.order() != w.order() || v.dim() != w.dim()) {
    throw PreconditionError("jet vectors differ in order or dimension");
  }
}

void check_same_fiber(const JetVector& v, const JetVector& w, unsigned bit, double tol) {
  const unsigned n = 1u << v.order();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    for (unsigned m = 0; m < n; ++m) {
      if (m & bit) continue;
      if (!close(v[i][m], w[i][m], tol)) {
        throw PreconditionError("fiber operation on jets with different footprints");
      }
    }
  }
}

}  // namespace

JetVector footprint(const JetVector& v, int slot) {
  if (v.order() < 1) throw PreconditionError("footprint of an order-0 jet");
  const int s = resolve_slot(slot, v.order(), v.order());
  const int pos = s - 1;
  JetVector out(v.order() - 1, v.dim());
  const unsigned n = 1u << out.order();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    for (unsigned m = 0; m < n; ++m) out[i][m] = v[i][bits::insert_zero(m, pos)];
  }
  return out;
}

JetVector zero_section(const JetVector& v, int slot) {
  require_order_room(v.order() + 1);
  const int s = resolve_slot(slot, v.order(), v.order() + 1);
  const int pos = s - 1;
  return remap(v, v.order() + 1, [pos](unsigned m) { return bits::insert_zero(m, pos); });
}

JetVector scalar_mult(double t, const JetVector& v, int slot) {
  if (v.order() < 1) throw PreconditionError("scalar multiplication needs order >= 1");
  const int s = resolve_slot(slot, v.order(), v.order());
  const unsigned bit = 1u << (s - 1);
  JetVector out = v;
  const unsigned n = 1u << v.order();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    for (unsigned m = 0; m < n; ++m) {
      if (m & bit) out[i][m] *= t;
    }
  }
  return out;
}

JetVector fiber_add(const JetVector& v, const JetVector& w, int slot, double tol) {
  require_same_shape(v, w);
  if (v.order() < 1) throw PreconditionError("fiber addition needs order >= 1");
  const int s = resolve_slot(slot, v.order(), v.order());
  const unsigned bit = 1u << (s - 1);
  check_same_fiber(v, w, bit, tol);
  JetVector out = v;
  const unsigned n = 1u << v.order();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    for (unsigned m = 0; m < n; ++m) {
      if (m & bit) out[i][m] += w[i][m];
    }
  }
  return out;
}

JetVector fiber_sub(const JetVector& v, const JetVector& w, int slot, double tol) {
  return fiber_add(v, scalar_mult(-1.0, w, slot), slot, tol);
}

JetVector flip(const JetVector& v, int i) {
  if (i < 1 || i + 1 > v.order()) {
    throw PreconditionError("flip slot " + std::to_string(i) + " out of range for order " +
                            std::to_string(v.order()));
  }
  const int pos = i - 1;
  return remap(v, v.order(), [pos](unsigned m) { return bits::swap_adjacent(m, pos); });
}

JetVector vertical_lift(const JetVector& v, int slot) {
  if (v.order() < 1) throw PreconditionError("vertical lift of an order-0 jet");
  require_order_room(v.order() + 1);
  const int s = resolve_slot(slot, v.order(), v.order());
  const int pos = s - 1;
  return remap(v, v.order() + 1, [pos](unsigned m) {
    unsigned t = bits::insert_zero(m, pos + 1);
    if (m & (1u << pos)) t |= 1u << (pos + 1);
    return t;
  });
}

JetVector lambda2(const JetVector& w, const JetVector& b, double tol) {
  if (w.order() != 1 || b.order() != 1) throw PreconditionError("lambda2 takes order-1 jets");
  if (w.dim() != b.dim()) throw PreconditionError("lambda2 dimension mismatch");
  const JetVector t0w = zero_section(w, 1);
  const JetVector lb = vertical_lift(b);
  return flip(fiber_add(t0w, lb, 2, tol), 1);
}

JetVector from_tangent_coordinates(const JetVector& v) {
  if (v.dim() % 2 != 0) throw PreconditionError("tangent coordinates need even dimension");
  require_order_room(v.order() + 1);
  const std::size_t n = v.dim() / 2;
  JetVector out(v.order() + 1, n);
  const unsigned count = 1u << v.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned m = 0; m < count; ++m) {
      const unsigned t = bits::insert_zero(m, 0);
      out[i][t] = v[i][m];
      out[i][t | 1u] = v[n + i][m];
    }
  }
  return out;
}

JetVector to_tangent_coordinates(const JetVector& v) {
  if (v.order() < 1) throw PreconditionError("order-0 jet has no tangent coordinates");
  const std::size_t n = v.dim();
  JetVector out(v.order() - 1, 2 * n);
  const unsigned count = 1u << out.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned m = 0; m < count; ++m) {
      const unsigned t = bits::insert_zero(m, 0);
      out[i][m] = v[i][t];
      out[n + i][m] = v[i][t | 1u];
    }
  }
  return out;
}

double max_abs_diff(const JetVector& a, const JetVector& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  const unsigned n = 1u << a.order();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (unsigned m = 0; m < n; ++m) worst = std::max(worst, std::abs(a[i][m] - b[i][m]));
  }
  return worst;
}

}  // namespace jetlie
