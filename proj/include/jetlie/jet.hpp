#pragma once

/**
 * @file jet.hpp
 * @brief Iterated tangent vectors as multi-dual numbers.
 *
 * A JetScalar of order k is an element of R[e1..ek]/(ei^2 = 0). Its 2^k
 * coefficients are indexed by subsets of {1..k}, stored as bit masks: slot i
 * is bit (i-1), slot 1 is the innermost tangent direction and slot k the
 * outermost. Evaluating a smooth map on order-k jets realizes T^k of the map.
 *
 * For order 2 the coordinates read (u, v0, v1, v01) with
 *   mask 0 -> u, mask 1 -> v0 (inner), mask 2 -> v1 (outer), mask 3 -> v01.
 *
 * The structure maps of the tangent structure (footprint, zero section,
 * fiber addition, flip, vertical lift) act on a chosen slot so that both
 * whiskerings (alpha T and T alpha) are available: an operation acting on
 * slot p of an order-k jet is alpha T^(p-1) composed with T^(k-p).
 */

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace jetlie {

inline constexpr int kMaxJetOrder = 3;

/// Default tolerance for deciding that two jets lie in the same fiber.
inline constexpr double kFiberTolerance = 1e-9;

class JetScalar {
 public:
  static constexpr std::size_t kMaxCoeffs = std::size_t{1} << kMaxJetOrder;

  JetScalar() = default;
  explicit JetScalar(int order, double value = 0.0);

  static JetScalar constant(double value, int order) { return JetScalar(order, value); }
  /// base + direction * e_slot
  static JetScalar variable(double base, int slot, int order, double direction = 1.0);

  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return std::size_t{1} << order_; }

  double value() const noexcept { return c_[0]; }
  double operator[](unsigned mask) const noexcept { return c_[mask]; }
  double& operator[](unsigned mask) noexcept { return c_[mask]; }

  std::span<const double> coeffs() const noexcept { return {c_.data(), size()}; }

  bool has_nilpotent_part() const noexcept;
  /// The same jet with its base coefficient set to zero.
  JetScalar nilpotent_part() const noexcept;

  JetScalar& operator+=(const JetScalar& o);
  JetScalar& operator-=(const JetScalar& o);
  JetScalar& operator*=(const JetScalar& o);
  JetScalar& operator/=(const JetScalar& o);
  JetScalar& operator+=(double s) noexcept { c_[0] += s; return *this; }
  JetScalar& operator-=(double s) noexcept { c_[0] -= s; return *this; }
  JetScalar& operator*=(double s) noexcept;
  JetScalar& operator/=(double s);

  friend bool operator==(const JetScalar& a, const JetScalar& b) noexcept;

 private:
  int order_ = 0;
  std::array<double, kMaxCoeffs> c_{};
};

/// Truncated product: (a b)_S = sum over disjoint A u B = S of a_A b_B.
JetScalar jet_mul(const JetScalar& a, const JetScalar& b);

JetScalar operator+(JetScalar a, const JetScalar& b);
JetScalar operator-(JetScalar a, const JetScalar& b);
JetScalar operator*(const JetScalar& a, const JetScalar& b);
JetScalar operator/(const JetScalar& a, const JetScalar& b);
JetScalar operator-(JetScalar a) noexcept;
JetScalar operator+(JetScalar a, double s) noexcept;
JetScalar operator+(double s, JetScalar a) noexcept;
JetScalar operator-(JetScalar a, double s) noexcept;
JetScalar operator-(double s, const JetScalar& a) noexcept;
JetScalar operator*(JetScalar a, double s) noexcept;
JetScalar operator*(double s, JetScalar a) noexcept;
JetScalar operator/(JetScalar a, double s);

/**
 * Exact truncated Taylor composition
 *   g(a0 + d) = sum_{m <= k} g^(m)(a0) d^m / m!
 * which is exact because d^(k+1) = 0. @p derivatives holds g(a0), g'(a0), ...
 * and must have at least order+1 entries.
 */
JetScalar compose_primitive(const JetScalar& a, std::span<const double> derivatives);

JetScalar exp(const JetScalar& a);
JetScalar log(const JetScalar& a);
JetScalar sin(const JetScalar& a);
JetScalar cos(const JetScalar& a);
JetScalar sqrt(const JetScalar& a);
JetScalar atan(const JetScalar& a);
JetScalar atan2(const JetScalar& y, const JetScalar& x);
JetScalar powi(const JetScalar& a, int n);
JetScalar reciprocal(const JetScalar& a);

std::ostream& operator<<(std::ostream& os, const JetScalar& a);

/// A point of T^k(R^n): n jet components of one common order.
class JetVector {
 public:
  JetVector() = default;
  JetVector(int order, std::size_t dim);
  explicit JetVector(std::vector<JetScalar> components);

  static JetVector constant(std::span<const double> base, int order);
  /// Inverse of to_blocks(): flat[mask * dim + i] is coefficient mask of component i.
  static JetVector from_blocks(int order, std::size_t dim, std::span<const double> flat);

  int order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return comps_.size(); }

  const JetScalar& operator[](std::size_t i) const { return comps_[i]; }
  JetScalar& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<JetScalar>& components() const noexcept { return comps_; }

  /// The n coefficients carried by one subset of slots.
  std::vector<double> block(unsigned mask) const;
  void set_block(unsigned mask, std::span<const double> values);
  std::vector<double> to_blocks() const;
  std::vector<double> base() const { return block(0); }

  friend bool operator==(const JetVector& a, const JetVector& b) noexcept = default;

 private:
  int order_ = 0;
  std::vector<JetScalar> comps_;
};

/// The jet with base coefficient @p base and @p direction in @p slot.
JetVector seed(std::span<const double> base, std::span<const double> direction, int slot,
               int order);

/// Footprint pi acting on slot @p slot (default outermost): drops every
/// coefficient whose subset contains that slot.
JetVector footprint(const JetVector& v, int slot = 0);

/// Zero section inserting a new zero slot at position @p slot (default: a new
/// outermost slot). Inserting at slot 1 of an order-1 jet realizes T0.
JetVector zero_section(const JetVector& v, int slot = 0);

/// Fiberwise scalar multiplication on the bundle of slot @p slot.
JetVector scalar_mult(double t, const JetVector& v, int slot = 0);

/// Fiberwise addition over the footprint of slot @p slot. Throws
/// PreconditionError when the footprints differ by more than @p tol.
JetVector fiber_add(const JetVector& v, const JetVector& w, int slot = 0,
                    double tol = kFiberTolerance);
JetVector fiber_sub(const JetVector& v, const JetVector& w, int slot = 0,
                    double tol = kFiberTolerance);

/// Symmetric structure swapping slots @p i and @p i+1.
JetVector flip(const JetVector& v, int i = 1);

/// Vertical lift acting on slot @p slot (default outermost): the content of
/// that slot moves to the mixed coefficient of two new adjacent slots.
JetVector vertical_lift(const JetVector& v, int slot = 0);

/// lambda2(w, b) = flip(T0(w) +_T lift(b)) = (u, w, 0, b) for order-1 inputs.
JetVector lambda2(const JetVector& w, const JetVector& b, double tol = kFiberTolerance);

/// Reads a jet over tangent coordinates (u, du) of dimension 2n as a jet over
/// R^n with one more slot: du becomes the new innermost slot.
JetVector from_tangent_coordinates(const JetVector& v);
/// Inverse of from_tangent_coordinates.
JetVector to_tangent_coordinates(const JetVector& v);

/// Largest absolute coefficient difference.
double max_abs_diff(const JetVector& a, const JetVector& b);

namespace bits {
/// Inserts a zero bit at 0-based position @p pos, shifting higher bits up.
constexpr unsigned insert_zero(unsigned mask, int pos) noexcept {
  const unsigned low = mask & ((1u << pos) - 1u);
  const unsigned high = mask >> pos;
  return low | (high << (pos + 1));
}
/// Removes the bit at 0-based position @p pos, shifting higher bits down.
constexpr unsigned remove(unsigned mask, int pos) noexcept {
  const unsigned low = mask & ((1u << pos) - 1u);
  const unsigned high = mask >> (pos + 1);
  return low | (high << pos);
}
constexpr unsigned swap_adjacent(unsigned mask, int pos) noexcept {
  const unsigned a = (mask >> pos) & 1u;
  const unsigned b = (mask >> (pos + 1)) & 1u;
  mask &= ~((1u << pos) | (1u << (pos + 1)));
  return mask | (b << pos) | (a << (pos + 1));
}
}  // namespace bits

}  // namespace jetlie
