#pragma once

/**
 * @file examples.hpp
 * @brief Two algebra-level instances: the loop algebra of su(2) on
 * trigonometric polynomials with the cocycle
 *   w(f, g) = integral over [0, 1] of trace(f(t) g'(t)) dt,
 * and the quotient of u(n) x u(n) by the central line (i 1, i theta 1).
 *
 * su(2) is identified with R^3 through the basis -(i/2) sigma_a, so the
 * bracket is the cross product and trace(XY) = -x.y / 2.
 */

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "jetlie/exact.hpp"
#include "jetlie/lie_algebra.hpp"
#include "jetlie/random.hpp"

namespace jetlie {

inline constexpr double kRealityTolerance = 1e-12;
inline constexpr double kLoopJacobiTolerance = 1e-9;
inline constexpr int kTrapezoidPoints = 4096;

/// t -> sum_k c_k exp(2 pi i k t) with c_k in C^3 and c_{-k} = conj(c_k).
class FourierLoopElement {
 public:
  using Coeff = std::array<std::complex<double>, 3>;

  FourierLoopElement() = default;
  /// Drops zero coefficients; throws PreconditionError when the reality
  /// condition fails by more than 1e-12.
  explicit FourierLoopElement(std::map<int, Coeff> coefficients);

  static FourierLoopElement constant(const std::array<double, 3>& value);
  /// Frequencies |k| <= max_frequency, coefficients uniform in [-1, 1].
  static FourierLoopElement random(Rng& rng, int max_frequency);

  const std::map<int, Coeff>& coefficients() const noexcept { return c_; }
  /// Largest |k| with a nonzero coefficient (0 for the zero loop).
  int degree() const noexcept;
  double reality_residual() const;

  std::array<double, 3> operator()(double t) const;
  FourierLoopElement derivative() const;
  /// Largest coefficient modulus.
  double sup_norm() const;

  friend FourierLoopElement operator+(const FourierLoopElement& f, const FourierLoopElement& g);
  friend FourierLoopElement operator-(const FourierLoopElement& f, const FourierLoopElement& g);
  friend FourierLoopElement operator*(double s, const FourierLoopElement& f);

 private:
  std::map<int, Coeff> c_;
};

/// Pointwise cross product, computed as (raw(f, g) - raw(g, f)) / 2 so that
/// antisymmetry holds exactly. Degrees add; nothing is truncated.
FourierLoopElement loop_bracket(const FourierLoopElement& f, const FourierLoopElement& g);

/// Closed form from the coefficients: -(1/2) sum_l 2 pi i l c_{-l}.d_l,
/// antisymmetrized like loop_bracket.
double ek_cocycle(const FourierLoopElement& f, const FourierLoopElement& g);

/// The same integral by the trapezoidal rule on @p points samples of the
/// circle (exact for trigonometric polynomials of degree < points).
double ek_cocycle_trapezoid(const FourierLoopElement& f, const FourierLoopElement& g,
                            int points = kTrapezoidPoints);

struct EkExtensionReport {
  int max_frequency = 0;
  int samples = 0;
  double antisymmetry_residual = 0.0;  ///< loop and central parts
  double jacobi_residual = 0.0;        ///< loop and central parts
  double cocycle_residual = 0.0;       ///< central part alone
  int max_degree_seen = 0;             ///< largest degree of a double bracket
  bool passed = false;
};

/// Jacobi identity of ([f, g], w(f, g)) on random triples of degree <= N.
EkExtensionReport ek_extension_check(int max_frequency, int samples, std::uint64_t seed,
                                     double tol = kLoopJacobiTolerance);

/// Structure constants with entries in Q(sqrt d), layout c[(k * n + i) * n + j].
struct ExactLieAlgebra {
  int dim = 0;
  std::vector<QuadraticNumber> c;

  const QuadraticNumber& at(int k, int i, int j) const {
    return c[static_cast<std::size_t>((k * dim + i) * dim + j)];
  }
  QVector bracket(const QVector& x, const QVector& y) const;
  /// True when the Jacobi identity holds exactly on basis triples.
  bool jacobi_exact() const;
  LieAlgebraData to_double() const;
};

/// u(n) x u(n) on the basis (i E_jj; E_jk - E_kj, i (E_jk + E_kj) for j < k)
/// in each factor.
ExactLieAlgebra unitary_pair_algebra(int n);

struct QuotientAlgebraSpec {
  ExactLieAlgebra parent;
  std::vector<QVector> central_ideal;
  std::vector<QVector> complement;
};

/// Structure constants of parent / ideal on the complement basis. Throws
/// PreconditionError when an ideal vector is not central or when complement
/// and ideal do not form a basis (both decided exactly).
ExactLieAlgebra quotient_algebra(const QuotientAlgebraSpec& spec);

struct DlQuotient {
  QuotientAlgebraSpec spec;
  ExactLieAlgebra exact;
  LieAlgebraData quotient;
  int center_dimension = 0;
  double jacobi_residual = 0.0;
  bool jacobi_exact = false;
};

/// (u(n) x u(n)) / R (i 1, i theta 1) for n = 1 or 2.
DlQuotient dl_quotient(int n, const QuadraticNumber& theta = QuadraticNumber::root());

}  // namespace jetlie
