#pragma once

/**
 * @file lattice.hpp
 * @brief Finitely generated subgroups of R^d and arithmetic in R^d modulo
 * them.
 *
 * Generators are floating-point vectors, optionally with exact coordinates in
 * a quadratic field Q(sqrt d). Membership in a dense subgroup is only decided
 * from exact coordinates.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jetlie/cocycle.hpp"
#include "jetlie/exact.hpp"
#include "jetlie/group.hpp"
#include "jetlie/lie_algebra.hpp"
#include "jetlie/quadrature.hpp"

namespace jetlie {

inline constexpr double kLatticeSnapTolerance = 1e-9;
inline constexpr double kIndependenceTolerance = 1e-9;


enum class Discreteness { Discrete, NotDiscrete, Unknown };
std::string_view to_string(Discreteness d) noexcept;

class Lattice {
 public:
  Lattice() = default;
  Lattice(int ambient_dim, std::vector<std::vector<double>> generators);
  /// Floating-point generators are derived from the exact ones.
  Lattice(int ambient_dim, std::vector<QVector> exact_generators);

  /// Z^d
  static Lattice integer(int d);
  /// Z + alpha Z in R
  static Lattice integer_plus(const QuadraticNumber& alpha);

  int ambient_dim() const noexcept { return d_; }
  int rank() const noexcept { return static_cast<int>(gens_.size()); }
  const std::vector<std::vector<double>>& generators() const noexcept { return gens_; }
  bool has_exact() const noexcept { return exact_.has_value(); }
  const std::vector<QVector>& exact_generators() const;

  /// sum_i n_i g_i
  std::vector<double> element(std::span<const long long> coefficients) const;
  QVector exact_element(std::span<const long long> coefficients) const;

 private:
  int d_ = 0;
  std::vector<std::vector<double>> gens_;
  std::optional<std::vector<QVector>> exact_;
};

/// Discrete when the generators are independent over R, or when exact
/// coordinates show the Q-rank equals the R-rank; NotDiscrete when exact
/// coordinates show a smaller R-rank; Unknown for R-dependent floating-point
/// generators.
Discreteness is_discrete(const Lattice& l);

/// Lattice coordinates c with x = sum_i c_i g_i (least squares by
/// pseudo-inverse); requires R-independent generators.
std::vector<double> lattice_coords(const Lattice& l, std::span<const double> x);

/// Representative of x + L whose lattice coordinates lie in [0, 1), with
/// coordinates within 1e-9 of an integer snapped to it.
std::vector<double> reduce(const Lattice& l, std::span<const double> x);

/// Euclidean distance from x to the nearest lattice point in the span of
/// the generators (orthogonal part included).
double distance_to_lattice(const Lattice& l, std::span<const double> x);

/// x - y in L, decided in lattice coordinates up to 1e-9. Requires a
/// discrete lattice.
bool coset_equal(const Lattice& l, std::span<const double> x, std::span<const double> y);
/// x - y in L by an exact integer solve. Requires exact coordinates and
/// Q-independent generators.
bool coset_equal(const Lattice& l, const QVector& x, const QVector& y);

struct ShiftInvarianceReport {
  LieAlgebraData reference;              ///< constants of the unshifted chart
  std::vector<double> constant_diffs;    ///< per shift
  std::vector<double> value_residuals;   ///< per shift, sampled |m_h - m|
  double max_constant_diff = 0.0;
  double max_value_residual = 0.0;
  bool passed = false;
};

/**
 * Recomputes structure constants in the chart translated by each lattice
 * element h (embedded at coordinates first_coord .. first_coord + d - 1):
 *   m_h(x, y) = m(x + h, y + h) - 2h,  inv_h(x) = inv(x + h) + h.
 * A shifted chart that no longer has an identity counts as an infinite
 * difference. Passes when every shifted set of constants differs from the reference by at
 * most @p tol and the shifted multiplication agrees with m on samples within
 * 1e-9.
 */
ShiftInvarianceReport shift_invariance_check(const ChartedGroup& g, const Lattice& l,
                                             int first_coord,
                                             std::span<const std::vector<long long>> shifts,
                                             double tol = 0.0, std::uint64_t seed = 1);

/// The extension of R^2 by the van Est cocycle of the symplectic form, with
/// central values taken modulo the period lattice of the torus R^2 / Z^2.
struct HeisenbergOverTorus {
  ChartedGroup base;       ///< torus2
  GroupCocycle cocycle;    ///< vanest cocycle of the symplectic form
  ChartedGroup extension;  ///< dimension 3, central coordinate 2
  double period = 0.0;     ///< period over the fundamental cycle
  Lattice periods;         ///< generated by the period
};

HeisenbergOverTorus heisenberg_over_torus(const QuadratureRule& rule = simplex_rule(7));

struct ReducedIdentityResult {
  double raw_defect = 0.0;          ///< max |identity| with unreduced values
  double reduced_defect = 0.0;      ///< max distance of the reduced identity to L
  double integrality_defect = 0.0;  ///< max distance of (reduced - raw) to L
  int wrapped_terms = 0;            ///< terms changed by reduction
  bool passed = false;
};

/// Runs the cocycle identity with every term replaced by its reduction
/// modulo @p l. Passes when the reduced identity vanishes in R^d / L within
/// @p tol and reduction moved each identity by lattice elements only.
ReducedIdentityResult reduced_cocycle_identity(const ChartedGroup& g, const GroupCocycle& f,
                                               const Lattice& l, std::uint64_t seed,
                                               int count = kCocycleSamples,
                                               double tol = kCocycleIdentityTolerance);

}  // namespace jetlie
