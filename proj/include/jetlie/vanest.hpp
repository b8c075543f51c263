#pragma once

/**
 * @file vanest.hpp
 * @brief Integration of Lie algebra 2-cocycles to local group cocycles over
 * singular 2-simplices, and periods of left-invariant 2-forms over cycles.
 *
 * For x, y in the chart, gamma(t, s) = t m(x, s y) + s m(x, (1 - t) y) is a
 * 2-simplex from the identity through x to m(x, y), and
 *   f0(x, y) = integral over gamma of the left-invariant form w^l.
 * The simplex is oriented by dt ^ ds on {t, s >= 0, t + s <= 1}.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetlie/cocycle.hpp"
#include "jetlie/group.hpp"
#include "jetlie/program.hpp"
#include "jetlie/quadrature.hpp"

namespace jetlie {

inline constexpr int kDefaultQuadratureDegree = 7;
inline constexpr double kD2TolerancePolynomial = 1e-12;
inline constexpr double kD2ToleranceTranscendental = 1e-8;
inline constexpr double kPeriodicityTolerance = 1e-10;
inline constexpr double kSingularTranslationTolerance = 1e-12;

/// The left-invariant 2-form with value w at the identity.
class LeftInvariantTwoForm {
 public:
  LeftInvariantTwoForm(ChartedGroup group, AlgebraCocycle base);

  const ChartedGroup& group() const noexcept { return group_; }
  const AlgebraCocycle& base() const noexcept { return base_; }

  /// theta(z) = (D2 m(z, .) at 0)^-1, row-major n x n. Throws DomainError
  /// outside the chart or when the translation Jacobian is singular.
  std::vector<double> translation_inverse(std::span<const double> z) const;

  /// w(theta(z) a1, theta(z) a2)
  std::vector<double> operator()(std::span<const double> z, std::span<const double> a1,
                                 std::span<const double> a2) const;

 private:
  ChartedGroup group_;
  AlgebraCocycle base_;
};

std::vector<double> form_at(const LeftInvariantTwoForm& form, std::span<const double> z,
                            std::span<const double> a1, std::span<const double> a2);

/// (t, s) -> t m(x, s y) + s m(x, (1 - t) y). Throws DomainError when a
/// sampled product m(x, s y) leaves the chart.
SmoothProgram gamma_map(const ChartedGroup& g, std::span<const double> x,
                        std::span<const double> y);

/// Sum over the rule of weight * w^l(sigma, d_t sigma, d_s sigma) for a map
/// sigma of arity 2, node terms in parallel and summed in node order.
std::vector<double> pullback_integral(const LeftInvariantTwoForm& form, const SmoothProgram& sigma,
                                      const QuadratureRule& rule);
/// Serial reference of pullback_integral; bitwise identical.
std::vector<double> pullback_integral_serial(const LeftInvariantTwoForm& form,
                                             const SmoothProgram& sigma,
                                             const QuadratureRule& rule);

/// f0(x, y) by numerical quadrature over gamma_map(g, x, y).
std::vector<double> integrate_f0(const ChartedGroup& g, const AlgebraCocycle& w,
                                 std::span<const double> x, std::span<const double> y,
                                 const QuadratureRule& rule = simplex_rule(kDefaultQuadratureDegree));
std::vector<double> integrate_f0_serial(const ChartedGroup& g, const AlgebraCocycle& w,
                                        std::span<const double> x, std::span<const double> y,
                                        const QuadratureRule& rule =
                                            simplex_rule(kDefaultQuadratureDegree));

/**
 * The same quadrature sum as one program of arity 2n, so jets run through it.
 * theta(z) a is formed as D2 m(z^-1, .) at z applied to a, which equals the
 * inverse of D2 m(z, .) at 0.
 */
SmoothProgram f0_program(const ChartedGroup& g, const AlgebraCocycle& w,
                         const QuadratureRule& rule = simplex_rule(kDefaultQuadratureDegree));

/// 1e-12 when multiplication and inversion are polynomial, else 1e-8.
double default_d2_tolerance(const ChartedGroup& g);

struct D2Check {
  std::vector<double> d2;        ///< D1D2 f0(e_i, e_j) at (0, 0), layout (a, i, j)
  std::vector<double> expected;  ///< w / 2
  double max_diff = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// Mixed second derivative of f0 at the identity against w / 2. A negative
/// @p tol selects default_d2_tolerance(g).
D2Check check_d2(const ChartedGroup& g, const AlgebraCocycle& w,
                 const QuadratureRule& rule = simplex_rule(kDefaultQuadratureDegree),
                 double tol = -1.0);

/// f0 as a group cocycle on the ball of half the chart radius. Verifies that
/// w is a Lie algebra cocycle for the constants of g.
GroupCocycle vanest_cocycle(const ChartedGroup& g, const AlgebraCocycle& w,
                            const QuadratureRule& rule = simplex_rule(kDefaultQuadratureDegree),
                            std::string name = "vanest");

/// Largest |f0 - f0_refined| over the pairs entering the cocycle identity on
/// the sampled triples of sample_triples(g, f, seed, count), where f0 uses
/// @p rule and f0_refined a rule of twice the degree.
double quadrature_error_estimate(const ChartedGroup& g, const AlgebraCocycle& w,
                                 std::uint64_t seed, int count = kCocycleSamples,
                                 const QuadratureRule& rule = simplex_rule(kDefaultQuadratureDegree));

/// max(1e-8, 10 * quadrature_error_estimate)
double vanest_identity_tolerance(const ChartedGroup& g, const AlgebraCocycle& w,
                                 std::uint64_t seed, int count = kCocycleSamples,
                                 const QuadratureRule& rule = simplex_rule(kDefaultQuadratureDegree));

/// A map of the unit square into the chart. When a shift is present the
/// opposite edges are identified modulo it: sigma(1, s) = sigma(0, s) + t_shift
/// and sigma(t, 1) = sigma(t, 0) + s_shift.
struct TwoCycle {
  SmoothProgram map;
  std::optional<std::vector<double>> t_shift;
  std::optional<std::vector<double>> s_shift;
};

/// (t, s) -> (t, s, 0, ..., 0) in R^n with unit shifts: the fundamental cycle
/// of the torus spanned by the first two coordinates.
TwoCycle fundamental_torus_cycle(int n = 2);
/// The constant cycle at @p point.
TwoCycle constant_cycle(std::span<const double> point);

/// Largest violation of the declared identifications on @p samples edge points.
double periodicity_residual(const TwoCycle& sigma, int samples = 33);

/// Integral of w^l over sigma. Throws ToleranceError when the declared
/// identifications fail.
std::vector<double> period(const ChartedGroup& g, const AlgebraCocycle& w, const TwoCycle& sigma,
                           const QuadratureRule& rule = square_rule(kDefaultQuadratureDegree));

}  // namespace jetlie
