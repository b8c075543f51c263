#pragma once

/**
 * @file cocycle.hpp
 * @brief Group and Lie algebra 2-cocycles, central extensions, and the
 * differentiation of group cocycles at the identity.
 *
 * A group cocycle f: G x G -> R^d is a program of arity 2n and codim d in the
 * chart of G. It defines the extension with multiplication
 *   (g, a)(h, b) = (gh, a + b + f(g, h)).
 * Its derivative L(f)(x, y) = D1D2 f(x, y) - D1D2 f(y, x) is an algebra
 * cocycle, and the Lie algebra of the extension is g extended by L(f).
 */

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jetlie/group.hpp"
#include "jetlie/lie_algebra.hpp"
#include "jetlie/program.hpp"
#include "jetlie/random.hpp"

namespace jetlie {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kCocycleIdentityTolerance = 1e-10;
inline constexpr double kAlgebraCocycleTolerance = 1e-9;
inline constexpr double kLambdaImageTolerance = 1e-10;
inline constexpr double kExtensionTolerance = 1e-8;
inline constexpr int kCocycleSamples = 200;

class GroupCocycle {
 public:
  GroupCocycle() = default;
  /// @p program maps R^n x R^n to R^d on the ball of radius @p radius.
  GroupCocycle(std::string name, int group_dim, SmoothProgram program, double radius);

  const std::string& name() const noexcept { return name_; }
  int group_dim() const noexcept { return n_; }
  int target_dim() const noexcept { return program_.codim(); }
  const SmoothProgram& program() const noexcept { return program_; }
  double radius() const noexcept { return radius_; }

  std::vector<double> operator()(std::span<const double> x, std::span<const double> y) const;

 private:
  std::string name_;
  int n_ = 0;
  SmoothProgram program_;
  double radius_ = 0.0;
};

/// The zero cocycle with values in R^d.
GroupCocycle zero_cocycle(int group_dim, int d = 1);

/// a f1 + b f2 (same group and target dimensions).
GroupCocycle linear_combination(double a, const GroupCocycle& f1, double b, const GroupCocycle& f2);

/// f(g0, g1) = -h(g0 g1) + h(g1) + h(g0). Requires h(e) = 0.
GroupCocycle coboundary_of(const ChartedGroup& g, const SmoothProgram& h, std::string name = {});

/// A seeded smooth potential h: R^n -> R with h(0) = 0 (linear, quadratic and
/// one transcendental term).
SmoothProgram random_potential(Rng& rng, int n);

/// min(r_f, R, 4) / 4
double cocycle_sample_radius(const ChartedGroup& g, const GroupCocycle& f);

/// Triples (g0, g1, g2) drawn from the cocycle sample ball.
std::vector<std::array<std::vector<double>, 3>> sample_triples(const ChartedGroup& g,
                                                               const GroupCocycle& f,
                                                               std::uint64_t seed,
                                                               int count = kCocycleSamples);

/// max |f(e, y)|, |f(x, e)| over sampled points.
double normalization_residual(const ChartedGroup& g, const GroupCocycle& f, std::uint64_t seed,
                              int count = kCocycleSamples);

/// max |f(g0 g1, g2) + f(g0, g1) - f(g0, g1 g2) - f(g1, g2)| over sampled
/// triples, evaluated in parallel.
double cocycle_identity_residual(const ChartedGroup& g, const GroupCocycle& f, std::uint64_t seed,
                                 int count = kCocycleSamples);
/// Serial reference of cocycle_identity_residual; bitwise identical.
double cocycle_identity_residual_serial(const ChartedGroup& g, const GroupCocycle& f,
                                        std::uint64_t seed, int count = kCocycleSamples);

/// Throws ToleranceError when normalization or the cocycle identity fail.
void verify_group_cocycle(const ChartedGroup& g, const GroupCocycle& f, std::uint64_t seed,
                          double identity_tol = kCocycleIdentityTolerance);

/// Antisymmetric bilinear map w: R^n x R^n -> R^d, stored as w[(a * n + i) * n + j].
class AlgebraCocycle {
 public:
  AlgebraCocycle() = default;
  AlgebraCocycle(int dim, int target_dim);

  /// Enforces antisymmetry from the entries with i < j.
  static AlgebraCocycle from_tensor(int dim, int target_dim, std::span<const double> tensor);

  int dim() const noexcept { return n_; }
  int target_dim() const noexcept { return d_; }
  double omega(int a, int i, int j) const { return w_[index(a, i, j)]; }
  const std::vector<double>& tensor() const noexcept { return w_; }

  /// Sets w(e_i, e_j) = value and w(e_j, e_i) = -value. Requires i != j.
  void set(int i, int j, std::span<const double> value);
  std::vector<double> operator()(std::span<const double> x, std::span<const double> y) const;

  /// max |w([e_i, e_j], e_k) + w([e_j, e_k], e_i) + w([e_k, e_i], e_j)|
  double cocycle_residual(const LieAlgebraData& g) const;
  void verify(const LieAlgebraData& g, double tol = kAlgebraCocycleTolerance) const;

  friend bool operator==(const AlgebraCocycle&, const AlgebraCocycle&) = default;

 private:
  std::size_t index(int a, int i, int j) const {
    return static_cast<std::size_t>((a * n_ + i) * n_ + j);
  }

  int n_ = 0;
  int d_ = 0;
  std::vector<double> w_;
};

double max_abs_diff(const AlgebraCocycle& a, const AlgebraCocycle& b);

/// w(x, y) = x_0 y_1 - x_1 y_0 with values in R.
AlgebraCocycle symplectic_cocycle(int dim);
/// w(x, y) = b([x, y]) for a linear functional b.
AlgebraCocycle algebra_coboundary(const LieAlgebraData& g, std::span<const double> b);

/// Chart of the extension of G by f, dimension n + d, with radius
/// min(r_f, R) / 2. Re-verifies the identity and inverse axioms.
ChartedGroup extend_group(const ChartedGroup& g, const GroupCocycle& f);

/// Structure constants of g + R^d with [(x, a), (y, b)] = ([x, y], w(x, y)).
/// Verifies w against g first and the Jacobi identity of the result.
LieAlgebraData extend_algebra(const LieAlgebraData& g, const AlgebraCocycle& w);

/// Mixed derivatives D1D2 f(e_i, e_j) at the identity as a tensor
/// d2[(a * n + i) * n + j] (x direction in the outer slot). Throws
/// ToleranceError when a mixed jet has a nonzero first-order block.
std::vector<double> mixed_second_derivative(const GroupCocycle& f,
                                            double lambda_tol = kLambdaImageTolerance);

/// L(f)(x, y) = D1D2 f(x, y) - D1D2 f(y, x); basis pairs in parallel.
AlgebraCocycle differentiate_cocycle(const ChartedGroup& g, const GroupCocycle& f,
                                     double lambda_tol = kLambdaImageTolerance);
/// Serial reference of differentiate_cocycle; bitwise identical.
AlgebraCocycle differentiate_cocycle_serial(const ChartedGroup& g, const GroupCocycle& f,
                                            double lambda_tol = kLambdaImageTolerance);

struct ExtensionComparison {
  LieAlgebraData from_group;    ///< constants of the extended group
  LieAlgebraData from_algebra;  ///< constants of g extended by L(f)
  double max_diff = 0.0;
  /// entries (k, i, j) whose difference exceeds the tolerance
  std::vector<std::array<int, 3>> mismatches;
  bool passed = false;
};

/// Compares the Lie algebra of the extended group with the algebra extended
/// by the derivative of the cocycle.
ExtensionComparison verify_extension_differentiation(const ChartedGroup& g, const GroupCocycle& f,
                                                     double tol = kExtensionTolerance);

/// (g, a) -> (g, a - h(g)) maps the extension by f onto the extension by
/// f + coboundary(h). Returns the largest difference between the constants
/// of the second extension and the transported constants of the first.
double cohomology_invariance_residual(const ChartedGroup& g, const GroupCocycle& f,
                                      const SmoothProgram& h);

}  // namespace jetlie
