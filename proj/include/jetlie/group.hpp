#pragma once

/**
 * @file group.hpp
 * @brief Lie groups in a chart centered at the identity, and their brackets.
 *
 * A chart sends 0 to the identity and has the identity as derivative at 0,
 * so a vector of R^n is both a chart direction and a Lie algebra element.
 * Two bracket constructions are provided: from the difference of the
 * iterated tangents of left-invariant fields, and from the mixed second
 * derivative of conjugation. Both read the bracket off an order-2 jet of
 * shape (e, w, 0, b).
 */

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetlie/lie_algebra.hpp"
#include "jetlie/program.hpp"
#include "jetlie/random.hpp"

namespace jetlie {

inline constexpr double kShapeTolerance = 1e-8;
inline constexpr double kBracketTolerance = 1e-10;
inline constexpr double kOracleTolerance = 1e-9;

/// Matrix realization: the Lie algebra basis as matrices and the chart map
/// into the matrix group.
struct MatrixOracle {
  std::vector<Eigen::MatrixXcd> basis;
  std::function<Eigen::MatrixXcd(std::span<const double>)> chart_to_matrix;
};

class ChartedGroup {
 public:
  ChartedGroup() = default;
  /// @p mult has arity 2n and codim n, @p inv arity and codim n.
  ChartedGroup(std::string name, int dim, SmoothProgram mult, SmoothProgram inv,
               double domain_radius, std::optional<MatrixOracle> oracle = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  const SmoothProgram& mult() const noexcept { return mult_; }
  const SmoothProgram& inv() const noexcept { return inv_; }
  /// Radius of the chart's validity ball; infinity for global charts.
  double domain_radius() const noexcept { return radius_; }
  /// min(domain_radius, 4) / 4
  double sample_radius() const noexcept;
  bool is_global() const noexcept { return radius_ == std::numeric_limits<double>::infinity(); }
  const std::optional<MatrixOracle>& oracle() const noexcept { return oracle_; }

  std::vector<double> multiply(std::span<const double> x, std::span<const double> y) const;
  std::vector<double> inverse(std::span<const double> x) const;

  /// c(g, h) = m(m(g, h), inv(g)), arity 2n.
  const SmoothProgram& conjugation() const noexcept { return conj_; }

 private:
  std::string name_;
  int dim_ = 0;
  SmoothProgram mult_;
  SmoothProgram inv_;
  SmoothProgram conj_;
  double radius_ = 0.0;
  std::optional<MatrixOracle> oracle_;
};

struct GroupAxiomResiduals {
  double right_identity = 0.0;  ///< max |m(x, 0) - x|
  double left_identity = 0.0;   ///< max |m(0, y) - y|
  double right_inverse = 0.0;   ///< max |m(x, inv(x))|
  double left_inverse = 0.0;    ///< max |m(inv(x), x)|
  double associativity = 0.0;   ///< max |m(m(x, y), z) - m(x, m(y, z))|
};

/// Residuals on @p samples points of radius sample_radius.
GroupAxiomResiduals group_axiom_residuals(const ChartedGroup& g, Rng& rng, int samples = 100);

/// Throws ToleranceError unless identity residuals are <= 1e-12 and inverse
/// residuals <= 1e-10.
void verify_group_axioms(const ChartedGroup& g, Rng& rng, int samples = 100);

// ---------------------------------------------------------------------------
// Catalog

/// so3, su2, heisenberg3, affine1, torus2, rn:<n>
ChartedGroup make_group(const std::string& name);
std::vector<std::string> group_catalog();

ChartedGroup abelian_group(int n, std::string name = {});
ChartedGroup so3_group();
ChartedGroup su2_group();
ChartedGroup heisenberg_group();
ChartedGroup affine_group();

// ---------------------------------------------------------------------------
// Brackets

/// g -> (m(g, 0), D2 m(g, 0) v): the left-invariant field extending v,
/// arity n, codim 2n.
SmoothProgram left_invariant_field(const ChartedGroup& g, std::span<const double> v);

/// The order-2 jet Tw o v - flip o Tv o w at the identity (subtraction
/// fiberwise over the outer footprint).
JetVector delta_jet(const ChartedGroup& g, std::span<const double> v, std::span<const double> w);

/// The order-2 jet of c at (e + v e2, e + w e1).
JetVector conjugation_jet(const ChartedGroup& g, std::span<const double> v,
                          std::span<const double> w);

/// Largest deviation of @p j from the shape (e, w, 0, *).
double shape_residual(const JetVector& j, std::span<const double> w);

/// Bracket from the left-invariant field construction. Throws ToleranceError
/// when the jet misses the (e, w, 0, b) shape by more than @p shape_tol.
std::vector<double> bracket_delta(const ChartedGroup& g, std::span<const double> v,
                                  std::span<const double> w, double shape_tol = kShapeTolerance);

/// Bracket from the mixed derivative of conjugation; same shape check.
std::vector<double> bracket_conjugation(const ChartedGroup& g, std::span<const double> v,
                                        std::span<const double> w,
                                        double shape_tol = kShapeTolerance);

enum class BracketMethod { Conjugation, Delta };

/// Brackets of all basis pairs, evaluated in parallel, then Jacobi-checked.
LieAlgebraData structure_constants(const ChartedGroup& g,
                                   BracketMethod method = BracketMethod::Conjugation,
                                   double jacobi_tol = kJacobiTolerance);
/// Serial reference of structure_constants; bitwise identical result.
LieAlgebraData structure_constants_serial(const ChartedGroup& g,
                                          BracketMethod method = BracketMethod::Conjugation,
                                          double jacobi_tol = kJacobiTolerance);

/// Commutator of oracle matrices expressed in the oracle basis (least
/// squares; throws ToleranceError if the commutator leaves the span).
std::vector<double> oracle_bracket(const MatrixOracle& o, std::span<const double> v,
                                   std::span<const double> w);
LieAlgebraData oracle_structure_constants(const MatrixOracle& o);

/// max |phi(m(x, y)) - phi(x) phi(y)| over sampled pairs.
double oracle_homomorphism_residual(const ChartedGroup& g, Rng& rng, int samples = 50);

// ---------------------------------------------------------------------------
// Mixed partials

struct MixedPartialResult {
  JetVector t12;  ///< T(1)T(2) f: x-direction outer, y-direction inner
  JetVector t21;  ///< T(2)T(1) f: y-direction outer, x-direction inner
  double difference = 0.0;        ///< max |t12 - t21|
  double lambda_residual = 0.0;   ///< largest first-order block of either jet
  bool passed = false;
};

/**
 * Compares the two iterated partial tangents of f: X x Y -> Z at
 * ((x0, v), (y0, w)) and checks that both lie in the image of the vertical
 * lift. Requires the slices f(x0, .) and f(., y0) to be constant, checked by
 * sampling first; a violated requirement throws PreconditionError, while a
 * failed comparison is reported through the result.
 */
MixedPartialResult mixed_partial_check(const SmoothProgram& f, InputSplit split,
                                       std::span<const double> x0, std::span<const double> y0,
                                       std::span<const double> v, std::span<const double> w,
                                       double tol = kBracketTolerance);

}  // namespace jetlie
