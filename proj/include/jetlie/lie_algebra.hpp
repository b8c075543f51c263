#pragma once

/**
 * @file lie_algebra.hpp
 * @brief Finite-dimensional real Lie algebras by structure constants.
 */

#include <span>
#include <vector>

namespace jetlie {

inline constexpr double kJacobiTolerance = 1e-8;

/// Structure constants c^k_ij with [e_i, e_j] = sum_k c^k_ij e_k.
/// Storage is antisymmetric by construction: set() writes both c^k_ij and
/// c^k_ji = -c^k_ij.
class LieAlgebraData {
 public:
  LieAlgebraData() = default;
  explicit LieAlgebraData(int dim);

  /// Reads a full tensor laid out as c[(k * n + i) * n + j] and enforces
  /// antisymmetry from the entries with i < j.
  static LieAlgebraData from_tensor(int dim, std::span<const double> tensor);
  static LieAlgebraData abelian(int dim) { return LieAlgebraData(dim); }

  int dim() const noexcept { return dim_; }
  double c(int k, int i, int j) const { return c_[index(k, i, j)]; }
  const std::vector<double>& tensor() const noexcept { return c_; }

  /// Sets [e_i, e_j] = value (and [e_j, e_i] = -value). Requires i != j.
  void set_bracket(int i, int j, std::span<const double> value);
  std::vector<double> basis_bracket(int i, int j) const;
  std::vector<double> bracket(std::span<const double> x, std::span<const double> y) const;

  /// Largest |sum_m c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj| over i,j,k,l.
  double jacobi_residual() const;
  /// Throws ToleranceError when the Jacobi residual exceeds @p tol.
  void verify_jacobi(double tol = kJacobiTolerance) const;

  /// Dimension of the center, from the singular values of the stacked
  /// adjoint matrices (values below @p tol count as zero).
  int center_dimension(double tol = 1e-10) const;
  /// max_j |[x, e_j]|
  double centrality_residual(std::span<const double> x) const;

  friend bool operator==(const LieAlgebraData&, const LieAlgebraData&) = default;

 private:
  std::size_t index(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }

  int dim_ = 0;
  std::vector<double> c_;
};

/// Largest absolute difference of structure constants; throws on dimension
/// mismatch.
double max_abs_diff(const LieAlgebraData& a, const LieAlgebraData& b);

/// Direct sum g + a with a abelian of dimension @p d (extra coordinates last).
LieAlgebraData direct_sum_abelian(const LieAlgebraData& g, int d);

/// The basis change x' = P x applied to the constants:
/// c'(x', y') = P [P^-1 x', P^-1 y']. @p p is row-major n x n.
LieAlgebraData change_basis(const LieAlgebraData& g, std::span<const double> p);

}  // namespace jetlie
