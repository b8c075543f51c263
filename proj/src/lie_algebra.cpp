#include "jetlie/lie_algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "jetlie/error.hpp"

namespace jetlie {

LieAlgebraData::LieAlgebraData(int dim) : dim_(dim) {
  if (dim < 0) throw PreconditionError("negative Lie algebra dimension");
  c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

LieAlgebraData LieAlgebraData::from_tensor(int dim, std::span<const double> tensor) {
  LieAlgebraData g(dim);
  if (tensor.size() != g.c_.size()) throw PreconditionError("structure tensor has wrong size");
  std::vector<double> col(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) col[static_cast<std::size_t>(k)] = tensor[g.index(k, i, j)];
      g.set_bracket(i, j, col);
    }
  }
  return g;
}

void LieAlgebraData::set_bracket(int i, int j, std::span<const double> value) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || i == j) {
    throw PreconditionError("set_bracket: bad basis pair");
  }
  if (static_cast<int>(value.size()) != dim_) throw PreconditionError("set_bracket: wrong length");
  for (int k = 0; k < dim_; ++k) {
    const double v = value[static_cast<std::size_t>(k)];
    c_[index(k, i, j)] = v;
    c_[index(k, j, i)] = -v;
  }
}

std::vector<double> LieAlgebraData::basis_bracket(int i, int j) const {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (int k = 0; k < dim_; ++k) out[static_cast<std::size_t>(k)] = c(k, i, j);
  return out;
}

std::vector<double> LieAlgebraData::bracket(std::span<const double> x,
                                            std::span<const double> y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_) {
    throw PreconditionError("bracket: wrong vector length");
  }
  std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
  for (int k = 0; k < dim_; ++k) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        s += c(k, i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      }
    }
    out[static_cast<std::size_t>(k)] = s;
  }
  return out;
}

double LieAlgebraData::jacobi_residual() const {
  const int n = dim_;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) {
            s += c(m, i, j) * c(l, m, k) + c(m, j, k) * c(l, m, i) + c(m, k, i) * c(l, m, j);
          }
          worst = std::max(worst, std::abs(s));
        }
      }
    }
  }
  return worst;
}

void LieAlgebraData::verify_jacobi(double tol) const {
  const double r = jacobi_residual();
  if (!(r <= tol)) {
    throw ToleranceError("Jacobi residual " + std::to_string(r) + " exceeds " + std::to_string(tol));
  }
}

int LieAlgebraData::center_dimension(double tol) const {
  const int n = dim_;
  if (n == 0) return 0;
  // x is central iff sum_i c^k_ij x_i = 0 for all j, k
  Eigen::MatrixXd a(n * n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) a(j * n + k, i) = c(k, i, j);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) ++rank;
  }
  return n - rank;
}

double LieAlgebraData::centrality_residual(std::span<const double> x) const {
  double worst = 0.0;
  std::vector<double> e(static_cast<std::size_t>(dim_), 0.0);
  for (int j = 0; j < dim_; ++j) {
    e[static_cast<std::size_t>(j)] = 1.0;
    for (double v : bracket(x, e)) worst = std::max(worst, std::abs(v));
    e[static_cast<std::size_t>(j)] = 0.0;
  }
  return worst;
}

double max_abs_diff(const LieAlgebraData& a, const LieAlgebraData& b) {
  if (a.dim() != b.dim()) {
    throw PreconditionError("Lie algebras differ in dimension: " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.tensor().size(); ++i) {
    worst = std::max(worst, std::abs(a.tensor()[i] - b.tensor()[i]));
  }
  return worst;
}

LieAlgebraData direct_sum_abelian(const LieAlgebraData& g, int d) {
  const int n = g.dim();
  LieAlgebraData out(n + d);
  std::vector<double> col(static_cast<std::size_t>(n + d), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = g.c(k, i, j);
      out.set_bracket(i, j, col);
    }
  }
  return out;
}

LieAlgebraData change_basis(const LieAlgebraData& g, std::span<const double> p) {
  const int n = g.dim();
  if (static_cast<int>(p.size()) != n * n) throw PreconditionError("change_basis: wrong matrix size");
  Eigen::MatrixXd pm(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) pm(r, c) = p[static_cast<std::size_t>(r * n + c)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(pm);
  if (!lu.isInvertible()) throw PreconditionError("change_basis: singular matrix");
  const Eigen::MatrixXd pinv = lu.inverse();
  LieAlgebraData out(n);
  std::vector<double> xi(static_cast<std::size_t>(n)), yj(static_cast<std::size_t>(n));
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int r = 0; r < n; ++r) {
        xi[static_cast<std::size_t>(r)] = pinv(r, i);
        yj[static_cast<std::size_t>(r)] = pinv(r, j);
      }
      const auto b = g.bracket(xi, yj);
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += pm(r, c) * b[static_cast<std::size_t>(c)];
        col[static_cast<std::size_t>(r)] = s;
      }
      out.set_bracket(i, j, col);
    }
  }
  return out;
}

}  // namespace jetlie
