#pragma once

/**
 * @file exact.hpp
 * @brief Exact rationals and the quadratic fields Q(sqrt d), with Gaussian
 * elimination over either.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace jetlie {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

/// a + b sqrt(d) with rational a, b and a square-free radicand d > 1.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a, Rational b = 0, long radicand = 2);
  QuadraticNumber(long long a) : QuadraticNumber(Rational(a)) {}  // NOLINT(implicit)

  /// sqrt(d) itself.
  static QuadraticNumber root(long radicand = 2) { return {0, 1, radicand}; }

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& irrational_part() const noexcept { return b_; }
  long radicand() const noexcept { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  /// Exact sign: -1, 0 or 1.
  int sign() const;
  double to_double() const;
  QuadraticNumber conjugate() const { return {a_, -b_, d_}; }
  /// a^2 - d b^2
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  friend QuadraticNumber operator-(const QuadraticNumber& x) { return {-x.a_, -x.b_, x.d_}; }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() < 0;
  }

 private:
  long common_radicand(const QuadraticNumber& o) const;

  Rational a_ = 0;
  Rational b_ = 0;
  long d_ = 2;
};

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x);
std::string to_string(const QuadraticNumber& x);

using QVector = std::vector<QuadraticNumber>;

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const QuadraticNumber& x) { return x.is_zero(); }

template <class F>
using ExactMatrix = std::vector<std::vector<F>>;

/// Row-reduces @p m in place to reduced echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(ExactMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const F inv = F(1) / m[r][c];
    for (auto& v : m[r]) v = v * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      const F f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int exact_rank(ExactMatrix<F> m) {
  return static_cast<int>(row_reduce(m).size());
}

/// The unique solution of A x = b when A has independent columns; nullopt
/// when the system is inconsistent. Throws PreconditionError on dependent
/// columns.
template <class F>
std::optional<std::vector<F>> exact_solve(const ExactMatrix<F>& a, const std::vector<F>& b);

extern template std::optional<std::vector<Rational>> exact_solve(const ExactMatrix<Rational>&,
                                                                 const std::vector<Rational>&);
extern template std::optional<std::vector<QuadraticNumber>> exact_solve(
    const ExactMatrix<QuadraticNumber>&, const std::vector<QuadraticNumber>&);

}  // namespace jetlie
