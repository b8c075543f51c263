#include "jetlie/exact.hpp"

#include <cmath>
#include <sstream>

#include "jetlie/error.hpp"

namespace jetlie {

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

bool square_free(long d) {
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

}  // namespace

QuadraticNumber::QuadraticNumber(Rational a, Rational b, long radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
  if (d_ < 2 || !square_free(d_)) {
    throw PreconditionError("QuadraticNumber: radicand must be square-free and > 1");
  }
}

long QuadraticNumber::common_radicand(const QuadraticNumber& o) const {
  if (d_ == o.d_ || o.b_ == 0) return d_;
  if (b_ == 0) return o.d_;
  throw PreconditionError("QuadraticNumber: mixing sqrt(" + std::to_string(d_) + ") and sqrt(" +
                          std::to_string(o.d_) + ")");
}

int QuadraticNumber::sign() const {
  const int sa = sign_of(a_), sb = sign_of(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with d b^2
  const int sn = sign_of(norm());
  return sn > 0 ? sa : sb;
}

double QuadraticNumber::to_double() const {
  return jetlie::to_double(a_) + jetlie::to_double(b_) * std::sqrt(static_cast<double>(d_));
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  d_ = common_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  const long d = common_radicand(o);
  const Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
  const Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  if (o.is_zero()) throw DomainError("QuadraticNumber: division by zero");
  const long d = common_radicand(o);
  const Rational n = o.norm();
  QuadraticNumber q(a_, b_, d);
  q *= QuadraticNumber(o.a_ / n, -o.b_ / n, d);
  return *this = q;
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.b_ == 0 && y.b_ == 0) return x.a_ == y.a_;
  return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) {
  os << x.rational_part();
  if (x.irrational_part() != 0) os << " + " << x.irrational_part() << "*sqrt" << x.radicand();
  return os;
}

std::string to_string(const QuadraticNumber& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

template <class F>
std::optional<std::vector<F>> exact_solve(const ExactMatrix<F>& a, const std::vector<F>& b) {
  if (a.size() != b.size()) throw PreconditionError("exact_solve: shape mismatch");
  if (a.empty()) return std::vector<F>{};
  const std::size_t cols = a[0].size();
  ExactMatrix<F> aug(a);
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != cols) throw PreconditionError("exact_solve: ragged matrix");
    aug[i].push_back(b[i]);
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  if (pivots.size() != cols) throw PreconditionError("exact_solve: dependent columns");
  std::vector<F> x(cols);
  for (std::size_t r = 0; r < cols; ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

template std::optional<std::vector<Rational>> exact_solve(const ExactMatrix<Rational>&,
                                                          const std::vector<Rational>&);
template std::optional<std::vector<QuadraticNumber>> exact_solve(
    const ExactMatrix<QuadraticNumber>&, const std::vector<QuadraticNumber>&);

}  // namespace jetlie
