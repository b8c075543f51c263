#include <gtest/gtest.h>

#include <cmath>

#include "jetlie/error.hpp"
#include "jetlie/lattice.hpp"
#include "jetlie/random.hpp"
#include "test_support.hpp"

namespace jetlie {
namespace {

using Vec = std::vector<double>;
using Q = QuadraticNumber;

Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  return Rational(num(rng), den(rng));
}

Q random_quadratic(Rng& rng) { return Q(random_rational(rng), random_rational(rng)); }

// ---------------------------------------------------------------------------
// exact arithmetic

TEST(QuadraticNumber, Products) {
  const Q one_plus(1, 1), one_minus(1, -1);
  EXPECT_EQ(one_plus * one_minus, Q(-1));
  EXPECT_EQ(Q(1) / one_plus, Q(-1, 1));
  EXPECT_EQ(Q::root() * Q::root(), Q(2));
  EXPECT_EQ(Q::root(3) * Q::root(3), Q(3, 0, 3));
}

TEST(QuadraticNumber, ExactSign) {
  EXPECT_EQ(Q(3, -2).sign(), 1);   // 9 > 8
  EXPECT_EQ(Q(7, -5).sign(), -1);  // 49 < 50
  EXPECT_EQ(Q(-7, 5).sign(), 1);
  EXPECT_EQ(Q(0).sign(), 0);
  EXPECT_TRUE(Q(1) < Q::root());
  EXPECT_TRUE(Q(Rational(141, 100)) < Q::root());
  EXPECT_TRUE(Q::root() < Q(Rational(142, 100)));
}

TEST(QuadraticNumber, SignMatchesFloatingPoint) {
  Rng rng(90);
  for (int i = 0; i < 1000; ++i) {
    const Q x = random_quadratic(rng);
    const double v = x.to_double();
    if (std::abs(v) > 1e-9) EXPECT_EQ(x.sign(), v > 0 ? 1 : -1) << x;
  }
}

TEST(QuadraticNumber, FieldLaws) {
  Rng rng(91);
  for (int i = 0; i < 300; ++i) {
    const Q a = random_quadratic(rng), b = random_quadratic(rng), c = random_quadratic(rng);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a - a, Q(0));
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    EXPECT_NEAR((a * b).to_double(), a.to_double() * b.to_double(), 1e-9);
  }
}

TEST(QuadraticNumber, Errors) {
  EXPECT_THROW(Q(1, 1, 4), PreconditionError);
  EXPECT_THROW(Q(1) / Q(0), DomainError);
  EXPECT_THROW(Q::root(2) + Q::root(3), PreconditionError);
  EXPECT_NO_THROW(Q(1) + Q::root(3));
}

TEST(ExactSolve, RationalSystems) {
  const ExactMatrix<Rational> a{{1, 2}, {3, 4}, {5, 6}};
  const auto x = exact_solve(a, std::vector<Rational>{5, 11, 17});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Rational(1));
  EXPECT_EQ((*x)[1], Rational(2));
  EXPECT_FALSE(exact_solve(a, std::vector<Rational>{5, 11, 18}).has_value());
  const ExactMatrix<Rational> dep{{1, 2}, {2, 4}};
  EXPECT_THROW(exact_solve(dep, std::vector<Rational>{1, 2}), PreconditionError);
  EXPECT_EQ(exact_rank(dep), 1);
}

TEST(ExactSolve, QuadraticField) {
  // [1, sqrt2; sqrt2, 1] x = (1, 0)
  const ExactMatrix<Q> a{{Q(1), Q::root()}, {Q::root(), Q(1)}};
  const auto x = exact_solve(a, std::vector<Q>{Q(1), Q(0)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Q(-1));
  EXPECT_EQ((*x)[1], Q(0, 1));
  EXPECT_EQ(exact_rank(ExactMatrix<Q>{{Q(1), Q::root()}, {Q::root(), Q(2)}}), 1);
}

// ---------------------------------------------------------------------------
// discreteness

TEST(Discreteness, Examples) {
  EXPECT_EQ(is_discrete(Lattice::integer(2)), Discreteness::Discrete);
  EXPECT_EQ(is_discrete(Lattice::integer_plus(Q::root())), Discreteness::NotDiscrete);
  EXPECT_EQ(is_discrete(Lattice(1, std::vector<Vec>{{1.0}, {0.5}})), Discreteness::Unknown);
  EXPECT_EQ(is_discrete(Lattice(1, std::vector<QVector>{{Q(1)}, {Q(Rational(1, 2))}})),
            Discreteness::Discrete);
  EXPECT_EQ(is_discrete(Lattice(2, std::vector<QVector>{{Q(1), Q(0)}, {Q::root(), Q(0)}, {Q(0), Q(1)}})),
            Discreteness::NotDiscrete);
  EXPECT_EQ(is_discrete(Lattice(2, std::vector<QVector>{{Q(1), Q::root()}, {Q(0), Q(1)}})),
            Discreteness::Discrete);
  EXPECT_EQ(is_discrete(Lattice(2, std::vector<Vec>{{1.0, 0.0}, {0.5, 1.0}})), Discreteness::Discrete);
}

TEST(Lattice, RejectsZeroGenerators) {
  EXPECT_THROW(Lattice(2, std::vector<Vec>{{0.0, 0.0}}), PreconditionError);
  EXPECT_THROW(Lattice(1, std::vector<QVector>{{Q(0)}}), PreconditionError);
  EXPECT_THROW(Lattice(1, std::vector<Vec>{{1.0, 0.0}}), PreconditionError);
}

TEST(Lattice, Elements) {
  const auto l = Lattice::integer_plus(Q::root());
  const std::vector<long long> k{3, 2};
  EXPECT_EQ(l.exact_element(k), (QVector{Q(3, 2)}));
  EXPECT_NEAR(l.element(k)[0], 3.0 + 2.0 * std::sqrt(2.0), 1e-15);
}

// ---------------------------------------------------------------------------
// reduction

TEST(Reduce, Examples) {
  const auto z2 = Lattice::integer(2);
  EXPECT_EQ(reduce(z2, Vec{2.5, -0.5}), (Vec{0.5, 0.5}));
  EXPECT_EQ(reduce(z2, Vec{0.0, 0.0}), (Vec{0.0, 0.0}));
  // skewed basis (1, 0), (1/2, 1): x = (2.75, 1.5) has coordinates (2, 1.5)
  const Lattice skew(2, std::vector<Vec>{{1.0, 0.0}, {0.5, 1.0}});
  EXPECT_TRUE(testing::vectors_near(lattice_coords(skew, Vec{2.75, 1.5}), Vec{2.0, 1.5}, 1e-15));
  EXPECT_TRUE(testing::vectors_near(reduce(skew, Vec{2.75, 1.5}), Vec{0.25, 0.5}, 1e-15));
}

TEST(Reduce, SnapsNearIntegers) {
  const auto z = Lattice::integer(1);
  EXPECT_NEAR(reduce(z, Vec{3.0 - 1e-11})[0], -1e-11, 1e-15);  // snapped to 3, not wrapped
  EXPECT_NEAR(reduce(z, Vec{3.0 - 1e-6})[0], 1.0 - 1e-6, 1e-12);
}

TEST(Reduce, KeepsOrthogonalPart) {
  const Lattice l(2, std::vector<Vec>{{1.0, 1.0}});
  EXPECT_TRUE(testing::vectors_near(reduce(l, Vec{2.5, 1.5}), Vec{0.5, -0.5}, 1e-15));
}

TEST(Reduce, RetractionProperties) {
  const Lattice skew(2, std::vector<Vec>{{1.0, 0.0}, {0.5, 1.0}});
  Rng rng(92);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_vector(rng, 2, 10.0);
    const auto r = reduce(skew, x);
    for (double c : lattice_coords(skew, r)) {
      EXPECT_GE(c, -kLatticeSnapTolerance);
      EXPECT_LT(c, 1.0);
    }
    EXPECT_TRUE(testing::vectors_near(reduce(skew, r), r, 1e-12));
    EXPECT_TRUE(coset_equal(skew, x, r));
    // shifting by a generator leaves the representative in place
    const std::vector<long long> k{1, -2};
    const auto g = skew.element(k);
    EXPECT_TRUE(testing::vectors_near(reduce(skew, Vec{x[0] + g[0], x[1] + g[1]}), r, 1e-12));
  }
}

TEST(Reduce, NeedsDiscreteLattice) {
  EXPECT_THROW(reduce(Lattice::integer_plus(Q::root()), Vec{0.5}), PreconditionError);
  EXPECT_THROW(reduce(Lattice(1, std::vector<Vec>{{1.0}, {0.5}}), Vec{0.5}), PreconditionError);
}

// ---------------------------------------------------------------------------
// cosets

TEST(CosetEqual, ExactIrrationalLattice) {
  const auto l = Lattice::integer_plus(Q::root());
  EXPECT_TRUE(coset_equal(l, QVector{Q(3, 2)}, QVector{Q(0)}));
  EXPECT_FALSE(coset_equal(l, QVector{Q(Rational(1, 2))}, QVector{Q(0)}));
  EXPECT_TRUE(coset_equal(l, QVector{Q(Rational(1, 3), 5)}, QVector{Q(Rational(1, 3), 5)}));
  EXPECT_FALSE(coset_equal(l, QVector{Q(0, Rational(1, 2))}, QVector{Q(0)}));
}

TEST(CosetEqual, FloatingPointOnDenseLatticeIsRejected) {
  EXPECT_THROW(coset_equal(Lattice::integer_plus(Q::root()), Vec{0.5}, Vec{0.0}), PreconditionError);
  EXPECT_THROW(coset_equal(Lattice::integer(1), QVector{Q(1)}, QVector{Q(0)}), PreconditionError);
}

TEST(CosetEqual, EquivalenceRelationExact) {
  const auto l = Lattice::integer_plus(Q::root());
  Rng rng(93);
  std::uniform_int_distribution<int> pick(0, 2), coef(-3, 3);
  const QVector bases[3] = {{Q(0)}, {Q(Rational(1, 2))}, {Q(0, Rational(1, 3))}};
  auto sample = [&] {
    const std::vector<long long> k{coef(rng), coef(rng)};
    return QVector{bases[pick(rng)][0] + l.exact_element(k)[0]};
  };
  int related = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample(), y = sample(), z = sample();
    EXPECT_TRUE(coset_equal(l, x, x));
    const bool xy = coset_equal(l, x, y), yz = coset_equal(l, y, z);
    EXPECT_EQ(xy, coset_equal(l, y, x));
    if (xy && yz) {
      EXPECT_TRUE(coset_equal(l, x, z));
      ++related;
    }
  }
  EXPECT_GT(related, 50);
}

TEST(CosetEqual, EquivalenceRelationDiscrete) {
  const auto l = Lattice::integer(2);
  Rng rng(94);
  std::uniform_int_distribution<int> pick(0, 2), coef(-3, 3);
  const Vec bases[3] = {{0.0, 0.0}, {0.5, 0.25}, {0.125, 0.75}};
  auto sample = [&] {
    const auto& b = bases[pick(rng)];
    return Vec{b[0] + coef(rng), b[1] + coef(rng)};
  };
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample(), y = sample(), z = sample();
    EXPECT_TRUE(coset_equal(l, x, x));
    EXPECT_EQ(coset_equal(l, x, y), coset_equal(l, y, x));
    if (coset_equal(l, x, y) && coset_equal(l, y, z)) EXPECT_TRUE(coset_equal(l, x, z));
  }
  EXPECT_FALSE(coset_equal(Lattice(2, std::vector<Vec>{{1.0, 1.0}}), Vec{0.5, 0.0}, Vec{0.0, 0.0}));
}

// ---------------------------------------------------------------------------
// shifts

std::vector<std::vector<long long>> unit_shifts(int rank) {
  std::vector<std::vector<long long>> out;
  for (long long a : {1LL, -2LL, 5LL}) {
    std::vector<long long> k(static_cast<std::size_t>(rank), 0);
    for (auto& c : k) c = a--;
    out.push_back(k);
  }
  return out;
}

TEST(ShiftInvariance, Torus) {
  const auto r = shift_invariance_check(make_group("torus2"), Lattice::integer(2), 0, unit_shifts(2));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.reference, LieAlgebraData::abelian(2));
  EXPECT_EQ(r.max_constant_diff, 0.0);
}

TEST(ShiftInvariance, IrrationalTorus) {
  const auto r = shift_invariance_check(abelian_group(1, "irrational-torus"),
                                        Lattice::integer_plus(Q::root()), 0, unit_shifts(2));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_constant_diff, 0.0);
}

TEST(ShiftInvariance, NonPeriodicChartIsReported) {
  const auto r = shift_invariance_check(heisenberg_group(), Lattice::integer(1), 0, unit_shifts(1));
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_value_residual, 0.1);
  EXPECT_TRUE(std::isinf(r.max_constant_diff));
}

TEST(HeisenbergOverTorus, PeriodLatticeIsIntegers) {
  const auto h = heisenberg_over_torus();
  EXPECT_NEAR(h.period, 1.0, 1e-10);
  EXPECT_EQ(is_discrete(h.periods), Discreteness::Discrete);
  EXPECT_TRUE(coset_equal(h.periods, Vec{3.0}, Vec{0.0}));
}

TEST(HeisenbergOverTorus, ConstantsMatchAlgebraUnderShifts) {
  const auto h = heisenberg_over_torus();
  const auto expected = extend_algebra(LieAlgebraData::abelian(2), symplectic_cocycle(2));
  const auto r = shift_invariance_check(h.extension, h.periods, 2, unit_shifts(1));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_constant_diff, 0.0);
  EXPECT_LE(max_abs_diff(r.reference, expected), 1e-8);
}

TEST(HeisenbergOverTorus, ReducedCocycleIdentity) {
  const auto h = heisenberg_over_torus();
  const auto r = reduced_cocycle_identity(h.base, h.cocycle, h.periods, 5);
  EXPECT_TRUE(r.passed) << r.reduced_defect << " " << r.integrality_defect;
  EXPECT_GT(r.wrapped_terms, 0);
  EXPECT_LE(r.raw_defect, 1e-12);
}

}  // namespace
}  // namespace jetlie
