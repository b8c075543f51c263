#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "jetlie/error.hpp"
#include "jetlie/group.hpp"
#include "test_support.hpp"

namespace jetlie {
namespace {

using testing::vectors_near;
using Vec = std::vector<double>;

const std::vector<std::string> kCatalog{"so3", "su2", "heisenberg3", "affine1", "torus2", "rn:3"};

Vec unit(int n, int i) {
  Vec e(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

// Levi-Civita tensor as structure constants: [e_i, e_j] = eps_ijk e_k
LieAlgebraData cross_product_algebra() {
  LieAlgebraData g(3);
  g.set_bracket(0, 1, unit(3, 2));
  g.set_bracket(1, 2, unit(3, 0));
  g.set_bracket(2, 0, unit(3, 1));
  return g;
}

// ---------------------------------------------------------------------------
// catalog

TEST(Catalog, ResolvesNames) {
  for (const auto& name : kCatalog) EXPECT_EQ(make_group(name).name(), name);
  EXPECT_EQ(make_group("rn:7").dim(), 7);
  EXPECT_THROW(make_group("so4"), ConfigError);
  EXPECT_THROW(make_group("rn:0"), ConfigError);
  EXPECT_THROW(make_group("rn:x"), ConfigError);
}

TEST(Catalog, GroupAxioms) {
  for (const auto& name : kCatalog) {
    Rng rng(40);
    const auto g = make_group(name);
    EXPECT_NO_THROW(verify_group_axioms(g, rng)) << name;
    Rng rng2(41);
    EXPECT_LE(group_axiom_residuals(g, rng2).associativity, 1e-12) << name;
  }
}

TEST(Catalog, OracleIsAHomomorphism) {
  for (const auto& name : kCatalog) {
    Rng rng(42);
    EXPECT_LE(oracle_homomorphism_residual(make_group(name), rng), 1e-12) << name;
  }
}

TEST(Catalog, ChartDerivativeAtIdentityIsTheOracleBasis) {
  // T0 phi = id: the central difference of phi along e_i recovers basis i.
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    const auto& o = *g.oracle();
    const double h = 1e-6;
    for (int i = 0; i < g.dim(); ++i) {
      auto xp = unit(g.dim(), i), xm = unit(g.dim(), i);
      for (auto& v : xp) v *= h;
      for (auto& v : xm) v *= -h;
      const Eigen::MatrixXcd d = (o.chart_to_matrix(xp) - o.chart_to_matrix(xm)) / (2 * h);
      EXPECT_LE((d - o.basis[static_cast<std::size_t>(i)]).cwiseAbs().maxCoeff(), 1e-8) << name;
    }
  }
}

// ---------------------------------------------------------------------------
// left-invariant fields

TEST(LeftInvariantField, AbelianIsConstant) {
  const auto g = abelian_group(3);
  const Vec v{1.0, -2.0, 0.5};
  const auto f = left_invariant_field(g, v);
  const auto r = f.eval(Vec{0.3, 0.1, -0.7});
  EXPECT_EQ(r, (Vec{0.3, 0.1, -0.7, 1.0, -2.0, 0.5}));
}

TEST(LeftInvariantField, ValueAtIdentity) {
  Rng rng(43);
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    const auto v = random_vector(rng, static_cast<std::size_t>(g.dim()));
    const auto r = left_invariant_field(g, v).eval(Vec(static_cast<std::size_t>(g.dim()), 0.0));
    EXPECT_TRUE(vectors_near(std::span(r).subspan(static_cast<std::size_t>(g.dim())), v, 1e-15))
        << name;
  }
}

TEST(LeftInvariantField, Heisenberg) {
  // d/dt (x, y, z)(t e_i) at t = 0, from the multiplication law by hand
  const auto g = heisenberg_group();
  const Vec p{0.7, -0.3, 1.1};
  EXPECT_EQ(left_invariant_field(g, unit(3, 0)).eval(p), (Vec{0.7, -0.3, 1.1, 1.0, 0.0, 0.0}));
  EXPECT_EQ(left_invariant_field(g, unit(3, 1)).eval(p), (Vec{0.7, -0.3, 1.1, 0.0, 1.0, 0.7}));
  EXPECT_EQ(left_invariant_field(g, unit(3, 2)).eval(p), (Vec{0.7, -0.3, 1.1, 0.0, 0.0, 1.0}));
}

// ---------------------------------------------------------------------------
// brackets

TEST(Bracket, AbelianVanishes) {
  Rng rng(44);
  for (const auto& name : {"torus2", "rn:4"}) {
    const auto g = make_group(name);
    for (int i = 0; i < 10; ++i) {
      const auto v = random_vector(rng, static_cast<std::size_t>(g.dim()));
      const auto w = random_vector(rng, static_cast<std::size_t>(g.dim()));
      for (double b : bracket_delta(g, v, w)) EXPECT_EQ(b, 0.0);
      for (double b : bracket_conjugation(g, v, w)) EXPECT_EQ(b, 0.0);
    }
  }
}

TEST(Bracket, So3BasisPair) {
  const auto g = so3_group();
  EXPECT_TRUE(vectors_near(bracket_delta(g, unit(3, 0), unit(3, 1)), unit(3, 2), 1e-12));
  EXPECT_TRUE(vectors_near(bracket_conjugation(g, unit(3, 0), unit(3, 1)), unit(3, 2), 1e-12));
}

TEST(Bracket, HeisenbergBasisPairs) {
  const auto g = heisenberg_group();
  EXPECT_EQ(bracket_delta(g, unit(3, 0), unit(3, 1)), unit(3, 2));
  EXPECT_EQ(bracket_conjugation(g, unit(3, 0), unit(3, 1)), unit(3, 2));
  EXPECT_EQ(bracket_delta(g, unit(3, 0), unit(3, 2)), Vec(3, 0.0));
  EXPECT_EQ(bracket_conjugation(g, unit(3, 0), unit(3, 2)), Vec(3, 0.0));
}

TEST(Bracket, DeltaJetHasLambdaShape) {
  Rng rng(45);
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    const auto v = random_vector(rng, static_cast<std::size_t>(g.dim()));
    const auto w = random_vector(rng, static_cast<std::size_t>(g.dim()));
    EXPECT_LE(shape_residual(delta_jet(g, v, w), w), 1e-12) << name;
    EXPECT_LE(shape_residual(conjugation_jet(g, v, w), w), 1e-12) << name;
  }
}

TEST(Bracket, MethodsAgreeWithEachOtherAndTheOracle) {
  Rng rng(46);
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    for (int i = 0; i < 100; ++i) {
      const auto v = random_vector(rng, static_cast<std::size_t>(g.dim()));
      const auto w = random_vector(rng, static_cast<std::size_t>(g.dim()));
      const auto d = bracket_delta(g, v, w);
      const auto c = bracket_conjugation(g, v, w);
      const auto o = oracle_bracket(*g.oracle(), v, w);
      ASSERT_TRUE(vectors_near(d, c, kBracketTolerance)) << name;
      ASSERT_TRUE(vectors_near(d, o, kOracleTolerance)) << name;
      ASSERT_TRUE(vectors_near(c, o, kOracleTolerance)) << name;
    }
  }
}

TEST(Bracket, BilinearAndAntisymmetric) {
  Rng rng(47);
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    const auto n = static_cast<std::size_t>(g.dim());
    for (int i = 0; i < 20; ++i) {
      const auto u = random_vector(rng, n), v = random_vector(rng, n), w = random_vector(rng, n);
      const double a = uniform(rng), b = uniform(rng);
      Vec combo(n);
      for (std::size_t k = 0; k < n; ++k) combo[k] = a * u[k] + b * v[k];
      const auto lhs = bracket_conjugation(g, combo, w);
      const auto bu = bracket_conjugation(g, u, w), bv = bracket_conjugation(g, v, w);
      Vec rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs[k] = a * bu[k] + b * bv[k];
      EXPECT_TRUE(vectors_near(lhs, rhs, 1e-10)) << name;
      const auto vw = bracket_delta(g, v, w), wv = bracket_delta(g, w, v);
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(vw[k], -wv[k], 1e-10) << name;
    }
  }
}

TEST(Bracket, ShapeViolationIsReported) {
  // a "multiplication" whose identity slice is not the identity map
  ProgramBuilder bm(2);
  const auto x = bm.input(0), y = bm.input(1);
  ProgramBuilder bi(1);
  const ChartedGroup bad("bad", 1, bm.build({x + 2.0 * y}), bi.build({-bi.input(0)}), 1.0);
  EXPECT_THROW(bracket_conjugation(bad, Vec{1.0}, Vec{1.0}), ToleranceError);
  EXPECT_THROW(bracket_delta(bad, Vec{1.0}, Vec{1.0}), ToleranceError);
}

// ---------------------------------------------------------------------------
// structure constants

TEST(StructureConstants, Abelian) {
  EXPECT_EQ(structure_constants(abelian_group(4)), LieAlgebraData::abelian(4));
}

TEST(StructureConstants, So3AndSu2AreTheCrossProduct) {
  for (const auto& g : {so3_group(), su2_group()}) {
    EXPECT_LE(max_abs_diff(structure_constants(g), cross_product_algebra()), 1e-12) << g.name();
    EXPECT_LE(max_abs_diff(oracle_structure_constants(*g.oracle()), cross_product_algebra()), 1e-15);
  }
}

TEST(StructureConstants, AffineHasOneConstant) {
  const auto c = structure_constants(affine_group());
  EXPECT_EQ(c.c(1, 0, 1), 1.0);
  EXPECT_EQ(c.c(1, 1, 0), -1.0);
  EXPECT_EQ(c.c(0, 0, 1), 0.0);
  EXPECT_EQ(max_abs_diff(c, oracle_structure_constants(*affine_group().oracle())), 0.0);
}

TEST(StructureConstants, JacobiForCatalog) {
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    for (auto m : {BracketMethod::Conjugation, BracketMethod::Delta}) {
      EXPECT_LE(structure_constants(g, m).jacobi_residual(), kJacobiTolerance) << name;
    }
  }
}

TEST(StructureConstants, ParallelMatchesSerialBitwise) {
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    for (auto m : {BracketMethod::Conjugation, BracketMethod::Delta}) {
      EXPECT_EQ(structure_constants(g, m), structure_constants_serial(g, m)) << name;
    }
  }
}

TEST(StructureConstants, JacobiFailureThrows) {
  LieAlgebraData g(3);
  g.set_bracket(0, 1, unit(3, 0));
  g.set_bracket(1, 2, unit(3, 1));
  g.set_bracket(0, 2, unit(3, 1));
  EXPECT_GT(g.jacobi_residual(), 0.5);
  EXPECT_THROW(g.verify_jacobi(), ToleranceError);
}

// ---------------------------------------------------------------------------
// partial derivatives of the multiplication

TEST(PartialSum, TangentOfMultiplicationSplits) {
  Rng rng(48);
  for (const auto& name : kCatalog) {
    const auto g = make_group(name);
    const int n = g.dim();
    const auto tm = tangent(g.mult());
    const auto t1 = partial_tangent(g.mult(), 1, {n, n});
    const auto t2 = partial_tangent(g.mult(), 2, {n, n});
    const bool polynomial = name == "heisenberg3" || name == "torus2" || name == "rn:3";
    for (int s = 0; s < 20; ++s) {
      // dyadic inputs keep polynomial arithmetic free of rounding
      auto sample = [&](double scale) {
        auto v = random_vector(rng, static_cast<std::size_t>(n), scale);
        if (polynomial) {
          for (auto& c : v) c = std::round(c * 8.0) / 8.0;
        }
        return v;
      };
      const double r = g.sample_radius() / std::sqrt(static_cast<double>(n));
      const auto x = sample(r), y = sample(r), vx = sample(1.0), vy = sample(1.0);
      Vec in_full = x, in1 = x, in2 = x;
      in_full.insert(in_full.end(), y.begin(), y.end());
      in_full.insert(in_full.end(), vx.begin(), vx.end());
      in_full.insert(in_full.end(), vy.begin(), vy.end());
      in1.insert(in1.end(), vx.begin(), vx.end());
      in1.insert(in1.end(), y.begin(), y.end());
      in2.insert(in2.end(), y.begin(), y.end());
      in2.insert(in2.end(), vy.begin(), vy.end());
      const auto full = tm.eval(in_full), a = t1.eval(in1), b = t2.eval(in2);
      for (int k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(n + k);
        const double sum = a[kk] + b[kk];
        if (polynomial) {
          EXPECT_EQ(full[kk], sum) << name;
        } else {
          EXPECT_LE(testing::rel_diff(full[kk], sum), 1e-12) << name;
        }
      }
    }
  }
}

TEST(MixedPartial, BilinearProduct) {
  ProgramBuilder b(2);
  const auto f = b.build({b.input(0) * b.input(1)});
  const auto r = mixed_partial_check(f, {1, 1}, Vec{0.0}, Vec{0.0}, Vec{3.0}, Vec{-2.0});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.t12.to_blocks(), (Vec{0.0, 0.0, 0.0, -6.0}));
  EXPECT_EQ(r.t21.to_blocks(), (Vec{0.0, 0.0, 0.0, -6.0}));
}

TEST(MixedPartial, NormalizedCocycleAtIdentity) {
  // f((x1, x2), (y1, y2)) = x1 y2 + sin(x2) y1^2 vanishes when either argument is 0
  ProgramBuilder b(4);
  const auto x = b.inputs(0, 2), y = b.inputs(2, 2);
  const auto f = b.build({x[0] * y[1] + sin(x[1]) * y[0] * y[0]});
  const auto r = mixed_partial_check(f, {2, 2}, Vec{0.0, 0.0}, Vec{0.0, 0.0}, Vec{1.0, 2.0},
                                     Vec{3.0, 4.0});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.t12[0][3], 4.0);
}

TEST(MixedPartial, SumViolatesPrecondition) {
  ProgramBuilder b(2);
  const auto f = b.build({b.input(0) + b.input(1)});
  EXPECT_THROW(mixed_partial_check(f, {1, 1}, Vec{0.0}, Vec{0.0}, Vec{1.0}, Vec{1.0}),
               PreconditionError);
}

// ---------------------------------------------------------------------------
// Lie algebra data

TEST(LieAlgebra, ChangeOfBasisRoundTrip) {
  const auto g = structure_constants(heisenberg_group());
  const Vec p{2.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, -1.0, 3.0};
  const Vec pinv_check = {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  const auto h = change_basis(g, p);
  EXPECT_LE(h.jacobi_residual(), 1e-12);
  EXPECT_LE(max_abs_diff(change_basis(g, pinv_check), g), 0.0);
}

TEST(LieAlgebra, CenterDimension) {
  EXPECT_EQ(structure_constants(heisenberg_group()).center_dimension(), 1);
  EXPECT_EQ(cross_product_algebra().center_dimension(), 0);
  EXPECT_EQ(LieAlgebraData::abelian(3).center_dimension(), 3);
}

}  // namespace
}  // namespace jetlie
