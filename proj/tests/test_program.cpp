#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "jetlie/error.hpp"
#include "jetlie/program.hpp"
#include "jetlie/random.hpp"
#include "test_support.hpp"

namespace jetlie {
namespace {

using testing::jets_near;
using testing::vectors_near;

using Vec = std::vector<double>;

SmoothProgram square() {
  ProgramBuilder b(1);
  const auto x = b.input(0);
  return b.build({x * x});
}

SmoothProgram cube() {
  ProgramBuilder b(1);
  const auto x = b.input(0);
  return b.build({x * x * x});
}

SmoothProgram times() {
  ProgramBuilder b(2);
  return b.build({b.input(0) * b.input(1)});
}

SmoothProgram plus() {
  ProgramBuilder b(2);
  return b.build({b.input(0) + b.input(1)});
}

// ---------------------------------------------------------------------------
// evaluation

TEST(Eval, Reals) { EXPECT_EQ(square().eval(Vec{3.0}), Vec{9.0}); }

TEST(Eval, DualNumber) {
  const auto r = square().eval(seed(Vec{3.0}, Vec{1.0}, 1, 1));
  EXPECT_EQ(r[0][0], 9.0);
  EXPECT_EQ(r[0][1], 6.0);
}

TEST(Eval, BilinearMixedTerm) {
  std::vector<JetScalar> in{JetScalar::variable(0.0, 1, 2), JetScalar::variable(0.0, 2, 2)};
  const auto r = times().eval(std::span<const JetScalar>(in));
  EXPECT_EQ(r[0][0], 0.0);
  EXPECT_EQ(r[0][1], 0.0);
  EXPECT_EQ(r[0][2], 0.0);
  EXPECT_EQ(r[0][3], 1.0);
}

TEST(Eval, RealAndJetBaseAgreeExactly) {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_transcendental_program(rng, 3, 2);
    const auto x = random_vector(rng, 3);
    const auto real = p.eval(x);
    const auto jet = p.eval(JetVector::constant(x, 2));
    EXPECT_EQ(jet.base(), real);
  }
}

TEST(Eval, DomainGuards) {
  ProgramBuilder b(1);
  const auto x = b.input(0);
  const auto p = b.build({log(x), sqrt(x), 1.0 / x});
  EXPECT_THROW(p.eval(Vec{0.0}), DomainError);
  EXPECT_THROW(p.eval(Vec{-1.0}), DomainError);
  EXPECT_THROW(p.eval(seed(Vec{-1.0}, Vec{1.0}, 1, 1)), DomainError);
  EXPECT_NO_THROW(p.eval(Vec{2.0}));
}

TEST(Eval, ArityChecked) { EXPECT_THROW(square().eval(Vec{1.0, 2.0}), PreconditionError); }

TEST(Program, RejectsNonTopologicalGraphs) {
  std::vector<Node> nodes(2);
  nodes[0].op = Op::Input;
  nodes[0].k = 0;
  nodes[1].op = Op::Add;
  nodes[1].a = 0;
  nodes[1].b = 1;
  EXPECT_THROW(SmoothProgram(1, nodes, {1}), PreconditionError);
  EXPECT_THROW(SmoothProgram(1, {nodes[0]}, {4}), PreconditionError);
}

TEST(Builder, FoldsAndShares) {
  ProgramBuilder b(2);
  const auto x = b.input(0), y = b.input(1);
  EXPECT_EQ((x * y).id(), (y * x).id());
  EXPECT_EQ((x + 0.0).id(), x.id());
  EXPECT_EQ((x * 1.0).id(), x.id());
  EXPECT_EQ((-(-x)).id(), x.id());
  EXPECT_EQ((x - x).id(), b.constant(0.0).id());
  EXPECT_EQ(powi(x, 1).id(), x.id());
  const auto p = b.build({x * 0.0 + (b.constant(2.0) * 3.0)});
  EXPECT_EQ(p.eval(Vec{5.0, 7.0}), Vec{6.0});
  // dead nodes are dropped
  EXPECT_EQ(p.nodes().size(), 3u);
}

TEST(Builder, KeepsDomainErrorsOfConstants) {
  ProgramBuilder b(1);
  const auto p = b.build({log(b.constant(-1.0)) + b.input(0)});
  EXPECT_THROW(p.eval(Vec{1.0}), DomainError);
}

TEST(Builder, ForeignExpressionRejected) {
  ProgramBuilder a(1), b(1);
  EXPECT_THROW(a.input(0) + b.input(0), PreconditionError);
}

// ---------------------------------------------------------------------------
// tangent

TEST(Tangent, Cube) { EXPECT_EQ(tangent(cube()).eval(Vec{2.0, 1.0}), (Vec{8.0, 12.0})); }

TEST(Tangent, IdentityIsIdentity) {
  const auto t = tangent(identity_program(3));
  const Vec x{1.0, -2.0, 3.0, 0.5, 0.25, -4.0};
  EXPECT_EQ(t.eval(x), x);
}

TEST(Tangent, FunctorialOnPolynomials) {
  Rng rng(22);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_polynomial_program(rng, 2, 3);
    const auto g = random_polynomial_program(rng, 3, 2);
    const auto lhs = tangent(compose(g, f));
    const auto rhs = compose(tangent(g), tangent(f));
    const auto x = random_vector(rng, 4);
    const auto a = lhs.eval(x), b = rhs.eval(x);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE(testing::rel_diff(a[k], b[k]), 1e-12);
  }
}

TEST(Tangent, FunctorialOnTranscendentals) {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_transcendental_program(rng, 2, 2);
    const auto g = random_transcendental_program(rng, 2, 2);
    const auto x = random_vector(rng, 4);
    const auto a = tangent(compose(g, f)).eval(x);
    const auto b = compose(tangent(g), tangent(f)).eval(x);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE(testing::rel_diff(a[k], b[k]), 1e-12);
  }
}

TEST(Tangent, AgreesWithJetEvaluation) {
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_transcendental_program(rng, 3, 2);
    const auto u = random_vector(rng, 3), v = random_vector(rng, 3);
    Vec uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    const auto t = tangent(p).eval(uv);
    const auto j = p.eval(seed(u, v, 1, 1));
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_LE(testing::rel_diff(t[k], j[k][0]), 1e-14);
      EXPECT_LE(testing::rel_diff(t[k + 2], j[k][1]), 1e-12);
    }
  }
}

TEST(Tangent, PreservesProducts) {
  Rng rng(25);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_polynomial_program(rng, 2, 1);
    const auto g = random_polynomial_program(rng, 2, 2);
    const auto x = random_vector(rng, 4);
    const auto lhs = tangent(pairing(f, g)).eval(x);
    const auto tf = tangent(f).eval(x), tg = tangent(g).eval(x);
    // pairing of tangents, reordered to (values, directions)
    const Vec rhs{tf[0], tg[0], tg[1], tf[1], tg[2], tg[3]};
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Tangent, IteratedTangentMatchesOrderTwoJets) {
  Rng rng(26);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_transcendental_program(rng, 1, 1);
    const double u = uniform(rng), v0 = uniform(rng), v1 = uniform(rng), v01 = uniform(rng);
    // T(Tp) at ((u, v0), (v1, v01))
    const auto tt = tangent(tangent(p)).eval(Vec{u, v0, v1, v01});
    JetScalar x(2, u);
    x[1] = v0;
    x[2] = v1;
    x[3] = v01;
    const auto j = p.eval(JetVector(std::vector<JetScalar>{x}));
    for (unsigned m = 0; m < 4; ++m) EXPECT_LE(testing::rel_diff(tt[m], j[0][m]), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// partial tangents

TEST(PartialTangent, SecondSlotOfSum) {
  const auto t = partial_tangent(plus(), 2, {1, 1});
  EXPECT_EQ(t.eval(Vec{1.0, 0.0, 3.0}), (Vec{1.0, 3.0}));
}

TEST(PartialTangent, FirstSlotOfProduct) {
  const auto t = partial_tangent(times(), 1, {1, 1});
  EXPECT_EQ(t.eval(Vec{2.0, 5.0, 3.0}), (Vec{6.0, 15.0}));
}

TEST(PartialTangent, InvalidSplit) {
  EXPECT_THROW(partial_tangent(times(), 1, {1, 2}), PreconditionError);
  EXPECT_THROW(partial_tangent(times(), 3, {1, 1}), PreconditionError);
}

TEST(PartialTangent, TangentIsSumOfPartials) {
  Rng rng(27);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_polynomial_program(rng, 3, 2);
    const InputSplit split{2, 1};
    const auto x = random_vector(rng, 2), y = random_vector(rng, 1);
    const auto vx = random_vector(rng, 2), vy = random_vector(rng, 1);
    const auto full = tangent(f).eval(Vec{x[0], x[1], y[0], vx[0], vx[1], vy[0]});
    const auto p1 = partial_tangent(f, 1, split).eval(Vec{x[0], x[1], vx[0], vx[1], y[0]});
    const auto p2 = partial_tangent(f, 2, split).eval(Vec{x[0], x[1], y[0], vy[0]});
    EXPECT_EQ(p1[0], p2[0]);
    EXPECT_EQ(p1[1], p2[1]);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(full[k], p1[k]);
      EXPECT_LE(testing::rel_diff(full[2 + k], p1[2 + k] + p2[2 + k]), 1e-12);
    }
  }
}

TEST(PartialTangent, MixedPartialsRelatedByFlip) {
  // T(1)T(2) f and T(2)T(1) f as order-2 jets: x seeded in one slot and y in
  // the other; swapping the seeding order is exactly the flip.
  Rng rng(28);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_transcendental_program(rng, 2, 1);
    const double x = uniform(rng), y = uniform(rng), v = uniform(rng), w = uniform(rng);
    const auto a = f.eval(JetVector(std::vector<JetScalar>{JetScalar::variable(x, 2, 2, v),
                                                           JetScalar::variable(y, 1, 2, w)}));
    const auto b = f.eval(JetVector(std::vector<JetScalar>{JetScalar::variable(x, 1, 2, v),
                                                           JetScalar::variable(y, 2, 2, w)}));
    EXPECT_TRUE(jets_near(flip(a), b, 1e-12));
  }
}

// ---------------------------------------------------------------------------
// Jacobians

TEST(Jacobian, FiniteDifferenceOfSquare) {
  EXPECT_NEAR(fd_jacobian(square(), Vec{3.0})[0], 6.0, 1e-8);
  EXPECT_THROW(fd_jacobian(square(), Vec{3.0}, 0.0), PreconditionError);
}

TEST(Jacobian, FiniteDifferenceExactForLinear) {
  ProgramBuilder b(2);
  const auto x = b.input(0), y = b.input(1);
  const auto p = b.build({2.0 * x - 3.0 * y, 0.5 * x + 4.0 * y});
  const Vec a{2.0, -3.0, 0.5, 4.0};
  EXPECT_TRUE(vectors_near(fd_jacobian(p, Vec{0.3, -0.7}), a, 1e-9));
  EXPECT_EQ(jacobian(p, Vec{0.3, -0.7}), a);
}

TEST(Jacobian, JetsAgreeWithFiniteDifferences) {
  Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    const auto p = random_transcendental_program(rng, 3, 2);
    const auto x = random_vector(rng, 3, 0.5);
    EXPECT_TRUE(vectors_near(jacobian(p, x), fd_jacobian(p, x), 1e-6));
  }
}

// ---------------------------------------------------------------------------
// line map: t -> u + t v seeded at t = 0 is (u, v)

TEST(LineMap, TangentStability) {
  Rng rng(30);
  const auto u = random_vector(rng, 3), v = random_vector(rng, 3);
  ProgramBuilder b(1);
  const auto t = b.input(0);
  const auto line = b.build({u[0] + t * v[0], u[1] + t * v[1], u[2] + t * v[2]});
  const auto r = line.eval(seed(Vec{0.0}, Vec{1.0}, 1, 1));
  EXPECT_EQ(r.block(0), u);
  EXPECT_EQ(r.block(1), v);
}

// ---------------------------------------------------------------------------
// text form

TEST(Sexpr, RoundTrip) {
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    const auto p = random_transcendental_program(rng, 3, 2);
    const auto q = parse_program(to_sexpr(p));
    const auto x = random_vector(rng, 3);
    EXPECT_EQ(p.eval(x), q.eval(x));
  }
}

TEST(Sexpr, HandWritten) {
  const auto p = parse_program("(program 2 (+ (* x0 x1) (powi x0 3) -1.5) (- x1))");
  EXPECT_EQ(p.eval(Vec{2.0, 3.0}), (Vec{12.5, -3.0}));
  const auto q = parse_program("(program 1 (let ((s (sin x0)) (c (cos x0))) (+ (* s s) (* c c))))");
  EXPECT_NEAR(q.eval(Vec{0.3})[0], 1.0, 1e-15);
}

TEST(Sexpr, Errors) {
  EXPECT_THROW(parse_program("(program 1 (foo x0))"), ConfigError);
  EXPECT_THROW(parse_program("(program 1 x1)"), ConfigError);
  EXPECT_THROW(parse_program("(program 1 (+ x0 x0)"), ConfigError);
  EXPECT_THROW(parse_program("(program 1 (powi x0 1.5))"), ConfigError);
  EXPECT_THROW(parse_program("(prog 1 x0)"), ConfigError);
}

}  // namespace
}  // namespace jetlie
