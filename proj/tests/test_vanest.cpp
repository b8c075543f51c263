#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jetlie/error.hpp"
#include "jetlie/vanest.hpp"
#include "test_support.hpp"

namespace jetlie {
namespace {

using Vec = std::vector<double>;

// a closed 2-form for each catalog group: symplectic in dimension 2, a
// coboundary otherwise
AlgebraCocycle closed_form(const ChartedGroup& g) {
  if (g.dim() == 2) return symplectic_cocycle(2);
  const Vec b{1.0, -0.5, 0.25};
  return algebra_coboundary(structure_constants(g), std::span<const double>(b).first(3));
}

AlgebraCocycle heisenberg_form() {
  AlgebraCocycle w(3, 1);
  w.set(0, 2, Vec{1.0});
  w.set(1, 2, Vec{0.5});
  return w;
}

std::vector<std::pair<ChartedGroup, AlgebraCocycle>> catalog_pairs() {
  std::vector<std::pair<ChartedGroup, AlgebraCocycle>> out;
  for (const char* name : {"torus2", "so3", "su2", "affine1"}) {
    auto g = make_group(name);
    auto w = closed_form(g);
    out.emplace_back(std::move(g), std::move(w));
  }
  out.emplace_back(heisenberg_group(), heisenberg_form());
  return out;
}

// ---------------------------------------------------------------------------
// form

TEST(LeftInvariantForm, IdentityValueIsBase) {
  for (const auto& [g, w] : catalog_pairs()) {
    const LeftInvariantTwoForm form(g, w);
    Rng rng(70);
    const Vec zero(static_cast<std::size_t>(g.dim()), 0.0);
    for (int i = 0; i < 10; ++i) {
      const auto a = random_vector(rng, g.dim()), b = random_vector(rng, g.dim());
      EXPECT_EQ(form_at(form, zero, a, b), w(a, b)) << g.name();
    }
  }
}

TEST(LeftInvariantForm, ConstantOnAbelianGroups) {
  const auto g = make_group("torus2");
  const LeftInvariantTwoForm form(g, symplectic_cocycle(2));
  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    const auto z = random_vector(rng, 2, 5.0), a = random_vector(rng, 2), b = random_vector(rng, 2);
    EXPECT_EQ(form(z, a, b), symplectic_cocycle(2)(a, b));
  }
}

TEST(LeftInvariantForm, Antisymmetric) {
  for (const auto& [g, w] : catalog_pairs()) {
    const LeftInvariantTwoForm form(g, w);
    Rng rng(72);
    for (int i = 0; i < 10; ++i) {
      const auto z = random_ball_point(rng, g.dim(), g.sample_radius());
      const auto a = random_vector(rng, g.dim()), b = random_vector(rng, g.dim());
      EXPECT_EQ(form(z, a, b)[0], -form(z, b, a)[0]) << g.name();
    }
  }
}

TEST(LeftInvariantForm, TranslationInverseAgainstDifferences) {
  for (const auto& [g, w] : catalog_pairs()) {
    const LeftInvariantTwoForm form(g, w);
    const int n = g.dim();
    Rng rng(73);
    for (int i = 0; i < 5; ++i) {
      const auto z = random_ball_point(rng, n, g.sample_radius());
      Vec at(z);
      at.resize(static_cast<std::size_t>(2 * n), 0.0);
      const auto jac = fd_jacobian(g.mult(), at);  // n x 2n
      const auto theta = form.translation_inverse(z);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          double s = 0.0;
          for (int k = 0; k < n; ++k) {
            s += theta[static_cast<std::size_t>(r * n + k)] *
                 jac[static_cast<std::size_t>(k * 2 * n + n + c)];
          }
          EXPECT_NEAR(s, r == c ? 1.0 : 0.0, 1e-8) << g.name();
        }
      }
    }
  }
}

TEST(LeftInvariantForm, InvariantUnderLeftTranslation) {
  // w^l(g z)(D2 m(g, z) a, D2 m(g, z) b) = w^l(z)(a, b)
  for (const auto& [g, w] : catalog_pairs()) {
    const LeftInvariantTwoForm form(g, w);
    const int n = g.dim();
    Rng rng(74);
    for (int i = 0; i < 10; ++i) {
      const auto h = random_ball_point(rng, n, g.sample_radius());
      const auto z = random_ball_point(rng, n, g.sample_radius());
      const auto a = random_vector(rng, n), b = random_vector(rng, n);
      Vec at(h);
      at.insert(at.end(), z.begin(), z.end());
      const auto jac = jacobian(g.mult(), at);
      Vec ta(static_cast<std::size_t>(n), 0.0), tb(ta);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          const double d = jac[static_cast<std::size_t>(r * 2 * n + n + c)];
          ta[static_cast<std::size_t>(r)] += d * a[static_cast<std::size_t>(c)];
          tb[static_cast<std::size_t>(r)] += d * b[static_cast<std::size_t>(c)];
        }
      }
      const auto lhs = form(g.multiply(h, z), ta, tb)[0];
      const auto rhs = form(z, a, b)[0];
      EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(rhs))) << g.name();
    }
  }
}

TEST(LeftInvariantForm, OutsideChartIsDomainError) {
  const LeftInvariantTwoForm form(so3_group(), closed_form(so3_group()));
  EXPECT_THROW(form(Vec{2.0, 0.0, 0.0}, Vec{1, 0, 0}, Vec{0, 1, 0}), DomainError);
}

// ---------------------------------------------------------------------------
// gamma

TEST(Gamma, AbelianClosedForm) {
  const auto g = abelian_group(3);
  const Vec x{0.5, -1.0, 2.0}, y{0.25, 0.75, -0.5};
  const auto gamma = gamma_map(g, x, y);
  Rng rng(75);
  for (int i = 0; i < 20; ++i) {
    const double t = 0.5 + 0.5 * uniform(rng), s = (1.0 - t) * (0.5 + 0.5 * uniform(rng));
    const auto v = gamma(Vec{t, s});
    for (int k = 0; k < 3; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      EXPECT_NEAR(v[uk], (t + s) * x[uk] + s * y[uk], 1e-15);
    }
  }
}

TEST(Gamma, VerticesAndEdges) {
  for (const char* name : {"so3", "su2", "heisenberg3", "affine1"}) {
    const auto g = make_group(name);
    Rng rng(76);
    const auto x = random_ball_point(rng, g.dim(), g.sample_radius());
    const auto y = random_ball_point(rng, g.dim(), g.sample_radius());
    const auto gamma = gamma_map(g, x, y);
    EXPECT_EQ(gamma(Vec{0.0, 0.0}), Vec(x.size(), 0.0)) << name;
    EXPECT_TRUE(testing::vectors_near(gamma(Vec{1.0, 0.0}), x, 1e-15)) << name;
    EXPECT_TRUE(testing::vectors_near(gamma(Vec{0.0, 1.0}), g.multiply(x, y), 1e-15)) << name;
    // the edge t + s = 1 is the path s -> x * (s y)
    for (double s : {0.25, 0.5, 0.75}) {
      Vec sy(y);
      for (auto& c : sy) c *= s;
      EXPECT_TRUE(testing::vectors_near(gamma(Vec{1.0 - s, s}), g.multiply(x, sy), 1e-14)) << name;
    }
  }
}

TEST(Gamma, DomainExcursionIsRejected) {
  const auto g = so3_group();
  EXPECT_THROW(gamma_map(g, Vec{1.4, 0.0, 0.0}, Vec{1.4, 0.0, 0.0}), DomainError);
  EXPECT_THROW(gamma_map(g, Vec{1.6, 0.0, 0.0}, Vec{0.0, 0.0, 0.0}), DomainError);
}

// ---------------------------------------------------------------------------
// f0

TEST(IntegrateF0, AbelianSymplecticClosedForm) {
  const auto g = make_group("torus2");
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_vector(rng, 2, 3.0), y = random_vector(rng, 2, 3.0);
    const double expected = 0.5 * (x[0] * y[1] - x[1] * y[0]);
    EXPECT_NEAR(integrate_f0(g, symplectic_cocycle(2), x, y)[0], expected, 1e-12);
  }
}

TEST(IntegrateF0, DegenerateSimplices) {
  for (const auto& [g, w] : catalog_pairs()) {
    Rng rng(78);
    const auto x = random_ball_point(rng, g.dim(), g.sample_radius());
    const Vec zero(x.size(), 0.0);
    EXPECT_LE(std::abs(integrate_f0(g, w, x, zero)[0]), 1e-12) << g.name();
    EXPECT_LE(std::abs(integrate_f0(g, w, zero, x)[0]), 1e-12) << g.name();
  }
}

TEST(IntegrateF0, ZeroFormGivesZero) {
  const auto g = su2_group();
  Rng rng(79);
  const auto x = random_ball_point(rng, 3, g.sample_radius());
  const auto y = random_ball_point(rng, 3, g.sample_radius());
  EXPECT_EQ(integrate_f0(g, AlgebraCocycle(3, 1), x, y), Vec{0.0});
  const GroupCocycle f = vanest_cocycle(g, AlgebraCocycle(3, 1));
  EXPECT_EQ(f(x, y), Vec{0.0});
}

TEST(IntegrateF0, ParallelMatchesSerial) {
  for (const auto& [g, w] : catalog_pairs()) {
    Rng rng(80);
    const auto x = random_ball_point(rng, g.dim(), g.sample_radius());
    const auto y = random_ball_point(rng, g.dim(), g.sample_radius());
    EXPECT_EQ(integrate_f0(g, w, x, y), integrate_f0_serial(g, w, x, y)) << g.name();
  }
}

TEST(IntegrateF0, ProgramMatchesQuadrature) {
  for (const auto& [g, w] : catalog_pairs()) {
    const auto p = f0_program(g, w);
    Rng rng(81);
    for (int i = 0; i < 10; ++i) {
      auto x = random_ball_point(rng, g.dim(), g.sample_radius());
      const auto y = random_ball_point(rng, g.dim(), g.sample_radius());
      const auto expected = integrate_f0(g, w, x, y)[0];
      x.insert(x.end(), y.begin(), y.end());
      EXPECT_NEAR(p(x)[0], expected, 1e-14) << g.name();
    }
  }
}

TEST(IntegrateF0, RefinementStability) {
  for (const auto& [g, w] : catalog_pairs()) {
    Rng rng(82);
    for (int i = 0; i < 10; ++i) {
      const auto x = random_ball_point(rng, g.dim(), g.sample_radius());
      const auto y = random_ball_point(rng, g.dim(), g.sample_radius());
      const double coarse = integrate_f0(g, w, x, y, simplex_rule(7))[0];
      const double fine = integrate_f0(g, w, x, y, simplex_rule(14))[0];
      EXPECT_LE(std::abs(coarse - fine), 1e-9) << g.name();
    }
  }
}

TEST(IntegrateF0, NeedsSimplexRule) {
  const auto g = make_group("torus2");
  EXPECT_THROW(integrate_f0(g, symplectic_cocycle(2), Vec{1, 0}, Vec{0, 1}, square_rule(3)),
               PreconditionError);
}

// ---------------------------------------------------------------------------
// second derivative

TEST(CheckD2, HalfTheFormOnCatalog) {
  for (const auto& [g, w] : catalog_pairs()) {
    const auto r = check_d2(g, w);
    EXPECT_TRUE(r.passed) << g.name() << " " << r.max_diff;
  }
}

TEST(CheckD2, AbelianIsExact) {
  const auto r = check_d2(make_group("torus2"), symplectic_cocycle(2));
  const Vec expected{0.0, 0.5, -0.5, 0.0};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(r.d2[k], expected[k], 1e-15);
  EXPECT_EQ(r.tol, kD2TolerancePolynomial);
}

TEST(CheckD2, ToleranceByChartKind) {
  EXPECT_EQ(default_d2_tolerance(heisenberg_group()), kD2TolerancePolynomial);
  EXPECT_EQ(default_d2_tolerance(su2_group()), kD2ToleranceTranscendental);
  EXPECT_EQ(default_d2_tolerance(affine_group()), kD2ToleranceTranscendental);
}

TEST(CheckD2, Su2AgainstRefinedRule) {
  const auto g = su2_group();
  const AlgebraCocycle w = closed_form(g);
  const auto coarse = check_d2(g, w, simplex_rule(7));
  const auto fine = check_d2(g, w, simplex_rule(20));
  for (std::size_t k = 0; k < coarse.d2.size(); ++k) EXPECT_NEAR(coarse.d2[k], fine.d2[k], 1e-8);
  EXPECT_TRUE(coarse.passed);
}

TEST(CheckD2, ZeroForm) {
  const auto r = check_d2(so3_group(), AlgebraCocycle(3, 1));
  for (double v : r.d2) EXPECT_EQ(v, 0.0);
}

// ---------------------------------------------------------------------------
// group cocycle

TEST(VanEstCocycle, SatisfiesCocycleIdentity) {
  for (const auto& [g, w] : catalog_pairs()) {
    const auto f = vanest_cocycle(g, w);
    EXPECT_LE(normalization_residual(g, f, 4), 1e-12) << g.name();
    EXPECT_LE(cocycle_identity_residual(g, f, 4), vanest_identity_tolerance(g, w, 4)) << g.name();
  }
}

TEST(VanEstCocycle, IdentityDefectTracksQuadratureError) {
  // a finer rule shrinks the defect on a transcendental chart
  const auto g = affine_group();
  const auto w = closed_form(g);
  const double coarse = cocycle_identity_residual(g, vanest_cocycle(g, w, simplex_rule(7)), 4);
  const double fine = cocycle_identity_residual(g, vanest_cocycle(g, w, simplex_rule(15)), 4);
  EXPECT_LT(fine, coarse);
  EXPECT_LE(fine, 1e-12);
}

TEST(VanEstCocycle, DifferentiatesToTheForm) {
  for (const auto& [g, w] : catalog_pairs()) {
    const auto l = differentiate_cocycle(g, vanest_cocycle(g, w));
    EXPECT_LE(max_abs_diff(l, w), 1e-7) << g.name();
  }
}

TEST(VanEstCocycle, AbelianSymplecticExtensionIsHeisenberg) {
  const auto g = make_group("torus2");
  const auto r = verify_extension_differentiation(g, vanest_cocycle(g, symplectic_cocycle(2)));
  EXPECT_TRUE(r.passed);
  EXPECT_LE(max_abs_diff(r.from_group, structure_constants(heisenberg_group())), 1e-12);
}

TEST(VanEstCocycle, RejectsNonClosedForm) {
  const auto g = extend_group(so3_group(), zero_cocycle(3));
  AlgebraCocycle w(4, 1);
  w.set(0, 3, Vec{1.0});
  EXPECT_THROW(vanest_cocycle(g, w), ToleranceError);
}

TEST(VanEstCocycle, RadiusIsHalved) {
  const auto g = su2_group();
  EXPECT_EQ(vanest_cocycle(g, closed_form(g)).radius(), g.domain_radius() / 2.0);
}

// ---------------------------------------------------------------------------
// periods

TEST(Period, FundamentalTorusCycleHasUnitArea) {
  const auto g = make_group("torus2");
  const auto p = period(g, symplectic_cocycle(2), fundamental_torus_cycle(2));
  EXPECT_NEAR(p[0], 1.0, 1e-10);
}

TEST(Period, ConstantCycleAndZeroForm) {
  const auto g = make_group("torus2");
  EXPECT_EQ(period(g, symplectic_cocycle(2), constant_cycle(Vec{0.3, -0.2})), Vec{0.0});
  EXPECT_EQ(period(g, AlgebraCocycle(2, 1), fundamental_torus_cycle(2)), Vec{0.0});
}

TwoCycle wobbly_torus_cycle() {
  // (t, s) -> (t + 0.1 sin 2 pi s, s, 0.3 sin 2 pi t cos 2 pi s), shifts e0, e1
  ProgramBuilder b(2);
  const double k = 2.0 * std::numbers::pi;
  const Expr t = b.input(0), s = b.input(1);
  return TwoCycle{b.build({t + 0.1 * sin(k * s), s, 0.3 * sin(k * t) * cos(k * s)}),
                  Vec{1.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0}};
}

TEST(Period, BilinearInTheForm) {
  const auto g = abelian_group(3);
  AlgebraCocycle w1(3, 1), w2(3, 1);
  w1.set(0, 1, Vec{1.0});
  w1.set(1, 2, Vec{0.5});
  w2.set(0, 2, Vec{-2.0});
  w2.set(0, 1, Vec{0.25});
  const double a = 0.5, b = -2.0;
  AlgebraCocycle sum = AlgebraCocycle::from_tensor(3, 1, [&] {
    Vec t(w1.tensor());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = a * w1.tensor()[k] + b * w2.tensor()[k];
    return t;
  }());
  const auto sigma = wobbly_torus_cycle();
  const double lhs = period(g, sum, sigma)[0];
  const double rhs = a * period(g, w1, sigma)[0] + b * period(g, w2, sigma)[0];
  EXPECT_NEAR(lhs, rhs, 1e-14 * (1.0 + std::abs(rhs)));
  // the deformation is homotopic to the flat cycle: only w(e0, e1) survives
  EXPECT_NEAR(period(g, w1, sigma, square_rule(31))[0], 1.0, 1e-10);
}

TEST(Period, BrokenIdentificationIsRejected) {
  auto sigma = fundamental_torus_cycle(2);
  sigma.t_shift = Vec{0.5, 0.0};
  EXPECT_GT(periodicity_residual(sigma), 0.1);
  EXPECT_THROW(period(make_group("torus2"), symplectic_cocycle(2), sigma), ToleranceError);
}

TEST(Period, ParallelMatchesSerial) {
  const auto g = abelian_group(3);
  AlgebraCocycle w(3, 1);
  w.set(0, 1, Vec{1.0});
  w.set(0, 2, Vec{0.3});
  const LeftInvariantTwoForm form(g, w);
  const auto sigma = wobbly_torus_cycle();
  EXPECT_EQ(pullback_integral(form, sigma.map, square_rule(9)),
            pullback_integral_serial(form, sigma.map, square_rule(9)));
}

}  // namespace
}  // namespace jetlie
