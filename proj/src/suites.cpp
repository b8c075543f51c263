#include "jetlie/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "jetlie/catalog.hpp"
#include "jetlie/cocycle.hpp"
#include "jetlie/error.hpp"
#include "jetlie/examples.hpp"
#include "jetlie/group.hpp"
#include "jetlie/jet.hpp"
#include "jetlie/lattice.hpp"
#include "jetlie/random.hpp"
#include "jetlie/vanest.hpp"

namespace jetlie {

namespace {

using Vec = std::vector<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kAxiomSamples = 500;
constexpr int kBracketPairs = 100;
constexpr int kEkSamples = 50;

const std::vector<std::string> kBracketGroups{"so3", "su2", "heisenberg3", "affine1", "torus2"};

std::uint64_t mix_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed + h + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double rel_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel_diff(a[i], b[i]));
  return worst;
}

double abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double jet_rel_diff(const JetVector& a, const JetVector& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (unsigned m = 0; m < a[i].size(); ++m) worst = std::max(worst, rel_diff(a[i][m], b[i][m]));
  }
  return worst;
}

Json constants_json(const LieAlgebraData& g) {
  Json out = Json::array();
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double c = g.c(k, i, j);
        if (c != 0.0) out.push_back(Json{{"k", k}, {"i", i}, {"j", j}, {"value", json_number(c)}});
      }
    }
  }
  return out;
}

Json form_json(const AlgebraCocycle& w) {
  Json out = Json::array();
  for (int a = 0; a < w.target_dim(); ++a) {
    for (int i = 0; i < w.dim(); ++i) {
      for (int j = i + 1; j < w.dim(); ++j) {
        const double v = w.omega(a, i, j);
        if (v != 0.0) out.push_back(Json{{"a", a}, {"i", i}, {"j", j}, {"value", json_number(v)}});
      }
    }
  }
  return out;
}

class SuiteContext {
 public:
  SuiteContext(const SuiteOptions& options, Report& report) : options_(options), report_(report) {}

  const SuiteOptions& options() const noexcept { return options_; }
  QuadratureRule rule() const { return simplex_rule(options_.degree); }
  double tol(double t) const { return options_.tol ? *options_.tol : t; }

  /// @p fn receives the seed of this check.
  void check(std::string name, std::string anchor, double tolerance,
             const std::function<CheckOutcome(std::uint64_t)>& fn) {
    const auto seed = mix_seed(options_.seed, name);
    const bool overridden = options_.tol.has_value();
    report_.add(run_check(std::move(name), std::move(anchor), tol(tolerance), [&] {
      auto out = fn(seed);
      if (overridden) out.tolerance.reset();
      return out;
    }));
  }

 private:
  const SuiteOptions& options_;
  Report& report_;
};

CheckOutcome outcome(Json values, double residual, bool ok = true) {
  CheckOutcome out;
  out.values = std::move(values);
  out.residual = residual;
  out.ok = ok;
  return out;
}

// ---------------------------------------------------------------------------
// tangent-axioms

template <class F>
CheckOutcome jet_identity(std::uint64_t seed, int order, std::size_t dim, F&& sides) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < kAxiomSamples; ++i) {
    const auto v = random_jet_vector(rng, order, dim);
    const auto [lhs, rhs] = sides(v);
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  return outcome(Json{{"samples", kAxiomSamples}, {"order", order}, {"dim", dim}}, worst);
}

SmoothProgram mixed_program(Rng& rng, int i, int arity, int codim) {
  return i % 2 == 0 ? random_polynomial_program(rng, arity, codim)
                    : random_transcendental_program(rng, arity, codim);
}

void tangent_axioms(SuiteContext& ctx) {
  constexpr double kTol = 1e-12;
  ctx.check("tangent-axioms.flip-involution", "tau o tau = 1", kTol, [](std::uint64_t s) {
    return jet_identity(s, 2, 3, [](const JetVector& v) { return std::pair{flip(flip(v)), v}; });
  });
  ctx.check("tangent-axioms.flip-braid", "(tau T)(T tau)(tau T) = (T tau)(tau T)(T tau)", kTol,
            [](std::uint64_t s) {
              return jet_identity(s, 3, 2, [](const JetVector& v) {
                return std::pair{flip(flip(flip(v, 1), 2), 1), flip(flip(flip(v, 2), 1), 2)};
              });
            });
  ctx.check("tangent-axioms.lift-coassociative", "T(lambda) o lambda = lambda_T o lambda", kTol,
            [](std::uint64_t s) {
              return jet_identity(s, 1, 3, [](const JetVector& v) {
                const auto l = vertical_lift(v);
                return std::pair{vertical_lift(l, 1), vertical_lift(l, 2)};
              });
            });
  ctx.check("tangent-axioms.lift-footprint", "pi_T o lambda = 0 o pi", kTol, [](std::uint64_t s) {
    Rng rng(s);
    double worst = 0.0;
    for (int i = 0; i < kAxiomSamples; ++i) {
      const auto v = random_jet_vector(rng, 1, 3);
      const auto l = vertical_lift(v);
      const auto expected = zero_section(footprint(v));
      worst = std::max({worst, max_abs_diff(footprint(l, 2), expected),
                        max_abs_diff(footprint(l, 1), expected)});
    }
    return outcome(Json{{"samples", kAxiomSamples}}, worst);
  });
  ctx.check("tangent-axioms.flip-fixes-lift", "tau o lambda = lambda", kTol, [](std::uint64_t s) {
    return jet_identity(s, 1, 3, [](const JetVector& v) {
      return std::pair{flip(vertical_lift(v)), vertical_lift(v)};
    });
  });
  ctx.check("tangent-axioms.flip-natural", "T^2 f o tau = tau o T^2 f", kTol, [](std::uint64_t s) {
    Rng rng(s);
    double worst = 0.0;
    for (int i = 0; i < kAxiomSamples; ++i) {
      const auto p = mixed_program(rng, i, 2, 2);
      const auto v = random_jet_vector(rng, 2, 2);
      worst = std::max(worst, jet_rel_diff(p.eval(flip(v)), flip(p.eval(v))));
    }
    return outcome(Json{{"programs", kAxiomSamples}, {"measure", "relative"}}, worst);
  });
  ctx.check("tangent-axioms.chain-rule", "T(g o f) = Tg o Tf", kTol, [](std::uint64_t s) {
    Rng rng(s);
    double worst = 0.0;
    for (int i = 0; i < kAxiomSamples; ++i) {
      const auto f = mixed_program(rng, i, 2, 3);
      const auto g = mixed_program(rng, i, 3, 2);
      const auto x = random_vector(rng, 4);
      worst = std::max(worst, rel_diff(tangent(compose(g, f)).eval(x),
                                       compose(tangent(g), tangent(f)).eval(x)));
    }
    return outcome(Json{{"program_pairs", kAxiomSamples}, {"measure", "relative"}}, worst);
  });
}

// ---------------------------------------------------------------------------
// brackets

void group_brackets(SuiteContext& ctx, const std::string& name, const std::string& root) {
  const std::string prefix = root + "." + name + ".";
  ctx.check(prefix + "group-axioms", "m(x, 0) = x, m(x, x^-1) = 0, m associative", 1e-10,
            [&](std::uint64_t s) {
              Rng rng(s);
              const auto r = group_axiom_residuals(make_group(name), rng);
              const double worst = std::max({r.left_identity, r.right_identity, r.left_inverse,
                                             r.right_inverse, r.associativity});
              return outcome(Json{{"identity", std::max(r.left_identity, r.right_identity)},
                                  {"inverse", std::max(r.left_inverse, r.right_inverse)},
                                  {"associativity", r.associativity}},
                             worst);
            });
  ctx.check(prefix + "methods-agree", "[v, w] by left-invariant fields = [v, w] by conjugation",
            kBracketTolerance, [&](std::uint64_t s) {
              const auto g = make_group(name);
              Rng rng(s);
              double worst = 0.0;
              for (int i = 0; i < kBracketPairs; ++i) {
                const auto v = random_vector(rng, static_cast<std::size_t>(g.dim()));
                const auto w = random_vector(rng, static_cast<std::size_t>(g.dim()));
                worst = std::max(worst, abs_diff(bracket_delta(g, v, w), bracket_conjugation(g, v, w)));
              }
              return outcome(Json{{"pairs", kBracketPairs}}, worst);
            });
  ctx.check(prefix + "oracle", "[v, w] = vw - wv in the matrix realization", kOracleTolerance,
            [&](std::uint64_t s) {
              const auto g = make_group(name);
              Rng rng(s);
              double delta = 0.0, conj = 0.0;
              for (int i = 0; i < kBracketPairs; ++i) {
                const auto v = random_vector(rng, static_cast<std::size_t>(g.dim()));
                const auto w = random_vector(rng, static_cast<std::size_t>(g.dim()));
                const auto o = oracle_bracket(*g.oracle(), v, w);
                delta = std::max(delta, abs_diff(bracket_delta(g, v, w), o));
                conj = std::max(conj, abs_diff(bracket_conjugation(g, v, w), o));
              }
              return outcome(Json{{"pairs", kBracketPairs},
                                  {"delta_vs_oracle", delta},
                                  {"conjugation_vs_oracle", conj}},
                             std::max(delta, conj));
            });
  ctx.check(prefix + "jacobi", "[u, [v, w]] + [v, [w, u]] + [w, [u, v]] = 0", kJacobiTolerance,
            [&](std::uint64_t s) {
              const auto g = make_group(name);
              const auto c = structure_constants(g, BracketMethod::Conjugation, kInf);
              const auto d = structure_constants(g, BracketMethod::Delta, kInf);
              Rng rng(s);
              const auto n = static_cast<std::size_t>(g.dim());
              double sampled = 0.0;
              for (int i = 0; i < kBracketPairs; ++i) {
                const auto u = random_vector(rng, n), v = random_vector(rng, n),
                           w = random_vector(rng, n);
                const auto a = bracket_conjugation(g, u, bracket_conjugation(g, v, w));
                const auto b = bracket_conjugation(g, v, bracket_conjugation(g, w, u));
                const auto e = bracket_conjugation(g, w, bracket_conjugation(g, u, v));
                for (std::size_t k = 0; k < n; ++k) {
                  sampled = std::max(sampled, std::abs(a[k] + b[k] + e[k]));
                }
              }
              const double constants = std::max(c.jacobi_residual(), d.jacobi_residual());
              return outcome(Json{{"constants", constants}, {"sampled_triples", sampled}},
                             std::max(constants, sampled));
            });
  ctx.check(prefix + "parallel-serial", "parallel constants = serial constants", 0.0,
            [&](std::uint64_t) {
              const auto g = make_group(name);
              double worst = 0.0;
              for (auto m : {BracketMethod::Conjugation, BracketMethod::Delta}) {
                worst = std::max(worst, max_abs_diff(structure_constants(g, m, kInf),
                                                     structure_constants_serial(g, m, kInf)));
              }
              return outcome(Json::object(), worst);
            });
}

void brackets(SuiteContext& ctx) {
  for (const auto& name : kBracketGroups) group_brackets(ctx, name, "brackets");
}

// ---------------------------------------------------------------------------
// extensions

Json comparison_json(const ExtensionComparison& r) {
  return Json{{"max_diff", json_number(r.max_diff)},
              {"mismatches", r.mismatches.size()},
              {"constants", constants_json(r.from_group)}};
}

void catalog_integrity(SuiteContext& ctx) {
  for (const auto& gname : kBracketGroups) {
    for (const auto& fname : cocycle_catalog()) {
      if (fname == "heis" && gname != "torus2") continue;
      const bool integrated = fname.rfind("vanest:", 0) == 0;
      ctx.check("extensions.catalog." + gname + "." + fname,
                "f(e, y) = f(x, e) = 0, f(gh, k) + f(g, h) = f(g, hk) + f(h, k)",
                kCocycleIdentityTolerance, [&](std::uint64_t s) {
                  const auto g = make_group(gname);
                  const auto f = make_cocycle(fname, g, ctx.rule());
                  const double norm = normalization_residual(g, f, s);
                  const double identity = cocycle_identity_residual(g, f, s);
                  auto out = outcome(Json{{"normalization", norm}, {"identity", identity}},
                                     std::max(norm, identity));
                  if (integrated) {
                    out.tolerance = vanest_identity_tolerance(g, make_omega(fname.substr(7), g), s,
                                                              kCocycleSamples, ctx.rule());
                  }
                  return out;
                });
    }
  }
}

void extensions(SuiteContext& ctx) {
  ctx.check("extensions.heis-presentation", "Lie(G x_f A) = g +_L(f) a", kExtensionTolerance,
            [&](std::uint64_t) {
              const auto g = make_group("torus2");
              const auto r = verify_extension_differentiation(g, make_cocycle("heis", g),
                                                              ctx.tol(kExtensionTolerance));
              const double heis = max_abs_diff(r.from_group, structure_constants(heisenberg_group()));
              auto values = comparison_json(r);
              values["heisenberg_diff"] = heis;
              return outcome(std::move(values), std::max(r.max_diff, heis));
            });
  ctx.check("extensions.so3-coboundary", "Lie(G x_f A) = g +_L(f) a", kExtensionTolerance,
            [&](std::uint64_t s) {
              Rng rng(s);
              const auto g = so3_group();
              const auto h = random_potential(rng, 3);
              const auto r = verify_extension_differentiation(g, coboundary_of(g, h),
                                                              ctx.tol(kExtensionTolerance));
              // L of a coboundary is the form -Dh(e)[x, y]
              const auto dh = jacobian(h, Vec{0.0, 0.0, 0.0});
              const Vec b{-dh[0], -dh[1], -dh[2]};
              const auto so3 = oracle_structure_constants(*g.oracle());
              const auto expected = extend_algebra(so3, algebra_coboundary(so3, b));
              const double oracle = max_abs_diff(r.from_group, expected);
              auto values = comparison_json(r);
              values["oracle_diff"] = oracle;
              return outcome(std::move(values), std::max(r.max_diff, oracle));
            });
  ctx.check("extensions.torus-vanest", "Lie(G x_f A) = g +_L(f) a", kExtensionTolerance,
            [&](std::uint64_t) {
              const auto g = make_group("torus2");
              const auto w = symplectic_cocycle(2);
              const auto r = verify_extension_differentiation(g, vanest_cocycle(g, w, ctx.rule()),
                                                              ctx.tol(kExtensionTolerance));
              const double heis = max_abs_diff(r.from_group, extend_algebra(LieAlgebraData(2), w));
              auto values = comparison_json(r);
              values["heisenberg_diff"] = heis;
              return outcome(std::move(values), std::max(r.max_diff, heis));
            });
  ctx.check("extensions.cohomology-invariance", "(g, a) -> (g, a - h(g)) relates f and f + dh",
            kExtensionTolerance, [](std::uint64_t s) {
              Rng rng(s);
              Json values = Json::object();
              double worst = 0.0;
              for (const char* name : {"so3", "su2", "affine1", "heisenberg3"}) {
                const auto g = make_group(name);
                const auto f = coboundary_of(g, random_potential(rng, g.dim()));
                const double r = cohomology_invariance_residual(g, f, random_potential(rng, g.dim()));
                values[name] = r;
                worst = std::max(worst, r);
              }
              return outcome(std::move(values), worst);
            });
  catalog_integrity(ctx);
}

// ---------------------------------------------------------------------------
// vanest

struct FormPair {
  std::string group;
  std::string omega;
};

const std::vector<FormPair> kFormPairs{{"torus2", "symplectic"},
                                       {"so3", "coboundary"},
                                       {"su2", "coboundary"},
                                       {"affine1", "symplectic"},
                                       {"heisenberg3", "symplectic"}};

CheckOutcome d2_outcome(const D2Check& r) {
  return outcome(Json{{"d2", json_vector(r.d2)}, {"expected", json_vector(r.expected)}},
                 r.max_diff);
}

CheckOutcome lie_derivative_outcome(const ChartedGroup& g, const AlgebraCocycle& w,
                                    const QuadratureRule& rule) {
  const auto l = differentiate_cocycle(g, vanest_cocycle(g, w, rule));
  return outcome(Json{{"L", form_json(l)}, {"omega", form_json(w)}}, max_abs_diff(l, w));
}

CheckOutcome identity_outcome(const ChartedGroup& g, const AlgebraCocycle& w,
                              const QuadratureRule& rule, std::uint64_t seed) {
  const auto f = vanest_cocycle(g, w, rule);
  const double r = cocycle_identity_residual(g, f, seed);
  return outcome(Json{{"triples", kCocycleSamples}}, r);
}

void vanest(SuiteContext& ctx) {
  ctx.check("vanest.torus2.symplectic.closed-form", "f0(x, y) = (x0 y1 - x1 y0) / 2", 1e-12,
            [&](std::uint64_t s) {
              const auto g = make_group("torus2");
              const auto w = symplectic_cocycle(2);
              Rng rng(s);
              double worst = 0.0;
              for (int i = 0; i < kCocycleSamples; ++i) {
                const auto x = random_ball_point(rng, 2, g.sample_radius());
                const auto y = random_ball_point(rng, 2, g.sample_radius());
                const double f0 = integrate_f0(g, w, x, y, ctx.rule())[0];
                worst = std::max(worst, std::abs(f0 - 0.5 * (x[0] * y[1] - x[1] * y[0])));
              }
              return outcome(Json{{"pairs", kCocycleSamples}}, worst);
            });
  ctx.check("vanest.torus2.symplectic.d2", "d^2 f0 = w / 2", kD2TolerancePolynomial,
            [&](std::uint64_t) {
              return d2_outcome(check_d2(make_group("torus2"), symplectic_cocycle(2), ctx.rule(),
                                         kInf));
            });
  ctx.check("vanest.torus2.symplectic.lie-derivative", "L(f0) = w", 1e-10, [&](std::uint64_t) {
    return lie_derivative_outcome(make_group("torus2"), symplectic_cocycle(2), ctx.rule());
  });
  ctx.check("vanest.su2.coboundary.d2", "d^2 f0 = w / 2", kD2ToleranceTranscendental,
            [&](std::uint64_t) {
              const auto g = su2_group();
              return d2_outcome(check_d2(g, make_omega("coboundary", g), ctx.rule(), kInf));
            });
  ctx.check("vanest.su2.coboundary.cocycle-identity",
            "f0(gh, k) + f0(g, h) = f0(g, hk) + f0(h, k)", 1e-7, [&](std::uint64_t s) {
              const auto g = su2_group();
              return identity_outcome(g, make_omega("coboundary", g), ctx.rule(), s);
            });
  for (const auto& [gname, wname] : kFormPairs) {
    const std::string prefix = "vanest." + gname + "." + wname + ".";
    if (gname != "torus2") {
      ctx.check(prefix + "lie-derivative", "L(f0) = w", 1e-7, [&](std::uint64_t) {
        const auto g = make_group(gname);
        return lie_derivative_outcome(g, make_omega(wname, g), ctx.rule());
      });
    }
    if (gname != "torus2" && gname != "su2") {
      ctx.check(prefix + "d2", "d^2 f0 = w / 2", kD2ToleranceTranscendental, [&](std::uint64_t) {
        const auto g = make_group(gname);
        auto out = d2_outcome(check_d2(g, make_omega(wname, g), ctx.rule(), kInf));
        out.tolerance = default_d2_tolerance(g);
        return out;
      });
    }
    if (gname == "affine1" || gname == "heisenberg3") {
      ctx.check(prefix + "cocycle-identity", "f0(gh, k) + f0(g, h) = f0(g, hk) + f0(h, k)",
                kCocycleIdentityTolerance, [&](std::uint64_t s) {
                  const auto g = make_group(gname);
                  const auto w = make_omega(wname, g);
                  auto out = identity_outcome(g, w, ctx.rule(), s);
                  out.tolerance = vanest_identity_tolerance(g, w, s, kCocycleSamples, ctx.rule());
                  return out;
                });
    }
    ctx.check(prefix + "refinement", "f0 with degree d = f0 with degree 2d", 1e-9,
              [&](std::uint64_t s) {
                const auto g = make_group(gname);
                const auto w = make_omega(wname, g);
                const auto coarse = ctx.rule();
                const auto fine = simplex_rule(2 * ctx.options().degree);
                Rng rng(s);
                double worst = 0.0;
                for (int i = 0; i < 20; ++i) {
                  const auto x = random_ball_point(rng, static_cast<std::size_t>(g.dim()),
                                                   g.sample_radius());
                  const auto y = random_ball_point(rng, static_cast<std::size_t>(g.dim()),
                                                   g.sample_radius());
                  worst = std::max(worst, abs_diff(integrate_f0(g, w, x, y, coarse),
                                                   integrate_f0(g, w, x, y, fine)));
                }
                return outcome(Json{{"pairs", 20}, {"fine_degree", fine.degree}}, worst);
              });
  }
}

// ---------------------------------------------------------------------------
// periods

TwoCycle wobbly_torus_cycle() {
  // (t, s) -> (t + 0.1 sin 2 pi s, s, 0.3 sin 2 pi t cos 2 pi s), shifts e0, e1
  ProgramBuilder b(2);
  const double k = 2.0 * std::numbers::pi;
  const Expr t = b.input(0), s = b.input(1);
  return TwoCycle{b.build({t + 0.1 * sin(k * s), s, 0.3 * sin(k * t) * cos(k * s)}),
                  Vec{1.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0}};
}

void periods(SuiteContext& ctx) {
  ctx.check("periods.torus-area", "per(dx ^ dy, T^2) = 1", 1e-10, [](std::uint64_t) {
    const double p = period(make_group("torus2"), symplectic_cocycle(2), fundamental_torus_cycle(2))[0];
    return outcome(Json{{"period", p}}, std::abs(p - 1.0));
  });
  ctx.check("periods.constant-cycle", "per(w, constant cycle) = 0", 0.0, [](std::uint64_t) {
    const double p =
        period(make_group("torus2"), symplectic_cocycle(2), constant_cycle(Vec{0.3, -0.2}))[0];
    return outcome(Json{{"period", p}}, std::abs(p));
  });
  ctx.check("periods.bilinearity", "per(a w1 + b w2) = a per(w1) + b per(w2)", 1e-14,
            [](std::uint64_t) {
              const auto g = abelian_group(3);
              AlgebraCocycle w1(3, 1), w2(3, 1);
              w1.set(0, 1, Vec{1.0});
              w1.set(1, 2, Vec{0.5});
              w2.set(0, 2, Vec{-2.0});
              w2.set(0, 1, Vec{0.25});
              const double a = 0.5, b = -2.0;
              Vec t(w1.tensor());
              for (std::size_t k = 0; k < t.size(); ++k) t[k] = a * w1.tensor()[k] + b * w2.tensor()[k];
              const auto sigma = wobbly_torus_cycle();
              const double lhs = period(g, AlgebraCocycle::from_tensor(3, 1, t), sigma)[0];
              const double rhs = a * period(g, w1, sigma)[0] + b * period(g, w2, sigma)[0];
              return outcome(Json{{"combined", lhs}, {"separate", rhs}, {"measure", "relative"}},
                             std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
            });
  ctx.check("periods.period-lattice", "Pi = per(w, H_2) = Z", 1e-10, [&](std::uint64_t) {
    const auto h = heisenberg_over_torus(ctx.rule());
    const auto d = is_discrete(h.periods);
    const double dist = distance_to_lattice(Lattice::integer(1), Vec{h.period});
    return outcome(Json{{"period", h.period}, {"discreteness", to_string(d)}}, dist,
                   d == Discreteness::Discrete);
  });
  ctx.check("periods.reduced-identity", "f0 mod Pi satisfies the cocycle identity in A / Pi", 1e-10,
            [&](std::uint64_t s) {
              const auto h = heisenberg_over_torus(ctx.rule());
              const auto r = reduced_cocycle_identity(h.base, h.cocycle, h.periods, s,
                                                      kCocycleSamples, ctx.tol(1e-10));
              return outcome(Json{{"raw_defect", r.raw_defect},
                                  {"reduced_defect", r.reduced_defect},
                                  {"integrality_defect", r.integrality_defect},
                                  {"wrapped_terms", r.wrapped_terms}},
                             r.reduced_defect, r.passed && r.wrapped_terms > 0);
            });
}

// ---------------------------------------------------------------------------
// quotients

std::vector<std::vector<long long>> shifts(int rank) {
  std::vector<std::vector<long long>> out;
  for (int i = 0; i < rank; ++i) {
    std::vector<long long> e(static_cast<std::size_t>(rank), 0);
    e[static_cast<std::size_t>(i)] = 1;
    out.push_back(e);
    e[static_cast<std::size_t>(i)] = -3;
    out.push_back(e);
  }
  std::vector<long long> mixed(static_cast<std::size_t>(rank), 2);
  if (rank > 1) mixed[1] = -5;
  out.push_back(mixed);
  return out;
}

CheckOutcome shift_outcome(const ShiftInvarianceReport& r) {
  return outcome(Json{{"shifts", r.constant_diffs.size()},
                      {"max_constant_diff", json_number(r.max_constant_diff)},
                      {"max_value_residual", json_number(r.max_value_residual)},
                      {"constants", constants_json(r.reference)}},
                 r.max_constant_diff, r.max_value_residual <= kLatticeSnapTolerance);
}

void quotients(SuiteContext& ctx) {
  ctx.check("quotients.torus2", "Lie(R^2 / Z^2) = R^2 under chart shifts", 0.0,
            [&](std::uint64_t s) {
              const auto sh = shifts(2);
              const auto r = shift_invariance_check(make_group("torus2"), Lattice::integer(2), 0, sh,
                                                    ctx.tol(0.0), s);
              return shift_outcome(r);
            });
  ctx.check("quotients.irrational-line", "Lie(R / (Z + sqrt2 Z)) = R under chart shifts", 0.0,
            [&](std::uint64_t s) {
              const auto l = Lattice::integer_plus(QuadraticNumber::root(2));
              const auto sh = shifts(2);
              const auto r = shift_invariance_check(abelian_group(1, "irrational-line"), l, 0, sh,
                                                    ctx.tol(0.0), s);
              // exact coset arithmetic on the shifted representatives
              const QVector x{QuadraticNumber(Rational(1, 3), Rational(1, 7))};
              bool cosets = is_discrete(l) == Discreteness::NotDiscrete;
              for (const auto& c : sh) {
                const auto h = l.exact_element(c);
                QVector moved{x[0] + h[0]};
                QVector off{x[0] + h[0] + QuadraticNumber(Rational(1, 2))};
                cosets = cosets && coset_equal(l, moved, x) && !coset_equal(l, off, x);
              }
              auto out = shift_outcome(r);
              out.values["discreteness"] = to_string(is_discrete(l));
              out.values["exact_cosets"] = cosets;
              out.ok = out.ok && cosets;
              return out;
            });
  ctx.check("quotients.heisenberg-over-torus", "Lie(G_f / Pi) = g +_w a under central shifts", 0.0,
            [&](std::uint64_t s) {
              const auto h = heisenberg_over_torus(ctx.rule());
              const auto sh = shifts(1);
              const auto r = shift_invariance_check(h.extension, h.periods, 2, sh, ctx.tol(0.0), s);
              const double algebra = max_abs_diff(
                  r.reference, extend_algebra(LieAlgebraData(2), symplectic_cocycle(2)));
              auto out = shift_outcome(r);
              out.values["algebra_diff"] = algebra;
              out.ok = out.ok && algebra <= kExtensionTolerance;
              return out;
            });
  ctx.check("quotients.lattice-literals", "Z^n discrete, Z + sqrt2 Z dense, float Z + aZ undecided",
            0.0, [](std::uint64_t) {
              const std::vector<std::pair<std::string, Discreteness>> cases{
                  {"Z", Discreteness::Discrete},
                  {"Z2", Discreteness::Discrete},
                  {"Z+aZ alpha=sqrt2-symbolic", Discreteness::NotDiscrete},
                  {"Z+aZ alpha=sqrt3-symbolic", Discreteness::NotDiscrete},
                  {"Z+aZ alpha=0.5", Discreteness::Unknown}};
              Json values = Json::object();
              int wrong = 0;
              for (const auto& [literal, expected] : cases) {
                const auto d = is_discrete(parse_lattice(literal));
                values[literal] = to_string(d);
                if (d != expected) ++wrong;
              }
              return outcome(std::move(values), wrong);
            });
}

// ---------------------------------------------------------------------------
// examples-ek-dl

void examples(SuiteContext& ctx) {
  ctx.check("examples-ek-dl.ek.antisymmetry", "w(f, g) = -w(g, f)", 1e-10, [](std::uint64_t s) {
    Rng rng(s);
    double closed = 0.0, oracle = 0.0;
    for (int i = 0; i < kEkSamples; ++i) {
      const auto f = FourierLoopElement::random(rng, 3), g = FourierLoopElement::random(rng, 3);
      closed = std::max({closed, std::abs(ek_cocycle(f, f)), std::abs(ek_cocycle(f, g) + ek_cocycle(g, f))});
      oracle = std::max({oracle, std::abs(ek_cocycle_trapezoid(f, f)),
                         std::abs(ek_cocycle_trapezoid(f, g) + ek_cocycle_trapezoid(g, f))});
    }
    return outcome(Json{{"pairs", kEkSamples}, {"closed_form", closed}, {"circle_quadrature", oracle}},
                   std::max(closed, oracle));
  });
  ctx.check("examples-ek-dl.ek.oracle", "w(f, g) = int_0^1 trace(f g') dt", 1e-9,
            [](std::uint64_t s) {
              Rng rng(s);
              double worst = 0.0;
              for (int i = 0; i < kEkSamples; ++i) {
                const auto f = FourierLoopElement::random(rng, 3), g = FourierLoopElement::random(rng, 3);
                worst = std::max(worst, std::abs(ek_cocycle(f, g) - ek_cocycle_trapezoid(f, g)));
              }
              return outcome(Json{{"pairs", kEkSamples}, {"points", kTrapezoidPoints}}, worst);
            });
  ctx.check("examples-ek-dl.ek.cocycle-identity", "w([f, g], h) + w([g, h], f) + w([h, f], g) = 0",
            1e-10, [](std::uint64_t s) {
              Rng rng(s);
              double closed = 0.0, oracle = 0.0;
              for (int i = 0; i < kEkSamples; ++i) {
                const auto f = FourierLoopElement::random(rng, 3), g = FourierLoopElement::random(rng, 3),
                           h = FourierLoopElement::random(rng, 3);
                const auto fg = loop_bracket(f, g), gh = loop_bracket(g, h), hf = loop_bracket(h, f);
                closed = std::max(closed, std::abs(ek_cocycle(fg, h) + ek_cocycle(gh, f) + ek_cocycle(hf, g)));
                oracle = std::max(oracle, std::abs(ek_cocycle_trapezoid(fg, h) + ek_cocycle_trapezoid(gh, f) +
                                                   ek_cocycle_trapezoid(hf, g)));
              }
              return outcome(
                  Json{{"triples", kEkSamples}, {"closed_form", closed}, {"circle_quadrature", oracle}},
                  std::max(closed, oracle));
            });
  ctx.check("examples-ek-dl.ek.constant-loops", "w(f, g) = 0 for constant loops", 0.0,
            [](std::uint64_t s) {
              const auto r = ek_extension_check(0, 20, s);
              Rng rng(s);
              double worst = 0.0;
              for (int i = 0; i < 20; ++i) {
                const auto f = FourierLoopElement::random(rng, 0), g = FourierLoopElement::random(rng, 0);
                worst = std::max(worst, std::abs(ek_cocycle(f, g)));
              }
              return outcome(Json{{"jacobi_residual", r.jacobi_residual}, {"max_cocycle", worst}},
                             worst, r.passed);
            });
  ctx.check("examples-ek-dl.ek.extension-jacobi", "[(f, a), (g, b)] = ([f, g], w(f, g)) is a Lie bracket",
            kLoopJacobiTolerance, [&](std::uint64_t s) {
              const auto r = ek_extension_check(2, 100, s, ctx.tol(kLoopJacobiTolerance));
              return outcome(Json{{"max_frequency", r.max_frequency},
                                  {"samples", r.samples},
                                  {"antisymmetry_residual", r.antisymmetry_residual},
                                  {"cocycle_residual", r.cocycle_residual},
                                  {"max_degree_seen", r.max_degree_seen}},
                             r.jacobi_residual, r.passed);
            });
  ctx.check("examples-ek-dl.dl.n1", "(u(1) x u(1)) / n_theta = R", 0.0, [](std::uint64_t) {
    const auto r = dl_quotient(1);
    return outcome(Json{{"dimension", r.quotient.dim()}, {"center_dimension", r.center_dimension}},
                   r.jacobi_residual, r.quotient.dim() == 1 && r.center_dimension == 1);
  });
  ctx.check("examples-ek-dl.dl.n2", "(u(2) x u(2)) / n_theta, n_theta = (1, sqrt2 1) iR", 1e-10,
            [](std::uint64_t) {
              const auto r = dl_quotient(2);
              return outcome(Json{{"parent_dimension", r.spec.parent.dim},
                                  {"dimension", r.quotient.dim()},
                                  {"center_dimension", r.center_dimension},
                                  {"jacobi_exact", r.jacobi_exact}},
                             r.jacobi_residual,
                             r.quotient.dim() == 7 && r.center_dimension == 1 && r.jacobi_exact);
            });
  ctx.check("examples-ek-dl.surrogate.heisenberg-over-torus",
            "group-level stand-in: R^2 x_f0 R / Pi with Pi = Z", 1e-10, [&](std::uint64_t s) {
              const auto h = heisenberg_over_torus(ctx.rule());
              const auto r = reduced_cocycle_identity(h.base, h.cocycle, h.periods, s,
                                                      kCocycleSamples, ctx.tol(1e-10));
              return outcome(Json{{"period", h.period},
                                  {"note", "finite-dimensional substitute for the loop group and "
                                           "unitary pair integrations"},
                                  {"reduced_defect", r.reduced_defect}},
                             std::max(std::abs(h.period - 1.0), r.reduced_defect), r.passed);
            });
}

using SuiteFn = void (*)(SuiteContext&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"tangent-axioms", tangent_axioms}, {"brackets", brackets}, {"extensions", extensions},
      {"vanest", vanest},                 {"periods", periods},   {"quotients", quotients},
      {"examples-ek-dl", examples}};
  return s;
}

Json options_json(const SuiteOptions& o) {
  return Json{{"seed", o.seed},
              {"degree", o.degree},
              {"tol", o.tol ? json_number(*o.tol) : Json(nullptr)}};
}

Report make_report(std::string suite, Json config) {
  Report r;
  r.suite = std::move(suite);
  r.config = std::move(config);
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  names.push_back("all");
  return names;
}

void check_suite_name(const std::string& name) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown suite '" + name + "'");
  }
}

Report run_suite(const std::string& name, const SuiteOptions& options) {
  check_suite_name(name);
  auto report = make_report(name, options_json(options));
  SuiteContext ctx(options, report);
  for (const auto& [suite, fn] : suites()) {
    if (name == "all" || name == suite) fn(ctx);
  }
  report.sort_checks();
  return report;
}

Report bracket_report(const std::string& group, const std::optional<std::string>& cocycle,
                      const SuiteOptions& options) {
  check_group_name(group);
  if (cocycle) check_cocycle_name(*cocycle);
  auto config = options_json(options);
  config["group"] = group;
  config["cocycle"] = cocycle ? Json(*cocycle) : Json(nullptr);
  auto report = make_report("bracket", std::move(config));
  SuiteContext ctx(options, report);
  if (!cocycle) {
    group_brackets(ctx, group, "bracket");
    ctx.check("bracket." + group + ".constants", "[e_i, e_j] = c^k_ij e_k", kOracleTolerance,
              [&](std::uint64_t) {
                const auto g = make_group(group);
                const auto c = structure_constants(g);
                Json values{{"dimension", g.dim()}, {"constants", constants_json(c)}};
                double diff = 0.0;
                if (g.oracle()) {
                  diff = max_abs_diff(c, oracle_structure_constants(*g.oracle()));
                  values["oracle_diff"] = diff;
                }
                return outcome(std::move(values), diff);
              });
  } else {
    const std::string prefix = "bracket." + group + "." + *cocycle + ".";
    ctx.check(prefix + "cocycle-identity", "f(gh, k) + f(g, h) = f(g, hk) + f(h, k)",
              kCocycleIdentityTolerance, [&](std::uint64_t s) {
                const auto g = make_group(group);
                const auto f = make_cocycle(*cocycle, g, ctx.rule());
                const double norm = normalization_residual(g, f, s);
                const double identity = cocycle_identity_residual(g, f, s);
                auto out = outcome(Json{{"normalization", norm}, {"identity", identity}},
                                   std::max(norm, identity));
                if (cocycle->rfind("vanest:", 0) == 0) {
                  out.tolerance = vanest_identity_tolerance(g, make_omega(cocycle->substr(7), g), s,
                                                            kCocycleSamples, ctx.rule());
                }
                return out;
              });
    ctx.check(prefix + "extension", "Lie(G x_f A) = g +_L(f) a", kExtensionTolerance,
              [&](std::uint64_t) {
                const auto g = make_group(group);
                const auto f = make_cocycle(*cocycle, g, ctx.rule());
                const auto r = verify_extension_differentiation(g, f, ctx.tol(kExtensionTolerance));
                auto values = comparison_json(r);
                values["L"] = form_json(differentiate_cocycle(g, f));
                return outcome(std::move(values), r.max_diff);
              });
  }
  report.sort_checks();
  return report;
}

Report vanest_report(const std::string& group, const std::string& omega,
                     const SuiteOptions& options) {
  check_group_name(group);
  check_omega_name(omega);
  auto config = options_json(options);
  config["group"] = group;
  config["omega"] = omega;
  auto report = make_report("vanest", std::move(config));
  SuiteContext ctx(options, report);
  const std::string prefix = "vanest." + group + "." + omega + ".";
  ctx.check(prefix + "closed", "w([x, y], z) + w([y, z], x) + w([z, x], y) = 0",
            kAlgebraCocycleTolerance, [&](std::uint64_t) {
              const auto g = make_group(group);
              const auto w = make_omega(omega, g);
              return outcome(Json{{"omega", form_json(w)}},
                             w.cocycle_residual(structure_constants(g)));
            });
  ctx.check(prefix + "d2", "d^2 f0 = w / 2", kD2ToleranceTranscendental, [&](std::uint64_t) {
    const auto g = make_group(group);
    auto out = d2_outcome(check_d2(g, make_omega(omega, g), ctx.rule(), kInf));
    out.tolerance = default_d2_tolerance(g);
    return out;
  });
  ctx.check(prefix + "lie-derivative", "L(f0) = w", 1e-7, [&](std::uint64_t) {
    const auto g = make_group(group);
    return lie_derivative_outcome(g, make_omega(omega, g), ctx.rule());
  });
  ctx.check(prefix + "cocycle-identity", "f0(gh, k) + f0(g, h) = f0(g, hk) + f0(h, k)",
            kCocycleIdentityTolerance, [&](std::uint64_t s) {
              const auto g = make_group(group);
              const auto w = make_omega(omega, g);
              auto out = identity_outcome(g, w, ctx.rule(), s);
              out.tolerance = vanest_identity_tolerance(g, w, s, kCocycleSamples, ctx.rule());
              return out;
            });
  report.sort_checks();
  return report;
}

Report period_report(const std::string& group, const std::string& omega,
                     const std::optional<std::string>& lattice, const SuiteOptions& options) {
  check_group_name(group);
  check_omega_name(omega);
  std::optional<Lattice> target;
  if (lattice) {
    target = parse_lattice(*lattice);
    if (target->ambient_dim() != 1) throw ConfigError("period lattice must live in R");
  }
  auto config = options_json(options);
  config["group"] = group;
  config["omega"] = omega;
  config["lattice"] = lattice ? Json(*lattice) : Json(nullptr);
  auto report = make_report("period", std::move(config));
  SuiteContext ctx(options, report);
  const std::string prefix = "period." + group + "." + omega + ".";
  const auto compute = [&] {
    const auto g = make_group(group);
    const auto w = make_omega(omega, g);
    return period(g, w, fundamental_torus_cycle(g.dim()), square_rule(options.degree))[0];
  };
  ctx.check(prefix + "value", "per(w) = integral of w^l over the torus cycle",
            kPeriodicityTolerance, [&](std::uint64_t) {
              const auto sigma = fundamental_torus_cycle(make_group(group).dim());
              const double p = compute();
              return outcome(Json{{"period", p}}, periodicity_residual(sigma));
            });
  ctx.check(prefix + "discreteness", "Pi = Z per(w) is discrete", 0.0, [&](std::uint64_t) {
    const double p = compute();
    if (std::abs(p) <= kLatticeSnapTolerance) {
      return outcome(Json{{"period", p}, {"discreteness", "trivial"}}, 0.0);
    }
    const auto d = is_discrete(Lattice(1, std::vector<Vec>{{p}}));
    return outcome(Json{{"period", p}, {"discreteness", to_string(d)}}, 0.0,
                   d == Discreteness::Discrete);
  });
  if (target) {
    ctx.check(prefix + "in-lattice", "per(w) in L", kLatticeSnapTolerance, [&](std::uint64_t) {
      const double p = compute();
      if (is_discrete(*target) != Discreteness::Discrete) {
        throw PreconditionError("membership in a non-discrete lattice needs exact coordinates");
      }
      return outcome(Json{{"period", p}, {"lattice", *lattice}},
                     distance_to_lattice(*target, Vec{p}));
    });
  }
  report.sort_checks();
  return report;
}

}  // namespace jetlie
