#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "jetlie/catalog.hpp"
#include "jetlie/error.hpp"
#include "jetlie/report.hpp"
#include "jetlie/run_config.hpp"
#include "jetlie/suites.hpp"

namespace jetlie {
namespace {

using Vec = std::vector<double>;

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

// ---------------------------------------------------------------------------
// catalog

TEST(Catalog, EveryNamedCocycleResolvesOnSomeGroup) {
  for (const auto& name : cocycle_catalog()) {
    const auto g = make_group(name == "heis" ? "torus2" : "so3");
    const auto f = make_cocycle(name, g);
    EXPECT_EQ(f.group_dim(), g.dim()) << name;
    EXPECT_EQ(f.name(), name);
  }
}

TEST(Catalog, UnknownNamesAreConfigErrors) {
  const auto g = make_group("so3");
  EXPECT_THROW(make_omega("kahler", g), ConfigError);
  EXPECT_THROW(make_cocycle("vanest:kahler", g), ConfigError);
  EXPECT_THROW(make_cocycle("coboundary:quartic", g), ConfigError);
  EXPECT_THROW(make_cocycle("heis", g), ConfigError);
  EXPECT_THROW(make_omega("symplectic", make_group("rn:1")), ConfigError);
  EXPECT_THROW(check_group_name("so4"), ConfigError);
}

TEST(Catalog, CoboundaryFormIsFunctionalOfBracket) {
  // so(3): [e0, e1] = e2, so w(e0, e1) = b2 = 1/4
  const auto w = make_omega("coboundary", make_group("so3"));
  EXPECT_DOUBLE_EQ(w.omega(0, 0, 1), 0.25);
  EXPECT_DOUBLE_EQ(w.omega(0, 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(w.omega(0, 0, 2), 0.5);
  EXPECT_EQ(coboundary_functional(3), (Vec{1.0, -0.5, 0.25}));
}

TEST(Catalog, PotentialsVanishAtTheIdentity) {
  for (const auto& name : potential_catalog()) {
    EXPECT_EQ(make_potential(name, 3).eval(Vec{0.0, 0.0, 0.0}), Vec{0.0}) << name;
  }
  // quad on R^2 at (1, 2): 1 - 1 + (1 * 2 + 2 * 1) / 2
  EXPECT_DOUBLE_EQ(make_potential("quad", 2).eval(Vec{1.0, 2.0})[0], 2.0);
}

TEST(Catalog, LatticeLiterals) {
  EXPECT_EQ(parse_lattice("Z2").ambient_dim(), 2);
  EXPECT_EQ(parse_lattice("Z").rank(), 1);
  EXPECT_EQ(parse_lattice("  Z3 ").rank(), 3);
  const auto dense = parse_lattice("Z+aZ alpha=sqrt2-symbolic");
  EXPECT_TRUE(dense.has_exact());
  EXPECT_EQ(is_discrete(dense), Discreteness::NotDiscrete);
  EXPECT_EQ(is_discrete(parse_lattice("Z+aZ alpha=0.5")), Discreteness::Unknown);
  for (const char* bad : {"", "Z0", "Q2", "Z+aZ", "Z+aZ alpha=sqrt4-symbolic",
                          "Z+aZ alpha=sqrtx-symbolic", "Z+aZ alpha=0", "Z+aZ alpha=1.5x"}) {
    EXPECT_THROW(parse_lattice(bad), ConfigError) << bad;
  }
}

TEST(Catalog, ListingCoversEveryKind) {
  int groups = 0, omegas = 0, cocycles = 0, lattices = 0;
  for (const auto& e : catalog_entries()) {
    groups += e.kind == "group";
    omegas += e.kind == "omega";
    cocycles += e.kind == "cocycle";
    lattices += e.kind == "lattice";
  }
  EXPECT_EQ(groups, static_cast<int>(group_catalog().size()));
  EXPECT_EQ(omegas, static_cast<int>(omega_catalog().size()));
  EXPECT_GE(cocycles, 5);
  EXPECT_EQ(lattices, 3);
}

// ---------------------------------------------------------------------------
// report

TEST(Report, EmptyReportIsValidJson) {
  Report r;
  r.suite = "empty";
  const auto j = Json::parse(emit(r, ReportFormat::Json));
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_TRUE(j["checks"].empty());
  EXPECT_EQ(j["summary"]["total"], 0);
  EXPECT_EQ(j["summary"]["failed"], 0);
}

TEST(Report, FieldOrderIsStable) {
  Report r;
  r.add(run_check("b", "x = x", 1.0, [] { return CheckOutcome{}; }));
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "suite", "config", "checks", "summary"}));
  keys.clear();
  for (const auto& [k, v] : j["checks"][0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"name", "anchor", "values", "tolerance", "passed",
                                            "wall_ms"}));
  EXPECT_FALSE(to_json(r, false)["checks"][0].contains("wall_ms"));
}

TEST(Report, ChecksSortByName) {
  Report r;
  for (const char* n : {"c", "a", "b"}) r.add(run_check(n, "", 0.0, [] { return CheckOutcome{}; }));
  r.sort_checks();
  EXPECT_EQ(r.checks[0].name, "a");
  EXPECT_EQ(r.checks[2].name, "c");
}

TEST(Report, ResidualAgainstTolerance) {
  const auto pass = run_check("p", "", 1e-3, [] { return CheckOutcome{Json::object(), 1e-4}; });
  const auto fail = run_check("f", "", 1e-5, [] { return CheckOutcome{Json::object(), 1e-4}; });
  const auto nan = run_check("n", "", 1.0, [] {
    return CheckOutcome{Json::object(), std::numeric_limits<double>::quiet_NaN()};
  });
  const auto flagged = run_check("o", "", 1.0, [] { return CheckOutcome{Json::object(), 0.0, false}; });
  EXPECT_TRUE(pass.passed);
  EXPECT_FALSE(fail.passed);
  EXPECT_FALSE(nan.passed);
  EXPECT_EQ(nan.values["residual"], "nan");
  EXPECT_FALSE(flagged.passed);
}

TEST(Report, CheckSuppliedToleranceWins) {
  CheckOutcome out{Json::object(), 1e-6};
  out.tolerance = 1e-5;
  const auto r = run_check("t", "", 1e-8, [&] { return out; });
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.tolerance, 1e-5);
}

TEST(Report, LibraryErrorsBecomeFailures) {
  const auto r = run_check("e", "", 1.0, []() -> CheckOutcome { throw ToleranceError("boom"); });
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.values["error"], "boom");
}

TEST(Report, NonFiniteNumbersAreSpelled) {
  EXPECT_EQ(json_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(json_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(json_number(0.5), 0.5);
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_format("json"), ReportFormat::Json);
  EXPECT_EQ(parse_format("text"), ReportFormat::Text);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Report, TextNamesEveryCheck) {
  Report r;
  r.suite = "s";
  r.add(run_check("one", "a = a", 0.0, [] { return CheckOutcome{}; }));
  r.add(run_check("two", "b = b", 0.0, [] { return CheckOutcome{Json::object(), 1.0}; }));
  const auto text = to_text(r);
  EXPECT_NE(text.find("PASS one"), std::string::npos);
  EXPECT_NE(text.find("FAIL two"), std::string::npos);
  EXPECT_NE(text.find("1/2 checks passed"), std::string::npos);
}

TEST(Report, UnwritablePathThrows) {
  Report r;
  const auto file = temp_file("jetlie_not_a_dir", "x");
  EXPECT_THROW(write_report(r, ReportFormat::Json, file / "report.json"), Error);
}

// ---------------------------------------------------------------------------
// run configuration

TEST(RunConfig, ConfigFileSetsKeys) {
  const auto path = temp_file("jetlie_cfg.txt",
                              "# comment\n\nsuite quotients\nseed 42\ndegree 9\ntol 1e-6\n"
                              "group torus2\nomega symplectic\nlattice Z+aZ alpha=sqrt2-symbolic\n"
                              "format text\n");
  RunConfig c;
  apply_config_file(c, path);
  EXPECT_EQ(c.suite, "quotients");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.degree, 9);
  EXPECT_EQ(*c.tol, 1e-6);
  EXPECT_EQ(*c.group, "torus2");
  EXPECT_EQ(*c.lattice, "Z+aZ alpha=sqrt2-symbolic");
  EXPECT_EQ(c.format, "text");
  EXPECT_NO_THROW(validate(c));
}

TEST(RunConfig, BadConfigFilesAreRejected) {
  RunConfig c;
  EXPECT_THROW(apply_config_file(c, temp_file("jetlie_bad1.txt", "colour blue\n")), ConfigError);
  EXPECT_THROW(apply_config_file(c, temp_file("jetlie_bad2.txt", "seed\n")), ConfigError);
  EXPECT_THROW(apply_config_file(c, temp_file("jetlie_bad3.txt", "seed -4\n")), ConfigError);
  EXPECT_THROW(apply_config_file(c, temp_file("jetlie_bad4.txt", "degree 7.5\n")), ConfigError);
  EXPECT_THROW(apply_config_file(c, "/nonexistent/jetlie.cfg"), ConfigError);
}

TEST(RunConfig, ValidationPrecedesComputation) {
  auto expect_rejected = [](RunConfig c) { EXPECT_THROW(run(c), ConfigError); };
  RunConfig c;
  c.suite = "everything";
  expect_rejected(c);
  c = RunConfig{};
  c.format = "yaml";
  expect_rejected(c);
  c = RunConfig{};
  c.degree = 0;
  expect_rejected(c);
  c = RunConfig{};
  c.tol = -1.0;
  expect_rejected(c);
  c = RunConfig{};
  c.command = Command::Bracket;
  expect_rejected(c);
  c.group = "so5";
  expect_rejected(c);
  c = RunConfig{};
  c.command = Command::Vanest;
  c.group = "so3";
  expect_rejected(c);
  c.omega = "kahler";
  expect_rejected(c);
  c = RunConfig{};
  c.command = Command::Period;
  c.group = "torus2";
  c.omega = "symplectic";
  c.lattice = "Z2";
  expect_rejected(c);
}

TEST(RunConfig, OutputDirectoryFromEnvironment) {
  RunConfig c;
  c.suite = "quotients";
  ::unsetenv(kOutputDirVariable);
  EXPECT_FALSE(output_path(c).has_value());
  ::setenv(kOutputDirVariable, "/tmp/jetlie-out", 1);
  EXPECT_EQ(*output_path(c), std::filesystem::path("/tmp/jetlie-out/quotients.json"));
  c.output = "x.txt";
  EXPECT_EQ(*output_path(c), std::filesystem::path("x.txt"));
  ::unsetenv(kOutputDirVariable);
}

// ---------------------------------------------------------------------------
// suites

TEST(Suites, NamesAndRejection) {
  EXPECT_EQ(suite_names().size(), 8u);
  EXPECT_EQ(suite_names().back(), "all");
  EXPECT_THROW(run_suite("tangent", SuiteOptions{}), ConfigError);
}

TEST(Suites, TangentAxiomsPassWithSeedOne) {
  const auto r = run_suite("tangent-axioms", SuiteOptions{});
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.checks.size(), 7u);
  EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(),
                             [](const auto& a, const auto& b) { return a.name < b.name; }));
}

TEST(Suites, SameSeedSameReport) {
  SuiteOptions o;
  o.seed = 11;
  const auto a = to_json(run_suite("quotients", o), false).dump();
  const auto b = to_json(run_suite("quotients", o), false).dump();
  EXPECT_EQ(a, b);
}

TEST(Suites, SeedChangesSamples) {
  SuiteOptions o1, o2;
  o2.seed = 2;
  const auto a = run_suite("examples-ek-dl", o1), b = run_suite("examples-ek-dl", o2);
  EXPECT_NE(to_json(a, false)["checks"][2]["values"].dump(),
            to_json(b, false)["checks"][2]["values"].dump());
}

TEST(Suites, ToleranceOverrideApplies) {
  SuiteOptions o;
  o.tol = 0.0;
  const auto r = run_suite("periods", o);
  for (const auto& c : r.checks) EXPECT_EQ(c.tolerance, 0.0);
  EXPECT_FALSE(r.all_passed());
}

TEST(Suites, BracketReportShowsCrossProductConstants) {
  const auto r = bracket_report("so3", std::nullopt, SuiteOptions{});
  EXPECT_TRUE(r.all_passed());
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const auto& c) { return c.name == "bracket.so3.constants"; });
  ASSERT_NE(it, r.checks.end());
  // [e0, e1] = e2, [e0, e2] = -e1, [e1, e2] = e0
  const auto& c = it->values["constants"];
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0]["k"], 2);
  EXPECT_NEAR(c[0]["value"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(c[1]["value"].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(c[2]["value"].get<double>(), 1.0, 1e-12);
}

TEST(Suites, BracketOfExtension) {
  const auto r = bracket_report("torus2", std::string("heis"), SuiteOptions{});
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.checks.size(), 2u);
}

TEST(Suites, VanestTorusSymplectic) {
  const auto r = vanest_report("torus2", "symplectic", SuiteOptions{});
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.checks.size(), 4u);
}

TEST(Suites, PeriodInLattice) {
  const auto r = period_report("torus2", "symplectic", std::string("Z"), SuiteOptions{});
  EXPECT_TRUE(r.all_passed());
  const auto dense =
      period_report("torus2", "symplectic", std::string("Z+aZ alpha=sqrt2-symbolic"), SuiteOptions{});
  EXPECT_FALSE(dense.all_passed());
}

}  // namespace
}  // namespace jetlie
