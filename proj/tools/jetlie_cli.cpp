// Command-line driver: named verification suites and single computations,
// reported as JSON or text.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "jetlie/catalog.hpp"
#include "jetlie/error.hpp"
#include "jetlie/report.hpp"
#include "jetlie/run_config.hpp"
#include "jetlie/suites.hpp"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Flags {
  std::string group, omega, cocycle, format, output, config, lattice;
  int degree = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

std::string catalog_text(jetlie::ReportFormat format) {
  const auto entries = jetlie::catalog_entries();
  if (format == jetlie::ReportFormat::Json) {
    jetlie::Json out;
    out["schema"] = "jetlie.catalog/1";
    out["entries"] = jetlie::Json::array();
    for (const auto& e : entries) {
      out["entries"].push_back({{"kind", e.kind}, {"name", e.name}, {"description", e.description}});
    }
    out["suites"] = jetlie::suite_names();
    return out.dump(2) + "\n";
  }
  std::string text;
  for (const auto& e : entries) text += e.kind + "\t" + e.name + "\t" + e.description + "\n";
  text += "suite\t";
  for (const auto& s : jetlie::suite_names()) text += s + " ";
  text.back() = '\n';
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for tangent structures, Lie brackets, central extensions "
               "and van Est integration"};
  app.require_subcommand(1);
  Flags flags;
  std::optional<std::string> suite;

  auto* group = app.add_option("--group", flags.group, "group name (see 'catalog')");
  auto* omega = app.add_option("--omega", flags.omega, "Lie algebra 2-cocycle name");
  auto* cocycle = app.add_option("--cocycle", flags.cocycle, "group cocycle name");
  auto* degree = app.add_option("--degree", flags.degree, "simplex rule degree (default 7)");
  auto* tol = app.add_option("--tol", flags.tol, "replace every check tolerance");
  auto* seed = app.add_option("--seed", flags.seed, "sampling seed (default 1)");
  auto* format = app.add_option("--format", flags.format, "json or text (default json)");
  auto* output = app.add_option("--output", flags.output, "report path");
  auto* config = app.add_option("--config", flags.config, "file of 'key value' lines");
  auto* lattice = app.add_option("--lattice", flags.lattice, "lattice literal, e.g. Z2");

  auto* verify = app.add_subcommand("verify", "run a named suite");
  verify->add_option("suite", suite, "tangent-axioms, brackets, extensions, vanest, periods, "
                                     "quotients, examples-ek-dl or all");
  auto* bracket = app.add_subcommand("bracket", "structure constants of --group");
  auto* vanest = app.add_subcommand("vanest", "integrate --omega on --group");
  auto* period = app.add_subcommand("period", "period of --omega over the torus cycle");
  auto* catalog = app.add_subcommand("catalog", "list named groups, forms, cocycles, lattices");
  for (auto* sub : {verify, bracket, vanest, period, catalog}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  jetlie::RunConfig rc;
  try {
    if (config->count() > 0) jetlie::apply_config_file(rc, flags.config);
    if (suite) rc.suite = *suite;
    if (group->count() > 0) rc.group = flags.group;
    if (omega->count() > 0) rc.omega = flags.omega;
    if (cocycle->count() > 0) rc.cocycle = flags.cocycle;
    if (degree->count() > 0) rc.degree = flags.degree;
    if (tol->count() > 0) rc.tol = flags.tol;
    if (seed->count() > 0) rc.seed = flags.seed;
    if (format->count() > 0) rc.format = flags.format;
    if (output->count() > 0) rc.output = flags.output;
    if (lattice->count() > 0) rc.lattice = flags.lattice;

    if (catalog->parsed()) {
      std::cout << catalog_text(jetlie::parse_format(rc.format));
      return 0;
    }
    if (bracket->parsed()) rc.command = jetlie::Command::Bracket;
    if (vanest->parsed()) rc.command = jetlie::Command::Vanest;
    if (period->parsed()) rc.command = jetlie::Command::Period;

    const auto report = jetlie::run(rc);
    const auto fmt = jetlie::parse_format(rc.format);
    if (const auto path = jetlie::output_path(rc)) {
      jetlie::write_report(report, fmt, *path);
      std::cerr << report.passed_count() << "/" << report.checks.size() << " checks passed, report "
                << path->string() << "\n";
    } else {
      std::cout << jetlie::emit(report, fmt);
    }
    return report.all_passed() ? 0 : kExitChecksFailed;
  } catch (const jetlie::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const jetlie::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
