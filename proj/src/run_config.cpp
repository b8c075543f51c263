#include "jetlie/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "jetlie/catalog.hpp"
#include "jetlie/error.hpp"
#include "jetlie/suites.hpp"

namespace jetlie {

namespace {

constexpr int kMaxDegree = 60;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw ConfigError("bad value '" + value + "' for " + key);
  }
  return out;
}

const std::string& require(const std::optional<std::string>& v, const char* what,
                           const char* command) {
  if (!v) throw ConfigError(std::string(command) + " needs --" + what);
  return *v;
}

SuiteOptions suite_options(const RunConfig& c) {
  SuiteOptions o;
  o.seed = c.seed;
  o.tol = c.tol;
  o.degree = c.degree;
  return o;
}

std::string report_name(const RunConfig& c) {
  switch (c.command) {
    case Command::Verify:
      return c.suite;
    case Command::Bracket:
      return "bracket-" + c.group.value_or("");
    case Command::Vanest:
      return "vanest-" + c.group.value_or("") + "-" + c.omega.value_or("");
    case Command::Period:
      return "period-" + c.group.value_or("") + "-" + c.omega.value_or("");
  }
  return "report";
}

}  // namespace

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "suite") {
    config.suite = value;
  } else if (key == "group") {
    config.group = value;
  } else if (key == "omega") {
    config.omega = value;
  } else if (key == "cocycle") {
    config.cocycle = value;
  } else if (key == "degree") {
    config.degree = parse_number<int>(key, value);
  } else if (key == "tol") {
    config.tol = parse_number<double>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "format") {
    config.format = value;
  } else if (key == "output") {
    config.output = value;
  } else if (key == "lattice") {
    config.lattice = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto space = text.find_first_of(" \t");
    if (space == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected 'key value'");
    }
    apply_setting(config, text.substr(0, space), trim(text.substr(space)));
  }
}

void validate(const RunConfig& c) {
  (void)parse_format(c.format);
  if (c.degree < 1 || c.degree > kMaxDegree) {
    throw ConfigError("degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
  }
  if (c.tol && !(std::isfinite(*c.tol) && *c.tol >= 0.0)) {
    throw ConfigError("tol must be a finite nonnegative number");
  }
  if (c.group) check_group_name(*c.group);
  if (c.omega) check_omega_name(*c.omega);
  if (c.cocycle) check_cocycle_name(*c.cocycle);
  if (c.lattice) (void)parse_lattice(*c.lattice);
  switch (c.command) {
    case Command::Verify:
      check_suite_name(c.suite);
      break;
    case Command::Bracket:
      require(c.group, "group", "bracket");
      break;
    case Command::Vanest:
      require(c.group, "group", "vanest");
      require(c.omega, "omega", "vanest");
      break;
    case Command::Period:
      require(c.group, "group", "period");
      require(c.omega, "omega", "period");
      if (c.lattice && parse_lattice(*c.lattice).ambient_dim() != 1) {
        throw ConfigError("period lattice must live in R");
      }
      break;
  }
}

Report run(const RunConfig& c) {
  validate(c);
  const auto options = suite_options(c);
  switch (c.command) {
    case Command::Verify:
      return run_suite(c.suite, options);
    case Command::Bracket:
      return bracket_report(*c.group, c.cocycle, options);
    case Command::Vanest:
      return vanest_report(*c.group, *c.omega, options);
    case Command::Period:
      return period_report(*c.group, *c.omega, c.lattice, options);
  }
  throw ConfigError("unknown command");
}

std::optional<std::filesystem::path> output_path(const RunConfig& c) {
  if (c.output) return std::filesystem::path(*c.output);
  const char* dir = std::getenv(kOutputDirVariable);
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  const char* ext = parse_format(c.format) == ReportFormat::Json ? ".json" : ".txt";
  return std::filesystem::path(dir) / (report_name(c) + ext);
}

}  // namespace jetlie
