#include "jetlie/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "jetlie/error.hpp"
#include "jetlie/vanest.hpp"

namespace jetlie {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_abelian_catalog_group(const ChartedGroup& g) {
  return g.name() == "torus2" || g.name().rfind("rn:", 0) == 0;
}

}  // namespace

std::vector<double> coboundary_functional(int n) {
  std::vector<double> b(static_cast<std::size_t>(n));
  double v = 1.0;
  for (auto& c : b) {
    c = v;
    v *= -0.5;
  }
  return b;
}

std::vector<std::string> omega_catalog() { return {"symplectic", "zero", "coboundary"}; }

void check_omega_name(const std::string& name) {
  const auto names = omega_catalog();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown omega '" + name + "'");
  }
}

AlgebraCocycle make_omega(const std::string& name, const ChartedGroup& g) {
  check_omega_name(name);
  if (name == "zero") return AlgebraCocycle(g.dim(), 1);
  if (name == "symplectic") {
    if (g.dim() < 2) throw ConfigError("omega 'symplectic' needs dimension >= 2");
    return symplectic_cocycle(g.dim());
  }
  const auto b = coboundary_functional(g.dim());
  return algebra_coboundary(structure_constants(g), b);
}

std::vector<std::string> potential_catalog() { return {"lin", "quad", "cubic"}; }

SmoothProgram make_potential(const std::string& name, int n) {
  const auto b = coboundary_functional(n);
  ProgramBuilder pb(n);
  const auto x = pb.inputs();
  Expr h = pb.constant(0.0);
  if (name == "lin") {
    for (int i = 0; i < n; ++i) h = h + b[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  } else if (name == "quad") {
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      h = h + b[k] * x[k] + 0.5 * x[k] * x[(k + 1) % x.size()];
    }
  } else if (name == "cubic") {
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      h = h + b[k] * x[k] + 0.25 * powi(x[k], 3) + x[k] * x[(k + 1) % x.size()];
    }
  } else {
    throw ConfigError("unknown potential '" + name + "'");
  }
  return pb.build({h});
}

std::vector<std::string> cocycle_catalog() {
  std::vector<std::string> names{"heis", "zero"};
  for (const auto& p : potential_catalog()) names.push_back("coboundary:" + p);
  for (const auto& w : omega_catalog()) names.push_back("vanest:" + w);
  return names;
}

void check_cocycle_name(const std::string& name) {
  const auto names = cocycle_catalog();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown cocycle '" + name + "'");
  }
}

GroupCocycle make_cocycle(const std::string& name, const ChartedGroup& g,
                          const QuadratureRule& rule) {
  check_cocycle_name(name);
  const int n = g.dim();
  if (name == "zero") return zero_cocycle(n);
  if (name == "heis") {
    if (!is_abelian_catalog_group(g) || n < 2) {
      throw ConfigError("cocycle 'heis' needs an abelian group of dimension >= 2");
    }
    ProgramBuilder b(2 * n);
    return GroupCocycle("heis", n, b.build({b.input(0) * b.input(n + 1)}),
                        std::numeric_limits<double>::infinity());
  }
  if (name.rfind("coboundary:", 0) == 0) {
    return coboundary_of(g, make_potential(name.substr(11), n), name);
  }
  return vanest_cocycle(g, make_omega(name.substr(7), g), rule, name);
}

std::vector<std::string> lattice_catalog() {
  return {"Z", "Z<n>", "Z+aZ alpha=sqrt<d>-symbolic", "Z+aZ alpha=<number>"};
}

Lattice parse_lattice(std::string_view literal) {
  const auto text = trim(literal);
  if (text == "Z") return Lattice::integer(1);
  if (text.size() > 1 && text.front() == 'Z' && all_digits(text.substr(1)) && text.size() <= 3) {
    const int d = std::stoi(std::string(text.substr(1)));
    if (d >= 1) return Lattice::integer(d);
  }
  constexpr std::string_view kPrefix = "Z+aZ";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    const auto rest = trim(text.substr(kPrefix.size()));
    constexpr std::string_view kAlpha = "alpha=";
    if (rest.substr(0, kAlpha.size()) == kAlpha) {
      const auto value = rest.substr(kAlpha.size());
      constexpr std::string_view kSqrt = "sqrt", kSymbolic = "-symbolic";
      if (value.substr(0, kSqrt.size()) == kSqrt && value.size() > kSqrt.size() + kSymbolic.size() &&
          value.substr(value.size() - kSymbolic.size()) == kSymbolic) {
        const auto digits = value.substr(kSqrt.size(), value.size() - kSqrt.size() - kSymbolic.size());
        if (all_digits(digits) && digits.size() <= 6) {
          try {
            return Lattice::integer_plus(QuadraticNumber::root(std::stol(std::string(digits))));
          } catch (const PreconditionError& e) {
            throw ConfigError("bad lattice literal '" + std::string(text) + "': " + e.what());
          }
        }
      }
      double alpha = 0.0;
      const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), alpha);
      if (ec == std::errc() && end == value.data() + value.size() && std::isfinite(alpha) &&
          alpha != 0.0) {
        return Lattice(1, std::vector<std::vector<double>>{{1.0}, {alpha}});
      }
    }
  }
  throw ConfigError("bad lattice literal '" + std::string(text) + "'");
}

void check_group_name(const std::string& name) { (void)make_group(name); }

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out{
      {"group", "so3", "rotations, rotation-vector chart 2 tan(theta/2) n"},
      {"group", "su2", "unit quaternions, chart twice the vector part"},
      {"group", "heisenberg3", "upper unitriangular 3x3 matrices"},
      {"group", "affine1", "x -> e^p x + q"},
      {"group", "torus2", "R^2 under addition, periodic modulo Z^2"},
      {"group", "rn:<n>", "R^n under addition"},
      {"omega", "symplectic", "w(x, y) = x0 y1 - x1 y0"},
      {"omega", "zero", "w = 0"},
      {"omega", "coboundary", "w(x, y) = b([x, y]), b = (1, -1/2, 1/4, ...)"},
      {"cocycle", "heis", "f(x, y) = x0 y1 on an abelian group"},
      {"cocycle", "zero", "f = 0"},
      {"cocycle", "coboundary:lin", "f = -h(xy) + h(x) + h(y), h = b.x"},
      {"cocycle", "coboundary:quad", "h = b.x + x_k x_{k+1} / 2"},
      {"cocycle", "coboundary:cubic", "h = b.x + x_k^3 / 4 + x_k x_{k+1}"},
      {"cocycle", "vanest:<omega>", "integral of the left-invariant form over gamma(x, y)"},
      {"lattice", "Z<n>", "the integer lattice of R^n (Z alone for n = 1)"},
      {"lattice", "Z+aZ alpha=sqrt<d>-symbolic", "Z + sqrt(d) Z in R, exact coordinates"},
      {"lattice", "Z+aZ alpha=<number>", "Z + alpha Z in R, floating point"},
  };
  return out;
}

}  // namespace jetlie
