#include "jetlie/program.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>

#include "jetlie/error.hpp"

namespace jetlie {

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::Const: return "const";
    case Op::Input: return "input";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Neg: return "neg";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sqrt: return "sqrt";
    case Op::Atan: return "atan";
    case Op::Atan2: return "atan2";
    case Op::PowInt: return "powi";
  }
  return "?";
}

namespace {

bool is_binary(Op op) {
  return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div || op == Op::Atan2;
}

bool is_unary(Op op) {
  switch (op) {
    case Op::Neg:
    case Op::Exp:
    case Op::Log:
    case Op::Sin:
    case Op::Cos:
    case Op::Sqrt:
    case Op::Atan:
    case Op::PowInt:
      return true;
    default:
      return false;
  }
}

// Double primitives with explicit domain guards. The jet overloads live in
// jet.cpp and guard the same domains.
double s_div(double a, double b) {
  if (b == 0.0) throw DomainError("division by zero");
  return a / b;
}
double s_log(double a) {
  if (!(a > 0.0)) throw DomainError("log of nonpositive value " + std::to_string(a));
  return std::log(a);
}
double s_sqrt(double a) {
  if (a < 0.0) throw DomainError("sqrt of negative value " + std::to_string(a));
  return std::sqrt(a);
}
double s_atan2(double y, double x) {
  if (x == 0.0 && y == 0.0) throw DomainError("atan2 undefined at the origin");
  return std::atan2(y, x);
}
double s_powi(double a, int n) {
  if (n < 0) return s_div(1.0, s_powi(a, -n));
  double result = 1.0;
  double base = a;
  unsigned e = static_cast<unsigned>(n);
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

JetScalar s_div(const JetScalar& a, const JetScalar& b) { return a / b; }
JetScalar s_log(const JetScalar& a) { return log(a); }
JetScalar s_sqrt(const JetScalar& a) { return sqrt(a); }
JetScalar s_atan2(const JetScalar& y, const JetScalar& x) { return atan2(y, x); }
JetScalar s_powi(const JetScalar& a, int n) { return powi(a, n); }

template <class S>
S apply_binary(Op op, const S& a, const S& b) {
  using std::atan2;
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return s_div(a, b);
    case Op::Atan2: return s_atan2(a, b);
    default: break;
  }
  throw PreconditionError("not a binary op");
}

template <class S>
S apply_unary(Op op, const S& a, int k) {
  using std::atan;
  using std::cos;
  using std::exp;
  using std::sin;
  switch (op) {
    case Op::Neg: return -a;
    case Op::Exp: return exp(a);
    case Op::Log: return s_log(a);
    case Op::Sin: return sin(a);
    case Op::Cos: return cos(a);
    case Op::Sqrt: return s_sqrt(a);
    case Op::Atan: return atan(a);
    case Op::PowInt: return s_powi(a, k);
    default: break;
  }
  throw PreconditionError("not a unary op");
}

}  // namespace

// ---------------------------------------------------------------------------
// SmoothProgram

SmoothProgram::SmoothProgram(int arity, std::vector<Node> nodes, std::vector<std::int32_t> outputs)
    : arity_(arity), nodes_(std::move(nodes)), outputs_(std::move(outputs)) {
  if (arity_ < 0) throw PreconditionError("negative arity");
  const auto n = static_cast<std::int32_t>(nodes_.size());
  for (std::int32_t i = 0; i < n; ++i) {
    const Node& nd = nodes_[static_cast<std::size_t>(i)];
    if (nd.op == Op::Input && (nd.k < 0 || nd.k >= arity_)) {
      throw PreconditionError("input slot out of range");
    }
    if (is_unary(nd.op) && !(nd.a >= 0 && nd.a < i)) {
      throw PreconditionError("operand does not precede its node");
    }
    if (is_binary(nd.op) && !(nd.a >= 0 && nd.a < i && nd.b >= 0 && nd.b < i)) {
      throw PreconditionError("operand does not precede its node");
    }
  }
  for (auto o : outputs_) {
    if (o < 0 || o >= n) throw PreconditionError("output reference out of range");
  }
}

template <class S>
std::vector<S> SmoothProgram::eval_impl(std::span<const S> x) const {
  if (static_cast<int>(x.size()) != arity_) {
    throw PreconditionError("program expects " + std::to_string(arity_) + " inputs, got " +
                            std::to_string(x.size()));
  }
  int order = 0;
  if constexpr (std::is_same_v<S, JetScalar>) {
    if (!x.empty()) order = x[0].order();
    for (const auto& xi : x) {
      if (xi.order() != order) throw PreconditionError("program inputs differ in jet order");
    }
  }
  std::vector<S> vals;
  vals.reserve(nodes_.size());
  for (const Node& nd : nodes_) {
    switch (nd.op) {
      case Op::Const:
        if constexpr (std::is_same_v<S, JetScalar>) {
          vals.emplace_back(order, nd.value);
        } else {
          vals.push_back(nd.value);
        }
        break;
      case Op::Input:
        vals.push_back(x[static_cast<std::size_t>(nd.k)]);
        break;
      default:
        if (is_binary(nd.op)) {
          vals.push_back(apply_binary<S>(nd.op, vals[static_cast<std::size_t>(nd.a)],
                                         vals[static_cast<std::size_t>(nd.b)]));
        } else {
          vals.push_back(apply_unary<S>(nd.op, vals[static_cast<std::size_t>(nd.a)], nd.k));
        }
    }
  }
  std::vector<S> out;
  out.reserve(outputs_.size());
  for (auto o : outputs_) out.push_back(vals[static_cast<std::size_t>(o)]);
  return out;
}

std::vector<double> SmoothProgram::eval(std::span<const double> x) const {
  return eval_impl<double>(x);
}

std::vector<JetScalar> SmoothProgram::eval(std::span<const JetScalar> x) const {
  return eval_impl<JetScalar>(x);
}

JetVector SmoothProgram::eval(const JetVector& x) const {
  const auto& comps = x.components();
  auto out = eval_impl<JetScalar>(std::span<const JetScalar>(comps));
  if (out.empty()) return JetVector(x.order(), 0);
  return JetVector(std::move(out));
}

// ---------------------------------------------------------------------------
// ProgramBuilder

std::size_t ProgramBuilder::NodeHash::operator()(const Node& n) const noexcept {
  std::size_t h = static_cast<std::size_t>(n.op);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::size_t>(static_cast<std::uint32_t>(n.a)));
  mix(static_cast<std::size_t>(static_cast<std::uint32_t>(n.b)));
  mix(static_cast<std::size_t>(static_cast<std::uint32_t>(n.k)));
  mix(std::bit_cast<std::uint64_t>(n.value));
  return h;
}

ProgramBuilder::ProgramBuilder(int arity) : arity_(arity) {
  if (arity < 0) throw PreconditionError("negative arity");
  for (int i = 0; i < arity; ++i) {
    Node n;
    n.op = Op::Input;
    n.k = i;
    intern(n);
  }
}

Expr ProgramBuilder::intern(const Node& n) {
  auto [it, inserted] = index_.try_emplace(n, static_cast<std::int32_t>(nodes_.size()));
  if (inserted) nodes_.push_back(n);
  return Expr(this, it->second);
}

void ProgramBuilder::check_owner(Expr e) const {
  if (e.owner() != this || e.id() < 0 || static_cast<std::size_t>(e.id()) >= nodes_.size()) {
    throw PreconditionError("expression belongs to a different builder");
  }
}

bool ProgramBuilder::is_const(Expr e, double v) const {
  const Node& n = node(e);
  return n.op == Op::Const && n.value == v;
}

Expr ProgramBuilder::input(int i) {
  if (i < 0 || i >= arity_) throw PreconditionError("input index out of range");
  return Expr(this, i);
}

std::vector<Expr> ProgramBuilder::inputs(int first, int count) {
  std::vector<Expr> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(input(first + i));
  return out;
}

Expr ProgramBuilder::constant(double v) {
  if (!std::isfinite(v)) throw PreconditionError("non-finite program constant");
  Node n;
  n.op = Op::Const;
  n.value = v == 0.0 ? 0.0 : v;  // one canonical zero
  return intern(n);
}

Expr ProgramBuilder::binary(Op op, Expr a, Expr b) {
  check_owner(a);
  check_owner(b);
  if (!is_binary(op)) throw PreconditionError("not a binary op");
  if (is_const(a) && is_const(b)) {
    const double x = node(a).value;
    const double y = node(b).value;
    const bool foldable = !(op == Op::Div && y == 0.0) && !(op == Op::Atan2 && x == 0.0 && y == 0.0);
    if (foldable) return constant(apply_binary<double>(op, x, y));
  }
  switch (op) {
    case Op::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      if (a.id() > b.id()) std::swap(a, b);
      break;
    case Op::Sub:
      if (is_const(b, 0.0)) return a;
      if (is_const(a, 0.0)) return unary(Op::Neg, b);
      if (a.id() == b.id()) return constant(0.0);
      break;
    case Op::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      if (is_const(a, -1.0)) return unary(Op::Neg, b);
      if (is_const(b, -1.0)) return unary(Op::Neg, a);
      if (a.id() > b.id()) std::swap(a, b);
      break;
    case Op::Div:
      if (is_const(b, 1.0)) return a;
      break;
    default:
      break;
  }
  Node n;
  n.op = op;
  n.a = a.id();
  n.b = b.id();
  return intern(n);
}

Expr ProgramBuilder::unary(Op op, Expr a) {
  check_owner(a);
  if (!is_unary(op) || op == Op::PowInt) throw PreconditionError("not a plain unary op");
  if (is_const(a)) {
    try {
      return constant(apply_unary<double>(op, node(a).value, 0));
    } catch (const DomainError&) {
      // leave the node in place so evaluation reports the domain error
    }
  }
  if (op == Op::Neg && node(a).op == Op::Neg) return Expr(this, node(a).a);
  Node n;
  n.op = op;
  n.a = a.id();
  return intern(n);
}

Expr ProgramBuilder::powi(Expr a, int n) {
  check_owner(a);
  if (n == 0) return constant(1.0);
  if (n == 1) return a;
  if (is_const(a) && !(n < 0 && node(a).value == 0.0)) {
    return constant(s_powi(node(a).value, n));
  }
  Node nd;
  nd.op = Op::PowInt;
  nd.a = a.id();
  nd.k = n;
  return intern(nd);
}

std::vector<Expr> ProgramBuilder::call(const SmoothProgram& p, std::span<const Expr> args) {
  if (static_cast<int>(args.size()) != p.arity()) {
    throw PreconditionError("call: argument count does not match program arity");
  }
  std::vector<Expr> map;
  map.reserve(p.nodes().size());
  for (const Node& nd : p.nodes()) {
    switch (nd.op) {
      case Op::Const: map.push_back(constant(nd.value)); break;
      case Op::Input: map.push_back(args[static_cast<std::size_t>(nd.k)]); break;
      case Op::PowInt: map.push_back(powi(map[static_cast<std::size_t>(nd.a)], nd.k)); break;
      default:
        if (is_binary(nd.op)) {
          map.push_back(binary(nd.op, map[static_cast<std::size_t>(nd.a)],
                               map[static_cast<std::size_t>(nd.b)]));
        } else {
          map.push_back(unary(nd.op, map[static_cast<std::size_t>(nd.a)]));
        }
    }
  }
  std::vector<Expr> out;
  out.reserve(p.outputs().size());
  for (auto o : p.outputs()) out.push_back(map[static_cast<std::size_t>(o)]);
  return out;
}

std::vector<Expr> ProgramBuilder::call_tangent(const SmoothProgram& p, std::span<const Expr> point,
                                               std::span<const Expr> direction) {
  if (static_cast<int>(point.size()) != p.arity() || direction.size() != point.size()) {
    throw PreconditionError("call_tangent: argument count does not match program arity");
  }
  const std::size_t count = p.nodes().size();
  std::vector<Expr> val;
  std::vector<Expr> der;
  val.reserve(count);
  der.reserve(count);
  const Expr zero = constant(0.0);
  for (const Node& nd : p.nodes()) {
    const auto ia = static_cast<std::size_t>(nd.a);
    const auto ib = static_cast<std::size_t>(nd.b);
    switch (nd.op) {
      case Op::Const:
        val.push_back(constant(nd.value));
        der.push_back(zero);
        break;
      case Op::Input:
        val.push_back(point[static_cast<std::size_t>(nd.k)]);
        der.push_back(direction[static_cast<std::size_t>(nd.k)]);
        break;
      case Op::Add:
        val.push_back(val[ia] + val[ib]);
        der.push_back(der[ia] + der[ib]);
        break;
      case Op::Sub:
        val.push_back(val[ia] - val[ib]);
        der.push_back(der[ia] - der[ib]);
        break;
      case Op::Mul:
        val.push_back(val[ia] * val[ib]);
        der.push_back(der[ia] * val[ib] + val[ia] * der[ib]);
        break;
      case Op::Div: {
        const Expr r = val[ia] / val[ib];
        val.push_back(r);
        der.push_back((der[ia] - r * der[ib]) / val[ib]);
        break;
      }
      case Op::Neg:
        val.push_back(-val[ia]);
        der.push_back(-der[ia]);
        break;
      case Op::Exp: {
        const Expr r = exp(val[ia]);
        val.push_back(r);
        der.push_back(r * der[ia]);
        break;
      }
      case Op::Log:
        val.push_back(log(val[ia]));
        der.push_back(der[ia] / val[ia]);
        break;
      case Op::Sin:
        val.push_back(sin(val[ia]));
        der.push_back(cos(val[ia]) * der[ia]);
        break;
      case Op::Cos:
        val.push_back(cos(val[ia]));
        der.push_back(-(sin(val[ia]) * der[ia]));
        break;
      case Op::Sqrt: {
        const Expr r = sqrt(val[ia]);
        val.push_back(r);
        der.push_back((0.5 * der[ia]) / r);
        break;
      }
      case Op::Atan:
        val.push_back(atan(val[ia]));
        der.push_back(der[ia] / (1.0 + val[ia] * val[ia]));
        break;
      case Op::Atan2: {
        const Expr y = val[ia];
        const Expr x = val[ib];
        val.push_back(atan2(y, x));
        der.push_back((x * der[ia] - y * der[ib]) / (x * x + y * y));
        break;
      }
      case Op::PowInt: {
        const int n = nd.k;
        val.push_back(powi(val[ia], n));
        der.push_back(static_cast<double>(n) * powi(val[ia], n - 1) * der[ia]);
        break;
      }
    }
  }
  std::vector<Expr> out;
  out.reserve(2 * p.outputs().size());
  for (auto o : p.outputs()) out.push_back(val[static_cast<std::size_t>(o)]);
  for (auto o : p.outputs()) out.push_back(der[static_cast<std::size_t>(o)]);
  return out;
}

SmoothProgram ProgramBuilder::build(std::span<const Expr> outputs) const {
  for (const auto& e : outputs) check_owner(e);
  // keep inputs plus everything reachable from the outputs
  std::vector<char> live(nodes_.size(), 0);
  for (int i = 0; i < arity_; ++i) live[static_cast<std::size_t>(i)] = 1;
  for (const auto& e : outputs) live[static_cast<std::size_t>(e.id())] = 1;
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (!live[i]) continue;
    const Node& n = nodes_[i];
    if (is_unary(n.op)) live[static_cast<std::size_t>(n.a)] = 1;
    if (is_binary(n.op)) {
      live[static_cast<std::size_t>(n.a)] = 1;
      live[static_cast<std::size_t>(n.b)] = 1;
    }
  }
  std::vector<std::int32_t> remap(nodes_.size(), -1);
  std::vector<Node> kept;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!live[i]) continue;
    Node n = nodes_[i];
    if (is_unary(n.op)) n.a = remap[static_cast<std::size_t>(n.a)];
    if (is_binary(n.op)) {
      n.a = remap[static_cast<std::size_t>(n.a)];
      n.b = remap[static_cast<std::size_t>(n.b)];
    }
    remap[i] = static_cast<std::int32_t>(kept.size());
    kept.push_back(n);
  }
  std::vector<std::int32_t> outs;
  outs.reserve(outputs.size());
  for (const auto& e : outputs) outs.push_back(remap[static_cast<std::size_t>(e.id())]);
  return SmoothProgram(arity_, std::move(kept), std::move(outs));
}

// ---------------------------------------------------------------------------
// Expr operators

namespace {
ProgramBuilder& owner_of(Expr a) {
  if (!a.valid()) throw PreconditionError("use of an empty expression");
  return *a.owner();
}
}  // namespace

Expr operator+(Expr a, Expr b) { return owner_of(a).binary(Op::Add, a, b); }
Expr operator-(Expr a, Expr b) { return owner_of(a).binary(Op::Sub, a, b); }
Expr operator*(Expr a, Expr b) { return owner_of(a).binary(Op::Mul, a, b); }
Expr operator/(Expr a, Expr b) { return owner_of(a).binary(Op::Div, a, b); }
Expr operator-(Expr a) { return owner_of(a).unary(Op::Neg, a); }
Expr operator+(Expr a, double c) { return a + owner_of(a).constant(c); }
Expr operator+(double c, Expr a) { return owner_of(a).constant(c) + a; }
Expr operator-(Expr a, double c) { return a - owner_of(a).constant(c); }
Expr operator-(double c, Expr a) { return owner_of(a).constant(c) - a; }
Expr operator*(Expr a, double c) { return a * owner_of(a).constant(c); }
Expr operator*(double c, Expr a) { return owner_of(a).constant(c) * a; }
Expr operator/(Expr a, double c) { return a / owner_of(a).constant(c); }
Expr operator/(double c, Expr a) { return owner_of(a).constant(c) / a; }
Expr exp(Expr a) { return owner_of(a).unary(Op::Exp, a); }
Expr log(Expr a) { return owner_of(a).unary(Op::Log, a); }
Expr sin(Expr a) { return owner_of(a).unary(Op::Sin, a); }
Expr cos(Expr a) { return owner_of(a).unary(Op::Cos, a); }
Expr sqrt(Expr a) { return owner_of(a).unary(Op::Sqrt, a); }
Expr atan(Expr a) { return owner_of(a).unary(Op::Atan, a); }
Expr atan2(Expr y, Expr x) { return owner_of(y).binary(Op::Atan2, y, x); }
Expr powi(Expr a, int n) { return owner_of(a).powi(a, n); }

// ---------------------------------------------------------------------------
// Program algebra

SmoothProgram identity_program(int n) {
  ProgramBuilder b(n);
  const auto in = b.inputs();
  return b.build(in);
}

SmoothProgram constant_program(int arity, std::span<const double> values) {
  ProgramBuilder b(arity);
  std::vector<Expr> outs;
  outs.reserve(values.size());
  for (double v : values) outs.push_back(b.constant(v));
  return b.build(outs);
}

SmoothProgram compose(const SmoothProgram& outer, const SmoothProgram& inner) {
  if (outer.arity() != inner.codim()) {
    throw PreconditionError("compose: outer arity " + std::to_string(outer.arity()) +
                            " != inner codim " + std::to_string(inner.codim()));
  }
  ProgramBuilder b(inner.arity());
  const auto in = b.inputs();
  const auto mid = b.call(inner, in);
  const auto out = b.call(outer, mid);
  return b.build(out);
}

SmoothProgram pairing(const SmoothProgram& f, const SmoothProgram& g) {
  if (f.arity() != g.arity()) throw PreconditionError("pairing: arity mismatch");
  ProgramBuilder b(f.arity());
  const auto in = b.inputs();
  auto out = b.call(f, in);
  const auto og = b.call(g, in);
  out.insert(out.end(), og.begin(), og.end());
  return b.build(out);
}

SmoothProgram product(const SmoothProgram& f, const SmoothProgram& g) {
  ProgramBuilder b(f.arity() + g.arity());
  const auto x = b.inputs(0, f.arity());
  const auto y = b.inputs(f.arity(), g.arity());
  auto out = b.call(f, x);
  const auto og = b.call(g, y);
  out.insert(out.end(), og.begin(), og.end());
  return b.build(out);
}

SmoothProgram select_outputs(const SmoothProgram& p, std::span<const int> indices) {
  ProgramBuilder b(p.arity());
  const auto in = b.inputs();
  const auto all = b.call(p, in);
  std::vector<Expr> out;
  out.reserve(indices.size());
  for (int i : indices) {
    if (i < 0 || i >= p.codim()) throw PreconditionError("select_outputs: index out of range");
    out.push_back(all[static_cast<std::size_t>(i)]);
  }
  return b.build(out);
}

SmoothProgram tangent(const SmoothProgram& p) {
  const int n = p.arity();
  ProgramBuilder b(2 * n);
  const auto u = b.inputs(0, n);
  const auto v = b.inputs(n, n);
  const auto out = b.call_tangent(p, u, v);
  return b.build(out);
}

SmoothProgram partial_tangent(const SmoothProgram& p, int which, InputSplit split) {
  const int n1 = split.first;
  const int n2 = split.second;
  if (n1 < 0 || n2 < 0 || n1 + n2 != p.arity()) {
    throw PreconditionError("partial_tangent: split (" + std::to_string(n1) + ", " +
                            std::to_string(n2) + ") does not match arity " +
                            std::to_string(p.arity()));
  }
  if (which != 1 && which != 2) throw PreconditionError("partial_tangent: which must be 1 or 2");
  if (which == 1) {
    ProgramBuilder b(2 * n1 + n2);
    auto point = b.inputs(0, n1);
    auto dir = b.inputs(n1, n1);
    const auto y = b.inputs(2 * n1, n2);
    point.insert(point.end(), y.begin(), y.end());
    dir.insert(dir.end(), static_cast<std::size_t>(n2), b.constant(0.0));
    return b.build(b.call_tangent(p, point, dir));
  }
  ProgramBuilder b(n1 + 2 * n2);
  const auto point = b.inputs(0, n1 + n2);
  std::vector<Expr> dir(static_cast<std::size_t>(n1), b.constant(0.0));
  const auto vy = b.inputs(n1 + n2, n2);
  dir.insert(dir.end(), vy.begin(), vy.end());
  return b.build(b.call_tangent(p, point, dir));
}

std::vector<double> jacobian(const SmoothProgram& p, std::span<const double> x) {
  const auto n = static_cast<std::size_t>(p.arity());
  const auto m = static_cast<std::size_t>(p.codim());
  if (x.size() != n) throw PreconditionError("jacobian: wrong input length");
  std::vector<double> jac(m * n);
  std::vector<double> dir(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    dir[j] = 1.0;
    const JetVector out = p.eval(seed(x, dir, 1, 1));
    for (std::size_t i = 0; i < m; ++i) jac[i * n + j] = out[i][1];
    dir[j] = 0.0;
  }
  return jac;
}

std::vector<double> fd_jacobian(const SmoothProgram& p, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw PreconditionError("fd_jacobian: step must be positive");
  const auto n = static_cast<std::size_t>(p.arity());
  const auto m = static_cast<std::size_t>(p.codim());
  if (x.size() != n) throw PreconditionError("fd_jacobian: wrong input length");
  std::vector<double> jac(m * n);
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> xm(x.begin(), x.end());
  for (std::size_t j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const auto fp = p.eval(xp);
    const auto fm = p.eval(xm);
    for (std::size_t i = 0; i < m; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return jac;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_sexpr(const SmoothProgram& p) {
  const auto& nodes = p.nodes();
  auto ref = [&nodes](std::int32_t id) -> std::string {
    const Node& n = nodes[static_cast<std::size_t>(id)];
    if (n.op == Op::Const) return format_number(n.value);
    if (n.op == Op::Input) return "x" + std::to_string(n.k);
    return "t" + std::to_string(id);
  };
  std::ostringstream os;
  os << "(program " << p.arity() << "\n  (let (";
  bool first = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.op == Op::Const || n.op == Op::Input) continue;
    os << (first ? "" : "\n        ") << "(t" << i << " (" << op_name(n.op) << ' ' << ref(n.a);
    if (is_binary(n.op)) os << ' ' << ref(n.b);
    if (n.op == Op::PowInt) os << ' ' << n.k;
    os << "))";
    first = false;
  }
  os << ")";
  for (auto o : p.outputs()) os << "\n    " << ref(o);
  os << "))\n";
  return os.str();
}

namespace {

struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class SexpReader {
 public:
  explicit SexpReader(std::string_view text) : text_(text) {}

  Sexp read() {
    skip_space();
    if (pos_ >= text_.size()) throw ConfigError("program text: unexpected end of input");
    if (text_[pos_] == ')') throw ConfigError("program text: unexpected ')'");
    if (text_[pos_] == '(') {
      ++pos_;
      Sexp s;
      s.is_list = true;
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) throw ConfigError("program text: missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          return s;
        }
        s.list.push_back(read());
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    Sexp s;
    s.atom = std::string(text_.substr(start, pos_ - start));
    return s;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char c = s[0];
  if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
        ((c == '-' || c == '+') && s.size() > 1))) {
    return false;
  }
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
  double d = 0.0;
  if (!parse_number(s, d) || d != std::floor(d) || std::abs(d) > 1e9) return false;
  out = static_cast<int>(d);
  return true;
}

class ProgramParser {
 public:
  explicit ProgramParser(ProgramBuilder& b) : b_(b) {}

  void bind(const std::string& name, Expr e) {
    if (name.size() > 1 && name[0] == 'x' && std::isdigit(static_cast<unsigned char>(name[1]))) {
      throw ConfigError("program text: binding name '" + name + "' shadows an input");
    }
    env_[name] = e;
  }

  Expr expr(const Sexp& s) {
    if (!s.is_list) {
      double v = 0.0;
      if (parse_number(s.atom, v)) return b_.constant(v);
      if (s.atom.size() > 1 && s.atom[0] == 'x') {
        int i = 0;
        if (parse_int(s.atom.substr(1), i)) {
          if (i < 0 || i >= b_.arity()) throw ConfigError("program text: input " + s.atom + " out of range");
          return b_.input(i);
        }
      }
      auto it = env_.find(s.atom);
      if (it == env_.end()) throw ConfigError("program text: unknown name '" + s.atom + "'");
      return it->second;
    }
    if (s.list.empty() || s.list[0].is_list) throw ConfigError("program text: malformed application");
    const std::string& op = s.list[0].atom;
    const std::size_t argc = s.list.size() - 1;
    auto arg = [&](std::size_t i) { return expr(s.list[i + 1]); };
    auto need = [&](std::size_t n) {
      if (argc != n) throw ConfigError("program text: '" + op + "' takes " + std::to_string(n) + " operands");
    };
    if (op == "+" || op == "*") {
      if (argc < 1) throw ConfigError("program text: '" + op + "' needs operands");
      Expr acc = arg(0);
      for (std::size_t i = 1; i < argc; ++i) acc = op == "+" ? acc + arg(i) : acc * arg(i);
      return acc;
    }
    if (op == "-") {
      if (argc == 1) return -arg(0);
      need(2);
      return arg(0) - arg(1);
    }
    if (op == "/") { need(2); return arg(0) / arg(1); }
    if (op == "atan2") { need(2); return atan2(arg(0), arg(1)); }
    if (op == "powi") {
      need(2);
      int n = 0;
      if (s.list[2].is_list || !parse_int(s.list[2].atom, n)) {
        throw ConfigError("program text: powi exponent must be an integer literal");
      }
      return powi(arg(0), n);
    }
    static const std::map<std::string, Op, std::less<>> unary_ops{
        {"neg", Op::Neg}, {"exp", Op::Exp}, {"log", Op::Log}, {"sin", Op::Sin},
        {"cos", Op::Cos}, {"sqrt", Op::Sqrt}, {"atan", Op::Atan}};
    auto it = unary_ops.find(op);
    if (it == unary_ops.end()) throw ConfigError("program text: unknown operator '" + op + "'");
    need(1);
    return b_.unary(it->second, arg(0));
  }

 private:
  ProgramBuilder& b_;
  std::map<std::string, Expr, std::less<>> env_;
};

}  // namespace

SmoothProgram parse_program(std::string_view text) {
  SexpReader reader(text);
  const Sexp top = reader.read();
  if (!reader.at_end()) throw ConfigError("program text: trailing input");
  if (!top.is_list || top.list.size() < 2 || top.list[0].is_list || top.list[0].atom != "program") {
    throw ConfigError("program text: expected (program ARITY ...)");
  }
  int arity = 0;
  if (top.list[1].is_list || !parse_int(top.list[1].atom, arity) || arity < 0) {
    throw ConfigError("program text: bad arity");
  }
  ProgramBuilder b(arity);
  ProgramParser parser(b);
  std::vector<Expr> outs;
  std::vector<const Sexp*> bodies;
  if (top.list.size() == 3 && top.list[2].is_list && !top.list[2].list.empty() &&
      !top.list[2].list[0].is_list && top.list[2].list[0].atom == "let") {
    const Sexp& let = top.list[2];
    if (let.list.size() < 2 || !let.list[1].is_list) throw ConfigError("program text: malformed let");
    for (const Sexp& binding : let.list[1].list) {
      if (!binding.is_list || binding.list.size() != 2 || binding.list[0].is_list) {
        throw ConfigError("program text: malformed binding");
      }
      parser.bind(binding.list[0].atom, parser.expr(binding.list[1]));
    }
    for (std::size_t i = 2; i < let.list.size(); ++i) bodies.push_back(&let.list[i]);
  } else {
    for (std::size_t i = 2; i < top.list.size(); ++i) bodies.push_back(&top.list[i]);
  }
  for (const Sexp* s : bodies) outs.push_back(parser.expr(*s));
  return b.build(outs);
}

}  // namespace jetlie
