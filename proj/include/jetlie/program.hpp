#pragma once

/**
 * @file program.hpp
 * @brief Smooth maps between open subsets of Cartesian spaces, as closed
 * computation DAGs over an abstract scalar ring.
 *
 * One SmoothProgram evaluates over doubles and over JetScalar. Evaluating on
 * order-k jets realizes T^k of the map; tangent() builds the same thing as a
 * new program by forward-mode source transformation, so the two routes check
 * each other.
 *
 * Usage:
 * @code
 * jetlie::ProgramBuilder b(2);
 * auto x = b.input(0), y = b.input(1);
 * auto p = b.build({x * y + sin(x)});
 * p.eval(std::vector<double>{1.0, 2.0});
 * @endcode
 */

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jetlie/jet.hpp"

namespace jetlie {

enum class Op : std::uint8_t {
  Const,
  Input,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Exp,
  Log,
  Sin,
  Cos,
  Sqrt,
  Atan,
  Atan2,
  PowInt,
};

std::string_view op_name(Op op) noexcept;

struct Node {
  Op op = Op::Const;
  std::int32_t a = -1;  ///< first operand
  std::int32_t b = -1;  ///< second operand (binary ops)
  std::int32_t k = 0;   ///< input slot or integer exponent
  double value = 0.0;   ///< constant value

  friend bool operator==(const Node&, const Node&) = default;
};

class SmoothProgram {
 public:
  SmoothProgram() = default;
  /// Validates that the graph is topologically ordered and outputs resolve.
  SmoothProgram(int arity, std::vector<Node> nodes, std::vector<std::int32_t> outputs);

  int arity() const noexcept { return arity_; }
  int codim() const noexcept { return static_cast<int>(outputs_.size()); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<std::int32_t>& outputs() const noexcept { return outputs_; }

  std::vector<double> eval(std::span<const double> x) const;
  std::vector<JetScalar> eval(std::span<const JetScalar> x) const;
  JetVector eval(const JetVector& x) const;

  std::vector<double> operator()(std::span<const double> x) const { return eval(x); }

 private:
  template <class S>
  std::vector<S> eval_impl(std::span<const S> x) const;

  int arity_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> outputs_;
};

class ProgramBuilder;

/// Handle to a node under construction.
class Expr {
 public:
  Expr() = default;
  Expr(ProgramBuilder* owner, std::int32_t id) : owner_(owner), id_(id) {}

  std::int32_t id() const noexcept { return id_; }
  ProgramBuilder* owner() const noexcept { return owner_; }
  bool valid() const noexcept { return owner_ != nullptr && id_ >= 0; }

 private:
  ProgramBuilder* owner_ = nullptr;
  std::int32_t id_ = -1;
};

/// Incremental DAG construction with hash-consing and exact constant folding.
class ProgramBuilder {
 public:
  explicit ProgramBuilder(int arity);
  ProgramBuilder(const ProgramBuilder&) = delete;
  ProgramBuilder& operator=(const ProgramBuilder&) = delete;

  int arity() const noexcept { return arity_; }
  Expr input(int i);
  std::vector<Expr> inputs(int first, int count);
  std::vector<Expr> inputs() { return inputs(0, arity_); }
  Expr constant(double v);

  Expr binary(Op op, Expr a, Expr b);
  Expr unary(Op op, Expr a);
  Expr powi(Expr a, int n);

  /// Inlines @p p applied to @p args.
  std::vector<Expr> call(const SmoothProgram& p, std::span<const Expr> args);
  /// Inlines T p at (point, direction); returns (p(point), D p(point) direction).
  std::vector<Expr> call_tangent(const SmoothProgram& p, std::span<const Expr> point,
                                 std::span<const Expr> direction);

  SmoothProgram build(std::span<const Expr> outputs) const;
  SmoothProgram build(std::initializer_list<Expr> outputs) const {
    return build(std::span<const Expr>(outputs.begin(), outputs.size()));
  }

  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept;
  };

  Expr intern(const Node& n);
  const Node& node(Expr e) const { return nodes_[static_cast<std::size_t>(e.id())]; }
  bool is_const(Expr e, double v) const;
  bool is_const(Expr e) const { return node(e).op == Op::Const; }
  void check_owner(Expr e) const;

  int arity_;
  std::vector<Node> nodes_;
  std::unordered_map<Node, std::int32_t, NodeHash> index_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr operator+(Expr a, double c);
Expr operator+(double c, Expr a);
Expr operator-(Expr a, double c);
Expr operator-(double c, Expr a);
Expr operator*(Expr a, double c);
Expr operator*(double c, Expr a);
Expr operator/(Expr a, double c);
Expr operator/(double c, Expr a);
Expr exp(Expr a);
Expr log(Expr a);
Expr sin(Expr a);
Expr cos(Expr a);
Expr sqrt(Expr a);
Expr atan(Expr a);
Expr atan2(Expr y, Expr x);
Expr powi(Expr a, int n);

// ---------------------------------------------------------------------------
// Program algebra

SmoothProgram identity_program(int n);
/// x -> values, ignoring the @p arity inputs.
SmoothProgram constant_program(int arity, std::span<const double> values);
/// outer o inner
SmoothProgram compose(const SmoothProgram& outer, const SmoothProgram& inner);
/// x -> (f(x), g(x))
SmoothProgram pairing(const SmoothProgram& f, const SmoothProgram& g);
/// (x, y) -> (f(x), g(y))
SmoothProgram product(const SmoothProgram& f, const SmoothProgram& g);
SmoothProgram select_outputs(const SmoothProgram& p, std::span<const int> indices);

/// T p: inputs (u, v) of length 2n, outputs (p(u), D_u p(v)) of length 2m.
SmoothProgram tangent(const SmoothProgram& p);

/// Split of the inputs of a map X x Y -> Z into (dim X, dim Y).
struct InputSplit {
  int first = 0;
  int second = 0;
};

/**
 * Partial tangents of p: X x Y -> Z.
 *  - which = 1: T(1)p = Tp o (1 x 0), inputs (x, vx, y), outputs (z, vz)
 *  - which = 2: T(2)p = Tp o (0 x 1), inputs (x, y, vy), outputs (z, vz)
 */
SmoothProgram partial_tangent(const SmoothProgram& p, int which, InputSplit split);

/// Jacobian by order-1 jets (one evaluation per input direction), row-major m x n.
std::vector<double> jacobian(const SmoothProgram& p, std::span<const double> x);

inline constexpr double kDefaultFdStep = 1e-5;

/// Central-difference Jacobian, row-major m x n, error O(h^2).
std::vector<double> fd_jacobian(const SmoothProgram& p, std::span<const double> x,
                                double h = kDefaultFdStep);

// ---------------------------------------------------------------------------
// Text form
//
//   program  := "(" "program" ARITY body ")"
//   body     := expr* | "(" "let" "(" binding* ")" expr* ")"
//   binding  := "(" NAME expr ")"
//   expr     := NUMBER | "x" INDEX | NAME | "(" OP expr+ ")" | "(" "powi" expr INT ")"
//   OP       := + - * / neg exp log sin cos sqrt atan atan2
//
// "+" and "*" fold left over any number of operands; "-" with one operand
// negates. Binding names must not start with 'x' followed by a digit.

std::string to_sexpr(const SmoothProgram& p);
SmoothProgram parse_program(std::string_view text);

}  // namespace jetlie
