#ifndef MECH_EXPR_HPP
#define MECH_EXPR_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mech/errors.hpp"

namespace mech {

/// Truncated Taylor data of a scalar expression at a point: value, gradient
/// and Hessian with respect to the coordinate list the expression was parsed
/// against. `order` selects how many levels are populated (0, 1 or 2); the
/// Hessian is exactly symmetric by construction.
struct Jet {
  double value = 0.0;
  Eigen::VectorXd grad; // size n when order >= 1, else 0
  Eigen::MatrixXd hess; // n x n when order == 2, else 0 x 0
  int order = 0;

  static Jet constant(double v, int n, int order);
  static Jet coordinate(double v, int index, int n, int order);
};

/// Immutable expression tree over a fixed ordered coordinate list.
/// Nodes are numeric literals, coordinate references, unary negation,
/// binary {+, -, *, /, ^} and single-argument builtins
/// {sin, cos, tan, sinh, cosh, tanh, exp, log, sqrt, atan, abs};
/// `pi` and `e` are named constants. Obtain instances through parse().
class Expr {
public:
  Expr() = default;

  bool empty() const { return root_ < 0; }
  int dimension() const { return coords_ ? static_cast<int>(coords_->size()) : 0; }
  const std::vector<std::string> &coordinates() const;

  /// Value and derivatives at `point`, populated up to `order` (0|1|2).
  /// Throws EvalError on real-domain violations, Error on a size mismatch.
  Jet jet(const Eigen::VectorXd &point, int order) const;

  double value(const Eigen::VectorXd &point) const { return jet(point, 0).value; }

  /// Minimal-parenthesis source form; parse(str()) reproduces the tree.
  std::string str() const;

  /// Structural equality (node kinds, literal bits, topology).
  bool same_ast(const Expr &other) const;

private:
  enum class Kind : std::uint8_t { Number, Coord, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Func : std::uint8_t { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Atan, Abs };

  struct Node {
    Kind kind{};
    Func func{};
    double number = 0.0;
    int coord = -1;
    int a = -1, b = -1;      // child indices into nodes_
    std::uint32_t offset = 0; // byte offset in the original source
  };

  std::vector<Node> nodes_;
  int root_ = -1;
  std::shared_ptr<const std::vector<std::string>> coords_;

  Jet eval(int node, const Eigen::VectorXd &point, int order) const;
  void print(int node, std::string &out) const;
  static int precedence(Kind k);

  friend class Parser;
};

/// Parse `source` against the ordered coordinate list. Coordinate names must
/// be distinct valid identifiers and may not shadow builtin function names.
/// Throws ParseError (with byte offset) on malformed input, unknown
/// identifiers or wrong call arity.
Expr parse(std::string_view source, const std::vector<std::string> &coordinates);

/// Shortest decimal form of `v` that parses back to the same double.
std::string format_double(double v);

} // namespace mech

#endif
