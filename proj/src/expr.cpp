#include "mech/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>

namespace mech {

namespace {

const std::vector<std::string> kEmptyNames;

} // namespace

// ---------------------------------------------------------------------------
// Jet arithmetic

Jet Jet::constant(double v, int n, int order) {
  Jet j;
  j.value = v;
  j.order = order;
  if (order >= 1) j.grad = Eigen::VectorXd::Zero(n);
  if (order >= 2) j.hess = Eigen::MatrixXd::Zero(n, n);
  return j;
}

Jet Jet::coordinate(double v, int index, int n, int order) {
  Jet j = constant(v, n, order);
  if (order >= 1) j.grad(index) = 1.0;
  return j;
}

namespace {

Jet jet_like(const Jet &a, double v) {
  Jet j;
  j.value = v;
  j.order = a.order;
  if (a.order >= 1) j.grad = Eigen::VectorXd::Zero(a.grad.size());
  if (a.order >= 2) j.hess = Eigen::MatrixXd::Zero(a.hess.rows(), a.hess.cols());
  return j;
}

Jet jet_neg(const Jet &a) {
  Jet j = a;
  j.value = -j.value;
  if (j.order >= 1) j.grad = -j.grad;
  if (j.order >= 2) j.hess = -j.hess;
  return j;
}

Jet jet_add(const Jet &a, const Jet &b) {
  Jet j = a;
  j.value = a.value + b.value;
  if (j.order >= 1) j.grad = a.grad + b.grad;
  if (j.order >= 2) j.hess = a.hess + b.hess;
  return j;
}

Jet jet_sub(const Jet &a, const Jet &b) {
  Jet j = a;
  j.value = a.value - b.value;
  if (j.order >= 1) j.grad = a.grad - b.grad;
  if (j.order >= 2) j.hess = a.hess - b.hess;
  return j;
}

Jet jet_mul(const Jet &a, const Jet &b) {
  Jet j = jet_like(a, a.value * b.value);
  if (j.order >= 1) j.grad = a.grad * b.value + b.grad * a.value;
  if (j.order >= 2)
    j.hess = a.hess * b.value + b.hess * a.value + a.grad * b.grad.transpose() +
             b.grad * a.grad.transpose();
  return j;
}

// Quotient via w*b = a, so round-off keeps the Hessian exactly symmetric.
Jet jet_div(const Jet &a, const Jet &b) {
  Jet j = jet_like(a, a.value / b.value);
  if (j.order >= 1) j.grad = (a.grad - j.value * b.grad) / b.value;
  if (j.order >= 2)
    j.hess = (a.hess - j.grad * b.grad.transpose() - b.grad * j.grad.transpose() -
              j.value * b.hess) /
             b.value;
  return j;
}

// f(u) with f' and f'' evaluated at u.value.
Jet jet_chain(const Jet &u, double f, double d1, double d2) {
  Jet j = jet_like(u, f);
  if (j.order >= 1) j.grad = d1 * u.grad;
  if (j.order >= 2) j.hess = d1 * u.hess + d2 * (u.grad * u.grad.transpose());
  return j;
}

bool jet_is_constant(const Jet &a) {
  if (a.order >= 1 && !a.grad.isZero(0.0)) return false;
  if (a.order >= 2 && !a.hess.isZero(0.0)) return false;
  return true;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

} // namespace

// ---------------------------------------------------------------------------
// Evaluation

Jet Expr::eval(int node, const Eigen::VectorXd &point, int order) const {
  const Node &nd = nodes_[static_cast<std::size_t>(node)];
  const int n = static_cast<int>(point.size());
  switch (nd.kind) {
  case Kind::Number:
    return Jet::constant(nd.number, n, order);
  case Kind::Coord:
    return Jet::coordinate(point(nd.coord), nd.coord, n, order);
  case Kind::Neg:
    return jet_neg(eval(nd.a, point, order));
  case Kind::Add:
    return jet_add(eval(nd.a, point, order), eval(nd.b, point, order));
  case Kind::Sub:
    return jet_sub(eval(nd.a, point, order), eval(nd.b, point, order));
  case Kind::Mul:
    return jet_mul(eval(nd.a, point, order), eval(nd.b, point, order));
  case Kind::Div: {
    Jet a = eval(nd.a, point, order);
    Jet b = eval(nd.b, point, order);
    if (b.value == 0.0) throw EvalError(nd.offset, "division by zero");
    return jet_div(a, b);
  }
  case Kind::Pow: {
    Jet base = eval(nd.a, point, order);
    Jet expo = eval(nd.b, point, order);
    if (jet_is_constant(expo)) {
      const double c = expo.value;
      if (base.value == 0.0 && c < 0.0) throw EvalError(nd.offset, "0^negative");
      if (base.value < 0.0 && !is_integer(c))
        throw EvalError(nd.offset, "negative base with non-integer exponent");
      if (c == 0.0) return jet_like(base, 1.0);
      if (c == 1.0) return base;
      const double v = std::pow(base.value, c);
      const double d1 = c * std::pow(base.value, c - 1.0);
      const double d2 = c * (c - 1.0) * std::pow(base.value, c - 2.0);
      return jet_chain(base, v, d1, d2);
    }
    // Varying exponent: u^w = exp(w*log u), defined for positive base only.
    if (base.value <= 0.0)
      throw EvalError(nd.offset, "non-constant exponent requires positive base");
    const double lg = std::log(base.value);
    Jet logu = jet_chain(base, lg, 1.0 / base.value, -1.0 / (base.value * base.value));
    Jet s = jet_mul(expo, logu);
    const double v = std::exp(s.value);
    return jet_chain(s, v, v, v);
  }
  case Kind::Call: {
    Jet u = eval(nd.a, point, order);
    const double x = u.value;
    switch (nd.func) {
    case Func::Sin:
      return jet_chain(u, std::sin(x), std::cos(x), -std::sin(x));
    case Func::Cos:
      return jet_chain(u, std::cos(x), -std::sin(x), -std::cos(x));
    case Func::Tan: {
      const double t = std::tan(x);
      const double d1 = 1.0 + t * t;
      return jet_chain(u, t, d1, 2.0 * t * d1);
    }
    case Func::Sinh:
      return jet_chain(u, std::sinh(x), std::cosh(x), std::sinh(x));
    case Func::Cosh:
      return jet_chain(u, std::cosh(x), std::sinh(x), std::cosh(x));
    case Func::Tanh: {
      const double t = std::tanh(x);
      const double d1 = 1.0 - t * t;
      return jet_chain(u, t, d1, -2.0 * t * d1);
    }
    case Func::Exp: {
      const double v = std::exp(x);
      return jet_chain(u, v, v, v);
    }
    case Func::Log:
      if (x <= 0.0) throw EvalError(nd.offset, "log of a non-positive value");
      return jet_chain(u, std::log(x), 1.0 / x, -1.0 / (x * x));
    case Func::Sqrt: {
      if (x < 0.0) throw EvalError(nd.offset, "sqrt of a negative value");
      const double r = std::sqrt(x);
      return jet_chain(u, r, 0.5 / r, -0.25 / (r * x));
    }
    case Func::Atan: {
      const double d = 1.0 + x * x;
      return jet_chain(u, std::atan(x), 1.0 / d, -2.0 * x / (d * d));
    }
    case Func::Abs: {
      const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
      return jet_chain(u, std::abs(x), s, 0.0);
    }
    }
    break;
  }
  }
  throw Error("corrupt expression node");
}

const std::vector<std::string> &Expr::coordinates() const {
  return coords_ ? *coords_ : kEmptyNames;
}

Jet Expr::jet(const Eigen::VectorXd &point, int order) const {
  if (empty()) throw Error("evaluating an empty expression");
  if (static_cast<int>(point.size()) != dimension())
    throw Error("point dimension " + std::to_string(point.size()) +
                " does not match expression dimension " + std::to_string(dimension()));
  if (order < 0 || order > 2) throw Error("jet order must be 0, 1 or 2");
  return eval(root_, point, order);
}

// ---------------------------------------------------------------------------
// Parsing

class Parser {
public:
  Parser(std::string_view src, std::shared_ptr<const std::vector<std::string>> coords)
      : src_(src), coords_(std::move(coords)) {}

  Expr run() {
    Expr e;
    e.coords_ = coords_;
    nodes_ = &e.nodes_;
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "empty expression");
    e.root_ = expression();
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError(pos_, "unexpected trailing input");
    return e;
  }

  static std::optional<Expr::Func> lookup_function(std::string_view name) {
    static const std::array<std::pair<std::string_view, Expr::Func>, 11> table = {{
        {"sin", Expr::Func::Sin},
        {"cos", Expr::Func::Cos},
        {"tan", Expr::Func::Tan},
        {"sinh", Expr::Func::Sinh},
        {"cosh", Expr::Func::Cosh},
        {"tanh", Expr::Func::Tanh},
        {"exp", Expr::Func::Exp},
        {"log", Expr::Func::Log},
        {"sqrt", Expr::Func::Sqrt},
        {"atan", Expr::Func::Atan},
        {"abs", Expr::Func::Abs},
    }};
    for (const auto &[n, f] : table)
      if (n == name) return f;
    return std::nullopt;
  }

private:
  std::string_view src_;
  std::shared_ptr<const std::vector<std::string>> coords_;
  std::vector<Expr::Node> *nodes_ = nullptr;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  int add_node(Expr::Node nd) {
    nodes_->push_back(nd);
    return static_cast<int>(nodes_->size()) - 1;
  }

  // expression := term (('+'|'-') term)*
  int expression() {
    int lhs = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (eat('+')) {
        int rhs = term();
        lhs = add_node({Expr::Kind::Add, {}, 0.0, -1, lhs, rhs, static_cast<std::uint32_t>(at)});
      } else if (eat('-')) {
        int rhs = term();
        lhs = add_node({Expr::Kind::Sub, {}, 0.0, -1, lhs, rhs, static_cast<std::uint32_t>(at)});
      } else {
        return lhs;
      }
    }
  }

  // term := factor (('*'|'/') factor)*
  int term() {
    int lhs = factor();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (eat('*')) {
        int rhs = factor();
        lhs = add_node({Expr::Kind::Mul, {}, 0.0, -1, lhs, rhs, static_cast<std::uint32_t>(at)});
      } else if (eat('/')) {
        int rhs = factor();
        lhs = add_node({Expr::Kind::Div, {}, 0.0, -1, lhs, rhs, static_cast<std::uint32_t>(at)});
      } else {
        return lhs;
      }
    }
  }

  // factor := '-' factor | power.  Negation binds tighter than '+'/'-' and
  // looser than '^', so -x^2 reads -(x^2) while 2^-3 stays legal.
  int factor() {
    skip_ws();
    const std::size_t at = pos_;
    if (eat('-')) {
      int child = factor();
      return add_node({Expr::Kind::Neg, {}, 0.0, -1, child, -1, static_cast<std::uint32_t>(at)});
    }
    return power();
  }

  // power := atom ('^' factor)?   (right-associative)
  int power() {
    int lhs = atom();
    skip_ws();
    const std::size_t at = pos_;
    if (eat('^')) {
      int rhs = factor();
      return add_node({Expr::Kind::Pow, {}, 0.0, -1, lhs, rhs, static_cast<std::uint32_t>(at)});
    }
    return lhs;
  }

  int atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "expected an operand");
    const std::size_t at = pos_;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(at);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier(at);
    if (c == '(') {
      ++pos_;
      int inner = expression();
      if (!eat(')')) throw ParseError(pos_, "expected ')'");
      return inner;
    }
    throw ParseError(at, std::string("unexpected character '") + c + "'");
  }

  int number(std::size_t at) {
    std::size_t end = pos_;
    while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t mark = end + 1;
      if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
      if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
        end = mark;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      }
    }
    const std::string text(src_.substr(pos_, end - pos_));
    char *stop = nullptr;
    const double v = std::strtod(text.c_str(), &stop);
    if (stop != text.c_str() + text.size())
      throw ParseError(at, "malformed number '" + text + "'");
    pos_ = end;
    return add_node({Expr::Kind::Number, {}, v, -1, -1, -1, static_cast<std::uint32_t>(at)});
  }

  int identifier(std::size_t at) {
    std::size_t end = pos_;
    while (end < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
      ++end;
    const std::string name(src_.substr(pos_, end - pos_));
    pos_ = end;

    if (peek() == '(') {
      auto func = lookup_function(name);
      if (!func) throw ParseError(at, "unknown function '" + name + "'");
      eat('(');
      int arg = expression();
      int extra = 0;
      while (eat(',')) {
        expression();
        ++extra;
      }
      if (!eat(')')) throw ParseError(pos_, "expected ')'");
      if (extra > 0)
        throw ParseError(at, "arity mismatch: '" + name + "' takes 1 argument, got " +
                                 std::to_string(extra + 1));
      Expr::Node nd{Expr::Kind::Call, *func, 0.0, -1, arg, -1, static_cast<std::uint32_t>(at)};
      return add_node(nd);
    }

    for (std::size_t i = 0; i < coords_->size(); ++i)
      if ((*coords_)[i] == name)
        return add_node({Expr::Kind::Coord, {}, 0.0, static_cast<int>(i), -1, -1,
                         static_cast<std::uint32_t>(at)});
    if (name == "pi")
      return add_node({Expr::Kind::Number, {}, M_PI, -1, -1, -1, static_cast<std::uint32_t>(at)});
    if (name == "e")
      return add_node({Expr::Kind::Number, {}, M_E, -1, -1, -1, static_cast<std::uint32_t>(at)});
    if (lookup_function(name))
      throw ParseError(at, "function '" + name + "' used without arguments");
    throw ParseError(at, "unknown identifier '" + name + "'");
  }
};

namespace {

bool valid_identifier(const std::string &s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

} // namespace

Expr parse(std::string_view source, const std::vector<std::string> &coordinates) {
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (!valid_identifier(coordinates[i]))
      throw Error("invalid coordinate name '" + coordinates[i] + "'");
    if (Parser::lookup_function(coordinates[i]))
      throw Error("coordinate name '" + coordinates[i] + "' shadows a builtin function");
    for (std::size_t j = i + 1; j < coordinates.size(); ++j)
      if (coordinates[i] == coordinates[j])
        throw Error("duplicate coordinate name '" + coordinates[i] + "'");
  }
  auto shared = std::make_shared<const std::vector<std::string>>(coordinates);
  return Parser(source, shared).run();
}

// ---------------------------------------------------------------------------
// Printing

std::string format_double(double v) {
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

int Expr::precedence(Kind k) {
  switch (k) {
  case Kind::Add:
  case Kind::Sub:
    return 1;
  case Kind::Mul:
  case Kind::Div:
    return 2;
  case Kind::Neg:
    return 3;
  case Kind::Pow:
    return 4;
  default:
    return 5;
  }
}

void Expr::print(int node, std::string &out) const {
  const Node &nd = nodes_[static_cast<std::size_t>(node)];
  auto child = [&](int idx, int min_prec) {
    const bool parens = precedence(nodes_[static_cast<std::size_t>(idx)].kind) < min_prec;
    if (parens) out += '(';
    print(idx, out);
    if (parens) out += ')';
  };
  switch (nd.kind) {
  case Kind::Number:
    out += format_double(nd.number);
    return;
  case Kind::Coord:
    out += (*coords_)[static_cast<std::size_t>(nd.coord)];
    return;
  case Kind::Neg:
    out += '-';
    child(nd.a, 3);
    return;
  case Kind::Add:
    child(nd.a, 1);
    out += '+';
    child(nd.b, 2);
    return;
  case Kind::Sub:
    child(nd.a, 1);
    out += '-';
    child(nd.b, 2);
    return;
  case Kind::Mul:
    child(nd.a, 2);
    out += '*';
    child(nd.b, 3);
    return;
  case Kind::Div:
    child(nd.a, 2);
    out += '/';
    child(nd.b, 3);
    return;
  case Kind::Pow:
    child(nd.a, 5);
    out += '^';
    child(nd.b, 3);
    return;
  case Kind::Call: {
    static const char *names[] = {"sin",  "cos", "tan", "sinh", "cosh", "tanh",
                                  "exp",  "log", "sqrt", "atan", "abs"};
    out += names[static_cast<int>(nd.func)];
    out += '(';
    print(nd.a, out);
    out += ')';
    return;
  }
  }
}

std::string Expr::str() const {
  if (empty()) return "";
  std::string out;
  print(root_, out);
  return out;
}

bool Expr::same_ast(const Expr &other) const {
  if (empty() || other.empty()) return empty() == other.empty();
  std::vector<std::pair<int, int>> stack = {{root_, other.root_}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    const Node &a = nodes_[static_cast<std::size_t>(i)];
    const Node &b = other.nodes_[static_cast<std::size_t>(j)];
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Kind::Number:
      if (a.number != b.number) return false;
      break;
    case Kind::Coord:
      if (a.coord != b.coord) return false;
      break;
    case Kind::Call:
      if (a.func != b.func) return false;
      stack.emplace_back(a.a, b.a);
      break;
    case Kind::Neg:
      stack.emplace_back(a.a, b.a);
      break;
    default:
      stack.emplace_back(a.a, b.a);
      stack.emplace_back(a.b, b.b);
      break;
    }
  }
  return true;
}

} // namespace mech
