#include "qes/expr.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <utility>
#include <vector>

namespace qes {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"exp", Func::Exp},
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
    {"tanh", Func::Tanh},
    {"sqrt", Func::Sqrt},
}};

const std::vector<std::string> kOperandStart{"number", "x", "i", "function", "(", "-"};

NodePtr make(NodeKind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool mentions_x(const Node& n) {
  if (n.kind == NodeKind::Variable) return true;
  if (n.lhs && mentions_x(*n.lhs)) return true;
  if (n.rhs && mentions_x(*n.rhs)) return true;
  return false;
}

template <int N>
Jet<N> eval_node(const Node& n, const Jet<N>& x) {
  switch (n.kind) {
    case NodeKind::Literal: return Jet<N>(n.value);
    case NodeKind::Variable: return x;
    case NodeKind::ImagUnit: return Jet<N>(cplx(0.0, 1.0));
    case NodeKind::Neg: return -eval_node(*n.lhs, x);
    case NodeKind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case NodeKind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case NodeKind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case NodeKind::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
    case NodeKind::Pow: return pow(eval_node(*n.lhs, x), n.value);
    case NodeKind::Call: {
      const Jet<N> u = eval_node(*n.lhs, x);
      switch (n.func) {
        case Func::Exp: return exp(u);
        case Func::Sin: return sin(u);
        case Func::Cos: return cos(u);
        case Func::Sinh: return sinh(u);
        case Func::Cosh: return cosh(u);
        case Func::Tanh: return tanh(u);
        case Func::Sqrt: return sqrt(u);
      }
    }
  }
  throw EvalError("corrupt expression node");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_literal(cplx c) {
  if (c.imag() == 0.0) {
    std::string s = format_double(c.real());
    return (c.real() < 0.0 || s[0] == '-') ? "(" + s + ")" : s;
  }
  return "(" + format_double(c.real()) + "+" + format_double(c.imag()) + "*i)";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) {
      if (src_[pos_] == ')') throw ParseError(pos_, "unbalanced ')'", {"end of input"});
      if (src_[pos_] == ',') throw ParseError(pos_, "unexpected ','", {"end of input"});
      throw ParseError(pos_, "unexpected input", {"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  // Accepts ASCII '-' and U+2212 (UTF-8 E2 88 92).
  bool match_minus() {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (src_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool match(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (match('+')) {
        lhs = make(NodeKind::Add, lhs, parse_term());
      } else if (match_minus()) {
        lhs = make(NodeKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (match('*')) {
        lhs = make(NodeKind::Mul, lhs, parse_unary());
      } else if (match('/')) {
        lhs = make(NodeKind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (match_minus()) return make(NodeKind::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (!match('^')) return base;
    skip_ws();
    const std::size_t exp_pos = pos_;
    NodePtr exponent = parse_unary();
    if (mentions_x(*exponent))
      throw ParseError(exp_pos, "exponent must be a constant literal", {"number", "i", "(", "-"});
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Pow;
    n->lhs = std::move(base);
    try {
      n->value = eval_node<0>(*exponent, Jet<0>(0.0)).v();
    } catch (const EvalError& e) {
      throw ParseError(exp_pos, std::string("exponent does not evaluate: ") + e.what());
    }
    return n;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "unexpected end of input", kOperandStart);
    const char c = src_[pos_];
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (c == '(') {
      const std::size_t open = pos_++;
      NodePtr inner = parse_expr();
      if (!match(')')) {
        skip_ws();
        throw ParseError(pos_ < src_.size() ? pos_ : src_.size(),
                         "missing ')' for '(' at offset " + std::to_string(open), {")"});
      }
      return inner;
    }
    if (is_ident_char(c)) return parse_identifier();
    throw ParseError(pos_, std::string("unexpected '") + c + "'", kOperandStart);
  }

  static bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (p < src_.size() && src_[p] >= '0' && src_[p] <= '9') ++p, ++n;
      return n;
    };
    std::size_t count = digits();
    if (p < src_.size() && src_[p] == '.') {
      ++p;
      count += digits();
    }
    if (count == 0) throw ParseError(start, "malformed number", {"digit"});
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && src_[q] >= '0' && src_[q] <= '9') {
        p = q;
        digits();
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + p, value);
    if (ec != std::errc() || ptr != src_.data() + p)
      throw ParseError(start, "malformed number", {"number"});
    pos_ = p;
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Literal;
    n->value = value;
    return n;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_ident_char(src_[pos_]) || (src_[pos_] >= '0' && src_[pos_] <= '9')))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return make(NodeKind::Variable);
    if (name == "i") return make(NodeKind::ImagUnit);
    for (const auto& [fname, f] : kFunctions) {
      if (name != fname) continue;
      if (!match('(')) {
        skip_ws();
        throw ParseError(pos_, "function '" + std::string(name) + "' requires '('", {"("});
      }
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == ')')
        throw ParseError(pos_, "arity mismatch: '" + std::string(name) + "' takes 1 argument", kOperandStart);
      NodePtr arg = parse_expr();
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == ',')
        throw ParseError(pos_, "arity mismatch: '" + std::string(name) + "' takes 1 argument", {")"});
      if (!match(')')) {
        skip_ws();
        throw ParseError(pos_, "missing ')' after argument of '" + std::string(name) + "'", {")"});
      }
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Call;
      n->func = f;
      n->lhs = std::move(arg);
      return n;
    }
    std::vector<std::string> expected{"x", "i"};
    for (const auto& entry : kFunctions) expected.emplace_back(entry.first);
    throw ParseError(start, "unknown identifier '" + std::string(name) + "'", expected);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string print(const Node& n) {
  switch (n.kind) {
    case NodeKind::Literal: return format_literal(n.value);
    case NodeKind::Variable: return "x";
    case NodeKind::ImagUnit: return "i";
    case NodeKind::Neg: return "(-" + print(*n.lhs) + ")";
    case NodeKind::Add: return "(" + print(*n.lhs) + "+" + print(*n.rhs) + ")";
    case NodeKind::Sub: return "(" + print(*n.lhs) + "-" + print(*n.rhs) + ")";
    case NodeKind::Mul: return "(" + print(*n.lhs) + "*" + print(*n.rhs) + ")";
    case NodeKind::Div: return "(" + print(*n.lhs) + "/" + print(*n.rhs) + ")";
    case NodeKind::Pow: return "(" + print(*n.lhs) + "^" + format_literal(n.value) + ")";
    case NodeKind::Call: return std::string(func_name(n.func)) + "(" + print(*n.lhs) + ")";
  }
  return {};
}

std::string sexpr(const Node& n) {
  auto bin = [&](const char* tag) { return std::string(tag) + "(" + sexpr(*n.lhs) + "," + sexpr(*n.rhs) + ")"; };
  switch (n.kind) {
    case NodeKind::Literal: {
      if (n.value.imag() == 0.0) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", n.value.real());
        return buf;
      }
      return format_literal(n.value);
    }
    case NodeKind::Variable: return "x";
    case NodeKind::ImagUnit: return "i";
    case NodeKind::Neg: return "Neg(" + sexpr(*n.lhs) + ")";
    case NodeKind::Add: return bin("Add");
    case NodeKind::Sub: return bin("Sub");
    case NodeKind::Mul: return bin("Mul");
    case NodeKind::Div: return bin("Div");
    case NodeKind::Pow: {
      char buf[40];
      std::string e;
      if (n.value.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.15g", n.value.real());
        e = buf;
      } else {
        e = format_literal(n.value);
      }
      return "Pow(" + sexpr(*n.lhs) + "," + e + ")";
    }
    case NodeKind::Call: {
      std::string name(func_name(n.func));
      name[0] = static_cast<char>(name[0] - 'a' + 'A');
      return name + "(" + sexpr(*n.lhs) + ")";
    }
  }
  return {};
}

}  // namespace

std::string_view func_name(Func f) {
  for (const auto& [name, g] : kFunctions)
    if (g == f) return name;
  return "?";
}

Expr Expr::parse(std::string_view source) { return Expr(Parser(source).parse()); }

Expr Expr::literal(cplx c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Literal;
  n->value = c;
  return Expr(n);
}

Expr Expr::variable() { return Expr(make(NodeKind::Variable)); }
Expr Expr::imag_unit() { return Expr(make(NodeKind::ImagUnit)); }
Expr Expr::neg(const Expr& e) { return Expr(make(NodeKind::Neg, e.root_)); }

Expr Expr::binary(NodeKind op, const Expr& lhs, const Expr& rhs) {
  if (op != NodeKind::Add && op != NodeKind::Sub && op != NodeKind::Mul && op != NodeKind::Div)
    throw std::invalid_argument("Expr::binary: not a binary operator");
  return Expr(make(op, lhs.root_, rhs.root_));
}

Expr Expr::power(const Expr& base, cplx exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->lhs = base.root_;
  n->value = exponent;
  return Expr(n);
}

Expr Expr::call(Func f, const Expr& arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->lhs = arg.root_;
  return Expr(n);
}

template <int N>
Jet<N> Expr::eval(double x) const {
  if (!std::isfinite(x)) throw EvalError("evaluation point is not finite");
  Jet<N> r = eval_node(*root_, Jet<N>::variable(x));
  if (!r.finite()) throw EvalError("expression evaluates to a non-finite value at x = " + format_double(x));
  return r;
}

template Jet<0> Expr::eval<0>(double) const;
template Jet<2> Expr::eval<2>(double) const;
template Jet<4> Expr::eval<4>(double) const;

std::string Expr::to_string() const { return print(*root_); }
std::string Expr::to_sexpr() const { return sexpr(*root_); }
bool Expr::depends_on_x() const { return mentions_x(*root_); }

Jet2 eval_jet(const Expr& e, double x) { return e.eval_jet(x); }

}  // namespace qes
