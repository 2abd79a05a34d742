#include "tsosc/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "tsosc/error.hpp"

namespace tsosc {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
constexpr const char* kWhere = "cli::parse_expr";

NodePtr make(Expr::Op op, std::vector<NodePtr> args = {}, double value = 0.0, std::string name = {}) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = value;
  n->name = std::move(name);
  n->args = std::move(args);
  return n;
}

bool known_function(std::string_view name) {
  return name == "sin" || name == "cos" || name == "exp" || name == "log" || name == "sqrt";
}

double call_function(std::string_view name, double x) {
  if (name == "sin") return std::sin(x);
  if (name == "cos") return std::cos(x);
  if (name == "exp") return std::exp(x);
  if (name == "log") return std::log(x);
  return std::sqrt(x);
}

class Parser {
 public:
  Parser(std::string_view text, const std::map<std::string, double>& params) : text_(text), params_(params) {}

  NodePtr parse() {
    auto e = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw Error(Errc::ParseError, kWhere, msg + " in \"" + std::string(text_) + "\"", pos_);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Expr::Op::Add, {lhs, term()});
      else if (accept('-'))
        lhs = make(Expr::Op::Sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Expr::Op::Mul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Expr::Op::Div, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Expr::Op::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = atom();
    if (accept('^')) return make(Expr::Op::Pow, {base, unary()});
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "t") return make(Expr::Op::Var);
      if (known_function(name)) {
        if (!accept('(')) error("expected '(' after " + name);
        auto arg = expr();
        if (!accept(')')) error("expected ')'");
        return make(Expr::Op::Call, {arg}, 0.0, name);
      }
      const auto it = params_.find(name);
      if (it == params_.end()) {
        pos_ = start;
        error("unknown name '" + name + "'");
      }
      return make(Expr::Op::Number, {}, it->second);
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) error("malformed number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    if (pos_ == start) error("malformed number");
    return make(Expr::Op::Number, {}, v);
  }

  std::string_view text_;
  const std::map<std::string, double>& params_;
  std::size_t pos_ = 0;
};

double eval(const Expr::Node& n, double t) {
  switch (n.op) {
    case Expr::Op::Number: return n.value;
    case Expr::Op::Var: return t;
    case Expr::Op::Neg: return -eval(*n.args[0], t);
    case Expr::Op::Add: return eval(*n.args[0], t) + eval(*n.args[1], t);
    case Expr::Op::Sub: return eval(*n.args[0], t) - eval(*n.args[1], t);
    case Expr::Op::Mul: return eval(*n.args[0], t) * eval(*n.args[1], t);
    case Expr::Op::Div: return eval(*n.args[0], t) / eval(*n.args[1], t);
    case Expr::Op::Pow: return std::pow(eval(*n.args[0], t), eval(*n.args[1], t));
    case Expr::Op::Call: return call_function(n.name, eval(*n.args[0], t));
  }
  return 0.0;
}

bool depends(const Expr::Node& n) {
  if (n.op == Expr::Op::Var) return true;
  for (const auto& a : n.args)
    if (depends(*a)) return true;
  return false;
}

int precedence(const Expr::Node& n) {
  switch (n.op) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div: return 2;
    case Expr::Op::Neg: return 3;
    case Expr::Op::Pow: return 4;
    case Expr::Op::Number: return std::signbit(n.value) ? 3 : 5;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // shortest text that reads back to the same double
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string render(const Expr::Node& n) {
  auto wrap = [](const Expr::Node& child, bool paren) {
    const auto s = render(child);
    return paren ? "(" + s + ")" : s;
  };
  const int p = precedence(n);
  switch (n.op) {
    case Expr::Op::Number: return format_number(n.value);
    case Expr::Op::Var: return "t";
    case Expr::Op::Neg: return "-" + wrap(*n.args[0], precedence(*n.args[0]) < p);
    case Expr::Op::Call: return n.name + "(" + render(*n.args[0]) + ")";
    case Expr::Op::Pow:
      return wrap(*n.args[0], precedence(*n.args[0]) <= p) + "^" + wrap(*n.args[1], precedence(*n.args[1]) < 3);
    default: {
      const char* sym = n.op == Expr::Op::Add ? " + " : n.op == Expr::Op::Sub ? " - " : n.op == Expr::Op::Mul ? "*" : "/";
      const bool right_strict = n.op == Expr::Op::Sub || n.op == Expr::Op::Div;
      const int rp = precedence(*n.args[1]);
      return wrap(*n.args[0], precedence(*n.args[0]) < p) + sym + wrap(*n.args[1], right_strict ? rp <= p : rp < p);
    }
  }
}

bool is_number(const NodePtr& n, double v) { return n->op == Expr::Op::Number && n->value == v; }

NodePtr normalize(const NodePtr& n) {
  if (n->args.empty()) return n;
  std::vector<NodePtr> args;
  for (const auto& a : n->args) args.push_back(normalize(a));
  auto rebuilt = make(n->op, args, n->value, n->name);
  if (!depends(*rebuilt)) return make(Expr::Op::Number, {}, eval(*rebuilt, 0.0));
  switch (n->op) {
    case Expr::Op::Add:
      if (is_number(args[0], 0.0)) return args[1];
      if (is_number(args[1], 0.0)) return args[0];
      break;
    case Expr::Op::Sub:
      if (is_number(args[1], 0.0)) return args[0];
      if (is_number(args[0], 0.0)) return make(Expr::Op::Neg, {args[1]});
      break;
    case Expr::Op::Mul:
      if (is_number(args[0], 1.0)) return args[1];
      if (is_number(args[1], 1.0)) return args[0];
      if (is_number(args[0], 0.0) || is_number(args[1], 0.0)) return make(Expr::Op::Number, {}, 0.0);
      break;
    case Expr::Op::Div:
      if (is_number(args[1], 1.0)) return args[0];
      break;
    case Expr::Op::Pow:
      if (is_number(args[1], 1.0)) return args[0];
      if (is_number(args[1], 0.0)) return make(Expr::Op::Number, {}, 1.0);
      break;
    case Expr::Op::Neg:
      if (args[0]->op == Expr::Op::Neg) return args[0]->args[0];
      break;
    default: break;
  }
  return rebuilt;
}

bool equal(const Expr::Node& a, const Expr::Node& b) {
  if (a.op != b.op || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.op == Expr::Op::Number && a.value != b.value) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

}  // namespace

Expr::Expr() : root_(make(Op::Number, {}, 0.0)) {}

Expr Expr::number(double v) { return Expr(make(Op::Number, {}, v)); }

Expr Expr::variable() { return Expr(make(Op::Var)); }

Expr Expr::parse(std::string_view text, const std::map<std::string, double>& params) {
  return Expr(Parser(text, params).parse());
}

double Expr::operator()(double t) const { return eval(*root_, t); }

bool Expr::has_variable() const { return depends(*root_); }

bool Expr::is_constant(double v) const { return !has_variable() && (*this)(0.0) == v; }

std::string Expr::render() const { return tsosc::render(*root_); }

Expr Expr::normalized() const { return Expr(normalize(root_)); }

bool operator==(const Expr& a, const Expr& b) { return equal(*a.normalized().root_, *b.normalized().root_); }

}  // namespace tsosc
