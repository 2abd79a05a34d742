#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tsosc {

// Coefficient and delay expressions in the variable t.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ('-' | '+') unary | power
//   power := atom ('^' unary)?
//   atom  := number | 't' | name | func '(' expr ')' | '(' expr ')'
//   func  := sin | cos | exp | log | sqrt
//
// Names other than t are looked up in a parameter map at parse time and
// replaced by their values.
class Expr {
 public:
  enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

  struct Node {
    Op op;
    double value = 0.0;  // Number
    std::string name;    // Call
    std::vector<std::shared_ptr<const Node>> args;
  };

  Expr();  // the constant 0
  static Expr number(double v);
  static Expr variable();
  static Expr parse(std::string_view text, const std::map<std::string, double>& params = {});

  double operator()(double t) const;
  // Depends on t?
  bool has_variable() const;
  // Value when the expression does not depend on t.
  bool is_constant(double v) const;

  // Text that parses back to an equal expression.
  std::string render() const;
  // Constant subtrees folded and trivial identities (x*1, x+0, x^1, ...) removed.
  Expr normalized() const;
  const Node& root() const { return *root_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace tsosc
