#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace varinterp {

/// Immutable real expression in one variable `t`.
///
/// Grammar (whitespace-insensitive):
///
///     expr   := term (("+"|"-") term)*
///     term   := factor (("*"|"/") factor)*
///     factor := NUMBER | "t" | "e" | "(" expr ")"
///             | ("log"|"exp") "(" expr ")"
///             | ("min"|"max") "(" expr "," expr ")"
///
/// `log` is the natural logarithm. Evaluation is plain IEEE double
/// arithmetic; domain problems surface as NaN or infinities and are left to
/// the caller.
class Expression {
 public:
  /// Throws SyntaxError carrying the 0-based offset of the offending token.
  static Expression parse(std::string_view source);

  static Expression number(double value);
  static Expression variable();

  double operator()(double t) const;

  /// False when the tree contains no occurrence of `t`.
  bool depends_on_t() const;

  /// Canonical, fully parenthesized rendering that re-parses to the same tree.
  std::string to_string() const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression log(const Expression& a);
  friend Expression exp(const Expression& a);
  friend Expression min(const Expression& a, const Expression& b);
  friend Expression max(const Expression& a, const Expression& b);

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;

  friend class ExpressionParser;
};

}  // namespace varinterp
