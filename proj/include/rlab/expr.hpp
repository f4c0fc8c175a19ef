#pragma once

// Small arithmetic expression language for integrands and kernels.
//
//   expr    ::= term { ("+" | "-") term }
//   term    ::= unary { ("*" | "/") unary }
//   unary   ::= "-" unary | power
//   power   ::= primary [ "^" unary ]          (right-associative, tightest)
//   primary ::= number | variable | func "(" expr { "," expr } ")" | "(" expr ")"
//   func    ::= min | max  (binary)  |  exp | log | abs | sqrt  (unary)
//
// Numbers are decimal literals with an optional exponent. Whitespace is
// insignificant.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rlab {

class Expression {
 public:
  /// Throws ParseError on syntax errors, unknown identifiers and variables
  /// outside `variables`.
  static Expression parse(std::string_view text, const std::vector<std::string>& variables);

  /// Evaluates with `values[k]` bound to variable k. Guarded operations
  /// (log of t <= 0, sqrt of t < 0, division by zero, non-finite results)
  /// throw EvaluationError.
  double operator()(std::span<const double> values) const;

  /// Fully parenthesized form that parses back to an equivalent tree.
  std::string to_string() const;

  const std::string& source() const { return source_; }
  const std::vector<std::string>& variables() const { return variables_; }

  /// Highest variable index referenced, or -1 for constant expressions.
  int max_variable_index() const { return max_var_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
  std::vector<std::string> variables_;
  int max_var_ = -1;
};

/// "x1", ..., "x<count>".
std::vector<std::string> indexed_variables(std::size_t count);

}  // namespace rlab
