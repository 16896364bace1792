#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperreal/exponent.hpp"

// Real-valued expressions in at most one free variable.
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := atom ['^' exponent]
//   exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//   atom     := number | ident | 'eps' | 'w'
//             | 'abs' '(' expr ')' | 'root' '(' expr ',' integer ')'
//             | 'O' '(' monomial ')' | '(' expr ')'
//
// Numbers are integers or finite decimals, read exactly. `w` is eps^-1.
// `O(eps^k)` marks a truncation bound so printed hyperreals parse back.

namespace hyperreal::calculus {

enum class NodeKind { Number, Variable, Eps, Omega, Neg, Add, Sub, Mul, Div, Pow, Root, Abs, BigO };

struct Node {
  NodeKind kind = NodeKind::Number;
  Rational value;         // Number
  std::string name;       // Variable
  Exponent power;         // Pow exponent, BigO bound
  long index = 0;         // Root index
  std::size_t position = 0;
  std::vector<std::shared_ptr<const Node>> children;
};

using NodePtr = std::shared_ptr<const Node>;

class Expr {
 public:
  explicit Expr(NodePtr root);

  static Expr parse(std::string_view text);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  /// Name of the free variable, if the expression has one.
  const std::optional<std::string>& variable() const { return variable_; }

  /// Canonical text; parse(to_string()) reproduces the same tree.
  std::string to_string() const;

  /// Structural equality, ignoring source positions.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
  std::optional<std::string> variable_;
};

namespace expr {
NodePtr number(Rational value);
NodePtr variable(std::string name);
NodePtr eps();
NodePtr omega();
NodePtr unary(NodeKind kind, NodePtr operand);
NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs);
NodePtr power(NodePtr base, Exponent e);
NodePtr root(NodePtr operand, long index);
}  // namespace expr

/// Parses an exact rational literal such as "3", "-2/7" or "0.125".
Rational parse_rational(std::string_view text);

}  // namespace hyperreal::calculus
