#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// First-order statements over a few fixed relational structures, checked for
// form only: statement vs formula, *-transforms, and whether every symbol is
// internal so that a statement about the extension can be carried back.
//
// Surface syntax:
//
//   formula    := iff
//   iff        := implies { "<->" implies }
//   implies    := or [ "->" implies ]
//   or         := and { "or" and }
//   and        := unary { "and" unary }
//   unary      := "not" unary | quantified | "(" header ")" unary | "(" formula ")" | atom
//   quantified := header ( "," | ":" ) formula
//   header     := ("forall" | "exists") ident { "," ident } ("in" | "subset") set
//   atom       := term "in" set | term relop term | relation "(" term { "," term } ")"
//   relop      := "=" | "!=" | "<" | "<=" | ">" | ">="
//   term       := sum of products of factors; factor := ["-"] primary ["^" factor]
//   primary    := ["*"] numeral | ["*"] ident [ "(" term { "," term } ")" ]
//               | "|" term "|" | "(" term ")"
//   set        := ["*"] ident
//
// A leading "*" marks the extension of a symbol. Quantifying with "subset"
// ranges over a powerset and is rejected with NotInLanguage.

namespace hyperreal::transfer {

enum class SymbolKind { Set, Relation, Function, Constant };

struct Symbol {
  std::string name;
  SymbolKind kind;
  int arity = 1;
  /// External symbols (an unlimited constant such as omega) exist only in the
  /// extension and have no standard counterpart.
  bool internal = true;
};

class Structure {
 public:
  Structure(std::string name, std::vector<Symbol> symbols, bool integer_numerals);

  /// The registered structures: N, R, C.
  static const Structure& naturals();
  static const Structure& reals();
  static const Structure& complexes();
  /// Throws InvalidArgument for an unknown name.
  static const Structure& by_name(std::string_view name);

  const std::string& name() const { return name_; }
  const Symbol* find(std::string_view name) const;
  const std::map<std::string, Symbol, std::less<>>& symbols() const { return symbols_; }
  /// N only admits natural-number numerals.
  bool integer_numerals() const { return integer_numerals_; }

 private:
  std::string name_;
  std::map<std::string, Symbol, std::less<>> symbols_;
  bool integer_numerals_;
};

enum class NodeKind {
  // formulas
  Forall,
  Exists,
  In,         // children: element, set
  Compare,    // text: relop; children: lhs, rhs
  Predicate,  // text: relation; children: arguments
  Not,
  And,
  Or,
  Implies,
  Iff,
  // terms
  Variable,
  Constant,
  Numeral,
  Apply,  // text: function; children: arguments
  Abs,
  Arith,  // text: + - * / ^ or "neg"
  SetRef,
};

struct Node {
  NodeKind kind;
  /// Variable, symbol or operator name; numerals keep their source digits.
  std::string text;
  bool starred = false;
  std::size_t position = 0;
  std::vector<std::shared_ptr<const Node>> children;
};

using NodePtr = std::shared_ptr<const Node>;

class Formula {
 public:
  /// Throws SyntaxError or NotInLanguage.
  static Formula parse(std::string_view text, const Structure& s);

  Formula(NodePtr root, const Structure& s) : root_(std::move(root)), structure_(&s) {}

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  const Structure& structure() const { return *structure_; }

  /// Variables with an occurrence not bound by a quantifier, in order of appearance.
  std::vector<std::string> free_variables() const;
  /// Symbols (constants, sets, functions, relations) that are not internal
  /// when read as statements about the extension; sorted, unique.
  std::vector<std::string> external_symbols() const;
  bool has_starred_symbol() const;

  std::size_t node_count() const;
  /// e.g. {"forall x", "exists r"} in prefix order.
  std::vector<std::string> quantifier_signature() const;
  std::string to_string() const;

 private:
  NodePtr root_;
  const Structure* structure_;
};

enum class VerdictKind {
  Statement,
  FormulaNotStatement,
  NotInLanguage,
  Transferable,
  NotTransferable,
};

std::string_view to_string(VerdictKind k);

enum class Direction { Forward, Backward };

std::string_view to_string(Direction d);

struct Verdict {
  VerdictKind kind = VerdictKind::Statement;
  std::vector<std::string> free_vars;
  std::vector<std::string> external_symbols;
  std::string reason;
  std::optional<std::string> transformed_text;
};

/// Statement iff there are no free variables.
Verdict check_statement(const Formula& f);

/// Parses and classifies in one step; parse-time NotInLanguage becomes a verdict.
/// SyntaxError still throws.
Verdict classify(std::string_view text, const Structure& s);

/// Stars every set, function, relation and constant; +, =, <=, in and |.|
/// stay bare. Throws NotAStatement, AlreadyStarred, or NotInLanguage for an
/// external constant.
Formula star_transform(const Formula& f);

/// Forward: a statement over the standard structure (its transform holds in
/// the extension). Backward: a statement about the extension whose symbols
/// are all internal.
Verdict check_transferable(const Formula& f, Direction direction);

/// Replaces the constant `name` by a fresh variable bound by
/// "exists <variable> in *R". Throws InvalidArgument if the constant does not
/// occur or the variable name is taken.
Formula existential_weakening(const Formula& f, std::string_view name,
                              std::string_view variable = "r");

}  // namespace hyperreal::transfer
