#include "hyperreal/transfer.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "hyperreal/error.hpp"

namespace hyperreal::transfer {

Structure::Structure(std::string name, std::vector<Symbol> symbols, bool integer_numerals)
    : name_(std::move(name)), integer_numerals_(integer_numerals) {
  for (auto& s : symbols) symbols_.emplace(s.name, std::move(s));
}

namespace {

std::vector<Symbol> common_symbols() {
  return {
      {"s", SymbolKind::Function, 1, true},
      {"f", SymbolKind::Function, 1, true},
      {"even", SymbolKind::Relation, 1, true},
      {"omega", SymbolKind::Constant, 0, false},
  };
}

std::vector<Symbol> with_sets(std::vector<Symbol> sets) {
  auto out = common_symbols();
  out.insert(out.end(), sets.begin(), sets.end());
  return out;
}

}  // namespace

const Structure& Structure::naturals() {
  static const Structure s("N", with_sets({{"N", SymbolKind::Set, 1, true}}), true);
  return s;
}

const Structure& Structure::reals() {
  // C is a subset of R^2 here.
  static const Structure s("R",
                           with_sets({{"N", SymbolKind::Set, 1, true},
                                      {"Z", SymbolKind::Set, 1, true},
                                      {"Q", SymbolKind::Set, 1, true},
                                      {"R", SymbolKind::Set, 1, true},
                                      {"C", SymbolKind::Set, 2, true}}),
                           false);
  return s;
}

const Structure& Structure::complexes() {
  static const Structure s("C",
                           with_sets({{"N", SymbolKind::Set, 1, true},
                                      {"Z", SymbolKind::Set, 1, true},
                                      {"Q", SymbolKind::Set, 1, true},
                                      {"R", SymbolKind::Set, 1, true},
                                      {"C", SymbolKind::Set, 1, true}}),
                           false);
  return s;
}

const Structure& Structure::by_name(std::string_view name) {
  if (name == "N") return naturals();
  if (name == "R") return reals();
  if (name == "C") return complexes();
  throw Error(ErrorKind::InvalidArgument,
              "unknown structure '" + std::string(name) + "' (expected N, R or C)");
}

const Symbol* Structure::find(std::string_view name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

namespace {

const std::set<std::string, std::less<>> kKeywords = {"forall", "exists", "in",  "subset",
                                                       "and",    "or",     "not"};

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view src) {
  static const std::vector<std::string_view> ops = {"<->", "->", "!=", "<=", ">=", "(", ")",
                                                    ",",   ":",  "|",  "*",  "+",  "-", "/",
                                                    "^",   "=",  "<",  ">"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (auto op : ops) {
      if (src.substr(i, op.size()) == op) {
        out.push_back({Tok::Op, std::string(op), i});
        i += op.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "'", i);
    }
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

std::shared_ptr<Node> make(NodeKind kind, std::string text, std::size_t position,
                           std::vector<NodePtr> children = {}, bool starred = false) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->text = std::move(text);
  n->position = position;
  n->children = std::move(children);
  n->starred = starred;
  return n;
}

bool is_relop(const Token& t) {
  return t.kind == Tok::Op &&
         (t.text == "=" || t.text == "!=" || t.text == "<" || t.text == "<=" || t.text == ">" ||
          t.text == ">=");
}

class Parser {
 public:
  Parser(std::string_view text, const Structure& s) : tokens_(tokenize(text)), s_(s) {}

  NodePtr parse() {
    NodePtr f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_op(std::string_view op, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Op && peek(ahead).text == op;
  }
  bool at_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg, peek().position);
  }
  [[noreturn]] void not_in_language(const std::string& msg, std::size_t position) const {
    throw Error(ErrorKind::NotInLanguage, msg + " in the language of " + s_.name(), position);
  }
  void expect(std::string_view op) {
    if (!at_op(op)) {
      fail("expected '" + std::string(op) + "'" +
           (peek().kind == Tok::End ? std::string(" at end of input")
                                    : ", found '" + peek().text + "'"));
    }
    take();
  }

  NodePtr formula() { return iff(); }

  NodePtr iff() {
    NodePtr lhs = implies();
    while (at_op("<->")) {
      const auto p = take().position;
      lhs = make(NodeKind::Iff, "", p, {lhs, implies()});
    }
    return lhs;
  }

  NodePtr implies() {
    NodePtr lhs = disjunction();
    if (at_op("->")) {
      const auto p = take().position;
      return make(NodeKind::Implies, "", p, {lhs, implies()});
    }
    return lhs;
  }

  NodePtr disjunction() {
    NodePtr lhs = conjunction();
    while (at_word("or")) {
      const auto p = take().position;
      lhs = make(NodeKind::Or, "", p, {lhs, conjunction()});
    }
    return lhs;
  }

  NodePtr conjunction() {
    NodePtr lhs = unary();
    while (at_word("and")) {
      const auto p = take().position;
      lhs = make(NodeKind::And, "", p, {lhs, unary()});
    }
    return lhs;
  }

  NodePtr unary() {
    if (at_word("not")) {
      const auto p = take().position;
      return make(NodeKind::Not, "", p, {unary()});
    }
    if (at_word("forall") || at_word("exists")) {
      Header h = header();
      if (!at_op(",") && !at_op(":")) fail("expected ',' or ':' after quantifier bound");
      take();
      return quantify(h, [&] { return formula(); });
    }
    if (at_op("(") && (at_word("forall", 1) || at_word("exists", 1))) {
      const std::size_t saved = pos_;
      take();
      Header h = header();
      if (at_op(")")) {
        take();
        return quantify(h, [&] { return unary(); });
      }
      // "(forall x in S, body)": a parenthesized quantified formula.
      pos_ = saved;
    }
    if (at_op("(")) {
      const std::size_t saved = pos_;
      try {
        return atom();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SyntaxError) throw;
        pos_ = saved;
      }
      take();
      NodePtr f = formula();
      expect(")");
      return f;
    }
    return atom();
  }

  struct Header {
    NodeKind kind;
    std::vector<std::pair<std::string, std::size_t>> vars;
    NodePtr bound;
  };

  Header header() {
    Header h;
    h.kind = take().text == "forall" ? NodeKind::Forall : NodeKind::Exists;
    for (;;) {
      const Token& v = peek();
      if (v.kind != Tok::Ident || kKeywords.count(v.text)) fail("expected a variable name");
      if (s_.find(v.text)) {
        fail("'" + v.text + "' is a symbol of " + s_.name() + " and cannot be bound");
      }
      h.vars.emplace_back(v.text, v.position);
      take();
      if (!at_op(",")) break;
      take();
    }
    if (at_word("subset")) {
      not_in_language("quantification over subsets ranges over a powerset and is not allowed",
                      peek().position);
    }
    if (!at_word("in")) fail("expected 'in' after quantified variable");
    take();
    h.bound = set_ref();
    return h;
  }

  NodePtr quantify(const Header& h, const std::function<NodePtr()>& body) {
    for (const auto& v : h.vars) scope_.push_back(v.first);
    NodePtr inner = body();
    for (std::size_t i = 0; i < h.vars.size(); ++i) scope_.pop_back();
    for (auto it = h.vars.rbegin(); it != h.vars.rend(); ++it) {
      inner = make(h.kind, it->first, it->second, {h.bound, inner});
    }
    return inner;
  }

  NodePtr set_ref() {
    bool starred = false;
    if (at_op("*")) {
      take();
      starred = true;
    }
    const Token& t = peek();
    if (t.kind != Tok::Ident || kKeywords.count(t.text)) fail("expected a set name");
    const Symbol* sym = s_.find(t.text);
    if (!sym || sym->kind != SymbolKind::Set) {
      not_in_language("'" + t.text + "' is not a set", t.position);
    }
    take();
    return make(NodeKind::SetRef, t.text, t.position, {}, starred);
  }

  NodePtr atom() {
    // relation(args)
    std::size_t star_offset = at_op("*") ? 1 : 0;
    const Token& head = peek(star_offset);
    if (head.kind == Tok::Ident && at_op("(", star_offset + 1)) {
      const Symbol* sym = s_.find(head.text);
      if (sym && sym->kind == SymbolKind::Relation) {
        pos_ += star_offset;
        take();
        auto args = arguments(*sym, head);
        return make(NodeKind::Predicate, head.text, head.position, std::move(args),
                    star_offset == 1);
      }
    }
    NodePtr lhs = term();
    if (at_word("in")) {
      const auto p = take().position;
      return make(NodeKind::In, "", p, {lhs, set_ref()});
    }
    if (is_relop(peek())) {
      const Token& op = take();
      return make(NodeKind::Compare, op.text, op.position, {lhs, term()});
    }
    fail(peek().kind == Tok::End ? "expected 'in' or a comparison at end of input"
                                 : "expected 'in' or a comparison, found '" + peek().text + "'");
  }

  std::vector<NodePtr> arguments(const Symbol& sym, const Token& head) {
    expect("(");
    std::vector<NodePtr> args{term()};
    while (at_op(",")) {
      take();
      args.push_back(term());
    }
    expect(")");
    if (static_cast<int>(args.size()) != sym.arity) {
      throw Error(ErrorKind::SyntaxError,
                  "'" + sym.name + "' takes " + std::to_string(sym.arity) + " argument(s), got " +
                      std::to_string(args.size()),
                  head.position);
    }
    return args;
  }

  NodePtr term() {
    NodePtr lhs = product();
    while (at_op("+") || at_op("-")) {
      const Token& op = take();
      lhs = make(NodeKind::Arith, op.text, op.position, {lhs, product()});
    }
    return lhs;
  }

  NodePtr product() {
    NodePtr lhs = factor();
    while (at_op("*") || at_op("/")) {
      const Token& op = take();
      lhs = make(NodeKind::Arith, op.text, op.position, {lhs, factor()});
    }
    return lhs;
  }

  NodePtr factor() {
    if (at_op("-")) {
      const auto p = take().position;
      return make(NodeKind::Arith, "neg", p, {factor()});
    }
    NodePtr base = primary();
    if (at_op("^")) {
      const Token& op = take();
      return make(NodeKind::Arith, "^", op.position, {base, factor()});
    }
    return base;
  }

  NodePtr primary() {
    if (at_op("(")) {
      take();
      NodePtr t = term();
      expect(")");
      return t;
    }
    if (at_op("|")) {
      const auto p = take().position;
      NodePtr t = term();
      expect("|");
      return make(NodeKind::Abs, "", p, {t});
    }
    bool starred = false;
    std::size_t star_pos = peek().position;
    if (at_op("*")) {
      take();
      starred = true;
    }
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      take();
      if (s_.integer_numerals() && t.text.find('.') != std::string::npos) {
        not_in_language("numeral " + t.text + " is not a natural number", t.position);
      }
      return make(NodeKind::Numeral, t.text, starred ? star_pos : t.position, {}, starred);
    }
    if (t.kind != Tok::Ident || kKeywords.count(t.text)) {
      fail(t.kind == Tok::End ? "expected a term at end of input"
                              : "expected a term, found '" + t.text + "'");
    }
    take();
    const bool bound = std::find(scope_.begin(), scope_.end(), t.text) != scope_.end();
    if (bound) {
      if (starred) {
        throw Error(ErrorKind::SyntaxError, "variable '" + t.text + "' cannot be starred",
                    star_pos);
      }
      return make(NodeKind::Variable, t.text, t.position);
    }
    const Symbol* sym = s_.find(t.text);
    if (!sym) {
      if (at_op("(")) not_in_language("function '" + t.text + "' is not a symbol", t.position);
      if (starred) not_in_language("'" + t.text + "' is not a symbol", t.position);
      return make(NodeKind::Variable, t.text, t.position);
    }
    switch (sym->kind) {
      case SymbolKind::Constant:
        if (starred && !sym->internal) {
          not_in_language("'" + t.text + "' has no standard counterpart to star", t.position);
        }
        return make(NodeKind::Constant, t.text, t.position, {}, starred);
      case SymbolKind::Function: {
        if (!at_op("(")) {
          throw Error(ErrorKind::SyntaxError, "function '" + t.text + "' needs arguments",
                      t.position);
        }
        pos_--;
        const Token& head = take();
        auto args = arguments(*sym, head);
        return make(NodeKind::Apply, t.text, t.position, std::move(args), starred);
      }
      case SymbolKind::Set:
      case SymbolKind::Relation: break;
    }
    throw Error(ErrorKind::SyntaxError, "'" + t.text + "' cannot be used as a term", t.position);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Structure& s_;
  std::vector<std::string> scope_;
};

bool is_quantifier(NodeKind k) { return k == NodeKind::Forall || k == NodeKind::Exists; }

void walk(const Node& n, const std::function<void(const Node&)>& visit) {
  visit(n);
  for (const auto& c : n.children) walk(*c, visit);
}

void collect_free(const Node& n, std::vector<std::string>& scope, std::vector<std::string>& out) {
  if (n.kind == NodeKind::Variable) {
    if (std::find(scope.begin(), scope.end(), n.text) == scope.end() &&
        std::find(out.begin(), out.end(), n.text) == out.end()) {
      out.push_back(n.text);
    }
    return;
  }
  if (is_quantifier(n.kind)) {
    scope.push_back(n.text);
    collect_free(*n.children[1], scope, out);
    scope.pop_back();
    return;
  }
  for (const auto& c : n.children) collect_free(*c, scope, out);
}

bool is_symbol_node(NodeKind k) {
  return k == NodeKind::SetRef || k == NodeKind::Apply || k == NodeKind::Constant ||
         k == NodeKind::Predicate;
}

int formula_level(NodeKind k) {
  switch (k) {
    case NodeKind::Forall:
    case NodeKind::Exists: return 0;
    case NodeKind::Iff: return 1;
    case NodeKind::Implies: return 2;
    case NodeKind::Or: return 3;
    case NodeKind::And: return 4;
    case NodeKind::Not: return 5;
    default: return 6;
  }
}

int term_level(const Node& n) {
  if (n.kind != NodeKind::Arith) return 5;
  if (n.text == "+" || n.text == "-") return 1;
  if (n.text == "*" || n.text == "/") return 2;
  if (n.text == "neg") return 3;
  return 4;
}

std::string star(const Node& n) { return (n.starred ? "*" : "") + n.text; }

std::string print_term(const Node& n, int min_level);

std::string print_args(const Node& n) {
  std::string out = star(n) + "(";
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ", ";
    out += print_term(*n.children[i], 0);
  }
  return out + ")";
}

std::string print_term(const Node& n, int min_level) {
  std::string out;
  const int level = term_level(n);
  switch (n.kind) {
    case NodeKind::Variable: out = n.text; break;
    case NodeKind::Constant:
    case NodeKind::Numeral: out = star(n); break;
    case NodeKind::Apply: out = print_args(n); break;
    case NodeKind::Abs: out = "|" + print_term(*n.children[0], 0) + "|"; break;
    case NodeKind::Arith:
      if (n.text == "neg") {
        out = "-" + print_term(*n.children[0], 3);
      } else if (n.text == "^") {
        out = print_term(*n.children[0], 5) + "^" + print_term(*n.children[1], 4);
      } else {
        out = print_term(*n.children[0], level) + " " + n.text + " " +
              print_term(*n.children[1], level + 1);
      }
      break;
    default: out = "?"; break;
  }
  return level < min_level ? "(" + out + ")" : out;
}

std::string print_formula(const Node& n, int min_level) {
  std::string out;
  const int level = formula_level(n.kind);
  switch (n.kind) {
    case NodeKind::Forall:
    case NodeKind::Exists:
      out = std::string(n.kind == NodeKind::Forall ? "forall " : "exists ") + n.text + " in " +
            star(*n.children[0]) + ", " + print_formula(*n.children[1], 0);
      break;
    case NodeKind::Iff:
      out = print_formula(*n.children[0], 1) + " <-> " + print_formula(*n.children[1], 2);
      break;
    case NodeKind::Implies:
      out = print_formula(*n.children[0], 3) + " -> " + print_formula(*n.children[1], 2);
      break;
    case NodeKind::Or:
      out = print_formula(*n.children[0], 3) + " or " + print_formula(*n.children[1], 4);
      break;
    case NodeKind::And:
      out = print_formula(*n.children[0], 4) + " and " + print_formula(*n.children[1], 5);
      break;
    case NodeKind::Not: out = "not " + print_formula(*n.children[0], 5); break;
    case NodeKind::In:
      out = print_term(*n.children[0], 0) + " in " + star(*n.children[1]);
      break;
    case NodeKind::Compare:
      out = print_term(*n.children[0], 0) + " " + n.text + " " + print_term(*n.children[1], 0);
      break;
    case NodeKind::Predicate: out = print_args(n); break;
    default: out = print_term(n, 0); break;
  }
  return level < min_level ? "(" + out + ")" : out;
}

NodePtr rebuild(const Node& n, const std::function<NodePtr(const Node&)>& leaf) {
  if (NodePtr replaced = leaf(n)) return replaced;
  auto copy = std::make_shared<Node>(n);
  for (auto& c : copy->children) c = rebuild(*c, leaf);
  return copy;
}

NodePtr map_nodes(const Node& n, const std::function<void(Node&)>& fn) {
  auto copy = std::make_shared<Node>(n);
  fn(*copy);
  for (auto& c : copy->children) c = map_nodes(*c, fn);
  return copy;
}

Verdict not_transferable(Verdict v, std::string reason) {
  v.kind = VerdictKind::NotTransferable;
  v.reason = std::move(reason);
  return v;
}

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

Formula Formula::parse(std::string_view text, const Structure& s) {
  return Formula(Parser(text, s).parse(), s);
}

std::vector<std::string> Formula::free_variables() const {
  std::vector<std::string> scope;
  std::vector<std::string> out;
  collect_free(*root_, scope, out);
  return out;
}

std::vector<std::string> Formula::external_symbols() const {
  std::set<std::string> out;
  walk(*root_, [&](const Node& n) {
    if (n.kind == NodeKind::Constant) {
      const Symbol* sym = structure_->find(n.text);
      if (!n.starred || (sym && !sym->internal)) out.insert(n.text);
    } else if (is_symbol_node(n.kind) && !n.starred) {
      out.insert(n.text);
    }
  });
  return {out.begin(), out.end()};
}

bool Formula::has_starred_symbol() const {
  bool found = false;
  walk(*root_, [&](const Node& n) { found = found || n.starred; });
  return found;
}

std::size_t Formula::node_count() const {
  std::size_t count = 0;
  walk(*root_, [&](const Node&) { ++count; });
  return count;
}

std::vector<std::string> Formula::quantifier_signature() const {
  std::vector<std::string> out;
  walk(*root_, [&](const Node& n) {
    if (is_quantifier(n.kind)) {
      out.push_back(std::string(n.kind == NodeKind::Forall ? "forall " : "exists ") + n.text);
    }
  });
  return out;
}

std::string Formula::to_string() const { return print_formula(*root_, 0); }

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Statement: return "Statement";
    case VerdictKind::FormulaNotStatement: return "FormulaNotStatement";
    case VerdictKind::NotInLanguage: return "NotInLanguage";
    case VerdictKind::Transferable: return "Transferable";
    case VerdictKind::NotTransferable: return "NotTransferable";
  }
  return "NotInLanguage";
}

std::string_view to_string(Direction d) {
  return d == Direction::Forward ? "forward" : "backward";
}

Verdict check_statement(const Formula& f) {
  Verdict v;
  v.free_vars = f.free_variables();
  if (v.free_vars.empty()) {
    v.kind = VerdictKind::Statement;
  } else {
    v.kind = VerdictKind::FormulaNotStatement;
    v.reason = "free variable(s) not bounded by a quantifier: " + joined(v.free_vars);
  }
  return v;
}

Verdict classify(std::string_view text, const Structure& s) {
  try {
    return check_statement(Formula::parse(text, s));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInLanguage) throw;
    Verdict v;
    v.kind = VerdictKind::NotInLanguage;
    v.reason = e.what();
    return v;
  }
}

Formula star_transform(const Formula& f) {
  const auto free = f.free_variables();
  if (!free.empty()) {
    throw Error(ErrorKind::NotAStatement,
                "only statements have a *-transform; free: " + joined(free));
  }
  if (f.has_starred_symbol()) {
    throw Error(ErrorKind::AlreadyStarred, "formula already mentions starred symbols");
  }
  walk(f.root(), [&](const Node& n) {
    const Symbol* sym = n.kind == NodeKind::Constant ? f.structure().find(n.text) : nullptr;
    if (sym && !sym->internal) {
      throw Error(ErrorKind::NotInLanguage,
                  "'" + n.text + "' is not a standard constant of " + f.structure().name(),
                  n.position);
    }
  });
  NodePtr root = map_nodes(f.root(), [](Node& n) {
    if (is_symbol_node(n.kind) || n.kind == NodeKind::Numeral) n.starred = true;
  });
  return Formula(root, f.structure());
}

Verdict check_transferable(const Formula& f, Direction direction) {
  Verdict v = check_statement(f);
  if (v.kind != VerdictKind::Statement) {
    return not_transferable(std::move(v), "not a statement: " + v.reason);
  }
  if (direction == Direction::Forward) {
    std::set<std::string> offending;
    walk(f.root(), [&](const Node& n) {
      if (n.starred) offending.insert("*" + n.text);
      if (n.kind == NodeKind::Constant) {
        const Symbol* sym = f.structure().find(n.text);
        if (sym && !sym->internal) offending.insert(n.text);
      }
    });
    v.external_symbols.assign(offending.begin(), offending.end());
    if (!offending.empty()) {
      return not_transferable(std::move(v), "not a statement over the standard structure: " +
                                                joined(v.external_symbols));
    }
    v.kind = VerdictKind::Transferable;
    v.transformed_text = star_transform(f).to_string();
    return v;
  }
  v.external_symbols = f.external_symbols();
  if (!v.external_symbols.empty()) {
    return not_transferable(std::move(v),
                            "not in transferable form; external: " + joined(v.external_symbols));
  }
  v.kind = VerdictKind::Transferable;
  NodePtr standard = map_nodes(f.root(), [](Node& n) { n.starred = false; });
  v.transformed_text = Formula(standard, f.structure()).to_string();
  return v;
}

Formula existential_weakening(const Formula& f, std::string_view name, std::string_view variable) {
  const Symbol* real = f.structure().find("R");
  if (!real || real->kind != SymbolKind::Set) {
    throw Error(ErrorKind::InvalidArgument,
                "structure " + f.structure().name() + " has no set R to bound the witness");
  }
  bool occurs = false;
  bool clash = false;
  walk(f.root(), [&](const Node& n) {
    occurs = occurs || (n.kind == NodeKind::Constant && n.text == name);
    clash = clash || ((n.kind == NodeKind::Variable || is_quantifier(n.kind)) && n.text == variable);
  });
  if (!occurs) {
    throw Error(ErrorKind::InvalidArgument, "constant '" + std::string(name) + "' does not occur");
  }
  if (clash || f.structure().find(variable)) {
    throw Error(ErrorKind::InvalidArgument, "variable '" + std::string(variable) + "' is taken");
  }
  NodePtr body = rebuild(f.root(), [&](const Node& n) -> NodePtr {
    if (n.kind == NodeKind::Constant && n.text == name) {
      return make(NodeKind::Variable, std::string(variable), n.position);
    }
    return nullptr;
  });
  NodePtr bound = make(NodeKind::SetRef, "R", 0, {}, true);
  return Formula(make(NodeKind::Exists, std::string(variable), 0, {bound, body}), f.structure());
}

}  // namespace hyperreal::transfer
