#include "hyperreal/expr.hpp"

#include <cctype>
#include <functional>

#include "hyperreal/error.hpp"
#include "hyperreal/hyperreal.hpp"

namespace hyperreal::calculus {

namespace expr {

namespace {
std::shared_ptr<Node> make(NodeKind kind, std::size_t position = 0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->position = position;
  return n;
}
}  // namespace

NodePtr number(Rational value) {
  auto n = make(NodeKind::Number);
  value.canonicalize();
  n->value = std::move(value);
  return n;
}

NodePtr variable(std::string name) {
  auto n = make(NodeKind::Variable);
  n->name = std::move(name);
  return n;
}

NodePtr eps() { return make(NodeKind::Eps); }
NodePtr omega() { return make(NodeKind::Omega); }

NodePtr unary(NodeKind kind, NodePtr operand) {
  auto n = make(kind);
  n->children = {std::move(operand)};
  return n;
}

NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
  auto n = make(kind);
  n->children = {std::move(lhs), std::move(rhs)};
  return n;
}

NodePtr power(NodePtr base, Exponent e) {
  auto n = make(NodeKind::Pow);
  n->power = std::move(e);
  n->children = {std::move(base)};
  return n;
}

NodePtr root(NodePtr operand, long index) {
  auto n = make(NodeKind::Root);
  n->index = index;
  n->children = {std::move(operand)};
  return n;
}

}  // namespace expr

namespace {

enum class Tok { Number, Ident, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      bool dot = false;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) {
        if (s[j] == '.') {
          if (dot) throw Error(ErrorKind::SyntaxError, "malformed number", j);
          dot = true;
        }
        ++j;
      }
      std::string text(s.substr(i, j - i));
      if (text == "." || text.back() == '.' || text.front() == '.') {
        throw Error(ErrorKind::SyntaxError, "malformed number '" + text + "'", i);
      }
      out.push_back({Tok::Number, std::move(text), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), i});
      ++i;
    } else {
      throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

Rational decimal_value(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(mpz_class(text, 10));
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  mpz_class den = 1;
  for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
  Rational q(mpz_class(digits, 10), den);
  q.canonicalize();
  return q;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  NodePtr parse() {
    NodePtr e = expression();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

  const std::optional<std::string>& variable() const { return variable_; }

 private:
  const Token& peek() const { return tokens_[at_]; }
  const Token& next() { return tokens_[at_++]; }
  bool accept(const char* symbol) {
    if (peek().kind == Tok::Symbol && peek().text == symbol) {
      ++at_;
      return true;
    }
    return false;
  }
  void expect(const char* symbol) {
    if (!accept(symbol)) {
      fail(std::string("expected '") + symbol + "'" +
           (peek().kind == Tok::End ? " at end of input" : " before '" + peek().text + "'"));
    }
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::SyntaxError, message, peek().pos);
  }

  std::shared_ptr<Node> node(NodeKind kind, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->position = pos;
    return n;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (peek().kind == Tok::Symbol && (peek().text == "+" || peek().text == "-")) {
      const Token& op = next();
      auto n = node(op.text == "+" ? NodeKind::Add : NodeKind::Sub, op.pos);
      n->children = {lhs, term()};
      lhs = n;
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (peek().kind == Tok::Symbol && (peek().text == "*" || peek().text == "/")) {
      const Token& op = next();
      auto n = node(op.text == "*" ? NodeKind::Mul : NodeKind::Div, op.pos);
      n->children = {lhs, unary()};
      lhs = n;
    }
    return lhs;
  }

  NodePtr unary() {
    if (peek().kind == Tok::Symbol && peek().text == "-") {
      auto n = node(NodeKind::Neg, next().pos);
      n->children = {unary()};
      return n;
    }
    return power();
  }

  long integer() {
    if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos) {
      fail("expected an integer");
    }
    mpz_class v(next().text);
    if (!v.fits_slong_p()) fail("integer out of range");
    return v.get_si();
  }

  Exponent exponent() {
    if (accept("(")) {
      const bool negative = accept("-");
      long num = integer();
      long den = 1;
      if (accept("/")) {
        const std::size_t pos = peek().pos;
        den = integer();
        if (den == 0) throw Error(ErrorKind::SyntaxError, "zero denominator in exponent", pos);
      }
      expect(")");
      return Exponent(negative ? -num : num, den);
    }
    const bool negative = accept("-");
    const long k = integer();
    return Exponent(negative ? -k : k);
  }

  NodePtr power() {
    NodePtr base = atom();
    if (peek().kind == Tok::Symbol && peek().text == "^") {
      auto n = node(NodeKind::Pow, next().pos);
      n->power = exponent();
      n->children = {base};
      return n;
    }
    return base;
  }

  NodePtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      auto n = node(NodeKind::Number, next().pos);
      n->value = decimal_value(t.text);
      return n;
    }
    if (t.kind == Tok::Symbol && t.text == "(") {
      next();
      NodePtr e = expression();
      expect(")");
      return e;
    }
    if (t.kind != Tok::Ident) {
      fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
    const Token& id = next();
    if (id.text == "eps") return node(NodeKind::Eps, id.pos);
    if (id.text == "w") return node(NodeKind::Omega, id.pos);
    if (id.text == "abs") {
      auto n = node(NodeKind::Abs, id.pos);
      expect("(");
      n->children = {expression()};
      expect(")");
      return n;
    }
    if (id.text == "root") {
      auto n = node(NodeKind::Root, id.pos);
      expect("(");
      n->children = {expression()};
      expect(",");
      const std::size_t pos = peek().pos;
      n->index = integer();
      if (n->index < 1) throw Error(ErrorKind::SyntaxError, "root index must be positive", pos);
      expect(")");
      return n;
    }
    if (id.text == "O") {
      auto n = node(NodeKind::BigO, id.pos);
      expect("(");
      n->power = big_o_exponent(expression(), id.pos);
      expect(")");
      return n;
    }
    if (peek().kind == Tok::Symbol && peek().text == "(") {
      throw Error(ErrorKind::UnknownIdentifier, "unknown function '" + id.text + "'", id.pos);
    }
    if (variable_ && *variable_ != id.text) {
      throw Error(ErrorKind::UnknownIdentifier,
                  "unknown identifier '" + id.text + "' (free variable is already '" +
                      *variable_ + "')",
                  id.pos);
    }
    variable_ = id.text;
    auto n = node(NodeKind::Variable, id.pos);
    n->name = id.text;
    return n;
  }

  static Exponent big_o_exponent(const NodePtr& inner, std::size_t pos) {
    if (inner->kind == NodeKind::Number && inner->value == 1) return Exponent(0);
    if (inner->kind == NodeKind::Eps) return Exponent(1);
    if (inner->kind == NodeKind::Omega) return Exponent(-1);
    if (inner->kind == NodeKind::Pow && inner->children[0]->kind == NodeKind::Eps) {
      return inner->power;
    }
    throw Error(ErrorKind::SyntaxError, "O(...) takes 1, eps, w or a power of eps", pos);
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
  std::optional<std::string> variable_;
};

std::optional<std::string> find_variable(const Node& n) {
  if (n.kind == NodeKind::Variable) return n.name;
  for (const auto& c : n.children) {
    if (auto v = find_variable(*c)) return v;
  }
  return std::nullopt;
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case NodeKind::Number:
      if (a.value != b.value) return false;
      break;
    case NodeKind::Variable:
      if (a.name != b.name) return false;
      break;
    case NodeKind::Pow:
    case NodeKind::BigO:
      if (a.power != b.power) return false;
      break;
    case NodeKind::Root:
      if (a.index != b.index) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!equal_nodes(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

// Decimal text when the denominator has only factors 2 and 5.
std::optional<std::string> finite_decimal(const Rational& q) {
  mpz_class den = q.get_den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return std::nullopt;
  const int places = std::max(twos, fives);
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  mpz_class digits = q.get_num() * scale / q.get_den();
  std::string s = mpz_class(abs(digits)).get_str();
  if (static_cast<int>(s.size()) <= places) s.insert(0, places - s.size() + 1, '0');
  s.insert(s.size() - places, ".");
  return (sgn(digits) < 0 ? "-" : "") + s;
}

std::string exponent_text(const Exponent& e) {
  if (e.is_integer()) return to_string(e);
  return "(" + to_string(e) + ")";
}

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

std::string print(const Node& n, int context) {
  std::string s;
  switch (n.kind) {
    case NodeKind::Number:
      if (n.value.get_den() == 1 && sgn(n.value) >= 0) {
        s = n.value.get_str();
      } else if (auto d = finite_decimal(n.value); d && sgn(n.value) >= 0) {
        s = *d;
      } else {
        s = "(" + n.value.get_str() + ")";
      }
      break;
    case NodeKind::Variable: s = n.name; break;
    case NodeKind::Eps: s = "eps"; break;
    case NodeKind::Omega: s = "w"; break;
    case NodeKind::Neg: s = "-" + print(*n.children[0], 3); break;
    case NodeKind::Add:
    case NodeKind::Sub:
      s = print(*n.children[0], 1) + (n.kind == NodeKind::Add ? " + " : " - ") +
          print(*n.children[1], 2);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      s = print(*n.children[0], 2) + (n.kind == NodeKind::Mul ? "*" : "/") +
          print(*n.children[1], 3);
      break;
    case NodeKind::Pow: s = print(*n.children[0], 5) + "^" + exponent_text(n.power); break;
    case NodeKind::Root:
      s = "root(" + print(*n.children[0], 0) + ", " + std::to_string(n.index) + ")";
      break;
    case NodeKind::Abs: s = "abs(" + print(*n.children[0], 0) + ")"; break;
    case NodeKind::BigO: s = "O(" + monomial_text(n.power) + ")"; break;
  }
  return precedence(n.kind) < context ? "(" + s + ")" : s;
}

std::optional<Rational> constant_value(const Node& n) {
  auto child = [&](std::size_t i) { return constant_value(*n.children[i]); };
  switch (n.kind) {
    case NodeKind::Number: return n.value;
    case NodeKind::Neg: {
      auto v = child(0);
      if (!v) return std::nullopt;
      return Rational(-*v);
    }
    case NodeKind::Div: {
      auto a = child(0), b = child(1);
      if (!a || !b) return std::nullopt;
      if (sgn(*b) == 0) throw Error(ErrorKind::DivisionByExactZero, "division by zero", n.position);
      return Rational(*a / *b);
    }
    default: return std::nullopt;
  }
}

}  // namespace

Expr::Expr(NodePtr root) : root_(std::move(root)), variable_(find_variable(*root_)) {}

Expr Expr::parse(std::string_view text) {
  Parser p(text);
  return Expr(p.parse());
}

std::string Expr::to_string() const { return print(*root_, 0); }

bool operator==(const Expr& a, const Expr& b) { return equal_nodes(*a.root_, *b.root_); }

Rational parse_rational(std::string_view text) {
  Expr e = Expr::parse(text);
  auto v = constant_value(e.root());
  if (!v) {
    throw Error(ErrorKind::InvalidArgument,
                "expected a rational literal such as 3, -2/7 or 0.125, got '" +
                    std::string(text) + "'");
  }
  return *v;
}

}  // namespace hyperreal::calculus
