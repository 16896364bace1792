#pragma once

// Random generators and oracles shared by the unit tests and the acceptance
// binary. The evaluators here walk the expression tree with plain rational
// or floating arithmetic and never touch the series code they check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <optional>
#include <random>
#include <vector>

#include "hyperreal/error.hpp"
#include "hyperreal/expr.hpp"
#include "hyperreal/hyperreal.hpp"

namespace support {

using hyperreal::Exponent;
using hyperreal::HyperReal;
using hyperreal::Rational;
using hyperreal::Term;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, long max_num = 9, long max_den = 6) {
  Rational q(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
  q.canonicalize();
  return q;
}

inline Rational random_nonzero_rational(Rng& rng, long max_num = 9, long max_den = 6) {
  for (;;) {
    Rational q = random_rational(rng, max_num, max_den);
    if (sgn(q) != 0) return q;
  }
}

/// Exact element whose terms have exponents in [min_exp, max_exp] (halves
/// allowed when `fractional`).
inline HyperReal random_exact(Rng& rng, long min_exp = -2, long max_exp = 3, int max_terms = 3,
                              bool fractional = true) {
  std::vector<Term> terms;
  const int n = static_cast<int>(uniform(rng, 1, max_terms));
  for (int i = 0; i < n; ++i) {
    const long den = fractional && uniform(rng, 0, 3) == 0 ? 2 : 1;
    terms.push_back({Exponent(uniform(rng, min_exp * den, max_exp * den), den),
                     random_nonzero_rational(rng)});
  }
  return HyperReal::from_terms(std::move(terms));
}

inline HyperReal random_nonzero_exact(Rng& rng, long min_exp = -2, long max_exp = 3) {
  for (;;) {
    HyperReal x = random_exact(rng, min_exp, max_exp);
    if (!x.is_exact_zero()) return x;
  }
}

/// Leading term eps^lead with a random tail of higher exponents.
inline HyperReal random_with_lead(Rng& rng, Exponent lead, bool positive = false,
                                  Rational lead_coefficient = 0) {
  Rational c = sgn(lead_coefficient) != 0 ? lead_coefficient : random_nonzero_rational(rng);
  if (positive && sgn(c) < 0) c = -c;
  std::vector<Term> terms{{lead, c}};
  const int extra = static_cast<int>(uniform(rng, 0, 2));
  for (int i = 0; i < extra; ++i) {
    terms.push_back({lead + Exponent(uniform(rng, 1, 6), uniform(rng, 1, 2)),
                     random_nonzero_rational(rng)});
  }
  return HyperReal::from_terms(std::move(terms));
}

inline HyperReal random_infinitesimal(Rng& rng, bool positive = false) {
  return random_with_lead(rng, Exponent(uniform(rng, 1, 6), uniform(rng, 1, 2)), positive);
}

inline HyperReal random_appreciable(Rng& rng, bool positive = false) {
  return random_with_lead(rng, Exponent(0), positive);
}

inline HyperReal random_unlimited(Rng& rng, bool positive = false) {
  return random_with_lead(rng, Exponent(-uniform(rng, 1, 6), uniform(rng, 1, 2)), positive);
}

/// Limited element with terms in [0, 4].
inline HyperReal random_limited(Rng& rng) { return random_exact(rng, 0, 4, 3, true); }

/// Leading exponent, or the bound of an unresolved zero. An exact zero sits
/// above every exponent the tests use.
inline Exponent effective_lead(const HyperReal& x) {
  if (!x.terms().empty()) return x.leading_exponent();
  if (x.is_exact_zero()) return Exponent(1 << 20);
  return *x.order_bound();
}

// Oracle: classical evaluation at a rational point; nullopt where undefined.
inline std::optional<Rational> rational_eval(const hyperreal::calculus::Node& n, const Rational& x) {
  using hyperreal::calculus::NodeKind;
  auto arg = [&](std::size_t i) { return rational_eval(*n.children[i], x); };
  switch (n.kind) {
    case NodeKind::Number: return n.value;
    case NodeKind::Variable: return x;
    case NodeKind::Neg: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      return Rational(-*a);
    }
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      auto a = arg(0);
      auto b = arg(1);
      if (!a || !b) return std::nullopt;
      if (n.kind == NodeKind::Add) return Rational(*a + *b);
      if (n.kind == NodeKind::Sub) return Rational(*a - *b);
      if (n.kind == NodeKind::Mul) return Rational(*a * *b);
      if (sgn(*b) == 0) return std::nullopt;
      return Rational(*a / *b);
    }
    case NodeKind::Pow: {
      auto a = arg(0);
      if (!a || !n.power.is_integer()) return std::nullopt;
      long k = n.power.numerator().get_si();
      if (k < 0 && sgn(*a) == 0) return std::nullopt;
      Rational base = k < 0 ? Rational(1 / *a) : *a;
      Rational acc = 1;
      for (long i = 0; i < std::labs(k); ++i) acc *= base;
      return acc;
    }
    case NodeKind::Abs: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      return Rational(abs(*a));
    }
    default: return std::nullopt;
  }
}

// Oracle: extended-precision floating evaluation for finite differences.
inline long double float_eval(const hyperreal::calculus::Node& n, long double x) {
  using hyperreal::calculus::NodeKind;
  auto arg = [&](std::size_t i) { return float_eval(*n.children[i], x); };
  switch (n.kind) {
    case NodeKind::Number:
      return static_cast<long double>(n.value.get_num().get_d()) / n.value.get_den().get_d();
    case NodeKind::Variable: return x;
    case NodeKind::Neg: return -arg(0);
    case NodeKind::Add: return arg(0) + arg(1);
    case NodeKind::Sub: return arg(0) - arg(1);
    case NodeKind::Mul: return arg(0) * arg(1);
    case NodeKind::Div: return arg(0) / arg(1);
    case NodeKind::Pow: return std::pow(arg(0), static_cast<long double>(n.power.value().get_d()));
    case NodeKind::Root: return std::pow(arg(0), 1.0L / static_cast<long double>(n.index));
    case NodeKind::Abs: return std::fabs(arg(0));
    default: return std::nanl("");
  }
}

/// Central finite difference with step h.
inline long double central_difference(const hyperreal::calculus::Expr& f, long double x,
                                      long double h = 1e-6L) {
  return (float_eval(f.root(), x + h) - float_eval(f.root(), x - h)) / (2 * h);
}

/// Smallest |denominator| met while evaluating; used to keep sample points
/// away from poles.
inline long double min_denominator(const hyperreal::calculus::Node& n, long double x) {
  using hyperreal::calculus::NodeKind;
  long double m = std::numeric_limits<long double>::infinity();
  if (n.kind == NodeKind::Div) m = std::fabs(float_eval(*n.children[1], x));
  if (n.kind == NodeKind::Pow && n.power < Exponent(0)) m = std::fabs(float_eval(*n.children[0], x));
  for (const auto& c : n.children) m = std::min(m, min_denominator(*c, x));
  return m;
}

/// Rational functions of x used by the derivative and continuity checks.
inline const std::vector<std::string>& rational_corpus() {
  static const std::vector<std::string> corpus = {
      "x",
      "x^2",
      "x^3",
      "3*x^4 - 2*x + 7",
      "x^5 - x^3 + x",
      "1/x",
      "1/x^2",
      "x^-3",
      "1/(1 + x^2)",
      "x/(1 + x^2)",
      "(x^2 - 1)/(x^2 + 1)",
      "(2*x + 3)/(x - 4)",
      "(x^3 + 1)/(x^2 + 2)",
      "1/(x - 1) + 1/(x + 1)",
      "(x - 1)*(x + 2)*(x - 3)",
      "(1 + x)^4",
      "(1 - x)^3/(2 + x)",
      "x^2/(x^4 + 1)",
      "(x^2 + x + 1)^2",
      "5",
      "-x",
      "0.5*x^2 - 0.25*x",
      "(3*x - 1)/(2*x^2 + 5)",
      "1/(x^2 + x + 1)",
      "(x + 1)/(x - 1) - (x - 1)/(x + 1)",
      "x^6/(1 + x^6)",
      "(2 - x)^2*(1 + x)^-1",
      "7/(3 + x^2)^2",
      "x*(x - 1/2)*(x + 1/3)",
      "(x^2 - 2)/(x^3 + 4)",
  };
  return corpus;
}

}  // namespace support
