#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperreal/expr.hpp"
#include "hyperreal/hyperreal.hpp"

// Sequences r = (r_1, r_2, ...) given by rational functions of the index n.
// Any two such sequences are eventually ordered one way, so the cofinite
// filter already decides [[r = s]], [[r < s]], ... and every nonprincipal
// ultrafilter agrees with it. Oscillating sequences are not representable.

namespace hyperreal::ultrapower {

/// Dense univariate polynomial in n, coefficients ascending by degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(Rational c);
  static Polynomial index();  // n

  const std::vector<Rational>& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coefficients_.size()) - 1; }
  const Rational& leading() const { return coefficients_.back(); }

  Rational evaluate(const Rational& n) const;
  /// Strict upper bound on the magnitude of every real root.
  Rational root_bound() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic greatest common divisor (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

enum class Relation { Equal, NotEqual, Less, LessEqual, Greater, GreaterEqual };

/// The eventual truth of a pointwise predicate: Cofinite (true for every
/// n >= witness) or Finite (false for every n >= witness).
struct AgreementSet {
  enum class Verdict { Cofinite, Finite } verdict;
  unsigned long witness;
};

class RatSeq {
 public:
  /// Sequence numerator(n) / denominator(n); reduced to lowest terms with a
  /// monic denominator.
  RatSeq(Polynomial numerator, Polynomial denominator);
  static RatSeq constant(Rational c);
  static RatSeq index();       // (1, 2, 3, ...)
  static RatSeq reciprocal();  // (1, 1/2, 1/3, ...)
  /// Parses a rational-function expression in the free variable `n`.
  static RatSeq parse(std::string_view text);
  static RatSeq from_expr(const calculus::Expr& e);

  const Polynomial& numerator() const { return numerator_; }
  const Polynomial& denominator() const { return denominator_; }
  /// First index from which every term is defined (>= 1).
  unsigned long defined_from() const { return defined_from_; }

  /// r_n; throws DivisionByExactZero at a pole.
  Rational at(const Rational& n) const;
  bool is_zero() const { return numerator_.is_zero(); }
  std::string to_string() const;

  friend RatSeq seq_add(const RatSeq& r, const RatSeq& s);
  friend RatSeq seq_mul(const RatSeq& r, const RatSeq& s);
  friend RatSeq seq_inv(const RatSeq& r);

  /// Same rational function; defined_from is not part of the value.
  friend bool operator==(const RatSeq& a, const RatSeq& b) {
    return a.numerator_ == b.numerator_ && a.denominator_ == b.denominator_;
  }

 private:
  RatSeq(Polynomial numerator, Polynomial denominator, unsigned long defined_from);

  Polynomial numerator_;
  Polynomial denominator_;
  unsigned long defined_from_ = 1;
};

RatSeq seq_add(const RatSeq& r, const RatSeq& s);
RatSeq seq_mul(const RatSeq& r, const RatSeq& s);
RatSeq seq_neg(const RatSeq& r);
RatSeq seq_sub(const RatSeq& r, const RatSeq& s);
/// 1 / r_n past every zero of r; throws ExactZero for the zero sequence.
RatSeq seq_inv(const RatSeq& r);

/// Eventual order of r against s.
Ordering seq_compare(const RatSeq& r, const RatSeq& s);
AgreementSet agreement(const RatSeq& r, Relation rel, const RatSeq& s);

/// Image in the hyperreals: substitute n = w and expand in eps.
HyperReal embed(const RatSeq& r, Precision p = {});

}  // namespace hyperreal::ultrapower
