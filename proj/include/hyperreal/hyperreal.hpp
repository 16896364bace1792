#pragma once

#include <span>
#include <string>
#include <vector>

#include "hyperreal/error.hpp"
#include "hyperreal/exponent.hpp"

// Truncated generalized power series in a positive infinitesimal eps, used as
// an exact, decidable model of the ordered field of hyperreals. An element is
//
//     sum_i c_i * eps^(e_i)  +  O(eps^bound)
//
// with rational exponents e_i strictly ascending and nonzero rational c_i.
// Every term exponent is below `bound`; a missing bound means the element is
// exact. The leading (least-exponent) term fixes sign and magnitude class:
// negative exponents are unlimited, zero is appreciable, positive is
// infinitesimal. w = eps^-1 is the canonical positive unlimited element.

namespace hyperreal {

struct Term {
  Exponent exponent;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Relative truncation order T used by inv/root and everything built on them.
class Precision {
 public:
  static constexpr int kDefault = 16;

  Precision() = default;
  explicit Precision(int relative_order);

  int relative_order() const noexcept { return relative_order_; }

 private:
  int relative_order_ = kDefault;
};

enum class Ordering { Less, Equal, Greater, Unknown };

enum class Classification {
  Zero,
  PositiveInfinitesimal,
  NegativeInfinitesimal,
  Appreciable,
  PositiveUnlimited,
  NegativeUnlimited,
};

std::string_view to_string(Ordering o);
std::string_view to_string(Classification c);

class HyperReal {
 public:
  /// Exact zero.
  HyperReal() = default;
  /// Exact standard constant.
  HyperReal(Rational constant);  // NOLINT(google-explicit-constructor)
  HyperReal(long constant) : HyperReal(Rational(constant)) {}  // NOLINT

  static HyperReal monomial(Rational coefficient, Exponent exponent);
  static HyperReal eps() { return monomial(1, Exponent(1)); }
  static HyperReal omega() { return monomial(1, Exponent(-1)); }
  /// O(eps^bound): nothing known below `bound`.
  static HyperReal big_o(Exponent bound);
  /// Normalizing constructor: sorts, merges equal exponents, drops zero
  /// coefficients and terms at or beyond the bound.
  static HyperReal from_terms(std::vector<Term> terms, OrderBound bound = std::nullopt);

  std::span<const Term> terms() const noexcept { return terms_; }
  const OrderBound& order_bound() const noexcept { return bound_; }

  bool is_exact() const noexcept { return !bound_.has_value(); }
  bool is_exact_zero() const noexcept { return terms_.empty() && !bound_; }
  bool is_unresolved_zero() const noexcept { return terms_.empty() && bound_.has_value(); }
  /// Exact with only an eps^0 term (or zero): the image of a rational.
  bool is_standard() const noexcept;

  /// Requires a nonempty term list.
  const Exponent& leading_exponent() const;
  const Rational& leading_coefficient() const;
  Rational coefficient(const Exponent& e) const;

  /// Drops knowledge at and beyond `bound`.
  HyperReal truncated(const Exponent& bound) const;
  /// Same terms, bound forgotten.
  HyperReal as_exact() const;

  HyperReal operator-() const;
  friend HyperReal operator+(const HyperReal& x, const HyperReal& y);
  friend HyperReal operator-(const HyperReal& x, const HyperReal& y);
  friend HyperReal operator*(const HyperReal& x, const HyperReal& y);

  /// Structural equality (same terms, same bound); use compare() for order.
  friend bool operator==(const HyperReal&, const HyperReal&) = default;

 private:
  std::vector<Term> terms_;
  OrderBound bound_;
};

HyperReal add(const HyperReal& x, const HyperReal& y);
HyperReal mul(const HyperReal& x, const HyperReal& y);
HyperReal inv(const HyperReal& x, Precision p = {});
HyperReal div(const HyperReal& x, const HyperReal& y, Precision p = {});
/// Integer power; negative exponents go through inv.
HyperReal pow(const HyperReal& x, long k, Precision p = {});
/// Real n-th root. Odd roots of negative elements are allowed.
HyperReal root(const HyperReal& x, long n, Precision p = {});
HyperReal abs(const HyperReal& x);

Ordering compare(const HyperReal& x, const HyperReal& y);
/// Sign of x, or Unknown for an unresolved zero.
Ordering sign_of(const HyperReal& x);
Classification classify(const HyperReal& x);

/// Decidable predicates: they succeed on an unresolved zero whose bound
/// already settles the question, and throw UnresolvedZero otherwise.
bool is_infinitesimal(const HyperReal& x);
bool is_limited(const HyperReal& x);

/// Standard part of a limited element.
Rational shadow(const HyperReal& x);

bool halo_equiv(const HyperReal& x, const HyperReal& y);
bool galaxy_equiv(const HyperReal& x, const HyperReal& y);
Ordering galaxy_compare(const HyperReal& k, const HyperReal& h);

/// Exact rational n-th root, if one exists (sign handled for odd n).
std::optional<Rational> exact_rational_root(const Rational& q, long n);

/// Canonical text: ascending `c*eps^e` terms, then `+ O(eps^b)` when truncated.
std::string to_string(const HyperReal& x);
std::string monomial_text(const Exponent& e);

std::ostream& operator<<(std::ostream& os, const HyperReal& x);

}  // namespace hyperreal
