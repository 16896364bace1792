#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace hyperreal {

/// Exact rational scalar used for every coefficient in the library.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);
std::string to_string(const Rational& q);
int sign(const Rational& q);

/// Power of eps. Always kept in lowest terms with a positive denominator.
class Exponent {
 public:
  Exponent() = default;
  Exponent(long numerator, long denominator = 1);  // NOLINT(google-explicit-constructor)
  explicit Exponent(Rational value);

  const Rational& value() const noexcept { return value_; }
  bool is_integer() const;
  bool is_zero() const { return sgn(value_) == 0; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  Exponent operator-() const { return Exponent(Rational(-value_)); }
  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    return Exponent(Rational(a.value_ + b.value_));
  }
  friend Exponent operator-(const Exponent& a, const Exponent& b) {
    return Exponent(Rational(a.value_ - b.value_));
  }
  friend Exponent operator*(const Exponent& a, const Exponent& b) {
    return Exponent(Rational(a.value_ * b.value_));
  }
  friend Exponent operator/(const Exponent& a, long n) {
    return Exponent(Rational(a.value_ / n));
  }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
};

/// "p", "-p" or "p/q".
std::string to_string(const Exponent& e);

/// Truncation marker: nullopt means the representation is exact.
using OrderBound = std::optional<Exponent>;

OrderBound min_bound(const OrderBound& a, const OrderBound& b);
OrderBound shift(const OrderBound& b, const Exponent& by);

}  // namespace hyperreal
