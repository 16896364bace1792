#include "hyperreal/exponent.hpp"

#include "hyperreal/error.hpp"

namespace hyperreal {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnresolvedZero: return "UnresolvedZero";
    case ErrorKind::ExactZero: return "ExactZero";
    case ErrorKind::DivisionByExactZero: return "DivisionByExactZero";
    case ErrorKind::NegativeLeadingCoefficient: return "NegativeLeadingCoefficient";
    case ErrorKind::RootNotExact: return "RootNotExact";
    case ErrorKind::Unlimited: return "Unlimited";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NotInfinitesimal: return "NotInfinitesimal";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::NotRationalFunction: return "NotRationalFunction";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNearStandard: return "NotNearStandard";
    case ErrorKind::NotInLanguage: return "NotInLanguage";
    case ErrorKind::NotAStatement: return "NotAStatement";
    case ErrorKind::AlreadyStarred: return "AlreadyStarred";
    case ErrorKind::Undecidable: return "Undecidable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(message), kind_(kind), position_(position) {}

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorKind::DivisionByExactZero, "zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

int sign(const Rational& q) { return sgn(q); }

Exponent::Exponent(long numerator, long denominator)
    : value_(make_rational(numerator, denominator)) {}

Exponent::Exponent(Rational value) : value_(std::move(value)) { value_.canonicalize(); }

bool Exponent::is_integer() const { return value_.get_den() == 1; }

std::string to_string(const Exponent& e) { return e.value().get_str(); }

OrderBound min_bound(const OrderBound& a, const OrderBound& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

OrderBound shift(const OrderBound& b, const Exponent& by) {
  if (!b) return std::nullopt;
  return *b + by;
}

}  // namespace hyperreal
