#include "hyperreal/hyperreal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

namespace hyperreal {

Precision::Precision(int relative_order) : relative_order_(relative_order) {
  if (relative_order < 1) {
    throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
  }
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
    case Ordering::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Zero: return "zero";
    case Classification::PositiveInfinitesimal: return "positive-infinitesimal";
    case Classification::NegativeInfinitesimal: return "negative-infinitesimal";
    case Classification::Appreciable: return "appreciable";
    case Classification::PositiveUnlimited: return "positive-unlimited";
    case Classification::NegativeUnlimited: return "negative-unlimited";
  }
  return "zero";
}

HyperReal::HyperReal(Rational constant) {
  constant.canonicalize();
  if (sgn(constant) != 0) terms_.push_back({Exponent(0), std::move(constant)});
}

HyperReal HyperReal::monomial(Rational coefficient, Exponent exponent) {
  return from_terms({{std::move(exponent), std::move(coefficient)}});
}

HyperReal HyperReal::big_o(Exponent bound) {
  HyperReal x;
  x.bound_ = std::move(bound);
  return x;
}

HyperReal HyperReal::from_terms(std::vector<Term> terms, OrderBound bound) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  HyperReal x;
  x.bound_ = std::move(bound);
  for (auto& t : terms) {
    if (x.bound_ && t.exponent >= *x.bound_) break;
    if (!x.terms_.empty() && x.terms_.back().exponent == t.exponent) {
      x.terms_.back().coefficient += t.coefficient;
    } else {
      x.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(x.terms_, [](const Term& t) { return sgn(t.coefficient) == 0; });
  for (auto& t : x.terms_) t.coefficient.canonicalize();
  return x;
}

bool HyperReal::is_standard() const noexcept {
  return !bound_ && (terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()));
}

const Exponent& HyperReal::leading_exponent() const {
  if (terms_.empty()) {
    throw Error(is_exact() ? ErrorKind::ExactZero : ErrorKind::UnresolvedZero,
                "element has no leading term");
  }
  return terms_.front().exponent;
}

const Rational& HyperReal::leading_coefficient() const {
  leading_exponent();
  return terms_.front().coefficient;
}

Rational HyperReal::coefficient(const Exponent& e) const {
  for (const auto& t : terms_) {
    if (t.exponent == e) return t.coefficient;
  }
  return 0;
}

HyperReal HyperReal::truncated(const Exponent& bound) const {
  HyperReal x;
  x.bound_ = min_bound(bound_, bound);
  for (const auto& t : terms_) {
    if (t.exponent >= *x.bound_) break;
    x.terms_.push_back(t);
  }
  return x;
}

HyperReal HyperReal::as_exact() const {
  HyperReal x = *this;
  x.bound_.reset();
  return x;
}

HyperReal HyperReal::operator-() const {
  HyperReal x = *this;
  for (auto& t : x.terms_) t.coefficient = -t.coefficient;
  return x;
}

HyperReal operator+(const HyperReal& x, const HyperReal& y) {
  std::vector<Term> merged;
  merged.reserve(x.terms_.size() + y.terms_.size());
  merged.insert(merged.end(), x.terms_.begin(), x.terms_.end());
  merged.insert(merged.end(), y.terms_.begin(), y.terms_.end());
  return HyperReal::from_terms(std::move(merged), min_bound(x.bound_, y.bound_));
}

HyperReal operator-(const HyperReal& x, const HyperReal& y) { return x + (-y); }

namespace {

// Exponent that governs how far an error term of the other factor spreads:
// the leading exponent, or the bound for an unresolved zero.
Exponent effective_lead(const HyperReal& x) {
  return x.terms().empty() ? *x.order_bound() : x.terms().front().exponent;
}

}  // namespace

HyperReal operator*(const HyperReal& x, const HyperReal& y) {
  if (x.is_exact_zero() || y.is_exact_zero()) return {};
  OrderBound bound =
      min_bound(shift(x.bound_, effective_lead(y)), shift(y.bound_, effective_lead(x)));
  std::map<Exponent, Rational> acc;
  for (const auto& a : x.terms_) {
    for (const auto& b : y.terms_) {
      Exponent e = a.exponent + b.exponent;
      if (bound && e >= *bound) continue;
      acc[e] += a.coefficient * b.coefficient;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc) terms.push_back({e, std::move(c)});
  return HyperReal::from_terms(std::move(terms), bound);
}

HyperReal add(const HyperReal& x, const HyperReal& y) { return x + y; }
HyperReal mul(const HyperReal& x, const HyperReal& y) { return x * y; }

namespace {

void require_resolved(const HyperReal& x, const char* what) {
  if (x.is_unresolved_zero()) {
    throw Error(ErrorKind::UnresolvedZero,
                std::string(what) + ": operand is zero to the available precision (" +
                    to_string(x) + ")");
  }
}

// x = c * eps^q * (1 + u) with lead(u) > 0.
struct Factored {
  Rational c;
  Exponent q;
  HyperReal u;
  Exponent relative;  // min(T, bound - q): how far (1 + u) is known
  bool exact;         // u has no terms at all and x is exact
};

Factored factor(const HyperReal& x, Precision p) {
  Factored f;
  f.c = x.leading_coefficient();
  f.q = x.leading_exponent();
  std::vector<Term> rest;
  for (const auto& t : x.terms().subspan(1)) {
    rest.push_back({t.exponent - f.q, t.coefficient / f.c});
  }
  f.exact = rest.empty() && x.is_exact();
  f.relative = Exponent(p.relative_order());
  if (x.order_bound()) f.relative = std::min(f.relative, *x.order_bound() - f.q);
  f.u = HyperReal::from_terms(std::move(rest)).truncated(f.relative);
  return f;
}

// sum_k coeff(k) * u^k truncated at `relative`, coeff(0) = 1.
HyperReal unit_series(const HyperReal& u, const Exponent& relative,
                      const std::function<Rational(long)>& coeff) {
  HyperReal sum = HyperReal(1).truncated(relative);
  HyperReal power(1);
  for (long k = 1;; ++k) {
    power = (power * u).truncated(relative);
    if (power.terms().empty()) break;
    sum = sum + HyperReal(coeff(k)) * power;
  }
  return sum;
}

}  // namespace

HyperReal inv(const HyperReal& x, Precision p) {
  if (x.is_exact_zero()) throw Error(ErrorKind::ExactZero, "inverse of exact zero");
  require_resolved(x, "inv");
  Factored f = factor(x, p);
  HyperReal scale = HyperReal::monomial(Rational(1 / f.c), -f.q);
  if (f.exact) return scale;
  HyperReal series =
      unit_series(f.u, f.relative, [](long k) { return Rational(k % 2 == 0 ? 1 : -1); });
  return scale * series;
}

HyperReal div(const HyperReal& x, const HyperReal& y, Precision p) {
  if (y.is_exact_zero()) throw Error(ErrorKind::DivisionByExactZero, "division by exact zero");
  return x * inv(y, p);
}

HyperReal pow(const HyperReal& x, long k, Precision p) {
  if (k < 0) return pow(inv(x, p), -k, p);
  HyperReal result(1);
  HyperReal base = x;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

std::optional<Rational> exact_rational_root(const Rational& q, long n) {
  if (n < 1) return std::nullopt;
  if (sgn(q) < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = exact_rational_root(Rational(-q), n);
    if (!r) return std::nullopt;
    return Rational(-*r);
  }
  mpz_class num, den;
  bool num_exact = mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), n) != 0;
  bool den_exact = mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), n) != 0;
  if (!num_exact || !den_exact) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

HyperReal root(const HyperReal& x, long n, Precision p) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "root index must be positive");
  if (x.is_exact_zero()) return {};
  require_resolved(x, "root");
  if (sgn(x.leading_coefficient()) < 0) {
    if (n % 2 == 0) {
      throw Error(ErrorKind::NegativeLeadingCoefficient,
                  "even root of a negative element: " + to_string(x));
    }
    return -root(-x, n, p);
  }
  Factored f = factor(x, p);
  auto c_root = exact_rational_root(f.c, n);
  if (!c_root) {
    throw Error(ErrorKind::RootNotExact, "leading coefficient " + to_string(f.c) +
                                             " has no rational root of index " +
                                             std::to_string(n));
  }
  HyperReal scale = HyperReal::monomial(*c_root, f.q / n);
  if (f.exact) return scale;
  // binom(1/n, k) built incrementally: b_k = b_{k-1} * (1/n - (k-1)) / k
  const Rational a(1, n);
  Rational b = 1;
  long last = 0;
  auto binom = [&](long k) {
    while (last < k) {
      ++last;
      b = b * (a - (last - 1)) / last;
    }
    return b;
  };
  return scale * unit_series(f.u, f.relative, binom);
}

Ordering sign_of(const HyperReal& x) {
  if (x.terms().empty()) return x.is_exact() ? Ordering::Equal : Ordering::Unknown;
  return sgn(x.leading_coefficient()) > 0 ? Ordering::Greater : Ordering::Less;
}

HyperReal abs(const HyperReal& x) {
  switch (sign_of(x)) {
    case Ordering::Less: return -x;
    case Ordering::Unknown: require_resolved(x, "abs"); break;
    default: break;
  }
  return x;
}

Ordering compare(const HyperReal& x, const HyperReal& y) { return sign_of(x - y); }

Classification classify(const HyperReal& x) {
  if (x.is_exact_zero()) return Classification::Zero;
  require_resolved(x, "classify");
  const int s = sgn(x.leading_coefficient());
  const int e = sgn(x.leading_exponent().value());
  if (e == 0) return Classification::Appreciable;
  if (e > 0) {
    return s > 0 ? Classification::PositiveInfinitesimal : Classification::NegativeInfinitesimal;
  }
  return s > 0 ? Classification::PositiveUnlimited : Classification::NegativeUnlimited;
}

bool is_infinitesimal(const HyperReal& x) {
  if (!x.terms().empty()) return x.leading_exponent() > Exponent(0);
  if (x.is_exact() || *x.order_bound() > Exponent(0)) return true;
  require_resolved(x, "is_infinitesimal");
  return false;
}

bool is_limited(const HyperReal& x) {
  if (!x.terms().empty()) return x.leading_exponent() >= Exponent(0);
  if (x.is_exact() || *x.order_bound() >= Exponent(0)) return true;
  require_resolved(x, "is_limited");
  return false;
}

Rational shadow(const HyperReal& x) {
  if (!x.terms().empty() && x.leading_exponent() < Exponent(0)) {
    throw Error(ErrorKind::Unlimited, "shadow of an unlimited element: " + to_string(x));
  }
  if (x.order_bound() && *x.order_bound() <= Exponent(0)) {
    throw Error(ErrorKind::InsufficientPrecision,
                "constant term not determined: " + to_string(x));
  }
  return x.coefficient(Exponent(0));
}

bool halo_equiv(const HyperReal& x, const HyperReal& y) { return is_infinitesimal(x - y); }

bool galaxy_equiv(const HyperReal& x, const HyperReal& y) { return is_limited(x - y); }

Ordering galaxy_compare(const HyperReal& k, const HyperReal& h) {
  if (galaxy_equiv(k, h)) return Ordering::Equal;
  return compare(k, h);
}

std::string monomial_text(const Exponent& e) {
  if (e.is_zero()) return "1";
  if (e == Exponent(1)) return "eps";
  if (e.is_integer()) return "eps^" + to_string(e);
  return "eps^(" + to_string(e) + ")";
}

std::string to_string(const HyperReal& x) {
  std::string out;
  for (const auto& t : x.terms()) {
    const bool negative = sgn(t.coefficient) < 0;
    const Rational magnitude = negative ? Rational(-t.coefficient) : t.coefficient;
    std::string body;
    if (t.exponent.is_zero()) {
      body = to_string(magnitude);
    } else if (magnitude == 1) {
      body = monomial_text(t.exponent);
    } else {
      body = to_string(magnitude) + "*" + monomial_text(t.exponent);
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  if (x.order_bound()) {
    const std::string o = "O(" + monomial_text(*x.order_bound()) + ")";
    out = out.empty() ? o : out + " + " + o;
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const HyperReal& x) { return os << to_string(x); }

}  // namespace hyperreal
