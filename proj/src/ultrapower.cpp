#include "hyperreal/ultrapower.hpp"

#include <algorithm>

#include "hyperreal/error.hpp"

namespace hyperreal::ultrapower {

Polynomial::Polynomial(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {
  for (auto& c : coefficients_) c.canonicalize();
  trim();
}

Polynomial Polynomial::constant(Rational c) { return Polynomial({std::move(c)}); }

Polynomial Polynomial::index() { return Polynomial({0, 1}); }

void Polynomial::trim() {
  while (!coefficients_.empty() && sgn(coefficients_.back()) == 0) coefficients_.pop_back();
}

Rational Polynomial::evaluate(const Rational& n) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

Rational Polynomial::root_bound() const {
  if (degree() < 1) return 0;
  Rational worst = 0;
  for (long i = 0; i < degree(); ++i) {
    Rational r = coefficients_[i] / leading();
    if (sgn(r) < 0) r = -r;
    worst = std::max(worst, r);
  }
  return worst + 1;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coefficients_.size(), b.coefficients_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) c[i] += a.coefficients_[i];
  for (std::size_t i = 0; i < b.coefficients_.size(); ++i) c[i] += b.coefficients_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coefficients_.size() + b.coefficients_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
      c[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  std::vector<Rational> out = coefficients_;
  for (auto& x : out) x *= c;
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByExactZero, "polynomial division by zero");
  std::vector<Rational> rem = a.coefficients_;
  std::vector<Rational> quot(std::max<long>(a.degree() - b.degree() + 1, 0), Rational(0));
  for (long k = a.degree() - b.degree(); k >= 0; --k) {
    const Rational c = rem[k + b.degree()] / b.leading();
    quot[k] = c;
    for (long j = 0; j <= b.degree(); ++j) rem[k + j] -= c * b.coefficients_[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rational(1 / a.leading()));
}

namespace {

unsigned long ceil_natural(const Rational& q) {
  if (sgn(q) <= 0) return 0;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!c.fits_ulong_p()) throw Error(ErrorKind::InvalidArgument, "sequence poles too large");
  return c.get_ui();
}

unsigned long past_roots(const Polynomial& p) {
  return std::max<unsigned long>(1, ceil_natural(p.root_bound()));
}

std::string polynomial_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (long i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients()[i];
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    std::string mono = i == 0 ? "" : (i == 1 ? "n" : "n^" + std::to_string(i));
    std::string body;
    if (mono.empty()) {
      body = magnitude.get_str();
    } else if (magnitude == 1) {
      body = mono;
    } else {
      body = magnitude.get_str() + "*" + mono;
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

int eventual_sign(const RatSeq& r, const RatSeq& s, Polynomial* difference = nullptr) {
  // Denominators are monic, so they are positive past their roots.
  Polynomial n = r.numerator() * s.denominator() - s.numerator() * r.denominator();
  int sign = n.is_zero() ? 0 : sgn(n.leading());
  if (difference) *difference = std::move(n);
  return sign;
}

}  // namespace

RatSeq::RatSeq(Polynomial numerator, Polynomial denominator)
    : RatSeq(std::move(numerator), std::move(denominator), 1) {}

RatSeq::RatSeq(Polynomial numerator, Polynomial denominator, unsigned long defined_from) {
  if (denominator.is_zero()) {
    throw Error(ErrorKind::DivisionByExactZero, "sequence denominator is identically zero");
  }
  Polynomial g = Polynomial::gcd(numerator, denominator);
  numerator_ = Polynomial::divmod(numerator, g).first;
  denominator_ = Polynomial::divmod(denominator, g).first;
  const Rational lead = denominator_.leading();
  numerator_ = numerator_.scaled(Rational(1 / lead));
  denominator_ = denominator_.scaled(Rational(1 / lead));
  defined_from_ = std::max({defined_from, past_roots(denominator), past_roots(denominator_)});
}

RatSeq RatSeq::constant(Rational c) {
  return RatSeq(Polynomial::constant(std::move(c)), Polynomial::constant(1));
}

RatSeq RatSeq::index() { return RatSeq(Polynomial::index(), Polynomial::constant(1)); }

RatSeq RatSeq::reciprocal() { return RatSeq(Polynomial::constant(1), Polynomial::index()); }

namespace {

RatSeq seq_pow(const RatSeq& base, long k) {
  if (k < 0) return seq_pow(seq_inv(base), -k);
  RatSeq result = RatSeq::constant(1);
  for (long i = 0; i < k; ++i) result = seq_mul(result, base);
  return result;
}

RatSeq build(const calculus::Node& n) {
  using calculus::NodeKind;
  auto arg = [&](std::size_t i) { return build(*n.children[i]); };
  switch (n.kind) {
    case NodeKind::Number: return RatSeq::constant(n.value);
    case NodeKind::Variable:
      if (n.name != "n") {
        throw Error(ErrorKind::UnknownIdentifier,
                    "sequence index must be named 'n', got '" + n.name + "'", n.position);
      }
      return RatSeq::index();
    case NodeKind::Neg: return seq_neg(arg(0));
    case NodeKind::Add: return seq_add(arg(0), arg(1));
    case NodeKind::Sub: return seq_sub(arg(0), arg(1));
    case NodeKind::Mul: return seq_mul(arg(0), arg(1));
    case NodeKind::Div: {
      RatSeq den = arg(1);
      if (den.is_zero()) {
        throw Error(ErrorKind::DivisionByExactZero, "division by the zero sequence", n.position);
      }
      return seq_mul(arg(0), seq_inv(den));
    }
    case NodeKind::Pow:
      if (n.power.is_integer()) return seq_pow(arg(0), n.power.numerator().get_si());
      break;
    default: break;
  }
  throw Error(ErrorKind::NotRationalFunction,
              "only rational operations and integer powers of n form a sequence", n.position);
}

}  // namespace

RatSeq RatSeq::from_expr(const calculus::Expr& e) { return build(e.root()); }

RatSeq RatSeq::parse(std::string_view text) { return from_expr(calculus::Expr::parse(text)); }

Rational RatSeq::at(const Rational& n) const {
  const Rational d = denominator_.evaluate(n);
  if (sgn(d) == 0) {
    throw Error(ErrorKind::DivisionByExactZero, "sequence undefined at n = " + n.get_str());
  }
  return numerator_.evaluate(n) / d;
}

std::string RatSeq::to_string() const {
  if (denominator_ == Polynomial::constant(1)) return polynomial_text(numerator_);
  const auto wrap = [](const Polynomial& p, bool divisor) {
    const auto nonzero = std::count_if(p.coefficients().begin(), p.coefficients().end(),
                                       [](const Rational& c) { return sgn(c) != 0; });
    std::string t = polynomial_text(p);
    const bool bare = nonzero == 1 && t.front() != '-' && t.find('/') == std::string::npos &&
                      !(divisor && t.find('*') != std::string::npos);
    return bare ? t : "(" + t + ")";
  };
  return wrap(numerator_, false) + "/" + wrap(denominator_, true);
}

RatSeq seq_add(const RatSeq& r, const RatSeq& s) {
  return RatSeq(r.numerator_ * s.denominator_ + s.numerator_ * r.denominator_,
                r.denominator_ * s.denominator_, std::max(r.defined_from_, s.defined_from_));
}

RatSeq seq_mul(const RatSeq& r, const RatSeq& s) {
  return RatSeq(r.numerator_ * s.numerator_, r.denominator_ * s.denominator_,
                std::max(r.defined_from_, s.defined_from_));
}

RatSeq seq_neg(const RatSeq& r) { return seq_mul(RatSeq::constant(-1), r); }

RatSeq seq_sub(const RatSeq& r, const RatSeq& s) { return seq_add(r, seq_neg(s)); }

RatSeq seq_inv(const RatSeq& r) {
  if (r.is_zero()) throw Error(ErrorKind::ExactZero, "inverse of the zero sequence");
  return RatSeq(r.denominator_, r.numerator_, r.defined_from_);
}

Ordering seq_compare(const RatSeq& r, const RatSeq& s) {
  const int sign = eventual_sign(r, s);
  return sign < 0 ? Ordering::Less : (sign > 0 ? Ordering::Greater : Ordering::Equal);
}

AgreementSet agreement(const RatSeq& r, Relation rel, const RatSeq& s) {
  Polynomial diff;
  const int sign = eventual_sign(r, s, &diff);
  bool holds = false;
  switch (rel) {
    case Relation::Equal: holds = sign == 0; break;
    case Relation::NotEqual: holds = sign != 0; break;
    case Relation::Less: holds = sign < 0; break;
    case Relation::LessEqual: holds = sign <= 0; break;
    case Relation::Greater: holds = sign > 0; break;
    case Relation::GreaterEqual: holds = sign >= 0; break;
  }
  unsigned long witness = std::max(r.defined_from(), s.defined_from());
  if (!diff.is_zero()) witness = std::max(witness, past_roots(diff));
  return {holds ? AgreementSet::Verdict::Cofinite : AgreementSet::Verdict::Finite, witness};
}

HyperReal embed(const RatSeq& r, Precision p) {
  auto at_omega = [](const Polynomial& poly) {
    std::vector<Term> terms;
    for (long i = 0; i <= poly.degree(); ++i) {
      terms.push_back({Exponent(-i), poly.coefficients()[i]});
    }
    return HyperReal::from_terms(std::move(terms));
  };
  return at_omega(r.numerator()) * inv(at_omega(r.denominator()), p);
}

}  // namespace hyperreal::ultrapower
