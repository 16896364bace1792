#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperreal/expr.hpp"
#include "hyperreal/hyperreal.hpp"

namespace hyperreal::calculus {

/// Star-evaluation: the natural extension of the function defined by `f`,
/// evaluated at a hyperreal argument. Ignores `x` when `f` has no variable.
HyperReal eval_hyper(const Expr& f, const HyperReal& x, Precision p = {});
/// Evaluation of a closed expression (no free variable).
HyperReal eval_hyper(const Expr& f, Precision p = {});

/// (f(x0 + e) - f(x0)) / e for a nonzero infinitesimal e.
HyperReal newton_quotient(const Expr& f, const Rational& x0, const HyperReal& e,
                          Precision p = {});

struct ProbeQuotient {
  HyperReal increment;
  std::optional<HyperReal> quotient;  // empty when f is undefined at the probe
};

struct DerivativeResult {
  std::optional<Rational> value;  // empty: not differentiable
  std::string reason;
  std::vector<ProbeQuotient> probes;

  bool differentiable() const { return value.has_value(); }
};

/// Probes eps, -eps, eps^2, -eps^2 and 2*eps; differentiable iff every Newton
/// quotient is limited and all share one shadow.
DerivativeResult derivative(const Expr& f, const Rational& x0, Precision p = {});

enum class LimitKind { Finite, PlusInfinity, MinusInfinity, NoLimit, Undecidable };

std::string_view to_string(LimitKind k);

struct LimitResult {
  LimitKind kind = LimitKind::Undecidable;
  Rational value;                       // Finite only
  std::vector<HyperReal> witnesses;     // NoLimit: the two disagreeing values
  std::string reason;                   // NoLimit / Undecidable

  static LimitResult finite(Rational v);
  static LimitResult plus_infinity();
  static LimitResult minus_infinity();
  static LimitResult no_limit(std::string reason, std::vector<HyperReal> witnesses = {});
  static LimitResult undecidable(std::string reason);
};

std::string to_string(const LimitResult& r);

/// Limit of a rational sequence in n: evaluate at n = w and read off the class.
LimitResult limit_seq(const Expr& s, Precision p = {});

enum class Side { Both, Left, Right };

struct LimitPoint {
  enum class Kind { Finite, PlusInfinity, MinusInfinity } kind = Kind::Finite;
  Rational c;

  static LimitPoint at(Rational c) { return {Kind::Finite, std::move(c)}; }
  static LimitPoint plus_infinity() { return {Kind::PlusInfinity, 0}; }
  static LimitPoint minus_infinity() { return {Kind::MinusInfinity, 0}; }
};

/// At a point the probes are c +/- eps and c +/- eps^2 (filtered by side);
/// at +inf they are w, 2w, w^2 (negated for -inf).
LimitResult limit_fun(const Expr& f, const LimitPoint& at, Side side = Side::Both,
                      Precision p = {});

/// f(c + d) ~ f(c) for d in {eps, -eps, eps^2, -eps^2}. Throws Undecidable when
/// the available precision cannot settle a probe.
bool continuity_at(const Expr& f, const Rational& c, Precision p = {});

}  // namespace hyperreal::calculus
