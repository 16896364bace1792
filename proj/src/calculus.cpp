#include "hyperreal/calculus.hpp"

#include <functional>

#include "hyperreal/error.hpp"

namespace hyperreal::calculus {

using hyperreal::to_string;

namespace {

class Evaluator {
 public:
  Evaluator(const HyperReal* x, Precision p) : x_(x), p_(p) {}

  HyperReal operator()(const Node& n) const {
    auto arg = [&](std::size_t i) { return (*this)(*n.children[i]); };
    switch (n.kind) {
      case NodeKind::Number: return HyperReal(n.value);
      case NodeKind::Variable:
        if (!x_) {
          throw Error(ErrorKind::InvalidArgument,
                      "no value supplied for free variable '" + n.name + "'", n.position);
        }
        return *x_;
      case NodeKind::Eps: return HyperReal::eps();
      case NodeKind::Omega: return HyperReal::omega();
      case NodeKind::Neg: return -arg(0);
      case NodeKind::Add: return arg(0) + arg(1);
      case NodeKind::Sub: return arg(0) - arg(1);
      case NodeKind::Mul: return arg(0) * arg(1);
      case NodeKind::Div: {
        HyperReal num = arg(0);
        HyperReal den = arg(1);
        if (den.is_exact_zero()) {
          throw Error(ErrorKind::DivisionByExactZero, "division by exact zero", n.position);
        }
        return positioned(n, [&] { return div(num, den, p_); });
      }
      case NodeKind::Pow: {
        HyperReal base = arg(0);
        return positioned(n, [&] {
          const mpz_class num = n.power.numerator();
          const mpz_class den = n.power.denominator();
          HyperReal raised = pow(base, num.get_si(), p_);
          return den == 1 ? raised : root(raised, den.get_si(), p_);
        });
      }
      case NodeKind::Root: {
        HyperReal v = arg(0);
        return positioned(n, [&] { return root(v, n.index, p_); });
      }
      case NodeKind::Abs: return abs(arg(0));
      case NodeKind::BigO: return HyperReal::big_o(n.power);
    }
    throw Error(ErrorKind::InvalidArgument, "unhandled expression node");
  }

 private:
  static HyperReal positioned(const Node& n, const std::function<HyperReal()>& op) {
    try {
      return op();
    } catch (const Error& e) {
      if (e.position()) throw;
      if (e.kind() == ErrorKind::ExactZero) {
        throw Error(ErrorKind::DivisionByExactZero, "division by exact zero", n.position);
      }
      throw Error(e.kind(), e.what(), n.position);
    }
  }

  const HyperReal* x_;
  Precision p_;
};

// Errors meaning "f is not defined at this argument" rather than "cannot decide".
bool is_undefined(ErrorKind k) {
  return k == ErrorKind::DivisionByExactZero || k == ErrorKind::ExactZero ||
         k == ErrorKind::NegativeLeadingCoefficient;
}

bool is_precision_loss(ErrorKind k) {
  return k == ErrorKind::UnresolvedZero || k == ErrorKind::InsufficientPrecision;
}

std::optional<HyperReal> try_eval(const Expr& f, const HyperReal& x, Precision p) {
  try {
    return eval_hyper(f, x, p);
  } catch (const Error& e) {
    if (is_undefined(e.kind())) return std::nullopt;
    throw;
  }
}

void require_rational_in_variable(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number:
    case NodeKind::Variable:
    case NodeKind::Neg:
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: break;
    case NodeKind::Pow:
      if (!n.power.is_integer()) {
        throw Error(ErrorKind::NotRationalFunction, "fractional power in a sequence", n.position);
      }
      break;
    default:
      throw Error(ErrorKind::NotRationalFunction,
                  "sequences must be rational functions of the index", n.position);
  }
  for (const auto& c : n.children) require_rational_in_variable(*c);
}

// Finite(shadow) / +inf / -inf for one probe value.
LimitResult limit_class(const HyperReal& v) {
  if (is_limited(v)) return LimitResult::finite(shadow(v));
  return sign_of(v) == Ordering::Greater ? LimitResult::plus_infinity()
                                         : LimitResult::minus_infinity();
}

bool same_limit(const LimitResult& a, const LimitResult& b) {
  return a.kind == b.kind && (a.kind != LimitKind::Finite || a.value == b.value);
}

LimitResult common_limit(const std::vector<HyperReal>& args,
                         const std::vector<std::optional<HyperReal>>& values) {
  try {
    std::optional<LimitResult> first;
    std::size_t first_index = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) {
        return LimitResult::no_limit("function undefined at probe " + to_string(args[i]));
      }
      LimitResult r = limit_class(*values[i]);
      if (!first) {
        first = r;
        first_index = i;
      } else if (!same_limit(*first, r)) {
        return LimitResult::no_limit(
            "probes " + to_string(args[first_index]) + " and " + to_string(args[i]) + " disagree",
            {*values[first_index], *values[i]});
      }
    }
    return first ? *first : LimitResult::undecidable("no probes");
  } catch (const Error& e) {
    if (is_precision_loss(e.kind())) return LimitResult::undecidable(e.what());
    throw;
  }
}

}  // namespace

HyperReal eval_hyper(const Expr& f, const HyperReal& x, Precision p) {
  return Evaluator(&x, p)(f.root());
}

HyperReal eval_hyper(const Expr& f, Precision p) { return Evaluator(nullptr, p)(f.root()); }

HyperReal newton_quotient(const Expr& f, const Rational& x0, const HyperReal& e, Precision p) {
  if (sign_of(e) == Ordering::Equal || sign_of(e) == Ordering::Unknown || !is_infinitesimal(e)) {
    throw Error(ErrorKind::NotInfinitesimal,
                "increment must be a nonzero infinitesimal, got " + to_string(e));
  }
  const HyperReal base(x0);
  return div(eval_hyper(f, base + e, p) - eval_hyper(f, base, p), e, p);
}

DerivativeResult derivative(const Expr& f, const Rational& x0, Precision p) {
  const HyperReal eps = HyperReal::eps();
  const HyperReal eps2 = eps * eps;
  DerivativeResult result;
  for (const HyperReal& d : {eps, -eps, eps2, -eps2, HyperReal(2) * eps}) {
    ProbeQuotient probe{d, std::nullopt};
    try {
      probe.quotient = newton_quotient(f, x0, d, p);
    } catch (const Error& e) {
      if (is_precision_loss(e.kind())) {
        throw Error(ErrorKind::InsufficientPrecision,
                    "Newton quotient at " + to_string(d) + " not determined: " + e.what());
      }
      if (!is_undefined(e.kind())) throw;
    }
    result.probes.push_back(std::move(probe));
  }

  std::optional<Rational> common;
  for (const auto& probe : result.probes) {
    if (!probe.quotient) {
      result.reason = "function undefined near x0 (probe " + to_string(probe.increment) + ")";
      return result;
    }
    const HyperReal& q = *probe.quotient;
    bool limited = false;
    Rational s;
    try {
      limited = is_limited(q);
      if (limited) s = shadow(q);
    } catch (const Error& e) {
      if (!is_precision_loss(e.kind())) throw;
      throw Error(ErrorKind::InsufficientPrecision,
                  "shadow of Newton quotient undetermined: " + to_string(q));
    }
    if (!limited) {
      result.reason = "Newton quotient unlimited at probe " + to_string(probe.increment);
      return result;
    }
    if (common && *common != s) {
      result.reason = "Newton quotient shadows disagree: " + to_string(*common) + " vs " +
                      to_string(s) + " (probe " + to_string(probe.increment) + ")";
      return result;
    }
    common = s;
  }
  result.value = common;
  return result;
}

std::string_view to_string(LimitKind k) {
  switch (k) {
    case LimitKind::Finite: return "finite";
    case LimitKind::PlusInfinity: return "+inf";
    case LimitKind::MinusInfinity: return "-inf";
    case LimitKind::NoLimit: return "no-limit";
    case LimitKind::Undecidable: return "undecidable";
  }
  return "undecidable";
}

LimitResult LimitResult::finite(Rational v) {
  LimitResult r;
  r.kind = LimitKind::Finite;
  r.value = std::move(v);
  return r;
}

LimitResult LimitResult::plus_infinity() {
  LimitResult r;
  r.kind = LimitKind::PlusInfinity;
  return r;
}

LimitResult LimitResult::minus_infinity() {
  LimitResult r;
  r.kind = LimitKind::MinusInfinity;
  return r;
}

LimitResult LimitResult::no_limit(std::string reason, std::vector<HyperReal> witnesses) {
  LimitResult r;
  r.kind = LimitKind::NoLimit;
  r.reason = std::move(reason);
  r.witnesses = std::move(witnesses);
  return r;
}

LimitResult LimitResult::undecidable(std::string reason) {
  LimitResult r;
  r.kind = LimitKind::Undecidable;
  r.reason = std::move(reason);
  return r;
}

std::string to_string(const LimitResult& r) {
  switch (r.kind) {
    case LimitKind::Finite: return to_string(r.value);
    case LimitKind::PlusInfinity: return "+inf";
    case LimitKind::MinusInfinity: return "-inf";
    case LimitKind::NoLimit: return "no limit: " + r.reason;
    case LimitKind::Undecidable: return "undecidable: " + r.reason;
  }
  return "";
}

LimitResult limit_seq(const Expr& s, Precision p) {
  require_rational_in_variable(s.root());
  const HyperReal n = HyperReal::omega();
  std::optional<HyperReal> v;
  try {
    v = try_eval(s, n, p);
  } catch (const Error& e) {
    if (is_precision_loss(e.kind())) return LimitResult::undecidable(e.what());
    throw;
  }
  return common_limit({n}, {v});
}

LimitResult limit_fun(const Expr& f, const LimitPoint& at, Side side, Precision p) {
  const HyperReal eps = HyperReal::eps();
  const HyperReal w = HyperReal::omega();
  std::vector<HyperReal> args;
  switch (at.kind) {
    case LimitPoint::Kind::Finite: {
      const HyperReal c(at.c);
      if (side != Side::Left) {
        args.push_back(c + eps);
        args.push_back(c + eps * eps);
      }
      if (side != Side::Right) {
        args.push_back(c - eps);
        args.push_back(c - eps * eps);
      }
      break;
    }
    case LimitPoint::Kind::PlusInfinity: args = {w, HyperReal(2) * w, w * w}; break;
    case LimitPoint::Kind::MinusInfinity: args = {-w, HyperReal(-2) * w, -(w * w)}; break;
  }
  std::vector<std::optional<HyperReal>> values;
  try {
    for (const auto& x : args) values.push_back(try_eval(f, x, p));
  } catch (const Error& e) {
    if (is_precision_loss(e.kind())) return LimitResult::undecidable(e.what());
    throw;
  }
  return common_limit(args, values);
}

bool continuity_at(const Expr& f, const Rational& c, Precision p) {
  const HyperReal base(c);
  const HyperReal eps = HyperReal::eps();
  try {
    auto fc = try_eval(f, base, p);
    if (!fc) return false;
    for (const HyperReal& d : {eps, -eps, eps * eps, -(eps * eps)}) {
      auto v = try_eval(f, base + d, p);
      if (!v || !halo_equiv(*v, *fc)) return false;
    }
    return true;
  } catch (const Error& e) {
    if (is_precision_loss(e.kind())) {
      throw Error(ErrorKind::Undecidable, std::string("continuity undecidable: ") + e.what());
    }
    throw;
  }
}

}  // namespace hyperreal::calculus
