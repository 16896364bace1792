#include "hyperreal/hilbert.hpp"

#include "hyperreal/error.hpp"
#include "hyperreal/expr.hpp"

namespace hyperreal::hilbert {

using hyperreal::to_string;

HyperComplex operator+(const HyperComplex& a, const HyperComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

HyperComplex operator-(const HyperComplex& a, const HyperComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

HyperComplex operator-(const HyperComplex& a) { return {-a.re, -a.im}; }

HyperComplex operator*(const HyperComplex& a, const HyperComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

HyperComplex conj(const HyperComplex& a) { return {a.re, -a.im}; }

HyperComplex div(const HyperComplex& a, const HyperComplex& b, Precision p) {
  if (b.re.is_exact_zero() && b.im.is_exact_zero()) {
    throw Error(ErrorKind::DivisionByExactZero, "division by exact zero");
  }
  const HyperReal scale = inv(b.re * b.re + b.im * b.im, p);
  const HyperComplex n = a * conj(b);
  return {n.re * scale, n.im * scale};
}

std::string to_string(const HyperComplex& z) {
  if (z.im.is_exact_zero()) return to_string(z.re);
  std::string im;
  bool negative = false;
  if (z.im.is_exact() && z.im.terms().size() == 1) {
    negative = sgn(z.im.leading_coefficient()) < 0;
    const std::string mag = to_string(negative ? -z.im : z.im);
    im = mag == "1" ? "i" : mag + "*i";
  } else {
    im = "(" + to_string(z.im) + ")*i";
  }
  if (z.re.is_exact_zero()) return (negative ? "-" : "") + im;
  return to_string(z.re) + (negative ? " - " : " + ") + im;
}

std::string to_string(const ExactComplex& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  const Rational mag = sgn(z.im) < 0 ? Rational(-z.im) : z.im;
  const std::string im = (mag == 1 ? std::string() : to_string(mag) + "*") + "i";
  if (sgn(z.re) == 0) return (sgn(z.im) < 0 ? "-" : "") + im;
  return to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + im;
}

HVector::HVector(std::vector<HyperComplex> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::InvalidArgument, "vector needs a component");
}

HVector HVector::from_reals(const std::vector<HyperReal>& components) {
  std::vector<HyperComplex> out;
  for (const auto& x : components) out.emplace_back(x);
  return HVector(std::move(out));
}

namespace {

using calculus::Node;
using calculus::NodeKind;

class ComplexEvaluator {
 public:
  explicit ComplexEvaluator(Precision p) : p_(p) {}

  HyperComplex operator()(const Node& n) const {
    auto arg = [&](std::size_t i) { return (*this)(*n.children[i]); };
    switch (n.kind) {
      case NodeKind::Number: return HyperReal(n.value);
      case NodeKind::Variable:
        if (n.name != "i") {
          throw Error(ErrorKind::UnknownIdentifier,
                      "only 'i' may appear in a vector entry, got '" + n.name + "'", n.position);
        }
        return HyperComplex::unit();
      case NodeKind::Eps: return HyperReal::eps();
      case NodeKind::Omega: return HyperReal::omega();
      case NodeKind::Neg: return -arg(0);
      case NodeKind::Add: return arg(0) + arg(1);
      case NodeKind::Sub: return arg(0) - arg(1);
      case NodeKind::Mul: return arg(0) * arg(1);
      case NodeKind::Div: return positioned(n, [&] { return div(arg(0), arg(1), p_); });
      case NodeKind::Pow: {
        const HyperComplex base = arg(0);
        if (n.power.is_integer()) {
          const long k = n.power.numerator().get_si();
          HyperComplex acc = HyperReal(1);
          for (long j = 0; j < (k < 0 ? -k : k); ++j) acc = acc * base;
          return k < 0 ? positioned(n, [&] { return div(HyperReal(1), acc, p_); }) : acc;
        }
        const HyperReal x = real(base, n, "fractional power");
        return positioned(n, [&] {
          const HyperReal raised = pow(x, n.power.numerator().get_si(), p_);
          return HyperComplex(root(raised, n.power.denominator().get_si(), p_));
        });
      }
      case NodeKind::Root: {
        const HyperReal x = real(arg(0), n, "root");
        return positioned(n, [&] { return HyperComplex(root(x, n.index, p_)); });
      }
      case NodeKind::Abs: return abs(real(arg(0), n, "abs"));
      case NodeKind::BigO: return HyperReal::big_o(n.power);
    }
    throw Error(ErrorKind::InvalidArgument, "unhandled expression node");
  }

 private:
  static HyperReal real(const HyperComplex& z, const Node& n, const std::string& what) {
    if (!z.is_real()) {
      throw Error(ErrorKind::InvalidArgument, what + " needs a real argument", n.position);
    }
    return z.re;
  }

  template <class Op>
  static HyperComplex positioned(const Node& n, Op op) {
    try {
      return op();
    } catch (const Error& e) {
      if (e.position()) throw;
      throw Error(e.kind(), e.what(), n.position);
    }
  }

  Precision p_;
};

}  // namespace

HVector HVector::parse(std::string_view text, Precision p) {
  std::size_t open = text.find_first_not_of(" \t\n");
  std::size_t close = text.find_last_not_of(" \t\n");
  if (open == std::string_view::npos || text[open] != '[' || text[close] != ']') {
    throw Error(ErrorKind::SyntaxError, "vector must be written [a, b, ...]",
                open == std::string_view::npos ? 0 : open);
  }
  std::vector<HyperComplex> out;
  std::size_t start = open + 1;
  int depth = 0;
  for (std::size_t i = open + 1; i <= close; ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' && depth == 0) || i == close) {
      const std::string_view entry = text.substr(start, i - start);
      try {
        out.push_back(ComplexEvaluator(p)(calculus::Expr::parse(entry).root()));
      } catch (const Error& e) {
        const auto where = e.position() ? std::optional<std::size_t>(start + *e.position())
                                        : std::optional<std::size_t>(start);
        throw Error(e.kind(), e.what(), where);
      }
      start = i + 1;
    }
  }
  return HVector(std::move(out));
}

std::string to_string(const HVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.dim(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + "]";
}

HVector add(const HVector& v, const HVector& w) {
  if (v.dim() != w.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dimensions " + std::to_string(v.dim()) + " and " +
                                                  std::to_string(w.dim()) + " differ");
  }
  std::vector<HyperComplex> out;
  for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(v[i] + w[i]);
  return HVector(std::move(out));
}

HVector scale(const HyperComplex& lambda, const HVector& v) {
  std::vector<HyperComplex> out;
  for (const auto& c : v.components()) out.push_back(lambda * c);
  return HVector(std::move(out));
}

HyperComplex inner(const HVector& v, const HVector& w) {
  if (v.dim() != w.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dimensions " + std::to_string(v.dim()) + " and " +
                                                  std::to_string(w.dim()) + " differ");
  }
  HyperComplex acc;
  for (std::size_t i = 0; i < v.dim(); ++i) acc = acc + v[i] * conj(w[i]);
  return acc;
}

HyperReal norm_sq(const HVector& v) {
  HyperReal acc;
  for (const auto& c : v.components()) acc = acc + c.re * c.re + c.im * c.im;
  return acc;
}

std::string_view to_string(VecClass c) {
  switch (c) {
    case VecClass::Standard: return "standard";
    case VecClass::InfinitesimalVector: return "infinitesimal";
    case VecClass::NearStandard: return "near-standard";
    case VecClass::Remote: return "remote";
  }
  return "remote";
}

VecClass vec_classify(const HVector& v) {
  bool standard = true;
  for (const auto& c : v.components()) standard = standard && c.re.is_standard() && c.im.is_standard();
  if (standard) return VecClass::Standard;
  if (is_infinitesimal(norm_sq(v))) return VecClass::InfinitesimalVector;
  for (const auto& c : v.components()) {
    if (!is_limited(c.re) || !is_limited(c.im)) return VecClass::Remote;
  }
  std::vector<HyperComplex> rest;
  for (const auto& c : v.components()) {
    rest.push_back(c - HyperComplex(HyperReal(shadow(c.re)), HyperReal(shadow(c.im))));
  }
  return is_infinitesimal(norm_sq(HVector(std::move(rest)))) ? VecClass::NearStandard
                                                              : VecClass::Remote;
}

std::vector<ExactComplex> standard_part_vec(const HVector& v) {
  if (vec_classify(v) == VecClass::Remote) {
    throw Error(ErrorKind::NotNearStandard, to_string(v) + " is not in the halo of a standard vector");
  }
  std::vector<ExactComplex> out;
  for (const auto& c : v.components()) out.push_back({shadow(c.re), shadow(c.im)});
  return out;
}

}  // namespace hyperreal::hilbert
