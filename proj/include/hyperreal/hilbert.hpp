#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperreal/hyperreal.hpp"

// Finite-dimensional vectors over *C, with scalars re + im*i built from two
// hyperreals. Norms are reported squared: a square root of re^2 + im^2 rarely
// has a rational leading coefficient.

namespace hyperreal::hilbert {

struct HyperComplex {
  HyperReal re;
  HyperReal im;

  HyperComplex() = default;
  HyperComplex(HyperReal r, HyperReal i = {}) : re(std::move(r)), im(std::move(i)) {}
  static HyperComplex unit() { return {HyperReal(), HyperReal(1)}; }

  bool is_real() const { return im.is_exact_zero(); }
  friend bool operator==(const HyperComplex&, const HyperComplex&) = default;
};

HyperComplex operator+(const HyperComplex& a, const HyperComplex& b);
HyperComplex operator-(const HyperComplex& a, const HyperComplex& b);
HyperComplex operator-(const HyperComplex& a);
HyperComplex operator*(const HyperComplex& a, const HyperComplex& b);
HyperComplex conj(const HyperComplex& a);
/// Throws DivisionByExactZero for an exact zero divisor.
HyperComplex div(const HyperComplex& a, const HyperComplex& b, Precision p = {});
std::string to_string(const HyperComplex& z);

struct ExactComplex {
  Rational re;
  Rational im;
  friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
};

std::string to_string(const ExactComplex& z);

class HVector {
 public:
  /// Throws InvalidArgument for an empty component list.
  explicit HVector(std::vector<HyperComplex> components);
  static HVector from_reals(const std::vector<HyperReal>& components);
  /// "[a + b*i, ...]" where each entry uses the expression grammar with `i`
  /// as the imaginary unit.
  static HVector parse(std::string_view text, Precision p = {});

  std::size_t dim() const { return components_.size(); }
  const std::vector<HyperComplex>& components() const { return components_; }
  const HyperComplex& operator[](std::size_t i) const { return components_[i]; }

  friend bool operator==(const HVector&, const HVector&) = default;

 private:
  std::vector<HyperComplex> components_;
};

std::string to_string(const HVector& v);

/// Throws DimensionMismatch.
HVector add(const HVector& v, const HVector& w);
HVector scale(const HyperComplex& lambda, const HVector& v);

/// sum of v_i * conj(w_i); linear in the first argument.
HyperComplex inner(const HVector& v, const HVector& w);
HyperReal norm_sq(const HVector& v);

enum class VecClass { Standard, InfinitesimalVector, NearStandard, Remote };

std::string_view to_string(VecClass c);

/// First match wins: Standard, InfinitesimalVector, NearStandard, Remote.
/// Throws UnresolvedZero when a component cannot be placed.
VecClass vec_classify(const HVector& v);

/// Componentwise shadow; throws NotNearStandard for a remote vector.
std::vector<ExactComplex> standard_part_vec(const HVector& v);

}  // namespace hyperreal::hilbert
