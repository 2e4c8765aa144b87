#pragma once

#include <span>
#include <vector>

#include "rifclark/poly.hpp"

namespace rifclark {

/// Rational inner function phi = p~ / p built from a stable denominator.
///
/// The polydegree may exceed the degrees of p (monomial factors): z_1 z_2 is
/// the denominator 1 seen at polydegree (1,1). Both p and p~ are stored in
/// the common exponent box. Atorality of p (no common factor with p~) is the
/// caller's obligation and is not checked.
class Rif {
 public:
  /// Polydegree equal to the degrees of p.
  static Rif from_denominator(const PolyMD& p);
  static Rif from_denominator(const PolyMD& p, const std::vector<int>& polydegree);

  int dims() const { return denominator_.dims(); }
  const std::vector<int>& degrees() const { return denominator_.degrees(); }
  int degree(int axis) const { return denominator_.degree(axis); }

  /// p~
  const PolyMD& numerator() const { return numerator_; }
  /// p
  const PolyMD& denominator() const { return denominator_; }

  Complex operator()(std::span<const Complex> z) const;
  Complex operator()(Complex z1, Complex z2) const;

  /// p~ - alpha p.
  PolyMD level_polynomial(Complex alpha) const;

 private:
  Rif(PolyMD numerator, PolyMD denominator);

  PolyMD numerator_;
  PolyMD denominator_;
};

/// (1 - |phi(0)|^2) / |alpha - phi(0)|^2, the total mass every Clark measure
/// of phi must carry.
double expected_total_mass(const Rif& phi, Complex alpha);

}  // namespace rifclark
