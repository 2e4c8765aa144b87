#include "rifclark/rif.hpp"

#include <sstream>

#include "rifclark/errors.hpp"

namespace rifclark {

Rif::Rif(PolyMD numerator, PolyMD denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {}

Rif Rif::from_denominator(const PolyMD& p) { return from_denominator(p, p.degrees()); }

Rif Rif::from_denominator(const PolyMD& p, const std::vector<int>& polydegree) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "denominator is the zero polynomial");
  PolyMD padded = pad_to(p, polydegree);
  PolyMD reflected = reflect(padded);
  for (int a = 0; a < padded.dims(); ++a) {
    if (polydegree[static_cast<std::size_t>(a)] == 0) {
      std::ostringstream msg;
      msg << "phi does not depend on z_" << a + 1 << "; every variable must have positive degree";
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    if (!padded.attains_degree(a) && !reflected.attains_degree(a)) {
      throw Error(ErrorCode::DegreeNotAttained, "polydegree not attained by p or its reflection");
    }
  }
  if (eval(padded, std::vector<Complex>(static_cast<std::size_t>(padded.dims()), 0.0)) == 0.0) {
    throw Error(ErrorCode::NotStable, "p vanishes at the origin");
  }
  return Rif(std::move(reflected), std::move(padded));
}

Complex Rif::operator()(std::span<const Complex> z) const {
  return eval(numerator_, z) / eval(denominator_, z);
}

Complex Rif::operator()(Complex z1, Complex z2) const {
  const Complex z[2] = {z1, z2};
  return (*this)(std::span<const Complex>(z, 2));
}

PolyMD Rif::level_polynomial(Complex alpha) const {
  return linear_combination(1.0, numerator_, -alpha, denominator_);
}

double expected_total_mass(const Rif& phi, Complex alpha) {
  const std::vector<Complex> origin(static_cast<std::size_t>(phi.dims()), 0.0);
  const Complex v = phi(origin);
  return (1.0 - std::norm(v)) / std::norm(alpha - v);
}

}  // namespace rifclark
