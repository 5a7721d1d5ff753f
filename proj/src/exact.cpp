#include "hopf/exact.hpp"

#include <stdexcept>

namespace hopf {

Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational d = o.norm();
  if (d == 0) throw std::domain_error("division by zero Gaussian rational");
  Rational r = (re * o.re + im * o.im) / d;
  Rational i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

}  // namespace hopf
