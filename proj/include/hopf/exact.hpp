#pragma once

// Exact Gaussian-rational arithmetic used by the exact resonance mode and by
// unit tests that need polynomial identities without rounding.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <ostream>
#include <string>

namespace hopf {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p" or "-p/q".
Rational parse_rational(const std::string& text);

struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  std::complex<double> to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
    return os << "(" << g.re << ", " << g.im << ")";
  }
};

}  // namespace hopf
