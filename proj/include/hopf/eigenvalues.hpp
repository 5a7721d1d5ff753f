#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "hopf/exact.hpp"
#include "hopf/polynomial.hpp"

namespace hopf {

/// Eigenvalue given exactly as modulus * exp(i * pi * angle) with rational
/// modulus and angle.
struct ExactEigenvalue {
  Rational modulus;
  Rational angle;
};

/// Linear-part eigenvalues of a contraction, 0 < |mu_1| <= ... <= |mu_n| < 1, n >= 2.
/// Construction throws std::invalid_argument on any violated invariant.
class Eigenvalues {
 public:
  explicit Eigenvalues(std::vector<Complex> mu);
  static Eigenvalues exact(std::vector<ExactEigenvalue> mu);

  std::size_t size() const { return mu_.size(); }
  const Complex& operator[](std::size_t i) const { return mu_[i]; }
  const std::vector<Complex>& values() const { return mu_; }

  bool has_exact() const { return exact_.has_value(); }
  const std::vector<ExactEigenvalue>& exact_values() const { return *exact_; }

  /// mu^m = prod mu_i^{m_i}.
  Complex power(const MultiIndex& m) const;
  /// |mu_1 mu_2 ... mu_n|^2.
  double det_modulus_sq() const;

 private:
  std::vector<Complex> mu_;
  std::optional<std::vector<ExactEigenvalue>> exact_;
};

}  // namespace hopf
