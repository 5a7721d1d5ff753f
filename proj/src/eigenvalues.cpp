#include "hopf/eigenvalues.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hopf {

namespace {

void check_moduli(const std::vector<Complex>& mu) {
  if (mu.size() < 2) throw std::invalid_argument("dimension must be at least 2 (got " + std::to_string(mu.size()) + ")");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double r = std::abs(mu[i]);
    if (!std::isfinite(r) || !(r > 0.0 && r < 1.0))
      throw std::invalid_argument("eigenvalue modulus not in (0,1): |mu_" + std::to_string(i + 1) +
                                  "| = " + std::to_string(r));
  }
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    if (std::abs(mu[i]) > std::abs(mu[i + 1]))
      throw std::invalid_argument("eigenvalues not ordered by modulus at index " + std::to_string(i + 1));
  }
}

}  // namespace

Eigenvalues::Eigenvalues(std::vector<Complex> mu) : mu_(std::move(mu)) { check_moduli(mu_); }

Eigenvalues Eigenvalues::exact(std::vector<ExactEigenvalue> mu) {
  std::vector<Complex> values;
  for (const auto& e : mu) {
    if (e.modulus <= 0 || e.modulus >= 1)
      throw std::invalid_argument("eigenvalue modulus not in (0,1)");
    const double r = e.modulus.convert_to<double>();
    const double a = std::numbers::pi * e.angle.convert_to<double>();
    values.push_back(std::polar(r, a));
  }
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    if (mu[i].modulus > mu[i + 1].modulus)
      throw std::invalid_argument("eigenvalues not ordered by modulus at index " + std::to_string(i + 1));
  }
  Eigenvalues out(std::move(values));
  out.exact_ = std::move(mu);
  return out;
}

Complex Eigenvalues::power(const MultiIndex& m) const {
  Complex p{1.0, 0.0};
  for (std::size_t i = 0; i < mu_.size(); ++i)
    for (int k = 0; k < m.at(i); ++k) p *= mu_[i];
  return p;
}

double Eigenvalues::det_modulus_sq() const {
  double d = 1.0;
  for (const auto& m : mu_) d *= std::norm(m);
  return d;
}

}  // namespace hopf
