#include "hopf/sampling.hpp"

#include <cmath>
#include <numbers>

namespace hopf {

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

unsigned nth_prime(std::size_t i) {
  static const std::vector<unsigned> primes = [] {
    std::vector<unsigned> p;
    for (unsigned k = 2; p.size() < 64; ++k) {
      bool prime = true;
      for (unsigned q : p) {
        if (q * q > k) break;
        if (k % q == 0) {
          prime = false;
          break;
        }
      }
      if (prime) p.push_back(k);
    }
    return p;
  }();
  return primes.at(i);
}

double radical_inverse(std::uint64_t index, unsigned base) {
  const double inv = 1.0 / base;
  double scale = inv;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv;
  }
  return result;
}

HaltonSequence::HaltonSequence(std::size_t dims) {
  for (std::size_t i = 0; i < dims; ++i) bases_.push_back(nth_prime(i));
}

void HaltonSequence::point(std::uint64_t index, std::span<double> out) const {
  for (std::size_t d = 0; d < bases_.size(); ++d) out[d] = radical_inverse(index, bases_[d]);
}

Point gaussian_sphere_point(CounterRng& rng, std::size_t n, double radius) {
  Point z(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& zi : z) {
      zi = Complex(rng.normal(), rng.normal());
      norm2 += std::norm(zi);
    }
  } while (norm2 == 0.0);
  const double scale = radius / std::sqrt(norm2);
  for (auto& zi : z) zi *= scale;
  return z;
}

}  // namespace hopf
