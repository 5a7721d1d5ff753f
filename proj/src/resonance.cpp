#include "hopf/resonance.hpp"

#include <algorithm>
#include <cmath>

namespace hopf {

namespace {

bool exact_resonance(const std::vector<ExactEigenvalue>& mu, std::size_t s, const MultiIndex& m) {
  Rational modulus{1};
  Rational angle{0};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (int k = 0; k < m[i]; ++k) modulus *= mu[i].modulus;
    angle += m[i] * mu[i].angle;
  }
  if (modulus != mu[s].modulus) return false;
  // Angles are multiples of pi: equal mod 2*pi iff the difference is an even integer.
  const Rational diff = angle - mu[s].angle;
  if (boost::multiprecision::denominator(diff) != 1) return false;
  return boost::multiprecision::numerator(diff) % 2 == 0;
}

}  // namespace

int degree_bound(const Eigenvalues& mu) {
  const double ratio = std::log(std::abs(mu[0])) / std::log(std::abs(mu[mu.size() - 1]));
  // Guard against log-ratio rounding just below an integer.
  return static_cast<int>(std::floor(ratio + 1e-9));
}

bool is_resonant(const Eigenvalues& mu, std::size_t s, const MultiIndex& m, double tol) {
  if (m.size() != mu.size() || s >= mu.size()) return false;
  if (mu.has_exact()) return exact_resonance(mu.exact_values(), s, m);
  return std::abs(mu.power(m) - mu[s]) <= tol * std::abs(mu[s]);
}

std::vector<MultiIndex> resonant_multi_indices(const Eigenvalues& mu, std::size_t s, double tol) {
  std::vector<MultiIndex> out;
  for (auto& m : multi_indices_up_to(mu.size(), degree_bound(mu))) {
    if (is_resonant(mu, s, m, tol)) out.push_back(std::move(m));
  }
  return out;
}

ResonanceTable resonance_table(const Eigenvalues& mu, double tol) {
  ResonanceTable table;
  table.degree_bound = degree_bound(mu);
  for (std::size_t s = 0; s < mu.size(); ++s) {
    for (auto& m : resonant_multi_indices(mu, s, tol)) table.entries.push_back({s, std::move(m)});
  }
  return table;
}

std::vector<ResonantMonomial> gmu_keys(const Eigenvalues& mu, double tol) {
  auto entries = resonance_table(mu, tol).entries;
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    const int da = total_degree(a.exponents);
    const int db = total_degree(b.exponents);
    if (da != db) return da < db;
    return a.target < b.target;
  });
  return entries;
}

std::vector<PolyVectorField> gmu_basis(const Eigenvalues& mu, double tol) {
  std::vector<PolyVectorField> basis;
  for (const auto& key : gmu_keys(mu, tol))
    basis.push_back(PolyVectorField::monomial(mu.size(), key.target, key.exponents));
  return basis;
}

}  // namespace hopf
