#pragma once

// Multiplicative resonances mu_s = mu^m and the algebra g_mu they span.

#include <cstddef>
#include <vector>

#include "hopf/eigenvalues.hpp"
#include "hopf/vector_field.hpp"

namespace hopf {

inline constexpr double kResonanceTolerance = 1e-12;

/// floor(log|mu_1| / log|mu_n|): no resonant multi-index has larger total degree.
int degree_bound(const Eigenvalues& mu);

/// |mu^m - mu_s| <= tol * |mu_s|, or the exact test when `mu` carries exact
/// eigenvalues (tol is then ignored). `s` is 0-based.
bool is_resonant(const Eigenvalues& mu, std::size_t s, const MultiIndex& m,
                 double tol = kResonanceTolerance);

/// Resonant multi-indices for target s in graded-lex order.
std::vector<MultiIndex> resonant_multi_indices(const Eigenvalues& mu, std::size_t s,
                                               double tol = kResonanceTolerance);

struct ResonantMonomial {
  std::size_t target = 0;
  MultiIndex exponents;
  friend bool operator==(const ResonantMonomial&, const ResonantMonomial&) = default;
};

struct ResonanceTable {
  int degree_bound = 0;
  std::vector<ResonantMonomial> entries;  // by target, then graded-lex
};

ResonanceTable resonance_table(const Eigenvalues& mu, double tol = kResonanceTolerance);

/// Monomial basis z^m d/dz_s of g_mu, ordered by total degree, then target,
/// then graded-lex.
std::vector<ResonantMonomial> gmu_keys(const Eigenvalues& mu, double tol = kResonanceTolerance);
std::vector<PolyVectorField> gmu_basis(const Eigenvalues& mu, double tol = kResonanceTolerance);

}  // namespace hopf
