#pragma once

// Pushforward of polynomial vector fields under gamma and the finite-dimensional
// linear algebra around Id - gamma_*.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hopf/normal_form.hpp"
#include "hopf/resonance.hpp"
#include "hopf/vector_field.hpp"

namespace hopf {

inline constexpr double kInvarianceTolerance = 1e-12;
inline constexpr double kNullSpaceThreshold = 1e-10;
inline constexpr int kDefaultTruncationDegree = 4;

/// (gamma_* V)(w) = d gamma(gamma^{-1} w) V(gamma^{-1} w), computed symbolically.
PolyVectorField pushforward(const NormalFormMap& gamma, const PolyVectorField& v);

/// Same, given a precomputed inverse.
PolyVectorField pushforward(const NormalFormMap& gamma, const PolyMap& inverse, const PolyVectorField& v);

/// Exact-coefficient pushforward for the rational test mode.
PolyMapT<GaussianRational> pushforward_exact(const PolyMapT<GaussianRational>& gamma,
                                             const PolyMapT<GaussianRational>& inverse,
                                             const PolyMapT<GaussianRational>& v);

/// d gamma(z) V(z) - V(gamma(z)) == 0 coefficientwise (up to tol * scale).
bool is_invariant(const NormalFormMap& gamma, const PolyVectorField& v, double tol = kInvarianceTolerance);

struct LinearOperatorMatrix {
  std::vector<ResonantMonomial> domain;    // column keys
  std::vector<ResonantMonomial> codomain;  // row keys
  Eigen::MatrixXcd entries;
};

/// Matrix of Id - gamma_* from the span of `domain` monomial fields into the
/// span of every monomial that occurs in an image.
LinearOperatorMatrix id_minus_pushforward_matrix(const NormalFormMap& gamma,
                                                 const std::vector<ResonantMonomial>& domain);

/// Basis of ker(Id - gamma_*) on g_mu, in reduced row-echelon form over the
/// gmu_basis ordering.
std::vector<PolyVectorField> invariant_fields(const NormalFormMap& gamma, double tol = kResonanceTolerance);

struct StabilityViolation {
  std::size_t basis_index = 0;
  ResonantMonomial monomial;
  Complex coeff;
};

struct StabilityReport {
  std::vector<StabilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks (Id - gamma_*)(g_mu) is contained in g_mu, basis element by basis element.
StabilityReport check_gmu_stability(const NormalFormMap& gamma, double tol = kResonanceTolerance);

struct InjectivityReport {
  int max_degree = 0;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  double smallest_singular_value = 0.0;  // of the matrix with unit columns
  double largest_singular_value = 0.0;
  std::vector<ResonantMonomial> resonant_image_components;  // must be empty
  bool full_rank() const { return rank == columns; }
  bool ok() const { return full_rank() && resonant_image_components.empty(); }
  std::string summary() const;
};

/// Id - gamma_* on non-resonant monomial fields of degree <= max_degree:
/// image stays non-resonant and the truncated matrix has full column rank.
InjectivityReport check_perp_injectivity(const NormalFormMap& gamma, int max_degree = kDefaultTruncationDegree,
                                         double tol = kResonanceTolerance);

/// sum_l dV_l / dz_l.
Polynomial holomorphic_divergence_trace(const PolyVectorField& v);

/// Numerical rank with threshold rel * sigma_max.
std::size_t numerical_rank(const Eigen::MatrixXcd& m, double rel = kNullSpaceThreshold);

}  // namespace hopf
