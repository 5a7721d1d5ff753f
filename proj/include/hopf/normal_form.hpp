#pragma once

// The contraction gamma in Poincare-Dulac normal form:
//   gamma_j(z) = mu_j z_j + P_j(z_{j+1}, ..., z_n),
// with every monomial of P_j resonant. Indices are 0-based in code.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hopf/eigenvalues.hpp"
#include "hopf/polynomial.hpp"
#include "hopf/resonance.hpp"

namespace hopf {

/// coeff * z^exponents placed in component `target`.
struct MonomialTerm {
  std::size_t target = 0;
  MultiIndex exponents;
  Complex coeff{1.0, 0.0};
};

struct Violation {
  std::size_t term_index = 0;
  std::string rule;  // "triangularity" or "non-resonant"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

class NormalFormMap {
 public:
  /// Drops zero coefficients and merges repeated (target, exponents) keys.
  /// Throws std::invalid_argument on out-of-range targets or malformed exponents;
  /// resonance and triangularity are checked by validate_normal_form instead.
  NormalFormMap(Eigenvalues mu, std::vector<MonomialTerm> terms = {});

  std::size_t dim() const { return mu_.size(); }
  const Eigenvalues& eigenvalues() const { return mu_; }
  const std::vector<MonomialTerm>& terms() const { return terms_; }
  bool is_diagonal() const { return terms_.empty(); }

  /// d_gamma(z) = (mu_1 z_1, ..., mu_n z_n).
  NormalFormMap diagonal_part() const { return NormalFormMap(mu_); }

  /// Component polynomials of the full map.
  PolyMap as_poly_map() const;
  /// The P_j alone.
  PolyMap higher_order_part() const;

  void eval(std::span<const Complex> z, std::span<Complex> out) const { compiled_.eval(z, out); }
  Point eval(std::span<const Complex> z) const { return compiled_.eval(z); }

  /// Jacobian rows as compiled maps: jacobian_row(s) evaluates d gamma_s / d z_k for all k.
  const std::vector<CompiledPolyMap>& compiled_jacobian() const { return jacobian_; }

 private:
  Eigenvalues mu_;
  std::vector<MonomialTerm> terms_;
  CompiledPolyMap compiled_;
  std::vector<CompiledPolyMap> jacobian_;
};

ValidationReport validate_normal_form(const NormalFormMap& map, double tol = kResonanceTolerance);

inline Point eval_map(const NormalFormMap& map, std::span<const Complex> z) { return map.eval(z); }

inline constexpr double kInverseCoefficientBound = 1e12;

/// Symbolic inverse by back substitution. Throws std::overflow_error
/// ("inverse coefficient blow-up") past `coeff_bound`.
PolyMap invert_map(const NormalFormMap& map, double coeff_bound = kInverseCoefficientBound);

/// j - sum_l l*m_l with 1-based j and l: the power of t multiplying a term
/// under z -> d_t gamma d_t^{-1}(z), d_t(z) = (t z_1, t^2 z_2, ..., t^n z_n).
int conjugation_exponent(const MonomialTerm& term);

NormalFormMap conjugate_dt(const NormalFormMap& map, double t);

struct SphereSamplerConfig {
  std::size_t samples = 4096;
  std::uint64_t seed = 0x5eedULL;
  std::size_t refine_starts = 10;
  int refine_steps = 50;
  std::size_t chunk_size = 1024;
  unsigned threads = 0;
};

struct ContractionCertificate {
  double radius = 0.0;
  double sup_estimate = 0.0;
  std::size_t samples = 0;
  bool refined = false;
  Point argmax;
};

/// Estimate of sup_{|z| = radius} |gamma(z)|: Gaussian sphere sampling plus
/// projected ascent from the best samples. Deterministic given the seed.
ContractionCertificate contraction_sup(const NormalFormMap& map, double radius,
                                       const SphereSamplerConfig& cfg = {});

struct AutotuneConfig {
  double margin = 0.05;
  int max_log2 = 32;
  SphereSamplerConfig sampler;
};

struct AutotuneResult {
  double t = 1.0;
  int log2_t = 0;
  ContractionCertificate certificate;  // for conjugate_dt(map, t) at radius R
};

/// Smallest t in {1, 2, 4, ..., 2^max_log2} with
/// sup_{|z|=R} |d_t gamma d_t^{-1}(z)| < c (1 - margin).
/// Throws std::runtime_error("no admissible t in search range").
AutotuneResult autotune_t(const NormalFormMap& map, double c, double R, const AutotuneConfig& cfg = {});

}  // namespace hopf
