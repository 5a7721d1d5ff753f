#pragma once

// The gamma-equivariant volume density f: a radial cut-off psi on a
// fundamental domain D, extended by f(gamma^k z) = |mu_1...mu_n|^{-2k} psi(z).
// D is realized as the closed ball of radius R minus gamma of the closed ball.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "hopf/normal_form.hpp"
#include "hopf/polynomial.hpp"

namespace hopf {

inline constexpr double kDefaultInnerRadius = 0.8;   // c
inline constexpr double kDefaultOuterRadius = 1.05;  // R
inline constexpr int kOrbitIterationCap = 10000;

/// Smooth step: 0 for t <= 0, 1 for t >= 1, phi(t)/(phi(t)+phi(1-t)) with
/// phi(t) = exp(-1/t) in between.
double bump_g(double t);
/// First and second derivatives of bump_g.
double bump_g_prime(double t);
double bump_g_second(double t);

/// Radial cut-off data; v is chosen so that (v - 1)/v = |mu_1 ... mu_n|^2.
struct CutoffProfile {
  double c = kDefaultInnerRadius;
  double v = 0.0;
  double mu_det_sq = 0.0;

  static CutoffProfile make(double c, const Eigenvalues& mu);

  /// psi as a function of r = |z|^2.
  double psi_of_r(double r) const;
  /// d psi / dr and d^2 psi / dr^2.
  double psi_prime(double r) const;
  double psi_second(double r) const;
};

double psi(std::span<const Complex> z, const CutoffProfile& profile);

/// Shell Gamma(c) = {c <= |z| <= 1} inside the fundamental domain of gamma,
/// certified by sup_{|z| = R} |gamma(z)| < c.
class ShellSpec {
 public:
  /// Throws std::runtime_error if the sampled sup is not below c.
  static ShellSpec certify(NormalFormMap gamma, double c = kDefaultInnerRadius, double R = kDefaultOuterRadius,
                           const SphereSamplerConfig& sampler = {});

  double c() const { return c_; }
  double R() const { return R_; }
  const NormalFormMap& gamma() const { return gamma_; }
  const CompiledPolyMap& inverse() const { return inverse_; }
  const ContractionCertificate& certificate() const { return certificate_; }

 private:
  ShellSpec(NormalFormMap gamma, double c, double R, ContractionCertificate cert);

  NormalFormMap gamma_;
  CompiledPolyMap inverse_;
  double c_;
  double R_;
  ContractionCertificate certificate_;
};

enum class DomainMembership { inside, outside_beyond, outside_within };

const char* to_string(DomainMembership m);

/// z in D iff |z| <= R and |gamma^{-1}(z)| > R; outside_beyond if |z| > R.
DomainMembership domain_membership(const ShellSpec& shell, std::span<const Complex> z);

/// Non-radial modulation h(z) = beta((|z| - |center|)/width) * (a + a^2/2),
/// a = Re<z, center>/(|z| |center|), beta(s) = 1 - g(s^2). Supported in the
/// open shell | |z| - |center| | < width.
struct Perturbation {
  double amplitude = 0.0;
  Point center;
  double width = 0.0;

  double modulation(std::span<const Complex> z) const;
};

struct VolumeValue {
  double value = 0.0;
  int orbit_index = 0;
};

class EquivariantVolume {
 public:
  EquivariantVolume(CutoffProfile profile, ShellSpec shell);

  /// Builds the profile from the shell's c and gamma's eigenvalues.
  static EquivariantVolume build(const ShellSpec& shell);

  const CutoffProfile& profile() const { return profile_; }
  const ShellSpec& shell() const { return shell_; }
  const std::optional<Perturbation>& perturbation() const { return perturbation_; }
  std::size_t dim() const { return shell_.gamma().dim(); }

  /// f(z) and the k with gamma^{-k}(z) in D. Throws std::runtime_error when
  /// orbit reduction exceeds kOrbitIterationCap steps.
  VolumeValue eval(std::span<const Complex> z) const;
  double density(std::span<const Complex> z) const { return eval(z).value; }
  double log_density(std::span<const Complex> z) const;

  /// Copy with the profile's v replaced (negative controls only).
  EquivariantVolume with_v(double v) const;
  EquivariantVolume with_perturbation(Perturbation p) const;

 private:
  CutoffProfile profile_;
  ShellSpec shell_;
  std::optional<Perturbation> perturbation_;
};

inline VolumeValue equivariant_eval(const EquivariantVolume& vol, std::span<const Complex> z) {
  return vol.eval(z);
}

/// max |f(gamma z) |mu|^2 - f(z)| / f(z) over points with log-uniform radius in
/// [c |mu_1|, 2R] and uniform direction.
double equivariance_residual(const EquivariantVolume& vol, std::size_t sample_count, std::uint64_t seed);

/// f' = f (1 + eps h); throws std::invalid_argument if the support leaves the
/// open shell (c, 1) and std::domain_error("perturbation not positive") if
/// 1 + eps h <= 0 anywhere on a sample grid.
EquivariantVolume equivariant_perturbation(const EquivariantVolume& vol, double amplitude, Point center,
                                           double width);

}  // namespace hopf
