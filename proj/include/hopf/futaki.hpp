#pragma once

// Seeded (quasi-)Monte Carlo estimation of the Futaki invariant
//   F(V) = integral over the shell of div_f V * Ric_f^n
// with Ric_f^n = (-1)^n n! det(d dbar log f) dz^dzbar and dz^dzbar = 2^n dLebesgue.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hopf/calculus.hpp"
#include "hopf/normal_form.hpp"
#include "hopf/vector_field.hpp"
#include "hopf/volume.hpp"

namespace hopf {

enum class SamplingMethod { mc, qmc };

const char* to_string(SamplingMethod m);
SamplingMethod parse_sampling_method(const std::string& name);

struct IntegrationConfig {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20250101;
  SamplingMethod method = SamplingMethod::qmc;
  DerivativeOptions derivatives;
  std::size_t chunk_size = std::size_t{1} << 16;
  std::size_t min_replicates = 8;
  unsigned threads = 0;  // 0: hardware concurrency; never affects results
};

struct IntegralEstimate {
  Complex value;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  SamplingMethod method = SamplingMethod::qmc;
  double convention_constant = 1.0;
  double scale = 0.0;  // integral of |integrand|, same convention
  std::vector<std::string> warnings;
};

inline constexpr double kVanishingSigmas = 3.0;
inline constexpr double kVanishingRelativeError = 1e-3;

/// |value| <= k * stderr and stderr <= rel * scale.
bool is_vanishing(const IntegralEstimate& e, double k = kVanishingSigmas, double rel = kVanishingRelativeError);

/// Lebesgue volume of {c <= |z| <= 1} in C^n.
double shell_volume(std::size_t n, double c);

/// Maps u in [0,1)^{2n} to the shell with Lebesgue-uniform density:
/// u_0 -> radius, u_1..u_{n-1} -> |z_k|^2/|z|^2 on the simplex, u_n.. -> phases.
void unit_cube_to_shell(std::span<const double> u, double c, std::span<Complex> out);

/// Sample layout shared by sample_shell and the integrators: `replicates`
/// chunks of `per_replicate` points each.
struct SamplePlan {
  std::size_t replicates = 0;
  std::size_t per_replicate = 0;
  std::size_t total() const { return replicates * per_replicate; }
};
SamplePlan make_plan(const IntegrationConfig& cfg);

/// Point i of replicate k, written to out.
class ShellSampler {
 public:
  ShellSampler(std::size_t n, double c, SamplingMethod method, std::uint64_t seed);
  void replicate(std::size_t k, std::size_t count, const std::function<void(std::span<const Complex>)>& sink) const;

 private:
  std::size_t n_;
  double c_;
  SamplingMethod method_;
  std::uint64_t seed_;
};

/// All points of the plan in replicate order.
std::vector<Point> sample_shell(std::size_t n, double c, std::size_t count, std::uint64_t seed, SamplingMethod method);

using ComplexIntegrand = std::function<Complex(std::span<const Complex>)>;

/// Lebesgue integral of g over the shell. MC: pooled sample variance;
/// QMC: randomly shifted Halton replicates, spread of replicate means.
IntegralEstimate integrate_over_shell(std::size_t n, double c, const ComplexIntegrand& g, const IntegrationConfig& cfg);

/// div V * (-1)^n n! det H at z, before the 2^n convention constant.
Complex futaki_integrand(const EquivariantVolume& vol, const PolyVectorField& v, const Polynomial& trace,
                         std::span<const Complex> z, const DerivativeOptions& opts = {});

double convention_constant(std::size_t n);

IntegralEstimate futaki_invariant(const EquivariantVolume& vol, const PolyVectorField& v,
                                  const IntegrationConfig& cfg = {});

struct FutakiEntry {
  PolyVectorField field;
  IntegralEstimate estimate;
  bool invariant = true;
  bool vanishing = false;
};

struct FutakiReport {
  std::string manifold;
  std::vector<FutakiEntry> entries;
  bool all_vanishing() const;
};

FutakiReport futaki_report(std::string manifold, const EquivariantVolume& vol,
                           const std::vector<PolyVectorField>& fields, const IntegrationConfig& cfg = {});

struct IndependenceVariants {
  std::vector<double> cutoffs{0.8, 0.9};
  double epsilon = 0.1;
  double perturbation_radius = 0.9;  // |center|
  double perturbation_width = 0.08;
  double R = kDefaultOuterRadius;
};

struct LabeledEstimate {
  std::string label;
  IntegralEstimate estimate;
};

/// F(V) under each cut-off and under the non-radial perturbation of the first
/// cut-off. `gamma` must admit certified shells for every cut-off.
std::vector<LabeledEstimate> volume_independence_check(const NormalFormMap& gamma, const PolyVectorField& v,
                                                       const IndependenceVariants& variants = {},
                                                       const IntegrationConfig& cfg = {});

/// |a - b| <= k sqrt(sa^2 + sb^2).
bool agree_within(const IntegralEstimate& a, const IntegralEstimate& b, double k = kVanishingSigmas);

/// Default perturbation centre: radius r0 along (1, i, 1, i, ...)/sqrt(n).
Point default_perturbation_center(std::size_t n, double r0);

struct DiagonalComparison {
  IntegralEstimate with_gamma;
  IntegralEstimate with_diagonal;
  std::size_t points = 0;
  double max_pointwise_difference = 0.0;
  double max_integrand = 0.0;
};

/// Integrand and integral of V on the gamma- and d_gamma-manifolds over the
/// same shell and seed; the pointwise check uses `points` QMC shell points.
DiagonalComparison diagonal_comparison(const NormalFormMap& gamma, const PolyVectorField& v,
                                       const IntegrationConfig& cfg = {}, double c = kDefaultInnerRadius,
                                       double R = kDefaultOuterRadius, std::size_t points = 10000);

}  // namespace hopf
