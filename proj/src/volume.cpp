#include "hopf/volume.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hopf/sampling.hpp"

namespace hopf {

namespace {

double norm_sq(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& v : z) s += std::norm(v);
  return s;
}

// exponent of the ratio phi(1-t)/phi(t) on (0,1).
double log_ratio(double t) { return 1.0 / t - 1.0 / (1.0 - t); }

// g (1 - g) without cancellation.
double g_times_complement(double t) {
  const double q = log_ratio(t);
  return 1.0 / ((1.0 + std::exp(q)) * (1.0 + std::exp(-q)));
}

}  // namespace

double bump_g(double t) {
  if (!(t > 0.0)) return 0.0;
  if (t >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(log_ratio(t)));
}

double bump_g_prime(double t) {
  if (!(t > 0.0) || t >= 1.0) return 0.0;
  const double p = 1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t));
  return g_times_complement(t) * p;
}

double bump_g_second(double t) {
  if (!(t > 0.0) || t >= 1.0) return 0.0;
  const double u = 1.0 - t;
  const double p = 1.0 / (t * t) + 1.0 / (u * u);
  const double dp = -2.0 / (t * t * t) + 2.0 / (u * u * u);
  const double gc = g_times_complement(t);
  return gc * p * (1.0 - 2.0 * bump_g(t)) * p + gc * dp;
}

CutoffProfile CutoffProfile::make(double c, const Eigenvalues& mu) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("cut-off radius c must lie in (0,1)");
  CutoffProfile p;
  p.c = c;
  p.mu_det_sq = mu.det_modulus_sq();
  p.v = 1.0 / (1.0 - p.mu_det_sq);
  return p;
}

double CutoffProfile::psi_of_r(double r) const {
  const double c2 = c * c;
  const double len = 1.0 - c2;
  const double t = (r - c2) / len;
  if (t <= 0.5) return v - bump_g(t);
  // v - g(t) = (v - 1) + g(1 - t), without the cancellation near the outer edge
  return (v - 1.0) + bump_g((1.0 - r) / len);
}

double CutoffProfile::psi_prime(double r) const {
  const double c2 = c * c;
  const double len = 1.0 - c2;
  return -bump_g_prime((r - c2) / len) / len;
}

double CutoffProfile::psi_second(double r) const {
  const double c2 = c * c;
  const double len = 1.0 - c2;
  return -bump_g_second((r - c2) / len) / (len * len);
}

double psi(std::span<const Complex> z, const CutoffProfile& profile) { return profile.psi_of_r(norm_sq(z)); }

ShellSpec::ShellSpec(NormalFormMap gamma, double c, double R, ContractionCertificate cert)
    : gamma_(std::move(gamma)), inverse_(invert_map(gamma_)), c_(c), R_(R), certificate_(std::move(cert)) {}

ShellSpec ShellSpec::certify(NormalFormMap gamma, double c, double R, const SphereSamplerConfig& sampler) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("shell: c must lie in (0,1)");
  if (!(R > 1.0)) throw std::invalid_argument("shell: R must exceed 1");
  auto cert = contraction_sup(gamma, R, sampler);
  if (!(cert.sup_estimate < c)) {
    std::ostringstream os;
    os << "shell not certified: sup_{|z|=" << R << "} |gamma(z)| ~ " << cert.sup_estimate << " >= c = " << c;
    throw std::runtime_error(os.str());
  }
  return ShellSpec(std::move(gamma), c, R, std::move(cert));
}

const char* to_string(DomainMembership m) {
  switch (m) {
    case DomainMembership::inside:
      return "inside";
    case DomainMembership::outside_beyond:
      return "outside_beyond";
    case DomainMembership::outside_within:
      return "outside_within";
  }
  return "?";
}

DomainMembership domain_membership(const ShellSpec& shell, std::span<const Complex> z) {
  const double R2 = shell.R() * shell.R();
  if (norm_sq(z) > R2) return DomainMembership::outside_beyond;
  const Point w = shell.inverse().eval(z);
  return norm_sq(w) > R2 ? DomainMembership::inside : DomainMembership::outside_within;
}

double Perturbation::modulation(std::span<const Complex> z) const {
  const double rho = std::sqrt(norm_sq(z));
  const double r0 = std::sqrt(norm_sq(center));
  const double s = (rho - r0) / width;
  if (!(std::abs(s) < 1.0)) return 0.0;
  Complex inner{};
  for (std::size_t k = 0; k < z.size(); ++k) inner += std::conj(center[k]) * z[k];
  const double a = inner.real() / (rho * r0);
  return (1.0 - bump_g(s * s)) * (a + 0.5 * a * a);
}

EquivariantVolume::EquivariantVolume(CutoffProfile profile, ShellSpec shell)
    : profile_(profile), shell_(std::move(shell)) {}

EquivariantVolume EquivariantVolume::build(const ShellSpec& shell) {
  return EquivariantVolume(CutoffProfile::make(shell.c(), shell.gamma().eigenvalues()), shell);
}

VolumeValue EquivariantVolume::eval(std::span<const Complex> z) const {
  const std::size_t n = dim();
  if (z.size() != n) throw std::invalid_argument("volume: point dimension mismatch");
  // Small dimensions stay on the stack; this sits inside every stencil evaluation.
  constexpr std::size_t kStackDim = 8;
  std::array<Complex, 2 * kStackDim> stack{};
  std::vector<Complex> heap;
  std::span<Complex> storage;
  if (n <= kStackDim) {
    storage = std::span<Complex>(stack.data(), 2 * n);
  } else {
    heap.resize(2 * n);
    storage = heap;
  }
  std::span<Complex> w = storage.first(n);
  std::span<Complex> next = storage.subspan(n, n);
  std::copy(z.begin(), z.end(), w.begin());

  const double R2 = shell_.R() * shell_.R();
  int k = 0;
  int steps = 0;
  auto bump_step = [&] {
    if (++steps > kOrbitIterationCap) throw std::runtime_error("orbit reduction exceeded iteration cap");
  };
  double w2 = norm_sq(w);
  if (w2 == 0.0) throw std::invalid_argument("volume: the origin is not in the manifold");
  if (w2 > R2) {
    while (w2 > R2) {
      bump_step();
      shell_.gamma().eval(w, next);
      std::swap(w, next);
      w2 = norm_sq(w);
      if (!std::isfinite(w2)) throw std::runtime_error("orbit reduction exceeded iteration cap");
      --k;
    }
  } else {
    while (true) {
      shell_.inverse().eval(w, next);
      if (norm_sq(next) > R2) break;
      bump_step();
      std::swap(w, next);
      ++k;
    }
    w2 = norm_sq(w);
  }
  double value = profile_.psi_of_r(w2);
  if (k != 0) value *= std::pow(profile_.mu_det_sq, -k);
  if (perturbation_) value *= 1.0 + perturbation_->amplitude * perturbation_->modulation(w);
  return {value, k};
}

double EquivariantVolume::log_density(std::span<const Complex> z) const { return std::log(eval(z).value); }

EquivariantVolume EquivariantVolume::with_v(double v) const {
  EquivariantVolume out = *this;
  out.profile_.v = v;
  return out;
}

EquivariantVolume EquivariantVolume::with_perturbation(Perturbation p) const {
  EquivariantVolume out = *this;
  out.perturbation_ = std::move(p);
  return out;
}

double equivariance_residual(const EquivariantVolume& vol, std::size_t sample_count, std::uint64_t seed) {
  const std::size_t n = vol.dim();
  const double lo = std::log(vol.profile().c * std::abs(vol.shell().gamma().eigenvalues()[0]));
  const double hi = std::log(2.0 * vol.shell().R());
  const double m = vol.profile().mu_det_sq;
  CounterRng rng(derive_seed(seed, 0xE9ULL, 0));
  double worst = 0.0;
  Point gz(n);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double radius = std::exp(lo + (hi - lo) * rng.uniform());
    const Point z = gaussian_sphere_point(rng, n, radius);
    vol.shell().gamma().eval(z, gz);
    const double fz = vol.density(z);
    const double fgz = vol.density(gz);
    worst = std::max(worst, std::abs(fgz * m - fz) / fz);
  }
  return worst;
}

EquivariantVolume equivariant_perturbation(const EquivariantVolume& vol, double amplitude, Point center,
                                           double width) {
  if (center.size() != vol.dim()) throw std::invalid_argument("perturbation center has wrong dimension");
  const double r0 = std::sqrt(norm_sq(center));
  const double c = vol.profile().c;
  if (!(width > 0.0) || !(r0 - width > c) || !(r0 + width < 1.0))
    throw std::invalid_argument("perturbation support must lie strictly inside the shell c < |z| < 1");
  // h depends on z only through s = (|z| - r0)/width and a in [-1, 1].
  constexpr int kGrid = 200;
  double worst = 1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double s = -1.0 + 2.0 * i / kGrid;
    const double beta = 1.0 - bump_g(s * s);
    for (int j = 0; j <= kGrid; ++j) {
      const double a = -1.0 + 2.0 * j / kGrid;
      worst = std::min(worst, 1.0 + amplitude * beta * (a + 0.5 * a * a));
    }
  }
  if (!(worst > 0.0)) throw std::domain_error("perturbation not positive");
  return vol.with_perturbation({amplitude, std::move(center), width});
}

}  // namespace hopf
