#include "hopf/futaki.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "hopf/fields.hpp"
#include "hopf/sampling.hpp"

namespace hopf {

namespace {

constexpr std::uint64_t kMcStream = 0x3C;
constexpr std::uint64_t kQmcShiftStream = 0x51;

struct ChunkSums {
  Complex sum;
  double abs_sum = 0.0;
  double sq_sum = 0.0;
};

}  // namespace

const char* to_string(SamplingMethod m) { return m == SamplingMethod::mc ? "mc" : "qmc"; }

SamplingMethod parse_sampling_method(const std::string& name) {
  if (name == "mc") return SamplingMethod::mc;
  if (name == "qmc") return SamplingMethod::qmc;
  throw std::invalid_argument("unknown sampling method '" + name + "' (expected mc or qmc)");
}

bool is_vanishing(const IntegralEstimate& e, double k, double rel) {
  return std::abs(e.value) <= k * e.standard_error && e.standard_error <= rel * e.scale;
}

double shell_volume(std::size_t n, double c) {
  double ball = 1.0;
  for (std::size_t k = 1; k <= n; ++k) ball *= std::numbers::pi / static_cast<double>(k);
  return ball * (1.0 - std::pow(c, 2.0 * static_cast<double>(n)));
}

void unit_cube_to_shell(std::span<const double> u, double c, std::span<Complex> out) {
  const std::size_t n = out.size();
  const double dim = 2.0 * static_cast<double>(n);
  const double inner = std::pow(c, dim);
  const double rho = std::pow(inner + u[0] * (1.0 - inner), 1.0 / dim);
  double remaining = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    double share = remaining;
    if (k + 1 < n) {
      // Beta(1, n-1-k) by inversion: stick breaking for the uniform simplex.
      const double b = 1.0 - std::pow(1.0 - u[1 + k], 1.0 / static_cast<double>(n - 1 - k));
      share = remaining * b;
      remaining -= share;
    }
    const double phase = 2.0 * std::numbers::pi * u[n + k];
    out[k] = std::polar(rho * std::sqrt(std::max(share, 0.0)), phase);
  }
}

SamplePlan make_plan(const IntegrationConfig& cfg) {
  const std::size_t chunk = std::max<std::size_t>(1, cfg.chunk_size);
  std::size_t reps = std::max(cfg.min_replicates, (cfg.samples + chunk - 1) / chunk);
  reps = std::max<std::size_t>(1, std::min(reps, cfg.samples));
  return {reps, cfg.samples / reps};
}

ShellSampler::ShellSampler(std::size_t n, double c, SamplingMethod method, std::uint64_t seed)
    : n_(n), c_(c), method_(method), seed_(seed) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("shell sampler: c must lie in (0,1)");
}

void ShellSampler::replicate(std::size_t k, std::size_t count,
                             const std::function<void(std::span<const Complex>)>& sink) const {
  const std::size_t d = 2 * n_;
  std::vector<double> u(d);
  Point z(n_);
  if (method_ == SamplingMethod::mc) {
    CounterRng rng(derive_seed(seed_, kMcStream, k));
    for (std::size_t i = 0; i < count; ++i) {
      for (auto& x : u) x = rng.uniform();
      unit_cube_to_shell(u, c_, z);
      sink(z);
    }
    return;
  }
  CounterRng rng(derive_seed(seed_, kQmcShiftStream, k));
  std::vector<double> shift(d);
  for (auto& s : shift) s = rng.uniform();
  const HaltonSequence halton(d);
  for (std::size_t i = 0; i < count; ++i) {
    halton.point(i + 1, u);
    for (std::size_t a = 0; a < d; ++a) {
      u[a] += shift[a];
      if (u[a] >= 1.0) u[a] -= 1.0;
    }
    unit_cube_to_shell(u, c_, z);
    sink(z);
  }
}

std::vector<Point> sample_shell(std::size_t n, double c, std::size_t count, std::uint64_t seed,
                                SamplingMethod method) {
  IntegrationConfig cfg;
  cfg.samples = count;
  cfg.seed = seed;
  cfg.method = method;
  const SamplePlan plan = make_plan(cfg);
  const ShellSampler sampler(n, c, method, seed);
  std::vector<Point> out;
  out.reserve(plan.total());
  for (std::size_t k = 0; k < plan.replicates; ++k)
    sampler.replicate(k, plan.per_replicate, [&](std::span<const Complex> z) { out.emplace_back(z.begin(), z.end()); });
  return out;
}

IntegralEstimate integrate_over_shell(std::size_t n, double c, const ComplexIntegrand& g, const IntegrationConfig& cfg) {
  const SamplePlan plan = make_plan(cfg);
  if (plan.per_replicate == 0) throw std::invalid_argument("integration needs at least one sample");
  const ShellSampler sampler(n, c, cfg.method, cfg.seed);

  std::vector<ChunkSums> chunks(plan.replicates);
  parallel_chunks(plan.replicates, cfg.threads, [&](std::size_t k) {
    std::vector<Complex> values;
    values.reserve(plan.per_replicate);
    sampler.replicate(k, plan.per_replicate, [&](std::span<const Complex> z) { values.push_back(g(z)); });
    std::vector<double> abs_values(values.size()), sq_values(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      abs_values[i] = std::abs(values[i]);
      sq_values[i] = std::norm(values[i]);
    }
    chunks[k] = {pairwise_sum<Complex>(values), pairwise_sum<double>(abs_values), pairwise_sum<double>(sq_values)};
  });

  const double count = static_cast<double>(plan.total());
  const double per = static_cast<double>(plan.per_replicate);
  const double volume = shell_volume(n, c);
  std::vector<Complex> sums(chunks.size()), means(chunks.size());
  std::vector<double> abs_sums(chunks.size()), sq_sums(chunks.size());
  for (std::size_t k = 0; k < chunks.size(); ++k) {
    sums[k] = chunks[k].sum;
    means[k] = chunks[k].sum / per;
    abs_sums[k] = chunks[k].abs_sum;
    sq_sums[k] = chunks[k].sq_sum;
  }
  const Complex mean = pairwise_sum<Complex>(sums) / count;

  IntegralEstimate est;
  est.value = volume * mean;
  est.samples = plan.total();
  est.seed = cfg.seed;
  est.method = cfg.method;
  est.scale = volume * pairwise_sum<double>(abs_sums) / count;
  if (cfg.method == SamplingMethod::mc) {
    const double var = count > 1 ? std::max(0.0, (pairwise_sum<double>(sq_sums) - count * std::norm(mean)) / (count - 1))
                                 : 0.0;
    est.standard_error = volume * std::sqrt(var / count);
  } else {
    const double reps = static_cast<double>(means.size());
    std::vector<double> dev(means.size());
    for (std::size_t k = 0; k < means.size(); ++k) dev[k] = std::norm(means[k] - mean);
    const double spread = reps > 1 ? pairwise_sum<double>(dev) / (reps - 1) : 0.0;
    est.standard_error = volume * std::sqrt(spread / reps);
  }
  return est;
}

double convention_constant(std::size_t n) { return std::ldexp(1.0, static_cast<int>(n)); }

Complex futaki_integrand(const EquivariantVolume& vol, const PolyVectorField& v, const Polynomial& trace,
                         std::span<const Complex> z, const DerivativeOptions& opts) {
  const auto jet = wirtinger_jet([&vol](std::span<const Complex> p) { return vol.log_density(p); }, z, opts);
  const Complex div = divergence_from_gradient(v, trace, jet.gradient, z);
  return div * ricci_density(jet.hessian).value;
}

IntegralEstimate futaki_invariant(const EquivariantVolume& vol, const PolyVectorField& v, const IntegrationConfig& cfg) {
  const std::size_t n = vol.dim();
  if (v.dim() != n) throw std::invalid_argument("futaki: field dimension mismatch");
  const Polynomial trace = holomorphic_divergence_trace(v);
  const double k = convention_constant(n);
  IntegralEstimate est = integrate_over_shell(
      n, vol.profile().c,
      [&](std::span<const Complex> z) { return k * futaki_integrand(vol, v, trace, z, cfg.derivatives); }, cfg);
  est.convention_constant = k;
  if (!is_invariant(vol.shell().gamma(), v))
    est.warnings.push_back("vector field is not gamma-invariant; the integral is not a Futaki invariant of the quotient");
  return est;
}

bool FutakiReport::all_vanishing() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.vanishing; });
}

FutakiReport futaki_report(std::string manifold, const EquivariantVolume& vol,
                           const std::vector<PolyVectorField>& fields, const IntegrationConfig& cfg) {
  FutakiReport report{std::move(manifold), {}};
  for (const auto& v : fields) {
    FutakiEntry entry{v, futaki_invariant(vol, v, cfg), is_invariant(vol.shell().gamma(), v), false};
    entry.vanishing = is_vanishing(entry.estimate);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

Point default_perturbation_center(std::size_t n, double r0) {
  Point center(n);
  const double scale = r0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) center[k] = (k % 2 == 0) ? Complex(scale, 0.0) : Complex(0.0, scale);
  return center;
}

std::vector<LabeledEstimate> volume_independence_check(const NormalFormMap& gamma, const PolyVectorField& v,
                                                       const IndependenceVariants& variants,
                                                       const IntegrationConfig& cfg) {
  if (variants.cutoffs.empty()) throw std::invalid_argument("independence check needs at least one cut-off");
  std::vector<LabeledEstimate> out;
  std::optional<EquivariantVolume> base;
  for (double c : variants.cutoffs) {
    auto vol = EquivariantVolume::build(ShellSpec::certify(gamma, c, variants.R));
    out.push_back({"c=" + std::to_string(c), futaki_invariant(vol, v, cfg)});
    if (!base) base = std::move(vol);
  }
  const auto perturbed =
      equivariant_perturbation(*base, variants.epsilon, default_perturbation_center(gamma.dim(), variants.perturbation_radius),
                               variants.perturbation_width);
  out.push_back({"perturbed eps=" + std::to_string(variants.epsilon), futaki_invariant(perturbed, v, cfg)});
  return out;
}

bool agree_within(const IntegralEstimate& a, const IntegralEstimate& b, double k) {
  const double sigma = std::hypot(a.standard_error, b.standard_error);
  return std::abs(a.value - b.value) <= k * sigma;
}

DiagonalComparison diagonal_comparison(const NormalFormMap& gamma, const PolyVectorField& v,
                                       const IntegrationConfig& cfg, double c, double R, std::size_t points) {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(gamma, c, R));
  const auto vol_diag = EquivariantVolume::build(ShellSpec::certify(gamma.diagonal_part(), c, R));
  const Polynomial trace = holomorphic_divergence_trace(v);

  DiagonalComparison out;
  for (const auto& z : sample_shell(gamma.dim(), c, points, cfg.seed, SamplingMethod::qmc)) {
    const Complex a = futaki_integrand(vol, v, trace, z, cfg.derivatives);
    const Complex b = futaki_integrand(vol_diag, v, trace, z, cfg.derivatives);
    out.max_pointwise_difference = std::max(out.max_pointwise_difference, std::abs(a - b));
    out.max_integrand = std::max(out.max_integrand, std::abs(a));
    ++out.points;
  }
  if (cfg.samples > 0) {
    out.with_gamma = futaki_invariant(vol, v, cfg);
    out.with_diagonal = futaki_invariant(vol_diag, v, cfg);
  }
  return out;
}

}  // namespace hopf
