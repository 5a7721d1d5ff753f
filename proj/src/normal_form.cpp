#include "hopf/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hopf/sampling.hpp"

namespace hopf {

namespace {

std::string format_complex(const Complex& c) {
  std::ostringstream os;
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << '(' << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

double norm_of(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& v : z) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

NormalFormMap::NormalFormMap(Eigenvalues mu, std::vector<MonomialTerm> terms) : mu_(std::move(mu)) {
  const std::size_t n = mu_.size();
  std::map<std::pair<std::size_t, MultiIndex>, Complex> merged;
  std::vector<std::pair<std::size_t, MultiIndex>> order;
  for (auto& t : terms) {
    if (t.target >= n) throw std::invalid_argument("term target out of range: " + std::to_string(t.target + 1));
    if (t.exponents.size() != n)
      throw std::invalid_argument("term exponents must have length " + std::to_string(n));
    for (int e : t.exponents)
      if (e < 0) throw std::invalid_argument("term exponents must be non-negative");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      throw std::invalid_argument("term coefficient must be finite");
    auto key = std::make_pair(t.target, t.exponents);
    auto [it, inserted] = merged.try_emplace(key, t.coeff);
    if (inserted) {
      order.push_back(std::move(key));
    } else {
      it->second += t.coeff;
    }
  }
  for (auto& key : order) {
    const Complex c = merged.at(key);
    if (c != Complex{}) terms_.push_back({key.first, std::move(key.second), c});
  }
  const PolyMap poly = as_poly_map();
  compiled_ = CompiledPolyMap(poly);
  for (const auto& row : jacobian(poly)) jacobian_.emplace_back(row);
}

PolyMap NormalFormMap::higher_order_part() const {
  const std::size_t n = dim();
  PolyMap p(n, Polynomial(n));
  for (const auto& t : terms_) p[t.target].add_term(t.exponents, t.coeff);
  return p;
}

PolyMap NormalFormMap::as_poly_map() const {
  PolyMap p = higher_order_part();
  for (std::size_t j = 0; j < dim(); ++j) p[j] += Polynomial::variable(dim(), j) * mu_[j];
  return p;
}

ValidationReport validate_normal_form(const NormalFormMap& map, double tol) {
  ValidationReport report;
  const auto& mu = map.eigenvalues();
  for (std::size_t i = 0; i < map.terms().size(); ++i) {
    const auto& t = map.terms()[i];
    for (std::size_t l = 0; l <= t.target; ++l) {
      if (t.exponents[l] != 0) {
        report.violations.push_back({i, "triangularity",
                                     "triangularity: target " + std::to_string(t.target + 1) +
                                         " uses variable " + std::to_string(l + 1)});
        break;
      }
    }
    if (!is_resonant(mu, t.target, t.exponents, tol)) {
      report.violations.push_back(
          {i, "non-resonant",
           "non-resonant: mu^m = " + format_complex(mu.power(t.exponents)) + " != mu_" +
               std::to_string(t.target + 1) + " = " + format_complex(mu[t.target]) + " (term " +
               monomial_string(t.exponents) + " e_" + std::to_string(t.target + 1) + ")"});
    }
  }
  return report;
}

PolyMap invert_map(const NormalFormMap& map, double coeff_bound) {
  return invert_triangular(map.eigenvalues().values(), map.higher_order_part(), coeff_bound);
}

int conjugation_exponent(const MonomialTerm& term) {
  int weighted = 0;
  for (std::size_t l = 0; l < term.exponents.size(); ++l)
    weighted += static_cast<int>(l + 1) * term.exponents[l];
  return static_cast<int>(term.target + 1) - weighted;
}

NormalFormMap conjugate_dt(const NormalFormMap& map, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("conjugate_dt: t must be positive");
  std::vector<MonomialTerm> terms = map.terms();
  for (auto& term : terms) term.coeff *= std::pow(t, conjugation_exponent(term));
  return NormalFormMap(map.eigenvalues(), std::move(terms));
}

namespace {

struct Candidate {
  double value;
  Point z;
};

double modulus_sq_at(const NormalFormMap& map, std::span<const Complex> z, std::span<Complex> buf) {
  map.eval(z, buf);
  double s = 0.0;
  for (const auto& v : buf) s += std::norm(v);
  return s;
}

// Projected ascent of |gamma|^2 on the sphere of the given radius.
Candidate refine(const NormalFormMap& map, Candidate start, double radius, int steps) {
  const std::size_t n = map.dim();
  Point gz(n), row(n), grad(n), trial(n);
  double eta = -1.0;
  for (int step = 0; step < steps; ++step) {
    map.eval(start.z, gz);
    std::fill(grad.begin(), grad.end(), Complex{});
    for (std::size_t s = 0; s < n; ++s) {
      map.compiled_jacobian()[s].eval(start.z, row);
      for (std::size_t k = 0; k < n; ++k) grad[k] += std::conj(row[k]) * gz[s];
    }
    Complex inner{};
    for (std::size_t k = 0; k < n; ++k) inner += std::conj(start.z[k]) * grad[k];
    const double radial = inner.real() / (radius * radius);
    for (std::size_t k = 0; k < n; ++k) grad[k] -= radial * start.z[k];
    const double gnorm = norm_of(grad);
    if (gnorm == 0.0) break;
    if (eta < 0.0) eta = 0.1 * radius / gnorm;
    for (std::size_t k = 0; k < n; ++k) trial[k] = start.z[k] + eta * grad[k];
    const double scale = radius / norm_of(trial);
    for (auto& v : trial) v *= scale;
    const double value = modulus_sq_at(map, trial, gz);
    if (value > start.value) {
      start.value = value;
      start.z = trial;
      eta *= 1.5;
    } else {
      eta *= 0.5;
    }
  }
  return start;
}

}  // namespace

ContractionCertificate contraction_sup(const NormalFormMap& map, double radius,
                                       const SphereSamplerConfig& cfg) {
  if (!(radius > 0.0)) throw std::invalid_argument("contraction_sup: radius must be positive");
  const std::size_t n = map.dim();
  const std::size_t chunk = std::max<std::size_t>(1, cfg.chunk_size);
  const std::size_t nchunks = (cfg.samples + chunk - 1) / chunk;
  const std::size_t keep = std::max<std::size_t>(1, cfg.refine_starts);

  std::vector<std::vector<Candidate>> best(nchunks);
  parallel_chunks(nchunks, cfg.threads, [&](std::size_t k) {
    CounterRng rng(derive_seed(cfg.seed, 0x5a4eULL, k));
    Point buf(n);
    auto& top = best[k];
    const std::size_t end = std::min(cfg.samples, (k + 1) * chunk);
    for (std::size_t i = k * chunk; i < end; ++i) {
      Point z = gaussian_sphere_point(rng, n, radius);
      const double value = modulus_sq_at(map, z, buf);
      top.push_back({value, std::move(z)});
      std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
      if (top.size() > keep) top.pop_back();
    }
  });

  std::vector<Candidate> pool;
  for (auto& chunk_best : best)
    for (auto& c : chunk_best) pool.push_back(std::move(c));
  std::stable_sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
  if (pool.size() > keep) pool.resize(keep);

  ContractionCertificate cert;
  cert.radius = radius;
  cert.samples = cfg.samples;
  if (pool.empty()) return cert;
  Candidate champion = pool.front();
  if (cfg.refine_steps > 0) {
    cert.refined = true;
    for (const auto& start : pool) {
      Candidate c = refine(map, start, radius, cfg.refine_steps);
      if (c.value > champion.value) champion = std::move(c);
    }
  }
  cert.sup_estimate = std::sqrt(champion.value);
  cert.argmax = std::move(champion.z);
  return cert;
}

AutotuneResult autotune_t(const NormalFormMap& map, double c, double R, const AutotuneConfig& cfg) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("autotune_t: c must lie in (0,1)");
  if (!(R > 1.0)) throw std::invalid_argument("autotune_t: R must exceed 1");
  const double threshold = c * (1.0 - cfg.margin);
  for (int k = 0; k <= cfg.max_log2; ++k) {
    const double t = std::ldexp(1.0, k);
    auto cert = contraction_sup(conjugate_dt(map, t), R, cfg.sampler);
    if (cert.sup_estimate < threshold) return {t, k, std::move(cert)};
    // Conjugation leaves a diagonal map unchanged.
    if (map.is_diagonal()) break;
  }
  throw std::runtime_error("no admissible t in search range");
}

}  // namespace hopf
