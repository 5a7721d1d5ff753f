#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hopf/fields.hpp"
#include "hopf/futaki.hpp"
#include "oracles.hpp"

using namespace hopf;

namespace {

NormalFormMap diagonal_half() { return NormalFormMap(Eigenvalues({{0.5, 0.0}, {0.5, 0.0}})); }

NormalFormMap surface_t2() {
  return NormalFormMap(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{0, {0, 2}, {0.125, 0.0}}});
}

IntegrationConfig small(std::size_t samples, SamplingMethod method, std::uint64_t seed = 1) {
  IntegrationConfig cfg;
  cfg.samples = samples;
  cfg.method = method;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("futaki") {

TEST_CASE("shell volume and sampling plan") {
  CHECK(shell_volume(2, 0.8) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2 * (1 - std::pow(0.8, 4))));
  CHECK(oracle::radial_moment(2, 0.8, 0) == doctest::Approx(shell_volume(2, 0.8)).epsilon(1e-14));
  CHECK(oracle::radial_moment(3, 0.5, 0) == doctest::Approx(shell_volume(3, 0.5)).epsilon(1e-14));
  const auto plan = make_plan(small(1'000'000, SamplingMethod::qmc));
  CHECK(plan.replicates == 16);
  CHECK(plan.per_replicate == 62500);
  CHECK(make_plan(small(1000, SamplingMethod::mc)).replicates == 8);
}

TEST_CASE("samples lie in the shell") {
  for (auto method : {SamplingMethod::mc, SamplingMethod::qmc}) {
    for (const auto& z : sample_shell(3, 0.8, 4000, 2, method)) {
      double r = 0.0;
      for (const auto& c : z) r += std::norm(c);
      CHECK(std::sqrt(r) >= 0.8 - 1e-12);
      CHECK(std::sqrt(r) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("constants integrate to the shell volume") {
  const auto est = integrate_over_shell(2, 0.8, [](std::span<const Complex>) { return Complex(1.0, 0.0); },
                                        small(4096, SamplingMethod::qmc));
  CHECK(est.value.real() == doctest::Approx(shell_volume(2, 0.8)).epsilon(1e-13));
  CHECK(est.standard_error < 1e-12);
}

TEST_CASE("moments within three standard errors") {
  for (std::size_t n : {2u, 3u}) {
    for (auto method : {SamplingMethod::mc, SamplingMethod::qmc}) {
      // |z_1|^2 has mean |z|^2 / n by symmetry
      const auto est = integrate_over_shell(n, 0.8, [](std::span<const Complex> z) { return Complex(std::norm(z[0]), 0.0); },
                                            small(1 << 16, method, 9));
      const double exact = oracle::radial_moment(n, 0.8, 1) / static_cast<double>(n);
      CHECK(std::abs(est.value.real() - exact) <= 3.0 * est.standard_error);
      CHECK(est.standard_error < 1e-2 * exact);
    }
  }
}

TEST_CASE("monte carlo standard error is calibrated") {
  const double exact = oracle::radial_moment(2, 0.8, 2);
  double sum_sq = 0.0;
  const int seeds = 30;
  for (int s = 0; s < seeds; ++s) {
    const auto est = integrate_over_shell(2, 0.8, [](std::span<const Complex> z) {
      const double r = std::norm(z[0]) + std::norm(z[1]);
      return Complex(r * r, 0.0);
    }, small(2000, SamplingMethod::mc, 100 + s));
    const double zscore = (est.value.real() - exact) / est.standard_error;
    sum_sq += zscore * zscore;
  }
  const double spread = std::sqrt(sum_sq / seeds);
  CHECK(spread >= 0.5);
  CHECK(spread <= 2.0);
}

TEST_CASE("vanishing verdict") {
  IntegralEstimate e;
  e.value = {1e-3, 0.0};
  e.standard_error = 1e-3;
  e.scale = 10.0;
  CHECK(is_vanishing(e));
  e.value = {4e-3, 0.0};
  CHECK_FALSE(is_vanishing(e));
  e.value = {1e-3, 0.0};
  e.scale = 0.5;
  CHECK_FALSE(is_vanishing(e));
}

TEST_CASE("integrand is linear in the field") {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(surface_t2()));
  const auto v = PolyVectorField::monomial(2, 0, {1, 0});
  const auto w = PolyVectorField::monomial(2, 0, {0, 2});
  const Complex a{2.0, -1.0}, b{0.5, 3.0};
  const auto cfg = small(2048, SamplingMethod::qmc);
  const auto fv = futaki_invariant(vol, v, cfg), fw = futaki_invariant(vol, w, cfg);
  const auto fc = futaki_invariant(vol, a * v + b * w, cfg);
  CHECK(std::abs(fc.value - (a * fv.value + b * fw.value)) <= 1e-10 * (fv.scale + fw.scale) * 4.0);
}

TEST_CASE("estimates do not depend on the thread count") {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(surface_t2()));
  const auto v = PolyVectorField::monomial(2, 0, {0, 2});
  auto cfg = small(8192, SamplingMethod::mc);
  cfg.threads = 1;
  const auto a = futaki_invariant(vol, v, cfg);
  cfg.threads = 3;
  const auto b = futaki_invariant(vol, v, cfg);
  CHECK(a.value == b.value);
  CHECK(a.standard_error == b.standard_error);
  CHECK(a.scale == b.scale);
}

TEST_CASE("diagonal fields: integral consistent with zero") {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(diagonal_half()));
  for (const auto& v : gmu_basis(vol.shell().gamma().eigenvalues())) {
    const auto est = futaki_invariant(vol, v, small(1 << 15, SamplingMethod::qmc));
    CHECK(est.warnings.empty());
    CHECK(std::abs(est.value) <= 4.0 * est.standard_error);
    CHECK(est.convention_constant == 4.0);
  }
}

TEST_CASE("non-invariant field is integrated with a warning") {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(surface_t2()));
  const auto est = futaki_invariant(vol, PolyVectorField::monomial(2, 1, {1, 0}), small(1024, SamplingMethod::qmc));
  CHECK(est.warnings.size() == 1);
}

TEST_CASE("the proof reduction: gamma and its diagonal part give the same integrand on the shell") {
  const auto cmp = diagonal_comparison(surface_t2(), PolyVectorField::monomial(2, 0, {0, 2}), small(0, SamplingMethod::qmc),
                                       0.8, 1.05, 2000);
  CHECK(cmp.points == 2000);
  CHECK(cmp.max_integrand > 0.0);
  CHECK(cmp.max_pointwise_difference <= 1e-10);
}

TEST_CASE("independence check shape") {
  IndependenceVariants variants;
  const auto out = volume_independence_check(diagonal_half(), PolyVectorField::monomial(2, 0, {1, 0}), variants,
                                             small(4096, SamplingMethod::qmc));
  REQUIRE(out.size() == 3);
  CHECK(out[0].estimate.value != out[1].estimate.value);
  CHECK(out[0].estimate.value != out[2].estimate.value);
}

}  // TEST_SUITE
