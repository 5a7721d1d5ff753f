#include <doctest.h>

#include <cmath>

#include "hopf/sampling.hpp"
#include "hopf/volume.hpp"

using namespace hopf;

namespace {

NormalFormMap diagonal_half() { return NormalFormMap(Eigenvalues({{0.5, 0.0}, {0.5, 0.0}})); }

// The resonant surface after conjugation by t = 2: coefficient 2^-3.
NormalFormMap surface_t2() {
  return NormalFormMap(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{0, {0, 2}, {0.125, 0.0}}});
}

NormalFormMap threefold_tuned() {
  const NormalFormMap g(Eigenvalues({{0.125, 0.0}, {0.25, 0.0}, {0.5, 0.0}}),
                        {{0, {0, 1, 1}, {1.0, 0.0}}, {0, {0, 0, 3}, {0.5, 0.0}}, {1, {0, 0, 2}, {1.0, 0.0}}});
  return conjugate_dt(g, autotune_t(g, 0.8, 1.05).t);
}

}  // namespace

TEST_SUITE("volume") {

TEST_CASE("bump function") {
  CHECK(bump_g(-0.5) == 0.0);
  CHECK(bump_g(0.0) == 0.0);
  CHECK(bump_g(1.0) == 1.0);
  CHECK(bump_g(3.0) == 1.0);
  CHECK(bump_g(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  double prev = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double t = i / 1000.0;
    CHECK(bump_g(t) + bump_g(1.0 - t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bump_g(t) >= prev);
    prev = bump_g(t);
  }
}

TEST_CASE("bump derivatives match finite differences") {
  const double h = 1e-5;
  for (double t : {0.05, 0.2, 0.5, 0.7, 0.93}) {
    const double d1 = (bump_g(t + h) - bump_g(t - h)) / (2 * h);
    const double d2 = (bump_g_prime(t + h) - bump_g_prime(t - h)) / (2 * h);
    CHECK(bump_g_prime(t) == doctest::Approx(d1).epsilon(1e-7));
    CHECK(bump_g_second(t) == doctest::Approx(d2).epsilon(1e-6));
  }
  CHECK(bump_g_prime(0.0) == 0.0);
  CHECK(bump_g_second(1.0) == 0.0);
}

TEST_CASE("cut-off profile") {
  const auto p = CutoffProfile::make(0.8, Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}));
  CHECK(p.mu_det_sq == doctest::Approx(1.0 / 64.0));
  CHECK((p.v - 1.0) / p.v == doctest::Approx(p.mu_det_sq).epsilon(1e-15));
  CHECK(p.psi_of_r(0.5) == p.v);
  CHECK(p.psi_of_r(0.64) == p.v);
  CHECK(p.psi_of_r(1.0) == doctest::Approx(p.v - 1.0).epsilon(1e-15));
  CHECK(p.psi_of_r(1.2) == doctest::Approx(p.v - 1.0).epsilon(1e-15));
  const double h = 1e-6;
  for (double r : {0.66, 0.8, 0.95}) {
    CHECK(p.psi_prime(r) == doctest::Approx((p.psi_of_r(r + h) - p.psi_of_r(r - h)) / (2 * h)).epsilon(1e-6));
    CHECK(p.psi_second(r) == doctest::Approx((p.psi_prime(r + h) - p.psi_prime(r - h)) / (2 * h)).epsilon(1e-5));
  }
  CHECK_THROWS_AS(CutoffProfile::make(1.0, Eigenvalues({{0.25, 0.0}, {0.5, 0.0}})), std::invalid_argument);
}

TEST_CASE("shell certification") {
  CHECK_NOTHROW(ShellSpec::certify(diagonal_half()));
  CHECK_NOTHROW(ShellSpec::certify(surface_t2()));
  const NormalFormMap raw(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{0, {0, 2}, {1.0, 0.0}}});
  CHECK_THROWS_AS(ShellSpec::certify(raw), std::runtime_error);
}

TEST_CASE("domain membership") {
  const auto shell = ShellSpec::certify(diagonal_half());
  CHECK(domain_membership(shell, Point{{1.0, 0.0}, {0.0, 0.0}}) == DomainMembership::inside);
  CHECK(domain_membership(shell, Point{{0.3, 0.0}, {0.0, 0.0}}) == DomainMembership::outside_within);
  CHECK(domain_membership(shell, Point{{1.1, 0.0}, {0.0, 0.0}}) == DomainMembership::outside_beyond);
  // the shell lies inside D
  const auto tuned = ShellSpec::certify(surface_t2());
  CounterRng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double r = 0.8 + 0.2 * rng.uniform();
    const Point z = gaussian_sphere_point(rng, 2, r);
    CHECK(domain_membership(tuned, z) == DomainMembership::inside);
  }
}

TEST_CASE("orbit reduction") {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(surface_t2()));
  const Point z{{0.6, 0.2}, {0.3, -0.5}};
  const auto base = vol.eval(z);
  CHECK(base.orbit_index == 0);
  CHECK(base.value == psi(z, vol.profile()));
  Point w = z;
  for (int k = 1; k <= 5; ++k) {
    w = vol.shell().gamma().eval(w);
    const auto v = vol.eval(w);
    CHECK(v.orbit_index == k);
    CHECK(v.value == doctest::Approx(base.value * std::pow(vol.profile().mu_det_sq, -k)).epsilon(1e-12));
  }
  const auto far = vol.eval(Point{{30.0, 0.0}, {0.0, 40.0}});
  CHECK(far.orbit_index < 0);
  CHECK_THROWS_AS(vol.eval(Point{{0.0, 0.0}, {0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("equivariance residual on every shipped manifold") {
  for (const auto& g : {diagonal_half(), surface_t2(), threefold_tuned()}) {
    const auto vol = EquivariantVolume::build(ShellSpec::certify(g));
    CHECK(equivariance_residual(vol, 10000, 17) <= 1e-12);
  }
}

TEST_CASE("f is continuous across the sphere |z| = R only for the right v") {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(surface_t2()));
  const auto wrong = vol.with_v(vol.profile().v * 1.1);
  const double R = vol.shell().R();
  CounterRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Point dir = gaussian_sphere_point(rng, 2, 1.0);
    Point in(2), out(2);
    for (std::size_t k = 0; k < 2; ++k) {
      in[k] = dir[k] * (R * (1.0 - 1e-9));
      out[k] = dir[k] * (R * (1.0 + 1e-9));
    }
    CHECK(vol.eval(in).orbit_index == 0);
    CHECK(vol.eval(out).orbit_index == -1);
    CHECK(vol.density(out) == doctest::Approx(vol.density(in)).epsilon(1e-12));
    CHECK(std::abs(wrong.density(out) / wrong.density(in) - 1.0) > 1e-3);
  }
}

TEST_CASE("non-radial perturbation") {
  const auto vol = EquivariantVolume::build(ShellSpec::certify(surface_t2()));
  const Point center{{0.9 / std::sqrt(2.0), 0.0}, {0.0, 0.9 / std::sqrt(2.0)}};
  const auto pert = equivariant_perturbation(vol, 0.1, center, 0.08);
  CHECK(equivariance_residual(pert, 5000, 9) <= 1e-12);

  // same radius, different direction: different density
  const Point along{{0.9 / std::sqrt(2.0), 0.0}, {0.0, 0.9 / std::sqrt(2.0)}};
  const Point against{{-0.9 / std::sqrt(2.0), 0.0}, {0.0, -0.9 / std::sqrt(2.0)}};
  CHECK(pert.density(along) > vol.density(along));
  CHECK(pert.density(against) < vol.density(against));
  // outside the support nothing changes
  const Point inner{{0.81, 0.0}, {0.0, 0.0}};
  CHECK(pert.density(inner) == vol.density(inner));

  CHECK_THROWS_AS(equivariant_perturbation(vol, 0.1, center, 0.2), std::invalid_argument);
  CHECK_THROWS_WITH_AS(equivariant_perturbation(vol, 2.5, center, 0.08), "perturbation not positive",
                       std::domain_error);
}

}  // TEST_SUITE
