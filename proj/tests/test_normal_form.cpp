#include <doctest.h>

#include <cmath>
#include <random>

#include "hopf/normal_form.hpp"
#include "hopf/sampling.hpp"
#include "oracles.hpp"

using namespace hopf;

namespace {

NormalFormMap surface(double coeff = 1.0) {
  return NormalFormMap(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{0, {0, 2}, {coeff, 0.0}}});
}

NormalFormMap threefold() {
  return NormalFormMap(Eigenvalues({{0.125, 0.0}, {0.25, 0.0}, {0.5, 0.0}}),
                       {{0, {0, 1, 1}, {1.0, 0.0}}, {0, {0, 0, 3}, {0.5, 0.0}}, {1, {0, 0, 2}, {1.0, 0.0}}});
}

}  // namespace

TEST_SUITE("normal_form") {

TEST_CASE("eigenvalue validation") {
  CHECK_THROWS_WITH_AS(Eigenvalues({{0.5, 0.0}, {1.0, 0.0}}), doctest::Contains("eigenvalue modulus not in (0,1)"),
                       std::invalid_argument);
  CHECK_THROWS_AS(Eigenvalues({{0.5, 0.0}, {0.25, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Eigenvalues(std::vector<Complex>{{0.5, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Eigenvalues({{0.0, 0.0}, {0.5, 0.0}}), std::invalid_argument);
  CHECK_NOTHROW(Eigenvalues({{0.5, 0.0}, {0.0, 0.5}}));
}

TEST_CASE("construction merges duplicates and drops zeros") {
  const NormalFormMap m(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}),
                        {{0, {0, 2}, {0.5, 0.0}}, {0, {0, 2}, {0.5, 0.0}}, {0, {0, 2}, {0.0, 0.0}}});
  REQUIRE(m.terms().size() == 1);
  CHECK(m.terms()[0].coeff == Complex(1.0, 0.0));
  const NormalFormMap z(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{0, {0, 2}, {1.0, 0.0}}, {0, {0, 2}, {-1.0, 0.0}}});
  CHECK(z.is_diagonal());
  CHECK_THROWS_AS(NormalFormMap(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{2, {0, 2}, {1.0, 0.0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(NormalFormMap(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{0, {0, 2, 1}, {1.0, 0.0}}}),
                  std::invalid_argument);
}

TEST_CASE("validation flags triangularity and resonance") {
  CHECK(validate_normal_form(surface()).ok());
  CHECK(validate_normal_form(threefold()).ok());

  const NormalFormMap bad_res(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{0, {0, 3}, {1.0, 0.0}}});
  const auto r1 = validate_normal_form(bad_res);
  REQUIRE(r1.violations.size() == 1);
  CHECK(r1.violations[0].rule == "non-resonant");

  // z1^2 in component 2 is not a function of later variables
  const NormalFormMap bad_tri(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}), {{1, {1, 0}, {1.0, 0.0}}});
  const auto r2 = validate_normal_form(bad_tri);
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.violations[0].rule == "triangularity");
}

TEST_CASE("evaluation") {
  const auto g = surface();
  const Point z{{0.3, 0.1}, {-0.2, 0.4}};
  const Point w = eval_map(g, z);
  CHECK(std::abs(w[0] - (0.25 * z[0] + z[1] * z[1])) < 1e-15);
  CHECK(std::abs(w[1] - 0.5 * z[1]) < 1e-15);
}

TEST_CASE("inverse round-trips on random points") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& g : {surface(), threefold()}) {
    const CompiledPolyMap inv(invert_map(g));
    for (int k = 0; k < 200; ++k) {
      Point z(g.dim());
      for (auto& c : z) c = {u(rng), u(rng)};
      const Point back = inv.eval(g.eval(z));
      for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(back[i] - z[i]) < 1e-12);
    }
  }
}

TEST_CASE("conjugation exponent law, exact") {
  const auto g3 = threefold();
  // 1 - (2 + 3) = -4, 1 - 9 = -8, 2 - 6 = -4
  CHECK(conjugation_exponent(g3.terms()[0]) == -4);
  CHECK(conjugation_exponent({0, {0, 2}, {1.0, 0.0}}) == -3);

  for (const auto& g : {surface(), threefold()}) {
    for (const Rational t : {Rational(10), Rational(3, 2), Rational(1, 7)}) {
      const auto exact = oracle::conjugated_exactly(g, t);
      for (const auto& term : g.terms()) {
        const int e = conjugation_exponent(term);
        Rational factor = 1;
        for (int k = 0; k < std::abs(e); ++k) factor *= t;
        if (e < 0) factor = 1 / factor;
        CHECK(exact[term.target].coeff(term.exponents) == GaussianRational(Rational(term.coeff.real()) * factor));
      }
      // linear part untouched
      for (std::size_t j = 0; j < g.dim(); ++j) {
        MultiIndex m(g.dim(), 0);
        m[j] = 1;
        CHECK(exact[j].coeff(m) == GaussianRational(Rational(g.eigenvalues()[j].real())));
      }
    }
  }
}

TEST_CASE("conjugate_dt with t = 10 scales z2^2 e1 by 10^-3") {
  const auto c = conjugate_dt(surface(), 10.0);
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].coeff.real() == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK_THROWS_AS(conjugate_dt(surface(), 0.0), std::invalid_argument);
}

TEST_CASE("contraction sup: diagonal exact value and lower-bound property") {
  const NormalFormMap diag(Eigenvalues({{0.25, 0.0}, {0.5, 0.0}}));
  const auto cert = contraction_sup(diag, 1.0);
  CHECK(cert.sup_estimate <= 0.5 + 1e-12);
  CHECK(cert.sup_estimate > 0.5 - 1e-6);

  // every sample is a lower bound; the estimate is the max over them
  const auto g = surface();
  const auto est = contraction_sup(g, 1.0);
  CounterRng rng(99);
  for (int k = 0; k < 2000; ++k) {
    const Point z = gaussian_sphere_point(rng, 2, 1.0);
    const Point w = g.eval(z);
    CHECK(std::sqrt(std::norm(w[0]) + std::norm(w[1])) <= est.sup_estimate + 1e-9);
  }
  CHECK(est.sup_estimate >= 1.0);
}

TEST_CASE("contraction sup is deterministic and thread-count independent") {
  SphereSamplerConfig one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = contraction_sup(threefold(), 1.05, one);
  const auto b = contraction_sup(threefold(), 1.05, four);
  CHECK(a.sup_estimate == b.sup_estimate);
  CHECK(a.argmax == b.argmax);
}

TEST_CASE("autotune: diagonal returns 1, coefficient 10 returns a certified t") {
  const auto d = autotune_t(NormalFormMap(Eigenvalues({{0.5, 0.0}, {0.5, 0.0}})), 0.8, 1.05);
  CHECK(d.t == 1.0);

  const auto r = autotune_t(surface(10.0), 0.8, 1.05);
  CHECK(std::isfinite(r.t));
  CHECK(r.t > 1.0);
  CHECK(r.certificate.sup_estimate < 0.8 * 0.95);
  const auto again = contraction_sup(conjugate_dt(surface(10.0), r.t), 1.05);
  CHECK(again.sup_estimate < 0.8);
  // the previous grid point is not admissible
  const auto prev = contraction_sup(conjugate_dt(surface(10.0), r.t / 2), 1.05);
  CHECK(prev.sup_estimate >= 0.8 * 0.95);
}

TEST_CASE("autotune fails when the search range is too short") {
  AutotuneConfig cfg;
  cfg.max_log2 = 0;
  CHECK_THROWS_WITH_AS(autotune_t(surface(10.0), 0.8, 1.05, cfg), "no admissible t in search range",
                       std::runtime_error);
}

}  // TEST_SUITE
