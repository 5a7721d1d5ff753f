#include <doctest.h>

#include <random>

#include "hopf/polynomial.hpp"
#include "hopf/sampling.hpp"

using namespace hopf;

namespace {

Point random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point z(n);
  for (auto& c : z) c = {u(rng), u(rng)};
  return z;
}

Polynomial sample_poly() {
  // 2 z1 z2 - (0,1) z2^3 + 0.5
  Polynomial p(2);
  p.add_term({1, 1}, {2.0, 0.0});
  p.add_term({0, 3}, {0.0, -1.0});
  p.add_term({0, 0}, {0.5, 0.0});
  return p;
}

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("graded-lex order puts lower degree first and z1 before z2") {
  GradedLexLess less;
  CHECK(less({0, 1}, {2, 0}));
  CHECK(less({1, 0}, {0, 1}));
  CHECK(less({2, 0}, {1, 1}));
  CHECK_FALSE(less({1, 1}, {1, 1}));
  const auto all = multi_indices_up_to(2, 2);
  REQUIRE(all.size() == 6);
  CHECK(all[0] == MultiIndex{0, 0});
  CHECK(all[1] == MultiIndex{1, 0});
  CHECK(all[5] == MultiIndex{0, 2});
}

TEST_CASE("multi-index count matches binomial(n + d, d)") {
  CHECK(multi_indices_up_to(3, 4).size() == 35);
  CHECK(multi_indices_up_to(4, 3).size() == 35);
  CHECK(multi_indices_up_to(2, 0).size() == 1);
}

TEST_CASE("arithmetic agrees with pointwise evaluation") {
  std::mt19937_64 rng(7);
  const Polynomial p = sample_poly();
  Polynomial q = Polynomial::variable(2, 0) + Complex(0.0, 2.0) * Polynomial::variable(2, 1).pow(2);
  for (int k = 0; k < 20; ++k) {
    const Point z = random_point(rng, 2);
    const Complex pz = p.eval(z), qz = q.eval(z);
    CHECK(std::abs((p + q).eval(z) - (pz + qz)) < 1e-13);
    CHECK(std::abs((p - q).eval(z) - (pz - qz)) < 1e-13);
    CHECK(std::abs((p * q).eval(z) - pz * qz) < 1e-12);
    CHECK(std::abs(p.pow(3).eval(z) - pz * pz * pz) < 1e-11);
  }
}

TEST_CASE("cancellation removes the monomial") {
  Polynomial p = sample_poly();
  p -= sample_poly();
  CHECK(p.is_zero());
  CHECK(p.degree() == -1);
}

TEST_CASE("derivative by central differences") {
  std::mt19937_64 rng(11);
  const Polynomial p = sample_poly();
  const double h = 1e-6;
  for (int k = 0; k < 10; ++k) {
    const Point z = random_point(rng, 2);
    for (std::size_t v = 0; v < 2; ++v) {
      Point zp = z, zm = z;
      zp[v] += h;
      zm[v] -= h;
      const Complex fd = (p.eval(zp) - p.eval(zm)) / (2.0 * h);
      CHECK(std::abs(p.derivative(v).eval(z) - fd) < 1e-7);
    }
  }
}

TEST_CASE("composition evaluates as the nested function") {
  std::mt19937_64 rng(3);
  const Polynomial p = sample_poly();
  const PolyMap inner{Polynomial::variable(2, 0) * Polynomial::variable(2, 1),
                      Polynomial::variable(2, 1) + Polynomial::constant(2, {1.0, 0.0})};
  const Polynomial composed = p.compose(inner);
  for (int k = 0; k < 10; ++k) {
    const Point z = random_point(rng, 2);
    const Point w{inner[0].eval(z), inner[1].eval(z)};
    CHECK(std::abs(composed.eval(z) - p.eval(w)) < 1e-12);
  }
}

TEST_CASE("compiled evaluator matches the symbolic one") {
  std::mt19937_64 rng(5);
  const PolyMap map{sample_poly(), sample_poly() * Polynomial::variable(2, 0)};
  const CompiledPolyMap compiled(map);
  CHECK(compiled.nvars() == 2);
  CHECK(compiled.ncomponents() == 2);
  for (int k = 0; k < 20; ++k) {
    const Point z = random_point(rng, 2);
    const Point out = compiled.eval(z);
    CHECK(std::abs(out[0] - map[0].eval(z)) < 1e-13);
    CHECK(std::abs(out[1] - map[1].eval(z)) < 1e-13);
  }
}

TEST_CASE("triangular inversion composes to the identity, exactly") {
  // gamma = (z1/4 + z2^2, z2/2)
  const std::vector<GaussianRational> diag{GaussianRational(Rational(1, 4)), GaussianRational(Rational(1, 2))};
  PolyMapT<GaussianRational> higher(2, ExactPolynomial(2));
  higher[0].add_term({0, 2}, GaussianRational(1));
  const auto inv = invert_triangular(diag, higher, 1e12);

  PolyMapT<GaussianRational> gamma = higher;
  for (std::size_t j = 0; j < 2; ++j) gamma[j] += diag[j] * ExactPolynomial::variable(2, j);
  CHECK(compose_maps(gamma, inv) == identity_map<GaussianRational>(2));
  CHECK(compose_maps(inv, gamma) == identity_map<GaussianRational>(2));
  // gamma^{-1}(w) = (4 w1 - 16 w2^2, 2 w2)
  CHECK(inv[0].coeff({1, 0}) == GaussianRational(4));
  CHECK(inv[0].coeff({0, 2}) == GaussianRational(-16));
  CHECK(inv[1].coeff({0, 1}) == GaussianRational(2));
}

TEST_CASE("inversion reports coefficient blow-up") {
  const std::vector<Complex> diag{{1e-7, 0.0}, {0.5, 0.0}};
  PolyMap higher(2, Polynomial(2));
  higher[0].add_term({0, 2}, {1.0, 0.0});
  CHECK_THROWS_AS(invert_triangular(diag, higher, 1e6), std::overflow_error);
}

TEST_CASE("jacobian-vector product matches finite differences") {
  std::mt19937_64 rng(13);
  const PolyMap map{sample_poly(), Polynomial::variable(2, 0).pow(2)};
  const PolyMap field{Polynomial::variable(2, 1), Polynomial::constant(2, {0.0, 1.0})};
  const PolyMap jv = jacobian_vector_product(map, field);
  const double h = 1e-6;
  for (int k = 0; k < 5; ++k) {
    const Point z = random_point(rng, 2);
    const Point v{field[0].eval(z), field[1].eval(z)};
    Point zp = z, zm = z;
    for (std::size_t i = 0; i < 2; ++i) {
      zp[i] += h * v[i];
      zm[i] -= h * v[i];
    }
    for (std::size_t s = 0; s < 2; ++s) {
      const Complex fd = (map[s].eval(zp) - map[s].eval(zm)) / (2.0 * h);
      CHECK(std::abs(jv[s].eval(z) - fd) < 1e-6);
    }
  }
}

TEST_CASE("gaussian rationals") {
  const GaussianRational a(Rational(1, 3), Rational(2)), b(Rational(-1, 2), Rational(1, 5));
  CHECK((a / b) * b == a);
  CHECK(a - a == GaussianRational());
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(a / GaussianRational(), std::domain_error);
}

TEST_CASE("counter rng and halton") {
  CounterRng a(derive_seed(1, 2, 3)), b(derive_seed(1, 2, 3)), c(derive_seed(1, 2, 4));
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  CHECK(radical_inverse(1, 2) == 0.5);
  CHECK(radical_inverse(3, 2) == 0.75);
  CHECK(radical_inverse(1, 3) == doctest::Approx(1.0 / 3.0));
  CHECK(nth_prime(0) == 2);
  CHECK(nth_prime(5) == 13);
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i + 1);
  CHECK(pairwise_sum<double>(v) == 500500.0);
}

}  // TEST_SUITE
