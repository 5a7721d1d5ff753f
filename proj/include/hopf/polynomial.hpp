#pragma once

// Sparse multivariate polynomials over a coefficient field, polynomial maps
// C^n -> C^n, and a flattened evaluator for the hot numerical paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopf/exact.hpp"

namespace hopf {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;
using Point = std::vector<Complex>;

int total_degree(const MultiIndex& m);

/// Lower total degree first; within a degree, lexicographically larger first
/// (so z1 precedes z2 precedes z3).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Every multi-index in `nvars` variables with total degree <= max_degree,
/// in graded-lex order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t nvars, int max_degree);

/// Human-readable monomial, e.g. "z2^2" or "1" (1-based variable names).
std::string monomial_string(const MultiIndex& m);

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Complex> {
  static constexpr double kDropTolerance = 1e-14;
  static bool negligible(const Complex& c) { return std::abs(c) <= kDropTolerance; }
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static double magnitude(const Complex& c) { return std::abs(c); }
};

template <>
struct CoeffTraits<GaussianRational> {
  static bool negligible(const GaussianRational& c) { return c.is_zero(); }
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {1}; }
  static double magnitude(const GaussianRational& c) { return std::abs(c.to_complex()); }
};

template <class C>
class PolynomialT {
 public:
  using Coeff = C;
  using Traits = CoeffTraits<C>;
  using TermMap = std::map<MultiIndex, C, GradedLexLess>;

  PolynomialT() = default;
  explicit PolynomialT(std::size_t nvars) : nvars_(nvars) {}

  static PolynomialT constant(std::size_t nvars, const C& c) {
    PolynomialT p(nvars);
    p.add_term(MultiIndex(nvars, 0), c);
    return p;
  }
  static PolynomialT variable(std::size_t nvars, std::size_t index) {
    MultiIndex m(nvars, 0);
    m.at(index) = 1;
    return monomial(nvars, m, Traits::one());
  }
  static PolynomialT monomial(std::size_t nvars, const MultiIndex& m, const C& c) {
    PolynomialT p(nvars);
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  C coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  double max_coeff_magnitude() const {
    double best = 0.0;
    for (const auto& [m, c] : terms_) best = std::max(best, Traits::magnitude(c));
    return best;
  }

  /// Adds c*z^m, dropping the monomial if the accumulated coefficient is negligible.
  void add_term(const MultiIndex& m, const C& c) {
    accumulate(m, c);
    auto it = terms_.find(m);
    if (it != terms_.end() && Traits::negligible(it->second)) terms_.erase(it);
  }

  PolynomialT& operator+=(const PolynomialT& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  PolynomialT& operator-=(const PolynomialT& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, Traits::zero() - c);
    return *this;
  }
  PolynomialT& operator*=(const C& s) {
    for (auto& [m, c] : terms_) c = c * s;
    prune();
    return *this;
  }

  friend PolynomialT operator+(PolynomialT a, const PolynomialT& b) { return a += b; }
  friend PolynomialT operator-(PolynomialT a, const PolynomialT& b) { return a -= b; }
  friend PolynomialT operator*(PolynomialT a, const C& s) { return a *= s; }
  friend PolynomialT operator*(const C& s, PolynomialT a) { return a *= s; }

  friend PolynomialT operator*(const PolynomialT& a, const PolynomialT& b) {
    a.check_same_vars(b);
    PolynomialT out(a.nvars_);
    MultiIndex m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        out.accumulate(m, ca * cb);
      }
    }
    out.prune();
    return out;
  }

  friend bool operator==(const PolynomialT& a, const PolynomialT& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  PolynomialT pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative polynomial power");
    PolynomialT result = constant(nvars_, Traits::one());
    PolynomialT base = *this;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  PolynomialT derivative(std::size_t var) const {
    PolynomialT out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.at(var) == 0) continue;
      MultiIndex dm = m;
      dm[var] -= 1;
      out.add_term(dm, c * C(m[var]));
    }
    return out;
  }

  /// Substitutes variable i by subs[i]; every substitute must share one variable count.
  PolynomialT compose(const std::vector<PolynomialT>& subs) const {
    if (subs.size() != nvars_) throw std::invalid_argument("compose: substitution arity mismatch");
    const std::size_t out_vars = subs.empty() ? 0 : subs.front().nvars();
    std::vector<std::vector<PolynomialT>> powers(nvars_);
    auto power_of = [&](std::size_t i, int k) -> const PolynomialT& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(out_vars, Traits::one()));
      while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * subs[i]);
      return cache[k];
    };
    PolynomialT out(out_vars);
    for (const auto& [m, c] : terms_) {
      PolynomialT term = constant(out_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (m[i] > 0) term = term * power_of(i, m[i]);
      }
      for (const auto& [tm, tc] : term.terms_) out.accumulate(tm, tc);
    }
    out.prune();
    return out;
  }

  C eval(std::span<const C> z) const {
    if (z.size() != nvars_) throw std::invalid_argument("eval: point dimension mismatch");
    C acc = Traits::zero();
    for (const auto& [m, c] : terms_) {
      C t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int k = 0; k < m[i]; ++k) t = t * z[i];
      acc = acc + t;
    }
    return acc;
  }

  /// Drops negligible coefficients.
  void prune() {
    std::erase_if(terms_, [](const auto& kv) { return Traits::negligible(kv.second); });
  }

 private:
  void accumulate(const MultiIndex& m, const C& c) {
    if (m.size() != nvars_) throw std::invalid_argument("monomial arity mismatch");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second = it->second + c;
  }
  void check_same_vars(const PolynomialT& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

using Polynomial = PolynomialT<Complex>;
using ExactPolynomial = PolynomialT<GaussianRational>;

/// A polynomial map C^n -> C^m as its component polynomials.
template <class C>
using PolyMapT = std::vector<PolynomialT<C>>;
using PolyMap = PolyMapT<Complex>;

template <class C>
PolyMapT<C> compose_maps(const PolyMapT<C>& outer, const PolyMapT<C>& inner) {
  PolyMapT<C> out;
  out.reserve(outer.size());
  for (const auto& p : outer) out.push_back(p.compose(inner));
  return out;
}

template <class C>
PolyMapT<C> identity_map(std::size_t n) {
  PolyMapT<C> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(PolynomialT<C>::variable(n, i));
  return out;
}

/// Row s holds the partial derivatives of component s.
template <class C>
std::vector<PolyMapT<C>> jacobian(const PolyMapT<C>& map) {
  std::vector<PolyMapT<C>> jac;
  for (const auto& comp : map) {
    PolyMapT<C> row;
    for (std::size_t k = 0; k < comp.nvars(); ++k) row.push_back(comp.derivative(k));
    jac.push_back(std::move(row));
  }
  return jac;
}

/// dF(z) * V(z) as a polynomial map.
template <class C>
PolyMapT<C> jacobian_vector_product(const PolyMapT<C>& map, const PolyMapT<C>& field) {
  const auto jac = jacobian(map);
  PolyMapT<C> out;
  for (const auto& row : jac) {
    PolynomialT<C> acc(field.empty() ? 0 : field.front().nvars());
    for (std::size_t k = 0; k < row.size(); ++k) acc += row[k] * field.at(k);
    out.push_back(std::move(acc));
  }
  return out;
}

/// Inverse of a triangular map z_j -> mu_j z_j + P_j(z_{j+1}, ..., z_n) by
/// back substitution. `higher` holds the P_j. Throws std::overflow_error if
/// an inverse coefficient magnitude exceeds `coeff_bound`.
template <class C>
PolyMapT<C> invert_triangular(const std::vector<C>& diagonal, const PolyMapT<C>& higher,
                              double coeff_bound) {
  using Traits = CoeffTraits<C>;
  const std::size_t n = diagonal.size();
  if (higher.size() != n) throw std::invalid_argument("invert_triangular: arity mismatch");
  PolyMapT<C> inverse(n, PolynomialT<C>(n));
  for (std::size_t jj = n; jj-- > 0;) {
    PolyMapT<C> subs(n, PolynomialT<C>(n));
    for (std::size_t k = jj + 1; k < n; ++k) subs[k] = inverse[k];
    PolynomialT<C> zj = PolynomialT<C>::variable(n, jj) - higher[jj].compose(subs);
    zj *= Traits::one() / diagonal[jj];
    if (zj.max_coeff_magnitude() > coeff_bound)
      throw std::overflow_error("inverse coefficient blow-up in component " + std::to_string(jj + 1));
    inverse[jj] = std::move(zj);
  }
  return inverse;
}

/// Flattened evaluator for a complex polynomial map; no allocation per call
/// beyond the output.
class CompiledPolyMap {
 public:
  CompiledPolyMap() = default;
  explicit CompiledPolyMap(const PolyMap& map);

  std::size_t nvars() const { return nvars_; }
  std::size_t ncomponents() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  void eval(std::span<const Complex> z, std::span<Complex> out) const;
  Point eval(std::span<const Complex> z) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Complex> coeffs_;
  std::vector<int> exponents_;
};

}  // namespace hopf
