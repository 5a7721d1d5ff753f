#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hopf/polynomial.hpp"

namespace hopf {

/// One monomial field coeff * z^exponents d/dz_target (0-based target).
struct FieldTerm {
  std::size_t target = 0;
  MultiIndex exponents;
  Complex coeff{1.0, 0.0};
};

/// Holomorphic polynomial vector field sum_s V_s(z) d/dz_s, stored by component.
class PolyVectorField {
 public:
  PolyVectorField() = default;
  explicit PolyVectorField(std::size_t n);
  explicit PolyVectorField(PolyMap components);

  static PolyVectorField from_terms(std::size_t n, std::span<const FieldTerm> terms);
  static PolyVectorField monomial(std::size_t n, std::size_t target, const MultiIndex& m,
                                  Complex coeff = {1.0, 0.0});

  std::size_t dim() const { return components_.size(); }
  const PolyMap& components() const { return components_; }
  const Polynomial& component(std::size_t s) const { return components_.at(s); }
  bool is_zero() const;

  /// Terms ordered by target, then graded-lex exponent.
  std::vector<FieldTerm> terms() const;

  void eval(std::span<const Complex> z, std::span<Complex> out) const { compiled_.eval(z, out); }
  Point eval(std::span<const Complex> z) const { return compiled_.eval(z); }

  /// e.g. "(1,0)*z2^2 d/dz1".
  std::string to_string() const;

  friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
  friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);
  friend PolyVectorField operator*(Complex s, const PolyVectorField& v);
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
    return a.components_ == b.components_;
  }

 private:
  PolyMap components_;
  CompiledPolyMap compiled_;
};

}  // namespace hopf
