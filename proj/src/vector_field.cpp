#include "hopf/vector_field.hpp"

#include <sstream>
#include <stdexcept>

namespace hopf {

PolyVectorField::PolyVectorField(std::size_t n) : PolyVectorField(PolyMap(n, Polynomial(n))) {}

PolyVectorField::PolyVectorField(PolyMap components)
    : components_(std::move(components)), compiled_(components_) {
  for (const auto& c : components_) {
    if (c.nvars() != components_.size())
      throw std::invalid_argument("vector field component has wrong variable count");
  }
}

PolyVectorField PolyVectorField::from_terms(std::size_t n, std::span<const FieldTerm> terms) {
  PolyMap comps(n, Polynomial(n));
  for (const auto& t : terms) {
    if (t.target >= n) throw std::invalid_argument("field term target out of range");
    if (t.exponents.size() != n) throw std::invalid_argument("field term exponent arity mismatch");
    comps[t.target].add_term(t.exponents, t.coeff);
  }
  return PolyVectorField(std::move(comps));
}

PolyVectorField PolyVectorField::monomial(std::size_t n, std::size_t target, const MultiIndex& m,
                                          Complex coeff) {
  const FieldTerm term{target, m, coeff};
  return from_terms(n, std::span(&term, 1));
}

bool PolyVectorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<FieldTerm> PolyVectorField::terms() const {
  std::vector<FieldTerm> out;
  for (std::size_t s = 0; s < components_.size(); ++s)
    for (const auto& [m, c] : components_[s].terms()) out.push_back({s, m, c});
  return out;
}

std::string PolyVectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms()) {
    if (!first) os << " + ";
    os << t.coeff << '*' << monomial_string(t.exponents) << " d/dz" << (t.target + 1);
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
  PolyMap out = a.components_;
  for (std::size_t s = 0; s < out.size(); ++s) out[s] += b.components_.at(s);
  return PolyVectorField(std::move(out));
}

PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
  PolyMap out = a.components_;
  for (std::size_t s = 0; s < out.size(); ++s) out[s] -= b.components_.at(s);
  return PolyVectorField(std::move(out));
}

PolyVectorField operator*(Complex s, const PolyVectorField& v) {
  PolyMap out = v.components_;
  for (auto& c : out) c *= s;
  return PolyVectorField(std::move(out));
}

}  // namespace hopf
