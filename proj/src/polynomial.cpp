#include "hopf/polynomial.hpp"

#include <numeric>
#include <sstream>

namespace hopf {

int total_degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t nvars, int max_degree) {
  std::vector<MultiIndex> out;
  if (nvars == 0 || max_degree < 0) return out;
  // Odometer over [0, max_degree]^n, keeping those inside the simplex.
  MultiIndex m(nvars, 0);
  while (true) {
    if (total_degree(m) <= max_degree) out.push_back(m);
    std::size_t i = 0;
    while (i < nvars && ++m[i] > max_degree) m[i++] = 0;
    if (i == nvars) break;
  }
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::string monomial_string(const MultiIndex& m) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    os << 'z' << (i + 1);
    if (m[i] > 1) os << '^' << m[i];
    first = false;
  }
  if (first) os << '1';
  return os.str();
}

CompiledPolyMap::CompiledPolyMap(const PolyMap& map) {
  nvars_ = map.empty() ? 0 : map.front().nvars();
  offsets_.push_back(0);
  for (const auto& comp : map) {
    if (comp.nvars() != nvars_) throw std::invalid_argument("CompiledPolyMap: ragged map");
    for (const auto& [m, c] : comp.terms()) {
      coeffs_.push_back(c);
      exponents_.insert(exponents_.end(), m.begin(), m.end());
    }
    offsets_.push_back(coeffs_.size());
  }
}

void CompiledPolyMap::eval(std::span<const Complex> z, std::span<Complex> out) const {
  const std::size_t ncomp = ncomponents();
  for (std::size_t s = 0; s < ncomp; ++s) {
    Complex acc{0.0, 0.0};
    for (std::size_t t = offsets_[s]; t < offsets_[s + 1]; ++t) {
      Complex term = coeffs_[t];
      const int* e = exponents_.data() + t * nvars_;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= z[i];
      acc += term;
    }
    out[s] = acc;
  }
}

Point CompiledPolyMap::eval(std::span<const Complex> z) const {
  if (z.size() != nvars_) throw std::invalid_argument("CompiledPolyMap: point dimension mismatch");
  Point out(ncomponents());
  eval(z, out);
  return out;
}

}  // namespace hopf
