#include "hopf/fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hopf {

namespace {

template <class C>
PolyMapT<C> pushforward_components(const PolyMapT<C>& gamma, const PolyMapT<C>& inverse, const PolyMapT<C>& v) {
  return compose_maps(jacobian_vector_product(gamma, v), inverse);
}

struct KeyLess {
  bool operator()(const ResonantMonomial& a, const ResonantMonomial& b) const {
    const int da = total_degree(a.exponents);
    const int db = total_degree(b.exponents);
    if (da != db) return da < db;
    if (a.target != b.target) return a.target < b.target;
    return GradedLexLess{}(a.exponents, b.exponents);
  }
};

Eigen::JacobiSVD<Eigen::MatrixXcd> svd_of(const Eigen::MatrixXcd& m, bool full_v) {
  const unsigned opts = full_v ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : 0u;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m, opts);
}

// Reduced row-echelon form of the rows of `rows` (k x m), in place.
void reduce_rows(Eigen::MatrixXcd& rows) {
  const Eigen::Index k = rows.rows();
  const Eigen::Index m = rows.cols();
  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < m && pivot_row < k; ++col) {
    Eigen::Index best = pivot_row;
    for (Eigen::Index r = pivot_row + 1; r < k; ++r)
      if (std::abs(rows(r, col)) > std::abs(rows(best, col))) best = r;
    if (std::abs(rows(best, col)) < 1e-9) continue;
    rows.row(pivot_row).swap(rows.row(best));
    rows.row(pivot_row) /= rows(pivot_row, col);
    for (Eigen::Index r = 0; r < k; ++r) {
      if (r != pivot_row) rows.row(r) -= rows(r, col) * rows.row(pivot_row);
    }
    ++pivot_row;
  }
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      if (std::abs(rows(r, c)) < 1e-13) rows(r, c) = 0.0;
}

}  // namespace

PolyVectorField pushforward(const NormalFormMap& gamma, const PolyMap& inverse, const PolyVectorField& v) {
  return PolyVectorField(pushforward_components(gamma.as_poly_map(), inverse, v.components()));
}

PolyVectorField pushforward(const NormalFormMap& gamma, const PolyVectorField& v) {
  return pushforward(gamma, invert_map(gamma), v);
}

PolyMapT<GaussianRational> pushforward_exact(const PolyMapT<GaussianRational>& gamma,
                                             const PolyMapT<GaussianRational>& inverse,
                                             const PolyMapT<GaussianRational>& v) {
  return pushforward_components(gamma, inverse, v);
}

bool is_invariant(const NormalFormMap& gamma, const PolyVectorField& v, double tol) {
  const PolyMap g = gamma.as_poly_map();
  const PolyMap lhs = jacobian_vector_product(g, v.components());
  const PolyMap rhs = compose_maps(v.components(), g);
  double scale = 1.0;
  for (const auto& p : lhs) scale = std::max(scale, p.max_coeff_magnitude());
  for (const auto& p : rhs) scale = std::max(scale, p.max_coeff_magnitude());
  for (std::size_t s = 0; s < lhs.size(); ++s) {
    const Polynomial diff = lhs[s] - rhs[s];
    if (diff.max_coeff_magnitude() > tol * scale) return false;
  }
  return true;
}

LinearOperatorMatrix id_minus_pushforward_matrix(const NormalFormMap& gamma,
                                                 const std::vector<ResonantMonomial>& domain) {
  const std::size_t n = gamma.dim();
  const PolyMap inverse = invert_map(gamma);
  std::vector<PolyVectorField> images;
  std::map<ResonantMonomial, Eigen::Index, KeyLess> rows;
  for (const auto& key : domain) {
    const auto v = PolyVectorField::monomial(n, key.target, key.exponents);
    images.push_back(v - pushforward(gamma, inverse, v));
    for (const auto& t : images.back().terms()) rows.try_emplace({t.target, t.exponents}, 0);
  }
  LinearOperatorMatrix out;
  out.domain = domain;
  Eigen::Index r = 0;
  for (auto& [key, index] : rows) {
    index = r++;
    out.codomain.push_back(key);
  }
  out.entries = Eigen::MatrixXcd::Zero(r, static_cast<Eigen::Index>(domain.size()));
  for (std::size_t col = 0; col < images.size(); ++col)
    for (const auto& t : images[col].terms())
      out.entries(rows.at({t.target, t.exponents}), static_cast<Eigen::Index>(col)) = t.coeff;
  return out;
}

std::size_t numerical_rank(const Eigen::MatrixXcd& m, double rel) {
  if (m.size() == 0) return 0;
  const auto svd = svd_of(m, false);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel * sv(0)) ++rank;
  return rank;
}

std::vector<PolyVectorField> invariant_fields(const NormalFormMap& gamma, double tol) {
  const std::size_t n = gamma.dim();
  const auto keys = gmu_keys(gamma.eigenvalues(), tol);
  const auto op = id_minus_pushforward_matrix(gamma, keys);
  const Eigen::Index m = static_cast<Eigen::Index>(keys.size());

  Eigen::MatrixXcd null_rows;
  if (op.entries.rows() == 0) {
    null_rows = Eigen::MatrixXcd::Identity(m, m);
  } else {
    const auto svd = svd_of(op.entries, true);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0)
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > kNullSpaceThreshold * sv(0)) ++rank;
    null_rows = svd.matrixV().rightCols(m - rank).transpose();
  }
  reduce_rows(null_rows);

  std::vector<PolyVectorField> out;
  for (Eigen::Index r = 0; r < null_rows.rows(); ++r) {
    std::vector<FieldTerm> terms;
    for (Eigen::Index c = 0; c < m; ++c)
      if (null_rows(r, c) != Complex{}) terms.push_back({keys[c].target, keys[c].exponents, null_rows(r, c)});
    if (!terms.empty()) out.push_back(PolyVectorField::from_terms(n, terms));
  }
  return out;
}

StabilityReport check_gmu_stability(const NormalFormMap& gamma, double tol) {
  StabilityReport report;
  const std::size_t n = gamma.dim();
  const PolyMap inverse = invert_map(gamma);
  const auto keys = gmu_keys(gamma.eigenvalues(), tol);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto v = PolyVectorField::monomial(n, keys[i].target, keys[i].exponents);
    const auto image = v - pushforward(gamma, inverse, v);
    for (const auto& t : image.terms()) {
      if (!is_resonant(gamma.eigenvalues(), t.target, t.exponents, tol))
        report.violations.push_back({i, {t.target, t.exponents}, t.coeff});
    }
  }
  return report;
}

InjectivityReport check_perp_injectivity(const NormalFormMap& gamma, int max_degree, double tol) {
  if (max_degree < 1) throw std::invalid_argument("check_perp_injectivity: degree must be >= 1");
  const auto& mu = gamma.eigenvalues();
  std::vector<ResonantMonomial> domain;
  for (const auto& m : multi_indices_up_to(mu.size(), max_degree))
    for (std::size_t s = 0; s < mu.size(); ++s)
      if (!is_resonant(mu, s, m, tol)) domain.push_back({s, m});
  std::stable_sort(domain.begin(), domain.end(), KeyLess{});

  const auto op = id_minus_pushforward_matrix(gamma, domain);
  InjectivityReport report;
  report.max_degree = max_degree;
  report.columns = static_cast<std::size_t>(op.entries.cols());
  report.rows = static_cast<std::size_t>(op.entries.rows());
  for (const auto& key : op.codomain)
    if (is_resonant(mu, key.target, key.exponents, tol)) report.resonant_image_components.push_back(key);
  if (op.entries.size() > 0) {
    // Columns of high-degree fields are larger by orders of magnitude; rank is
    // judged on unit columns.
    Eigen::MatrixXcd unit = op.entries;
    for (Eigen::Index c = 0; c < unit.cols(); ++c) {
      const double norm = unit.col(c).norm();
      if (norm > 0.0) unit.col(c) /= norm;
    }
    const auto svd = svd_of(unit, false);
    const auto& sv = svd.singularValues();
    report.largest_singular_value = sv(0);
    report.smallest_singular_value = sv(sv.size() - 1);
    report.rank = numerical_rank(unit);
  }
  return report;
}

std::string InjectivityReport::summary() const {
  std::ostringstream os;
  os << (ok() ? "full column rank" : "rank-deficient") << ": rank " << rank << " of " << columns
     << " columns (" << rows << " rows), sigma_min/sigma_max = " << smallest_singular_value << "/"
     << largest_singular_value;
  if (!resonant_image_components.empty())
    os << ", " << resonant_image_components.size() << " resonant image components";
  return os.str();
}

Polynomial holomorphic_divergence_trace(const PolyVectorField& v) {
  Polynomial trace(v.dim());
  for (std::size_t l = 0; l < v.dim(); ++l) trace += v.component(l).derivative(l);
  return trace;
}

}  // namespace hopf
