#include "hopf/manifold_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hopf {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

[[noreturn]] void parse_error(const std::string& what) { throw ManifoldError(ManifoldErrorKind::parse, {what}); }

void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) parse_error(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) parse_error(where + ": unknown key \"" + key + "\"");
  for (const auto& key : allowed)
    if (!obj.contains(key)) parse_error(where + ": missing key \"" + key + "\"");
}

double number_at(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) parse_error(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_error(where + "." + key + ": not finite");
  return x;
}

long long integer_of(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_error(where + ": expected an integer");
  return v.get<long long>();
}

Complex complex_at(const nlohmann::json& j, const std::string& where) {
  require_keys(j, {"re", "im"}, where);
  return {number_at(j, "re", where), number_at(j, "im", where)};
}

}  // namespace

ManifoldError::ManifoldError(ManifoldErrorKind kind, std::vector<std::string> violations)
    : std::runtime_error(std::string(kind == ManifoldErrorKind::parse ? "parse error: " : "validation error: ") +
                         join(violations)),
      kind_(kind),
      violations_(std::move(violations)) {}

Complex complex_from_json(const nlohmann::json& j) { return complex_at(j, "complex"); }

NormalFormMap parse_manifold(const nlohmann::json& doc) {
  require_keys(doc, {"n", "mu", "terms"}, "manifold");
  const long long n = integer_of(doc.at("n"), "n");
  const auto& mu_json = doc.at("mu");
  const auto& terms_json = doc.at("terms");
  if (!mu_json.is_array()) parse_error("mu: expected an array");
  if (!terms_json.is_array()) parse_error("terms: expected an array");

  std::vector<std::string> problems;
  if (n < 2) problems.push_back("dimension must be at least 2");
  if (static_cast<long long>(mu_json.size()) != n)
    problems.push_back("mu has " + std::to_string(mu_json.size()) + " entries but n = " + std::to_string(n));

  std::vector<Complex> mu;
  for (std::size_t i = 0; i < mu_json.size(); ++i) mu.push_back(complex_at(mu_json[i], "mu[" + std::to_string(i) + "]"));

  std::vector<MonomialTerm> terms;
  for (std::size_t i = 0; i < terms_json.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    const auto& t = terms_json[i];
    require_keys(t, {"target", "exponents", "coeff"}, where);
    const long long target = integer_of(t.at("target"), where + ".target");
    const auto& ex = t.at("exponents");
    if (!ex.is_array()) parse_error(where + ".exponents: expected an array");
    MonomialTerm term;
    for (std::size_t k = 0; k < ex.size(); ++k) {
      const long long e = integer_of(ex[k], where + ".exponents[" + std::to_string(k) + "]");
      if (e < 0) problems.push_back(where + ": negative exponent");
      term.exponents.push_back(static_cast<int>(e));
    }
    if (static_cast<long long>(ex.size()) != n) problems.push_back(where + ": exponents must have length n");
    if (target < 1 || target > n) problems.push_back(where + ": target out of range 1.." + std::to_string(n));
    term.target = static_cast<std::size_t>(std::max(target - 1, 0LL));
    term.coeff = complex_at(t.at("coeff"), where + ".coeff");
    terms.push_back(std::move(term));
  }
  if (!problems.empty()) throw ManifoldError(ManifoldErrorKind::validation, problems);

  try {
    NormalFormMap map(Eigenvalues(std::move(mu)), std::move(terms));
    const auto report = validate_normal_form(map);
    if (!report.ok()) {
      for (const auto& v : report.violations) problems.push_back(v.message);
      throw ManifoldError(ManifoldErrorKind::validation, problems);
    }
    return map;
  } catch (const std::invalid_argument& e) {
    throw ManifoldError(ManifoldErrorKind::validation, {e.what()});
  }
}

NormalFormMap parse_manifold_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(e.what());
  }
  return parse_manifold(doc);
}

NormalFormMap load_manifold(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifold_text(buf.str());
}

Json complex_to_json(Complex c) {
  Json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

Json point_to_json(std::span<const Complex> z) {
  Json out = Json::array();
  for (const auto& c : z) out.push_back(complex_to_json(c));
  return out;
}

Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array()) parse_error("point: expected an array of {\"re\", \"im\"}");
  Point z;
  for (std::size_t i = 0; i < j.size(); ++i) z.push_back(complex_at(j[i], "point[" + std::to_string(i) + "]"));
  return z;
}

Json manifold_to_json(const NormalFormMap& map) {
  Json j;
  j["n"] = map.dim();
  j["mu"] = point_to_json(map.eigenvalues().values());
  Json terms = Json::array();
  for (const auto& t : map.terms()) {
    Json term;
    term["target"] = t.target + 1;
    term["exponents"] = t.exponents;
    term["coeff"] = complex_to_json(t.coeff);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

Json field_to_json(const PolyVectorField& v) {
  Json out = Json::array();
  for (const auto& t : v.terms()) {
    Json term;
    term["target"] = t.target + 1;
    term["exponents"] = t.exponents;
    term["coeff"] = complex_to_json(t.coeff);
    out.push_back(std::move(term));
  }
  return out;
}

Json resonance_table_to_json(const ResonanceTable& table) {
  Json j;
  j["degree_bound"] = table.degree_bound;
  Json entries = Json::array();
  for (const auto& e : table.entries) {
    Json entry;
    entry["target"] = e.target + 1;
    entry["exponents"] = e.exponents;
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace hopf
