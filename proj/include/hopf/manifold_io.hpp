#pragma once

// Manifold definition files and the JSON encodings shared by the reports.
//
//   {"n": 2,
//    "mu": [{"re": 0.25, "im": 0}, {"re": 0.5, "im": 0}],
//    "terms": [{"target": 1, "exponents": [0, 2], "coeff": {"re": 1, "im": 0}}]}
//
// Targets are 1-based in files and 0-based everywhere else.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopf/normal_form.hpp"
#include "hopf/resonance.hpp"
#include "hopf/vector_field.hpp"

namespace hopf {

using Json = nlohmann::ordered_json;

enum class ManifoldErrorKind { parse, validation };

/// Thrown by the loaders; `violations` lists every problem found.
class ManifoldError : public std::runtime_error {
 public:
  ManifoldError(ManifoldErrorKind kind, std::vector<std::string> violations);

  ManifoldErrorKind kind() const { return kind_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  ManifoldErrorKind kind_;
  std::vector<std::string> violations_;
};

/// Parses and validates (eigenvalues, targets, triangularity, resonance).
NormalFormMap parse_manifold(const nlohmann::json& doc);
NormalFormMap parse_manifold_text(const std::string& text);
NormalFormMap load_manifold(const std::string& path);

Json manifold_to_json(const NormalFormMap& map);

Json complex_to_json(Complex c);
Complex complex_from_json(const nlohmann::json& j);

/// [{"re", "im"}, ...] <-> Point.
Json point_to_json(std::span<const Complex> z);
Point point_from_json(const nlohmann::json& j);

/// [{"target", "exponents", "coeff"}, ...] with 1-based targets.
Json field_to_json(const PolyVectorField& v);
Json resonance_table_to_json(const ResonanceTable& table);

}  // namespace hopf
