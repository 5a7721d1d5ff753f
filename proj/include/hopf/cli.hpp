#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hopf/manifold_io.hpp"

namespace hopf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNonVanishing = 3;

inline constexpr double kPointwiseTolerance = 1e-10;

struct RunConfig {
  std::string command;
  std::string manifold;
  std::string report;  // empty: stdout
  std::string field = "all";
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20250101;
  std::string method = "qmc";
  double c = 0.8;
  double R = 1.05;
  double step = 1e-4;
  int degree = 4;
  double t = 0.0;       // conjugate / contraction-sup; 0 autotunes or leaves gamma alone
  double radius = 0.0;  // contraction-sup; 0 means R
  double margin = 0.05;
  std::string point;    // JSON array of {"re", "im"}
  std::size_t points = 10000;
  std::vector<double> cutoffs{0.8, 0.9};
  double epsilon = 0.1;
  unsigned threads = 0;
};

/// The resolved configuration as echoed into reports. Output path and thread
/// count are left out so reports compare equal across them.
Json config_to_json(const RunConfig& cfg);

/// Runs one subcommand; the report goes to cfg.report or `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (applying HOPF_FUTAKI_SEED) and runs.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hopf::cli
