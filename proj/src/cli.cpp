#include "hopf/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <utility>

#include "hopf/calculus.hpp"
#include "hopf/fields.hpp"
#include "hopf/futaki.hpp"
#include "hopf/resonance.hpp"
#include "hopf/volume.hpp"

namespace hopf::cli {

namespace {

// Bad option values and the like; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"validate", "check the manifold file, G_mu stability and injectivity"},
    {"resonances", "resonant (s, m) pairs"},
    {"gmu-basis", "basis of the resonant monomial fields"},
    {"invariant-fields", "gamma-invariant holomorphic fields"},
    {"conjugate", "d_t^-1 gamma d_t (autotuned t unless --t)"},
    {"autotune-t", "smallest t = 2^k certifying the shell"},
    {"contraction-sup", "sampled sup of |gamma| on a sphere"},
    {"volume-eval", "equivariant density f at --point"},
    {"hessian", "d dbar log f at --point, finite differences and closed form"},
    {"futaki", "Futaki invariant of the invariant fields"},
    {"independence", "Futaki invariant under other cut-offs and a perturbation"},
    {"compare-diagonal", "integrand on gamma vs its linear part"}};

// The map with the conjugation that makes the shell certifiable.
struct Working {
  NormalFormMap original;
  AutotuneResult tuned;
  NormalFormMap map;
};

Working prepare(const RunConfig& cfg) {
  NormalFormMap original = load_manifold(cfg.manifold);
  AutotuneConfig ac;
  ac.margin = cfg.margin;
  ac.sampler.threads = cfg.threads;
  AutotuneResult tuned = autotune_t(original, cfg.c, cfg.R, ac);
  NormalFormMap map = conjugate_dt(original, tuned.t);
  return {std::move(original), std::move(tuned), std::move(map)};
}

EquivariantVolume build_volume(const RunConfig& cfg, const NormalFormMap& map) {
  SphereSamplerConfig sampler;
  sampler.threads = cfg.threads;
  return EquivariantVolume::build(ShellSpec::certify(map, cfg.c, cfg.R, sampler));
}

IntegrationConfig integration(const RunConfig& cfg) {
  IntegrationConfig ic;
  ic.samples = cfg.samples;
  ic.seed = cfg.seed;
  ic.method = parse_sampling_method(cfg.method);
  ic.derivatives.step = cfg.step;
  ic.threads = cfg.threads;
  return ic;
}

Point parse_point(const RunConfig& cfg, std::size_t n) {
  if (cfg.point.empty()) throw UsageError("--point is required");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(cfg.point);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("--point: ") + e.what());
  }
  Point z = point_from_json(j);
  if (z.size() != n) throw UsageError("--point must have " + std::to_string(n) + " coordinates");
  return z;
}

// 0-based indices selected by --field.
std::vector<std::size_t> select_fields(const RunConfig& cfg, std::size_t count) {
  std::vector<std::size_t> out;
  if (cfg.field == "all") {
    for (std::size_t i = 0; i < count; ++i) out.push_back(i);
    return out;
  }
  std::size_t pos = 0;
  long long k = 0;
  try {
    k = std::stoll(cfg.field, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != cfg.field.size() || k < 1 || static_cast<std::size_t>(k) > count)
    throw UsageError("--field must be \"all\" or an index in 1.." + std::to_string(count));
  out.push_back(static_cast<std::size_t>(k - 1));
  return out;
}

Json field_json(std::size_t index, const PolyVectorField& v) {
  Json j;
  j["index"] = index + 1;
  j["terms"] = field_to_json(v);
  j["display"] = v.to_string();
  return j;
}

Json estimate_json(const IntegralEstimate& e) {
  Json j;
  j["value"] = complex_to_json(e.value);
  j["stderr"] = e.standard_error;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["method"] = to_string(e.method);
  j["scale"] = e.scale;
  j["convention_constant"] = e.convention_constant;
  if (!e.warnings.empty()) j["warnings"] = e.warnings;
  return j;
}

Json certificate_json(const ContractionCertificate& cert) {
  Json j;
  j["radius"] = cert.radius;
  j["sup_estimate"] = cert.sup_estimate;
  j["samples"] = cert.samples;
  j["refined"] = cert.refined;
  j["argmax"] = point_to_json(cert.argmax);
  return j;
}

Json tuning_json(const AutotuneResult& tuned) {
  Json j;
  j["t"] = tuned.t;
  j["log2_t"] = tuned.log2_t;
  j["certificate"] = certificate_json(tuned.certificate);
  return j;
}

Json validate_cmd(const RunConfig& cfg, int& code) {
  Json j;
  try {
    const auto map = load_manifold(cfg.manifold);
    j["valid"] = true;
    j["manifold"] = manifold_to_json(map);
    j["gmu_stable"] = check_gmu_stability(map).ok();
    const auto inj = check_perp_injectivity(map, cfg.degree);
    Json ij;
    ij["max_degree"] = inj.max_degree;
    ij["columns"] = inj.columns;
    ij["rank"] = inj.rank;
    ij["smallest_singular_value"] = inj.smallest_singular_value;
    ij["ok"] = inj.ok();
    j["perp_injectivity"] = std::move(ij);
  } catch (const ManifoldError& e) {
    j["valid"] = false;
    j["error"] = e.kind() == ManifoldErrorKind::parse ? "parse" : "validation";
    j["violations"] = e.violations();
    code = kExitInvalid;
  }
  return j;
}

Json futaki_cmd(const RunConfig& cfg, int& code) {
  const auto w = prepare(cfg);
  const auto vol = build_volume(cfg, w.map);
  const auto fields = invariant_fields(w.map);
  const auto ic = integration(cfg);

  Json j;
  j["manifold"] = cfg.manifold;
  j["conjugation"] = tuning_json(w.tuned);
  Json entries = Json::array();
  bool all = true;
  for (std::size_t i : select_fields(cfg, fields.size())) {
    const auto est = futaki_invariant(vol, fields[i], ic);
    const bool vanishing = is_vanishing(est);
    all = all && vanishing;
    Json e;
    e["field"] = field_json(i, fields[i]);
    e["value"] = complex_to_json(est.value);
    e["stderr"] = est.standard_error;
    e["samples"] = est.samples;
    e["seed"] = est.seed;
    e["scale"] = est.scale;
    e["vanishing"] = vanishing;
    // not vanishing: either clearly nonzero or too noisy to tell
    if (!vanishing)
      e["verdict"] = std::abs(est.value) > kVanishingSigmas * est.standard_error ? "nonzero" : "inconclusive";
    if (!est.warnings.empty()) e["warnings"] = est.warnings;
    entries.push_back(std::move(e));
  }
  j["fields"] = std::move(entries);
  j["all_vanishing"] = all;
  if (!all) code = kExitNonVanishing;
  return j;
}

Json independence_cmd(const RunConfig& cfg, int& code) {
  const auto w = prepare(cfg);
  const auto fields = invariant_fields(w.map);
  IndependenceVariants variants;
  variants.cutoffs = cfg.cutoffs;
  variants.epsilon = cfg.epsilon;
  variants.R = cfg.R;
  const auto ic = integration(cfg);

  Json j;
  j["manifold"] = cfg.manifold;
  j["conjugation"] = tuning_json(w.tuned);
  Json entries = Json::array();
  bool all = true;
  for (std::size_t i : select_fields(cfg, fields.size())) {
    const auto estimates = volume_independence_check(w.map, fields[i], variants, ic);
    bool agree = true;
    Json vs = Json::array();
    for (std::size_t a = 0; a < estimates.size(); ++a) {
      for (std::size_t b = a + 1; b < estimates.size(); ++b)
        agree = agree && agree_within(estimates[a].estimate, estimates[b].estimate);
      Json v = estimate_json(estimates[a].estimate);
      v["label"] = estimates[a].label;
      vs.push_back(std::move(v));
    }
    all = all && agree;
    Json e;
    e["field"] = field_json(i, fields[i]);
    e["variants"] = std::move(vs);
    e["agree"] = agree;
    entries.push_back(std::move(e));
  }
  j["fields"] = std::move(entries);
  j["all_agree"] = all;
  if (!all) code = kExitNonVanishing;
  return j;
}

Json compare_cmd(const RunConfig& cfg, int& code) {
  const auto w = prepare(cfg);
  const auto fields = invariant_fields(w.map);
  auto ic = integration(cfg);

  Json j;
  j["manifold"] = cfg.manifold;
  j["conjugation"] = tuning_json(w.tuned);
  j["tolerance"] = kPointwiseTolerance;
  Json entries = Json::array();
  bool all = true;
  for (std::size_t i : select_fields(cfg, fields.size())) {
    const auto cmp = diagonal_comparison(w.map, fields[i], ic, cfg.c, cfg.R, cfg.points);
    const bool ok = cmp.max_pointwise_difference <= kPointwiseTolerance;
    all = all && ok;
    Json e;
    e["field"] = field_json(i, fields[i]);
    e["points"] = cmp.points;
    e["max_pointwise_difference"] = cmp.max_pointwise_difference;
    e["max_integrand"] = cmp.max_integrand;
    if (ic.samples > 0) {
      e["with_gamma"] = estimate_json(cmp.with_gamma);
      e["with_diagonal"] = estimate_json(cmp.with_diagonal);
    }
    e["agree"] = ok;
    entries.push_back(std::move(e));
  }
  j["fields"] = std::move(entries);
  j["all_agree"] = all;
  if (!all) code = kExitNonVanishing;
  return j;
}

Json dispatch(const RunConfig& cfg, int& code) {
  const std::string& cmd = cfg.command;
  if (cmd == "validate") return validate_cmd(cfg, code);
  if (cmd == "futaki") return futaki_cmd(cfg, code);
  if (cmd == "independence") return independence_cmd(cfg, code);
  if (cmd == "compare-diagonal") return compare_cmd(cfg, code);

  Json j;
  if (cmd == "resonances") {
    const auto map = load_manifold(cfg.manifold);
    j = resonance_table_to_json(resonance_table(map.eigenvalues()));
  } else if (cmd == "gmu-basis") {
    const auto map = load_manifold(cfg.manifold);
    Json basis = Json::array();
    for (const auto& v : gmu_basis(map.eigenvalues())) basis.push_back(field_to_json(v));
    j["basis"] = std::move(basis);
  } else if (cmd == "invariant-fields") {
    const auto map = load_manifold(cfg.manifold);
    Json fields = Json::array();
    for (const auto& v : invariant_fields(map)) fields.push_back(field_to_json(v));
    j["fields"] = std::move(fields);
  } else if (cmd == "conjugate") {
    if (cfg.t > 0.0) {
      const auto map = load_manifold(cfg.manifold);
      j["t"] = cfg.t;
      j["manifold"] = manifold_to_json(conjugate_dt(map, cfg.t));
    } else {
      const auto w = prepare(cfg);
      j["t"] = w.tuned.t;
      j["manifold"] = manifold_to_json(w.map);
    }
  } else if (cmd == "autotune-t") {
    const auto w = prepare(cfg);
    j = tuning_json(w.tuned);
    j["threshold"] = cfg.c * (1.0 - cfg.margin);
  } else if (cmd == "contraction-sup") {
    auto map = load_manifold(cfg.manifold);
    if (cfg.t > 0.0) map = conjugate_dt(map, cfg.t);
    SphereSamplerConfig sampler;
    sampler.threads = cfg.threads;
    j = certificate_json(contraction_sup(map, cfg.radius > 0.0 ? cfg.radius : cfg.R, sampler));
  } else if (cmd == "volume-eval") {
    const auto w = prepare(cfg);
    const auto vol = build_volume(cfg, w.map);
    const auto value = vol.eval(parse_point(cfg, w.map.dim()));
    j["t"] = w.tuned.t;
    j["value"] = value.value;
    j["orbit_index"] = value.orbit_index;
  } else if (cmd == "hessian") {
    const auto w = prepare(cfg);
    const auto vol = build_volume(cfg, w.map);
    const auto z = parse_point(cfg, w.map.dim());
    DerivativeOptions opts;
    opts.step = cfg.step;
    const auto h = hermitian_hessian(log_density_field(vol), z, opts);
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < h.entries.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < h.entries.cols(); ++c) row.push_back(complex_to_json(h.entries(r, c)));
      rows.push_back(std::move(row));
    }
    j["t"] = w.tuned.t;
    j["hessian"] = std::move(rows);
    j["hermitian_defect"] = h.hermitian_defect();
    j["ricci_density"] = ricci_density(h).value;
  } else {
    throw UsageError("unknown command \"" + cmd + "\"");
  }
  return j;
}

void check(const RunConfig& cfg) {
  if (cfg.manifold.empty()) throw UsageError("--manifold is required");
  parse_sampling_method(cfg.method);
  if (!(cfg.c > 0.0 && cfg.c < 1.0)) throw UsageError("--c must lie in (0, 1)");
  if (!(cfg.R > 1.0)) throw UsageError("--R must exceed 1");
  if (!(cfg.step > 0.0)) throw UsageError("--step must be positive");
  if (!(cfg.margin >= 0.0 && cfg.margin < 1.0)) throw UsageError("--margin must lie in [0, 1)");
  if (cfg.degree < 1) throw UsageError("--degree must be at least 1");
  if (cfg.t < 0.0 || cfg.radius < 0.0) throw UsageError("--t and --radius must be positive");
}

}  // namespace

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["manifold"] = cfg.manifold;
  j["field"] = cfg.field;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["method"] = cfg.method;
  j["c"] = cfg.c;
  j["R"] = cfg.R;
  j["step"] = cfg.step;
  j["degree"] = cfg.degree;
  j["t"] = cfg.t;
  j["radius"] = cfg.radius;
  j["margin"] = cfg.margin;
  j["point"] = cfg.point;
  j["points"] = cfg.points;
  j["cutoffs"] = cfg.cutoffs;
  j["epsilon"] = cfg.epsilon;
  return j;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  Json body;
  try {
    check(cfg);
    body = dispatch(cfg, code);
  } catch (const ManifoldError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  Json report;
  report["config"] = config_to_json(cfg);
  for (auto& [k, v] : body.items()) report[k] = std::move(v);
  const std::string text = report.dump(2) + "\n";
  if (cfg.report.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.report, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file) {
      err << "error: cannot write " << cfg.report << '\n';
      return kExitError;
    }
  }
  if (code == kExitInvalid && cfg.command == "validate") {
    for (const auto& v : report["violations"]) err << "violation: " << v.get<std::string>() << '\n';
  }
  return code;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Futaki invariant on Hopf manifolds"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--manifold", cfg.manifold, "manifold definition file (JSON)");
  app.add_option("--report", cfg.report, "write the JSON report here instead of stdout");
  app.add_option("--field", cfg.field, "1-based invariant field index or \"all\"")->capture_default_str();
  app.add_option("--samples", cfg.samples, "integration samples")->capture_default_str();
  app.add_option("--seed", cfg.seed, "base seed (HOPF_FUTAKI_SEED overrides)")->capture_default_str();
  app.add_option("--method", cfg.method, "mc or qmc")->check(CLI::IsMember({"mc", "qmc"}))->capture_default_str();
  app.add_option("--c", cfg.c, "inner shell radius")->capture_default_str();
  app.add_option("--R", cfg.R, "outer radius of the fundamental domain ball")->capture_default_str();
  app.add_option("--step", cfg.step, "finite-difference step")->capture_default_str();
  app.add_option("--degree", cfg.degree, "truncation degree for the injectivity check")->capture_default_str();
  app.add_option("--t", cfg.t, "conjugation parameter (conjugate, contraction-sup)");
  app.add_option("--radius", cfg.radius, "sphere radius for contraction-sup (default R)");
  app.add_option("--margin", cfg.margin, "autotune margin")->capture_default_str();
  app.add_option("--point", cfg.point, "point as a JSON array of {\"re\", \"im\"}");
  app.add_option("--points", cfg.points, "pointwise comparison points")->capture_default_str();
  app.add_option("--cutoffs", cfg.cutoffs, "cut-off radii for the independence check")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "perturbation amplitude")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();

  for (const auto& [name, help] : kCommands) app.add_subcommand(name, help)->callback([&cfg, name] { cfg.command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (cfg.command.empty()) {
    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  }

  if (const char* env = std::getenv("HOPF_FUTAKI_SEED"); env && *env) {
    try {
      std::size_t pos = 0;
      cfg.seed = std::stoull(env, &pos);
      if (env[pos] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "error: HOPF_FUTAKI_SEED is not an unsigned integer\n";
      return kExitInvalid;
    }
  }
  return run(cfg, out, err);
}

}  // namespace hopf::cli
