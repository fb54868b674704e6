#include "qisim/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qisim/analytic.hpp"
#include "qisim/curves.hpp"
#include "qisim/errors.hpp"
#include "qisim/optimize.hpp"
#include "qisim/scheme.hpp"
#include "qisim/verify.hpp"

namespace qisim::cli {
namespace {

using nlohmann::ordered_json;

constexpr const char* kToolTag = "qisim 0.1.0";

scheme::Scheme parse_scheme(const std::string& s) {
  if (s == "cqi") return scheme::Scheme::Cqi;
  if (s == "qig") return scheme::Scheme::QiG;
  if (s == "qitg") return scheme::Scheme::QiTG;
  if (s == "custom") return scheme::Scheme::Custom;
  throw std::invalid_argument("unknown scheme: " + s);
}

scheme::Engine parse_engine(const std::string& s) {
  if (s == "closed") return scheme::Engine::ClosedForm;
  if (s == "linearized") return scheme::Engine::GaussianLinearized;
  if (s == "exact") return scheme::Engine::GaussianExact;
  throw std::invalid_argument("unknown engine: " + s);
}

std::vector<scheme::Scheme> parse_scheme_list(const std::string& csv) {
  std::vector<scheme::Scheme> out;
  std::string item;
  for (size_t pos = 0; pos <= csv.size();) {
    const size_t comma = csv.find(',', pos);
    const size_t end = comma == std::string::npos ? csv.size() : comma;
    item = csv.substr(pos, end - pos);
    if (item.empty()) throw std::invalid_argument("empty scheme name in list");
    out.push_back(parse_scheme(item));
    pos = end + 1;
    if (comma == std::string::npos) break;
  }
  if (out.empty()) throw std::invalid_argument("no schemes given");
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
}

void emit_json(const ordered_json& doc, const std::string& path) {
  write_text(doc.dump(2) + "\n", path);
}

struct CommonOpts {
  std::string scheme = "cqi";
  std::string engine = "closed";
  double photons = 4e14;
  double squeeze_db = 10.0;
  double squeeze_r = 0.0;
  double loss = 0.0;
  double split = 0.5;
  double gain = 1.0;
  double lock = 1.5707963267948966;
  double g_max = 1e4;
  bool constrained = false;

  CLI::Option* squeeze_r_opt = nullptr;
  CLI::Option* gain_opt = nullptr;
  CLI::Option* split_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& v, bool with_scheme = true) {
  if (with_scheme) {
    cmd->add_option("--scheme", v.scheme, "Scheme: cqi, qig, qitg, custom")
        ->check(CLI::IsMember({"cqi", "qig", "qitg", "custom"}))
        ->capture_default_str();
    cmd->add_option("--engine", v.engine,
                    "Evaluation engine: closed, linearized, exact")
        ->check(CLI::IsMember({"closed", "linearized", "exact"}))
        ->capture_default_str();
  }
  cmd->add_option("--photons", v.photons, "Mean input photon number N")
      ->capture_default_str();
  auto* db = cmd->add_option("--squeeze-db", v.squeeze_db,
                             "Squeezing strength in dB (default 10)");
  v.squeeze_r_opt =
      cmd->add_option("--squeeze-r", v.squeeze_r, "Squeezing parameter r");
  db->excludes(v.squeeze_r_opt);
  v.squeeze_r_opt->excludes(db);
  cmd->add_option("--loss", v.loss, "Signal-arm loss l in [0, 1)")
      ->capture_default_str();
  if (with_scheme) {
    v.split_opt = cmd->add_option(
        "--split", v.split, "Splitter transmissivity T (custom scheme only)");
    v.gain_opt = cmd->add_option(
        "--gain", v.gain, "Amplifier gain G; pins the gain mode to fixed");
  }
  auto* constrained = cmd->add_flag(
      "--constrained", v.constrained,
      "Pin the gain so the fringe slope stays at the photon number");
  if (v.gain_opt != nullptr) v.gain_opt->excludes(constrained);
  cmd->add_option("--lock", v.lock, "Lock phase of the interferometer")
      ->capture_default_str();
  cmd->add_option("--g-max", v.g_max,
                  "Gain used to realize asymptotic optima in gaussian engines")
      ->capture_default_str();
}

double resolved_squeeze_r(const CommonOpts& v) {
  return v.squeeze_r_opt->count() > 0 ? v.squeeze_r
                                      : analytic::squeeze_r_from_db(v.squeeze_db);
}

scheme::SchemeConfig make_config(const CommonOpts& v) {
  scheme::SchemeConfig cfg;
  cfg.scheme = parse_scheme(v.scheme);
  cfg.engine = parse_engine(v.engine);
  cfg.params.photons = v.photons;
  cfg.params.squeeze_r = resolved_squeeze_r(v);
  cfg.params.loss = v.loss;
  cfg.params.split_ratio = v.split;
  cfg.params.gain = v.gain;
  cfg.lock_phase = v.lock;
  cfg.g_max = v.g_max;

  if (v.split_opt->count() > 0 && cfg.scheme != scheme::Scheme::Custom)
    throw std::invalid_argument(
        "--split applies to the custom scheme only; the others pin it");
  if (v.gain_opt->count() > 0 && cfg.scheme == scheme::Scheme::Cqi)
    throw std::invalid_argument(
        "cqi has no amplifier; --gain needs qig, qitg, or custom");

  if (v.constrained)
    cfg.gain_mode = scheme::GainMode::MatchedPhotonNumber;
  else if (v.gain_opt->count() > 0 || cfg.scheme == scheme::Scheme::Custom)
    cfg.gain_mode = scheme::GainMode::Fixed;
  else
    cfg.gain_mode = scheme::GainMode::Free;
  return cfg;
}

ordered_json metadata_json(const scheme::SchemeConfig& cfg,
                           const scheme::Resolved& res) {
  ordered_json m;
  m["tool"] = kToolTag;
  m["scheme"] = scheme::scheme_name(cfg.scheme);
  m["engine"] = scheme::engine_name(cfg.engine);
  m["gain_mode"] = scheme::gain_mode_name(cfg.gain_mode);
  m["photons"] = cfg.params.photons;
  m["squeeze_r"] = cfg.params.squeeze_r;
  m["squeeze_db"] = analytic::squeeze_db_from_r(cfg.params.squeeze_r);
  m["loss"] = cfg.params.loss;
  m["lock_phase"] = cfg.lock_phase;
  m["g_max"] = cfg.g_max;
  m["split_ratio"] = res.params.split_ratio;
  m["gain"] = res.params.gain;
  m["gain_asymptotic"] = res.gain_asymptotic;
  m["m_convention"] = "r=0 reference re-resolves the scheme policy";
  m["degradation_baseline"] = "same scheme at its lossless optimum";
  return m;
}

int run_point(const CommonOpts& v, const std::string& out_path) {
  const auto cfg = make_config(v);
  const auto res = scheme::resolve(cfg);
  const auto m = scheme::evaluate(cfg);

  ordered_json doc;
  doc["metadata"] = metadata_json(cfg, res);
  ordered_json mm;
  mm["signal_slope"] = m.signal_slope;
  mm["noise_std"] = m.noise_std;
  mm["delta_phi"] = m.delta_phi;
  mm["delta_phi_sqrtn"] = m.delta_phi * std::sqrt(cfg.params.photons);
  mm["m_db"] = m.m_db;
  mm["rel_snr_db"] = m.rel_snr_db;
  mm["beyond_sql_db"] = m.beyond_sql_db;
  mm["degradation_db"] = m.degradation_db;
  if (!m.breakdown.empty()) {
    ordered_json bd;
    for (const auto& [tag, var] : m.breakdown) bd[tag] = var;
    mm["noise_variance_by_source"] = bd;
  }
  doc["metrics"] = mm;
  emit_json(doc, out_path);
  return 0;
}

int run_decompose(const CommonOpts& v, const std::string& out_path) {
  const auto cfg = make_config(v);
  const auto res = scheme::resolve(cfg);
  const auto groups = scheme::noise_breakdown(cfg);

  ordered_json doc;
  auto meta = metadata_json(cfg, res);
  meta["engine"] = scheme::engine_name(scheme::Engine::GaussianLinearized);
  doc["metadata"] = meta;

  ordered_json by;
  for (const auto& [tag, var] : groups.by_source) by[tag] = var;
  ordered_json noise;
  noise["by_source"] = by;
  noise["loss_induced_variance"] = groups.loss_induced;
  noise["amplification_associated_variance"] = groups.amplification_associated;
  noise["total_variance"] = groups.total_variance;
  noise["noise_std"] = std::sqrt(groups.total_variance);
  doc["noise"] = noise;
  emit_json(doc, out_path);
  return 0;
}

int run_optimize(const CommonOpts& v, const std::string& out_path) {
  const double r = resolved_squeeze_r(v);
  const auto mode = v.constrained ? opt::GainSearch::MatchedPhotonNumber
                                  : opt::GainSearch::Free;
  const auto res =
      opt::minimize_sensitivity(v.loss, r, v.photons, mode, v.g_max);

  ordered_json doc;
  ordered_json meta;
  meta["tool"] = kToolTag;
  meta["search"] = v.constrained ? "matched-photon-number" : "free";
  meta["loss"] = v.loss;
  meta["squeeze_r"] = r;
  meta["squeeze_db"] = analytic::squeeze_db_from_r(r);
  meta["photons"] = v.photons;
  meta["g_max"] = v.g_max;
  doc["metadata"] = meta;

  ordered_json out;
  out["split_ratio"] = res.t_star;
  out["gain"] = res.g_star;
  out["gain_asymptotic"] = res.gain_asymptotic;
  out["delta_phi"] = res.delta_phi_star;
  out["delta_phi_sqrtn"] = res.delta_phi_star * std::sqrt(v.photons);
  out["evaluations"] = res.evaluations;
  out["free_optimum_split"] = res.analytic_t;
  out["free_optimum_delta_phi"] = res.analytic_delta_phi;
  out["split_deviation"] = res.t_deviation;
  out["delta_phi_rel_gap"] = res.delta_phi_rel_gap;
  doc["result"] = out;
  emit_json(doc, out_path);
  return 0;
}

int run_sweep(const CommonOpts& v, const std::vector<std::string>& axis_specs,
              const std::string& schemes_csv, const std::string& out_path) {
  const auto cfg = make_config(v);
  std::vector<curves::SweepAxis> axes;
  axes.reserve(axis_specs.size());
  for (const auto& spec : axis_specs) axes.push_back(curves::parse_axis(spec));
  const auto table =
      curves::run_sweep(cfg, parse_scheme_list(schemes_csv), axes);
  write_text(table.to_string(), out_path);
  return 0;
}

int run_figure(std::vector<std::string> ids, bool all, std::string out_dir) {
  if (all) ids = curves::figure_ids();
  if (ids.empty())
    throw std::invalid_argument("pass --id (repeatable) or --all");
  if (out_dir.empty()) {
    const char* env = std::getenv("QI_OUT_DIR");
    out_dir = (env != nullptr && *env != '\0') ? env : ".";
  }
  for (const auto& id : ids) {
    const auto table = curves::figure_series(id);
    const std::string path = out_dir + "/" + id + ".csv";
    write_text(table.to_string(), path);
    std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";
  }
  return 0;
}

int run_verify(bool full) {
  const auto results = verify::run_checks(full);
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail
              << "\n";
    if (!r.passed) ++failures;
  }
  std::cout << (results.size() - failures) << "/" << results.size()
            << " checks passed (" << (full ? "full" : "fast") << " suite)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Interferometric phase sensing with squeezed light and a "
               "coherent in-line amplifier: evaluation, optimization, and "
               "curve reproduction"};
  app.set_version_flag("--version", kToolTag);
  app.set_config("--config", "", "Read option defaults from an INI file");
  app.require_subcommand(1);

  int rc = 0;
  std::string out_path;

  auto* point = app.add_subcommand(
      "point", "Evaluate one operating point, JSON to stdout");
  CommonOpts pv;
  add_common(point, pv);
  point->add_option("--out", out_path, "Write JSON here instead of stdout");
  point->callback([&] { rc = run_point(pv, out_path); });

  auto* sweep = app.add_subcommand(
      "sweep", "Evaluate schemes over one or two parameter axes, CSV output");
  CommonOpts sv;
  std::vector<std::string> axis_specs;
  std::string schemes_csv = "cqi,qig,qitg";
  add_common(sweep, sv);
  sweep
      ->add_option("--axis", axis_specs,
                   "Axis spec like l=0:0.9:0.01 or G=1,2,5,10 (up to two)")
      ->required()
      ->expected(1, 2);
  sweep->add_option("--schemes", schemes_csv, "Comma list of schemes")
      ->capture_default_str();
  sweep->add_option("--out", out_path, "Write CSV here instead of stdout");
  sweep->callback([&] { rc = run_sweep(sv, axis_specs, schemes_csv, out_path); });

  auto* optimize = app.add_subcommand(
      "optimize", "Find the best splitter (and gain) for a loss level");
  CommonOpts ov;
  ov.photons = 1.0;
  add_common(optimize, ov, false);
  optimize->add_option("--out", out_path, "Write JSON here instead of stdout");
  optimize->callback([&] { rc = run_optimize(ov, out_path); });

  auto* figure = app.add_subcommand(
      "figure", "Write reference curve CSV files into a directory");
  std::vector<std::string> figure_ids_arg;
  bool figure_all = false;
  std::string figure_dir;
  figure->add_option("--id", figure_ids_arg,
                     "Curve set id (see --all for the full list)");
  figure->add_flag("--all", figure_all, "Write every known curve set");
  figure->add_option("--out", figure_dir,
                     "Output directory (default $QI_OUT_DIR, then .)");
  figure->callback([&] { rc = run_figure(figure_ids_arg, figure_all, figure_dir); });

  auto* decompose = app.add_subcommand(
      "decompose", "Attribute the noise variance to its input sources, JSON");
  CommonOpts dv;
  add_common(decompose, dv);
  decompose->add_option("--out", out_path, "Write JSON here instead of stdout");
  decompose->callback([&] { rc = run_decompose(dv, out_path); });

  auto* verify_cmd = app.add_subcommand(
      "verify", "Run the built-in reproduction and consistency checks");
  bool verify_full = false;
  verify_cmd->add_flag("--full", verify_full,
                       "Include the number-basis chain, exact-engine "
                       "convergence, and fuzz checks");
  verify_cmd->callback([&] { rc = run_verify(verify_full); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace qisim::cli
