#include "qisim/curves.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qisim::curves {

namespace {

constexpr const char* kTool = "qisim 0.1.0";
constexpr double kFig2Photons = 4e14;
constexpr double kFig4Photons = 1.2e15;
constexpr double kFig4SqueezeR = 0.48;

double fig2_squeeze_r() { return std::log(10.0) / 2.0; }  // exactly 10 dB

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> range_values(double lo, double hi, double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("sweep axis: step must be > 0");
  if (hi < lo) throw std::invalid_argument("sweep axis: empty range");
  const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (long k = 0; k < count; ++k) out.push_back(lo + k * step);
  return out;
}

const char* axis_column(const std::string& param) {
  if (param == "l") return "loss";
  if (param == "G") return "gain";
  if (param == "T") return "split_ratio";
  if (param == "r") return "squeeze_r";
  throw std::invalid_argument("sweep axis: unknown parameter '" + param +
                              "' (expected l, G, T or r)");
}

void apply_axis(scheme::SchemeConfig& cfg, const std::string& param, double v) {
  if (param == "l") {
    cfg.params.loss = v;
  } else if (param == "G") {
    cfg.params.gain = v;
    cfg.gain_mode = scheme::GainMode::Fixed;
  } else if (param == "T") {
    cfg.params.split_ratio = v;
  } else {
    cfg.params.squeeze_r = v;
  }
}

void check_axis_scheme(const std::string& param, scheme::Scheme s,
                       const scheme::SchemeConfig& base) {
  if (param == "T" && s != scheme::Scheme::Custom)
    throw std::invalid_argument(
        "sweep: the splitter can only be swept for the custom scheme");
  if (param == "G") {
    if (s == scheme::Scheme::Cqi)
      throw std::invalid_argument("sweep: cqi has no gain to sweep");
    if (base.gain_mode == scheme::GainMode::MatchedPhotonNumber)
      throw std::invalid_argument(
          "sweep: gain sweep conflicts with the photon-number constraint");
  }
}

void common_meta(ser::CsvTable& t, const scheme::SchemeConfig& cfg) {
  t.add_meta("tool", kTool);
  t.add_meta("engine", scheme::engine_name(cfg.engine));
  t.add_meta("photons", cfg.params.photons);
  t.add_meta("squeeze_r", cfg.params.squeeze_r);
  t.add_meta("squeeze_db", analytic::squeeze_db_from_r(cfg.params.squeeze_r));
  t.add_meta("lock_phase", cfg.lock_phase);
  t.add_meta("g_max", cfg.g_max);
  t.add_meta("m_convention", "r=0 reference re-resolves the scheme policy");
  t.add_meta("degradation_baseline", "same scheme at its lossless optimum");
}

scheme::Metrics eval_scheme(const scheme::SchemeConfig& base, scheme::Scheme s) {
  scheme::SchemeConfig cfg = base;
  cfg.scheme = s;
  return scheme::evaluate(cfg);
}

ser::CsvTable fig2_noise_vs_gain(const std::string& id, double loss) {
  const double r = fig2_squeeze_r();
  const double t_opt = analytic::optimal_split(loss, r);

  scheme::SchemeConfig base;
  base.scheme = scheme::Scheme::Custom;
  base.gain_mode = scheme::GainMode::Fixed;
  base.params.photons = kFig2Photons;
  base.params.squeeze_r = r;
  base.params.split_ratio = t_opt;
  base.params.loss = loss;

  ser::CsvTable t;
  t.add_meta("figure", id);
  common_meta(t, base);
  t.add_meta("loss", loss);
  t.add_meta("split_ratio", t_opt);
  t.add_meta("split_choice", "optimal split for this loss and squeezing");
  t.add_meta("normalization", "signal per photon; variances per photon");
  t.columns = {"gain", "signal_over_photons", "amp_noise_var_over_photons",
               "loss_noise_var_over_photons", "total_noise_var_over_photons"};

  const double n = base.params.photons;
  for (int k = 0; k <= 80; ++k) {
    base.params.gain = std::pow(10.0, k / 40.0);
    const scheme::Metrics m = eval_scheme(base, scheme::Scheme::Custom);
    double loss_var = 0.0, amp_var = 0.0;
    for (const auto& [tag, share] : m.breakdown)
      (tag == "loss-vacuum" ? loss_var : amp_var) += share;
    t.rows.push_back({base.params.gain, m.signal_slope / n, amp_var / n,
                      loss_var / n, (amp_var + loss_var) / n});
  }
  return t;
}

ser::CsvTable fig2_vs_gain_curves(const std::string& id) {
  const bool snr = (id == "fig2c");
  const std::vector<double> losses = {0.2, 0.4, 0.5, 0.6, 0.9};

  scheme::SchemeConfig base;
  base.scheme = scheme::Scheme::QiG;
  base.gain_mode = scheme::GainMode::Fixed;
  base.params.photons = kFig2Photons;
  base.params.squeeze_r = fig2_squeeze_r();

  ser::CsvTable t;
  t.add_meta("figure", id);
  common_meta(t, base);
  t.add_meta("scheme", "qig");
  t.add_meta("split_ratio", 0.5);
  t.columns = {"gain"};
  for (double l : losses)
    t.columns.push_back(std::string(snr ? "rel_snr_db_l" : "m_db_l") +
                        short_num(l));

  for (int k = 0; k <= 90; ++k) {
    const double gain = std::pow(10.0, k / 30.0);
    std::vector<double> row = {gain};
    for (double l : losses) {
      base.params.gain = gain;
      base.params.loss = l;
      const scheme::Metrics m = eval_scheme(base, scheme::Scheme::QiG);
      row.push_back(snr ? m.rel_snr_db : m.m_db);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

ser::CsvTable fig2_vs_loss(const std::string& id) {
  const bool sensitivity = (id == "fig2e");
  const double r = fig2_squeeze_r();

  scheme::SchemeConfig base;
  base.gain_mode = scheme::GainMode::Free;
  base.params.photons = kFig2Photons;
  base.params.squeeze_r = r;

  ser::CsvTable t;
  t.add_meta("figure", id);
  common_meta(t, base);
  t.add_meta("gain_mode", "free");
  if (sensitivity)
    t.add_meta("normalization", "delta_phi times sqrt(photons)");
  t.columns = {"loss"};
  for (const char* s : {"cqi", "qig", "qitg"})
    t.columns.push_back(std::string(s) +
                        (sensitivity ? "_delta_phi_sqrtn" : "_m_db"));
  if (sensitivity) {
    t.columns.push_back("sql_sqrtn");
    t.columns.push_back("lossless_cqi_sqrtn");
  }

  const double sqrt_n = std::sqrt(base.params.photons);
  for (double l : range_values(0.0, 0.99, 0.01)) {
    base.params.loss = l;
    std::vector<double> row = {l};
    for (scheme::Scheme s :
         {scheme::Scheme::Cqi, scheme::Scheme::QiG, scheme::Scheme::QiTG}) {
      const scheme::Metrics m = eval_scheme(base, s);
      row.push_back(sensitivity ? m.delta_phi * sqrt_n : m.m_db);
    }
    if (sensitivity) {
      row.push_back(1.0);
      row.push_back(std::exp(-r));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

ser::CsvTable fig4_vs_loss(const std::string& id) {
  scheme::SchemeConfig base;
  base.params.photons = kFig4Photons;
  base.params.squeeze_r = kFig4SqueezeR;

  ser::CsvTable t;
  t.add_meta("figure", id);
  common_meta(t, base);
  t.add_meta("gain_mode", "constrained-photon-number for qig and qitg; cqi free");
  t.add_meta("qitg_split", "re-optimized under the photon-number constraint");

  std::string metric;
  if (id == "fig4a") metric = "signal_over_photons";
  else if (id == "fig4b") metric = "noise_over_sqrt_photons";
  else if (id == "fig4c") metric = "delta_phi_sqrtn";
  else metric = "m_db";

  t.columns = {"loss"};
  for (const char* s : {"cqi", "qig", "qitg"})
    t.columns.push_back(std::string(s) + "_" + metric);
  if (id == "fig4c") t.columns.push_back("sql_sqrtn");

  const double n = base.params.photons;
  for (double l : range_values(0.0, 0.95, 0.01)) {
    base.params.loss = l;
    std::vector<double> row = {l};
    for (scheme::Scheme s :
         {scheme::Scheme::Cqi, scheme::Scheme::QiG, scheme::Scheme::QiTG}) {
      base.gain_mode = (s == scheme::Scheme::Cqi)
                           ? scheme::GainMode::Free
                           : scheme::GainMode::MatchedPhotonNumber;
      const scheme::Metrics m = eval_scheme(base, s);
      if (id == "fig4a") row.push_back(m.signal_slope / n);
      else if (id == "fig4b") row.push_back(m.noise_std / std::sqrt(n));
      else if (id == "fig4c") row.push_back(m.delta_phi * std::sqrt(n));
      else row.push_back(m.m_db);
    }
    if (id == "fig4c") row.push_back(1.0);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

SweepAxis parse_axis(const std::string& text) {
  const size_t eq = text.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("sweep axis: expected name=range, got '" + text + "'");
  SweepAxis axis;
  axis.param = text.substr(0, eq);
  axis_column(axis.param);  // validates the name
  const std::string body = text.substr(eq + 1);
  if (body.empty()) throw std::invalid_argument("sweep axis: empty range");

  if (body.find(':') != std::string::npos) {
    double lo, hi, step;
    char tail;
    if (std::sscanf(body.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &tail) != 3)
      throw std::invalid_argument("sweep axis: expected lo:hi:step in '" + text + "'");
    axis.values = range_values(lo, hi, step);
    return axis;
  }

  size_t pos = 0;
  while (pos <= body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = body.substr(pos, comma - pos);
    size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("sweep axis: bad number '" + item + "'");
    }
    if (used != item.size())
      throw std::invalid_argument("sweep axis: bad number '" + item + "'");
    axis.values.push_back(v);
    pos = comma + 1;
  }
  return axis;
}

ser::CsvTable run_sweep(const scheme::SchemeConfig& base,
                        const std::vector<scheme::Scheme>& schemes,
                        const std::vector<SweepAxis>& axes) {
  if (axes.empty() || axes.size() > 2)
    throw std::invalid_argument("sweep: need one or two axes");
  if (schemes.empty())
    throw std::invalid_argument("sweep: need at least one scheme");
  size_t total = 1;
  for (const auto& axis : axes) {
    if (axis.values.empty())
      throw std::invalid_argument("sweep axis: empty range");
    total *= axis.values.size();
    for (scheme::Scheme s : schemes) check_axis_scheme(axis.param, s, base);
  }
  if (axes.size() == 2 && axes[0].param == axes[1].param)
    throw std::invalid_argument("sweep: axes must differ");
  if (total > 1000000)
    throw std::invalid_argument("sweep: more than 1e6 points");

  ser::CsvTable t;
  common_meta(t, base);
  t.add_meta("gain_mode", scheme::gain_mode_name(base.gain_mode));
  std::string names;
  for (scheme::Scheme s : schemes)
    names += std::string(names.empty() ? "" : ",") + scheme::scheme_name(s);
  t.add_meta("schemes", names);
  auto swept = [&](const std::string& p) {
    for (const auto& a : axes)
      if (a.param == p) return true;
    return false;
  };
  if (!swept("l")) t.add_meta("loss", base.params.loss);
  if (!swept("G")) t.add_meta("gain_input", base.params.gain);
  if (!swept("T")) t.add_meta("split_input", base.params.split_ratio);

  for (const auto& axis : axes) t.columns.push_back(axis_column(axis.param));
  for (scheme::Scheme s : schemes) {
    const std::string name = scheme::scheme_name(s);
    t.columns.push_back(name + "_delta_phi");
    t.columns.push_back(name + "_m_db");
    t.columns.push_back(name + "_rel_snr_db");
  }

  const size_t inner = axes.size() == 2 ? axes[1].values.size() : 1;
  for (size_t i = 0; i < total; ++i) {
    std::vector<double> row;
    for (size_t a = 0; a < axes.size(); ++a) {
      const size_t idx = (a == 0) ? i / inner : i % inner;
      row.push_back(axes[a].values[idx]);
    }
    for (scheme::Scheme s : schemes) {
      scheme::SchemeConfig cfg = base;
      cfg.scheme = s;
      for (size_t a = 0; a < axes.size(); ++a) apply_axis(cfg, axes[a].param, row[a]);
      const scheme::Metrics m = scheme::evaluate(cfg);
      row.push_back(m.delta_phi);
      row.push_back(m.m_db);
      row.push_back(m.rel_snr_db);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {
      "fig2a", "fig2b", "fig2c", "fig2d", "fig2e",
      "fig2f", "fig4a", "fig4b", "fig4c", "fig4d"};
  return ids;
}

ser::CsvTable figure_series(const std::string& id) {
  if (id == "fig2a") return fig2_noise_vs_gain(id, 0.2);
  if (id == "fig2b") return fig2_noise_vs_gain(id, 0.9);
  if (id == "fig2c" || id == "fig2d") return fig2_vs_gain_curves(id);
  if (id == "fig2e" || id == "fig2f") return fig2_vs_loss(id);
  if (id == "fig4a" || id == "fig4b" || id == "fig4c" || id == "fig4d")
    return fig4_vs_loss(id);
  throw std::invalid_argument("unknown figure id: " + id);
}

}  // namespace qisim::curves
