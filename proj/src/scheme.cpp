#include "qisim/scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "qisim/errors.hpp"
#include "qisim/gaussian_state.hpp"
#include "qisim/optimize.hpp"

namespace qisim::scheme {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Intensity-difference slope and noise plus the per-source variance split.
// Keys match SourceTag::str() so the closed-form and linearized breakdowns
// are directly comparable.
struct EngineCore {
  double slope = 0.0;
  double noise = 0.0;
  std::vector<std::pair<std::string, double>> breakdown;
};

EngineCore closed_form_core(const Resolved& res) {
  const analytic::ParamPoint& p = res.params;
  const double n = p.photons;
  const double t = p.split_ratio;
  const double l = p.loss;
  const double s = p.squeezed_var();
  EngineCore out;
  if (res.gain_asymptotic) {
    // Per-unit-gain slope and noise; their ratio is the exact G->infinity
    // sensitivity limit, free of any g_max truncation.
    out.slope = 2.0 * std::sqrt((1.0 - l) * (1.0 - t) * t) * n;
    out.noise = std::sqrt((1.0 - l) * (t + s) * n);
    out.breakdown = {{"coherent-input", 0.0},
                     {"squeezed-input", (1.0 - l) * s * n},
                     {"amplifier-idler", (1.0 - l) * t * n},
                     {"loss-vacuum", 0.0}};
  } else {
    out.slope = analytic::interference_signal(p);
    out.noise = analytic::interference_noise(p);
    const double g2 = p.gain * p.gain;
    out.breakdown = {{"coherent-input", 0.0},
                     {"squeezed-input", g2 * (1.0 - l) * s * n},
                     {"amplifier-idler", t * (1.0 - l) * (g2 - 1.0) * n},
                     {"loss-vacuum", t * l * n}};
  }
  return out;
}

std::vector<CircuitOp> circuit_for(const analytic::ParamPoint& p, double phase) {
  using K = CircuitOp::Kind;
  return {
      {K::Displace, 0, 0, 2.0 * std::sqrt(p.photons), 0.0},
      {K::Squeeze, 1, 0, p.squeeze_r, 0.0},
      {K::Beamsplit, 0, 1, p.split_ratio},
      {K::Amplify, 1, 2, p.gain, 0.0},
      {K::Phase, 1, 0, phase, 0.0},
      {K::Attenuate, 1, 3, p.loss, 0.0},
  };
}

GaussianState propagate(const analytic::ParamPoint& p, double phase) {
  GaussianState state = GaussianState::vacuum(4);
  state.tag_source(0, {SourceTag::Kind::CoherentInput, ""});
  state.tag_source(1, {SourceTag::Kind::SqueezedInput, ""});
  apply_circuit(state, circuit_for(p, phase));
  return state;
}

EngineCore linearized_core(const SchemeConfig& config, const Resolved& res) {
  const GaussianState state = propagate(res.params, config.lock_phase);
  const auto [xa, pa] = state.quadrature_mean(0);
  const auto [xb, pb] = state.quadrature_mean(1);

  EngineCore out;
  // d<J>/dphi from the mean fields alone: the phase rotates mode 1, so
  // X_b' = -P_b, P_b' = X_b under the derivative.
  out.slope = std::abs(pa * xb - xa * pb) / 2.0;

  // First-order fluctuation coefficients of J = (X_a X_b + P_a P_b)/2
  // around the mean fields.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(8);
  c(0) = xb / 2.0;
  c(1) = pb / 2.0;
  c(2) = xa / 2.0;
  c(3) = pa / 2.0;
  LinearStats stats = state.linear_observable_stats(c);
  out.noise = std::sqrt(stats.variance);
  out.breakdown = std::move(stats.by_source);
  return out;
}

EngineCore exact_core(const SchemeConfig& config, const Resolved& res) {
  auto stats_at = [&](double offset) {
    return propagate(res.params, config.lock_phase + offset).nminus_exact(0, 1, 0.0);
  };

  const double h = 1e-6;
  const double s1 = (stats_at(h).mean - stats_at(-h).mean) / (2.0 * h);
  const double s2 = (stats_at(0.5 * h).mean - stats_at(-0.5 * h).mean) / h;
  const double slope = (4.0 * s2 - s1) / 3.0;
  if (std::abs(s1 - s2) > 1e-4 * std::abs(slope))
    throw EvaluationError(
        "evaluate: finite-difference slope unstable (Richardson steps disagree)");

  EngineCore out;
  out.slope = std::abs(slope);
  out.noise = std::sqrt(stats_at(0.0).variance);
  return out;
}

EngineCore engine_core(const SchemeConfig& config, const Resolved& res) {
  switch (config.engine) {
    case Engine::ClosedForm:
      return closed_form_core(res);
    case Engine::GaussianLinearized:
      return linearized_core(config, res);
    case Engine::GaussianExact:
      return exact_core(config, res);
  }
  throw std::logic_error("engine_core: unknown engine");
}

// Splitter minimizing the closed-form sensitivity at a caller-fixed gain
// (the QiTG policy under gain_mode=Fixed). Same grid-then-golden shape as
// the free optimizer.
double best_split_at_fixed_gain(const analytic::ParamPoint& base) {
  auto objective = [&](double t) {
    analytic::ParamPoint p = base;
    p.split_ratio = t;
    return analytic::sensitivity(p);
  };
  constexpr int kGrid = 64;
  constexpr double kLo = 1e-4, kHi = 1.0 - 1e-4;
  int best = 0;
  double best_f = objective(kLo);
  for (int i = 1; i <= kGrid; ++i) {
    const double t = kLo + (kHi - kLo) * double(i) / kGrid;
    const double f = objective(t);
    if (f < best_f) {
      best = i;
      best_f = f;
    }
  }
  const double lo = kLo + (kHi - kLo) * double(best > 0 ? best - 1 : 0) / kGrid;
  const double hi = kLo + (kHi - kLo) * double(best < kGrid ? best + 1 : kGrid) / kGrid;
  return opt::golden_section(objective, lo, hi, 1e-7).x;
}

double core_delta_phi(const SchemeConfig& config) {
  const Resolved res = resolve(config);
  const EngineCore core = engine_core(config, res);
  if (!(core.slope > 0.0) || !std::isfinite(core.slope))
    throw EvaluationError("evaluate: interference slope vanishes");
  return core.noise / core.slope;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Cqi: return "cqi";
    case Scheme::QiG: return "qig";
    case Scheme::QiTG: return "qitg";
    case Scheme::Custom: return "custom";
  }
  return "?";
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::ClosedForm: return "closed";
    case Engine::GaussianLinearized: return "linearized";
    case Engine::GaussianExact: return "exact";
  }
  return "?";
}

const char* gain_mode_name(GainMode m) {
  switch (m) {
    case GainMode::Free: return "free";
    case GainMode::MatchedPhotonNumber: return "constrained-photon-number";
    case GainMode::Fixed: return "fixed";
  }
  return "?";
}

void SchemeConfig::validate() const {
  params.validate();
  if (!(lock_phase > 0.0 && lock_phase < kPi))
    throw std::invalid_argument("SchemeConfig: lock_phase must lie in (0, pi)");
  if (!(probe_amplitude > 0.0 && probe_amplitude < 0.1))
    throw std::invalid_argument(
        "SchemeConfig: probe_amplitude must be positive and small");
  if (g_max < 1.0)
    throw std::invalid_argument("SchemeConfig: g_max must be >= 1");
  if (engine == Engine::ClosedForm && std::abs(lock_phase - kPi / 2.0) > 1e-12)
    throw std::invalid_argument(
        "SchemeConfig: the closed-form engine is defined at the pi/2 lock");
}

Resolved resolve(const SchemeConfig& config) {
  config.validate();
  Resolved res;
  res.params = config.params;
  analytic::ParamPoint& p = res.params;

  if (config.scheme == Scheme::Cqi) {
    // Gain mode intentionally ignored: the scheme has no amplifier knob.
    p.split_ratio = 0.5;
    p.gain = 1.0;
    return res;
  }
  if (config.scheme == Scheme::QiG) p.split_ratio = 0.5;

  switch (config.gain_mode) {
    case GainMode::Fixed:
      if (config.scheme == Scheme::QiTG)
        p.split_ratio = best_split_at_fixed_gain(p);
      break;
    case GainMode::MatchedPhotonNumber:
      if (config.scheme == Scheme::QiTG) {
        const opt::OptimizationOutcome out = opt::minimize_sensitivity(
            p.loss, p.squeeze_r, p.photons, opt::GainSearch::MatchedPhotonNumber,
            config.g_max);
        p.split_ratio = out.t_star;
        p.gain = out.g_star;
      } else {
        p.gain = analytic::matched_gain(p.split_ratio, p.loss);
      }
      break;
    case GainMode::Free: {
      if (config.scheme == Scheme::Custom) break;  // both knobs caller-owned
      if (config.scheme == Scheme::QiTG)
        p.split_ratio = analytic::optimal_split(p.loss, p.squeeze_r);
      const analytic::GainChoice choice = analytic::optimal_gain(p.loss);
      if (choice.asymptotic) {
        res.gain_asymptotic = true;
        p.gain = config.g_max;
      } else {
        p.gain = choice.value;
      }
      break;
    }
  }
  return res;
}

std::vector<CircuitOp> build_circuit(const SchemeConfig& config,
                                     double phase_offset) {
  const Resolved res = resolve(config);
  return circuit_for(res.params, config.lock_phase + phase_offset);
}

Metrics evaluate(const SchemeConfig& config) {
  config.validate();
  const Resolved res = resolve(config);
  const EngineCore core = engine_core(config, res);
  if (!(core.slope > 0.0) || !std::isfinite(core.slope))
    throw EvaluationError("evaluate: interference slope vanishes");

  Metrics m;
  m.signal_slope = core.slope;
  m.noise_std = core.noise;
  m.delta_phi = core.noise / core.slope;
  m.breakdown = core.breakdown;
  m.gain_asymptotic = res.gain_asymptotic;
  m.split_ratio = res.params.split_ratio;
  m.gain = res.params.gain;

  const double n = res.params.photons;
  m.rel_snr_db = 20.0 * std::log10((core.slope / core.noise) / std::sqrt(n));
  m.beyond_sql_db = -20.0 * std::log10(m.delta_phi * std::sqrt(n));

  SchemeConfig unsqueezed = config;
  unsqueezed.params.squeeze_r = 0.0;
  m.m_db = -20.0 * std::log10(m.delta_phi / core_delta_phi(unsqueezed));

  SchemeConfig lossless = config;
  lossless.params.loss = 0.0;
  m.degradation_db = 20.0 * std::log10(m.delta_phi / core_delta_phi(lossless));
  return m;
}

NoiseGroups noise_breakdown(const SchemeConfig& config) {
  SchemeConfig cfg = config;
  cfg.engine = Engine::GaussianLinearized;
  const Resolved res = resolve(cfg);
  EngineCore core = linearized_core(cfg, res);

  NoiseGroups groups;
  groups.by_source = std::move(core.breakdown);
  for (const auto& [tag, share] : groups.by_source) {
    groups.total_variance += share;
    if (tag.rfind("loss-vacuum", 0) == 0)
      groups.loss_induced += share;
    else
      groups.amplification_associated += share;
  }
  return groups;
}

double probe_response(const SchemeConfig& config) {
  config.validate();
  const Resolved res = resolve(config);
  const double with_probe =
      propagate(res.params, config.lock_phase + config.probe_amplitude)
          .nminus_exact(0, 1, 0.0)
          .mean;
  const double at_lock =
      propagate(res.params, config.lock_phase).nminus_exact(0, 1, 0.0).mean;
  return with_probe - at_lock;
}

}  // namespace qisim::scheme
