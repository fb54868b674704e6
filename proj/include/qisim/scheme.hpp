#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qisim/analytic.hpp"
#include "qisim/circuit.hpp"

namespace qisim::scheme {

// CQI pins T=0.5, G=1. QiG pins T=0.5 and leaves the gain to the gain mode.
// QiTG chooses the splitter itself (analytically in free mode, numerically
// otherwise). Custom takes both knobs from the caller's ParamPoint.
enum class Scheme { Cqi, QiG, QiTG, Custom };

enum class Engine { ClosedForm, GaussianLinearized, GaussianExact };

// Free: gain at its sensitivity optimum (1 below the l=0.5 transition,
// asymptotic above). MatchedPhotonNumber: gain pinned so the mid-fringe
// slope stays at N. Fixed: gain taken from the ParamPoint.
enum class GainMode { Free, MatchedPhotonNumber, Fixed };

const char* scheme_name(Scheme s);
const char* engine_name(Engine e);
const char* gain_mode_name(GainMode m);

struct SchemeConfig {
  Scheme scheme = Scheme::Cqi;
  analytic::ParamPoint params;  // split_ratio/gain read only where the policy allows
  Engine engine = Engine::ClosedForm;
  double lock_phase = 1.5707963267948966;  // pi/2 mid-fringe
  double probe_amplitude = 5e-4;
  GainMode gain_mode = GainMode::Free;
  double g_max = 1e4;  // stand-in gain when an asymptotic optimum meets a gaussian engine

  void validate() const;
};

// Operating point after the scheme policy has filled T and G. When the
// optimum is asymptotic, params.gain holds g_max (what the gaussian engines
// run at) and the closed-form engine takes its dedicated limit path instead.
struct Resolved {
  analytic::ParamPoint params;
  bool gain_asymptotic = false;
};

Resolved resolve(const SchemeConfig& config);

// Gate list for the resolved point: coherent input on mode 0, squeezed
// vacuum on mode 1, splitter, amplifier against idler mode 2, arm phase
// lock + phase_offset, loss against ancilla mode 3. The balanced recombiner
// is folded into the intensity-difference observable on modes (0, 1).
// Identity gates (G=1, r=0, l=0) are emitted anyway so the op list shape and
// the source tagging never depend on the parameter values.
std::vector<CircuitOp> build_circuit(const SchemeConfig& config,
                                     double phase_offset = 0.0);

struct Metrics {
  double signal_slope = 0.0;
  double noise_std = 0.0;
  double delta_phi = 0.0;
  // Squeezing enhancement -20 log10(delta_phi / delta_phi at r=0), with the
  // scheme policy re-resolved at r=0 (a scheme that picks its own splitter
  // re-picks it for the unsqueezed reference).
  double m_db = 0.0;
  // 20 log10((slope/noise)/sqrt(N)): SNR relative to the lossless unsqueezed
  // balanced interferometer at the same photon number.
  double rel_snr_db = 0.0;
  // 20 log10(sql / delta_phi); positive when beating the SQL.
  double beyond_sql_db = 0.0;
  // 20 log10(delta_phi / delta_phi at l=0, same scheme at its lossless
  // optimum); positive under loss.
  double degradation_db = 0.0;
  // Variance by input source, summing to noise_std^2. Empty for the exact
  // engine, whose fourth-moment variance has no per-source split.
  std::vector<std::pair<std::string, double>> breakdown;
  bool gain_asymptotic = false;
  double split_ratio = 0.5;  // resolved operating point
  double gain = 1.0;
};

Metrics evaluate(const SchemeConfig& config);

struct NoiseGroups {
  std::vector<std::pair<std::string, double>> by_source;
  double loss_induced = 0.0;              // loss-vacuum share (T*l*N in closed form)
  double amplification_associated = 0.0;  // coherent + squeezed + idler shares
  double total_variance = 0.0;
};

// Per-source variance attribution at the operating point, always computed
// through the linearized gaussian engine regardless of config.engine.
NoiseGroups noise_breakdown(const SchemeConfig& config);

// Exact change of the mean intensity difference when the probe phase is
// added to the lock: <J>(lock + probe) - <J>(lock). For a small probe this
// is -slope * probe_amplitude to second order.
double probe_response(const SchemeConfig& config);

}  // namespace qisim::scheme
