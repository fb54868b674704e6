#pragma once

namespace qisim::analytic {

// Operating point of the amplified squeezed-light interferometer. `photons`
// is the mean photon number N of the coherent input, `squeeze_r` the input
// squeezing parameter (P-squeezed, so the squeezed variance is e^{-2r}),
// `split_ratio` the first splitter transmissivity T toward the reference arm,
// `gain` the amplitude gain G of the in-arm amplifier, `loss` the power loss
// rate l of the signal arm.
struct ParamPoint {
  double photons = 1.0;
  double squeeze_r = 0.0;
  double split_ratio = 0.5;
  double gain = 1.0;
  double loss = 0.0;

  // Squeezed-quadrature variance e^{-2r}.
  double squeezed_var() const;
  void validate() const;
};

// Mid-fringe slope of the intensity difference: 2 sqrt((1-l)(1-T)T) G N.
double interference_signal(const ParamPoint& p);

// Intensity-difference noise at mid-fringe:
// sqrt([G^2 (1-l)(T + e^{-2r}) + T (2l - 1)] N).
double interference_noise(const ParamPoint& p);

// Phase sensitivity delta_phi = noise / signal.
double sensitivity(const ParamPoint& p);

// Shot-noise-limited sensitivity 1/sqrt(N).
double sql(double photons);

// Squeezing enhancement at fixed (T, G, l):
// M = -20 log10(delta_phi(r) / delta_phi(r=0)). Zero squeezing gives 0.
double enhancement_m_db(const ParamPoint& p);

// SNR in dB relative to the lossless unsqueezed balanced interferometer at
// the same photon number: 20 log10((signal/noise) / sqrt(N)).
double relative_snr_db(const ParamPoint& p);

// Sensitivity-optimal splitter transmissivity. 0.5 when lossless; the root
// of l T^2 + 2(1-l) e^{-2r} T - (1-l) e^{-2r} for 0 < l <= 0.5 (evaluated in
// a cancellation-free form); e^{-2r} (sqrt(1 + e^{2r}) - 1) for l > 0.5.
double optimal_split(double loss, double squeeze_r);

// Sensitivity-optimal gain: exactly 1 up to l = 0.5; above that the optimum
// is asymptotic (sensitivity improves monotonically with G toward a finite
// limit) and is represented by the tag, never by a floating infinity.
struct GainChoice {
  bool asymptotic = false;
  double value = 1.0;  // meaningful when !asymptotic
};
GainChoice optimal_gain(double loss);

// Sensitivity at (optimal T, optimal G). For l <= 0.5 this is the G=1 form;
// for l > 0.5 the G->infinity limit sqrt((T + e^{-2r}) / (4 (1-T) T N)),
// which no longer depends on the loss.
double optimal_sensitivity(double loss, double squeeze_r, double photons);

// Gain that pins the mid-fringe slope at N regardless of loss and split:
// 2 G sqrt((1-l)(1-T)T) = 1. Throws EvaluationError if that would need G < 1.
double matched_gain(double split_ratio, double loss);

double squeeze_db_from_r(double r);
double squeeze_r_from_db(double db);

}  // namespace qisim::analytic
