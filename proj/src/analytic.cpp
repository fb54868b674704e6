#include "qisim/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "qisim/errors.hpp"

namespace qisim::analytic {

double ParamPoint::squeezed_var() const { return std::exp(-2.0 * squeeze_r); }

void ParamPoint::validate() const {
  if (!(photons > 0.0)) throw std::invalid_argument("ParamPoint: photons must be > 0");
  if (squeeze_r < 0.0) throw std::invalid_argument("ParamPoint: squeeze_r must be >= 0");
  if (split_ratio < 0.0 || split_ratio > 1.0)
    throw std::invalid_argument("ParamPoint: split_ratio must lie in [0, 1]");
  if (gain < 1.0) throw std::invalid_argument("ParamPoint: gain must be >= 1");
  if (loss < 0.0 || loss > 1.0)
    throw std::invalid_argument("ParamPoint: loss must lie in [0, 1]");
}

double interference_signal(const ParamPoint& p) {
  p.validate();
  return 2.0 * std::sqrt((1.0 - p.loss) * (1.0 - p.split_ratio) * p.split_ratio) *
         p.gain * p.photons;
}

double interference_noise(const ParamPoint& p) {
  p.validate();
  const double g2 = p.gain * p.gain;
  const double radicand =
      (g2 * (1.0 - p.loss) * (p.split_ratio + p.squeezed_var()) +
       p.split_ratio * (2.0 * p.loss - 1.0)) *
      p.photons;
  // Nonnegative for any G >= 1; a negative value means the caller bypassed
  // validation with G < 1.
  if (radicand < 0.0)
    throw EvaluationError("interference_noise: negative variance radicand (gain < 1?)");
  return std::sqrt(radicand);
}

double sensitivity(const ParamPoint& p) {
  const double signal = interference_signal(p);
  if (signal <= 0.0)
    throw EvaluationError("sensitivity: interference slope vanishes (split 0/1 or full loss)");
  return interference_noise(p) / signal;
}

double sql(double photons) {
  if (!(photons > 0.0)) throw std::invalid_argument("sql: photons must be > 0");
  return 1.0 / std::sqrt(photons);
}

double enhancement_m_db(const ParamPoint& p) {
  ParamPoint bare = p;
  bare.squeeze_r = 0.0;
  return -20.0 * std::log10(sensitivity(p) / sensitivity(bare));
}

double relative_snr_db(const ParamPoint& p) {
  const double ratio = interference_signal(p) / interference_noise(p);
  return 20.0 * std::log10(ratio / std::sqrt(p.photons));
}

double optimal_split(double loss, double squeeze_r) {
  if (loss < 0.0 || loss > 1.0)
    throw std::invalid_argument("optimal_split: loss must lie in [0, 1]");
  if (squeeze_r < 0.0)
    throw std::invalid_argument("optimal_split: squeeze_r must be >= 0");
  const double s = std::exp(-2.0 * squeeze_r);
  if (loss == 0.0) return 0.5;
  if (loss <= 0.5) {
    // Root of l T^2 + 2(1-l) s T - (1-l) s, written as 1/(1 + sqrt(1 - u))
    // with u = l / ((l-1) s) so that l -> 0 stays exact instead of
    // cancelling catastrophically.
    const double u = loss / ((loss - 1.0) * s);
    return 1.0 / (1.0 + std::sqrt(1.0 - u));
  }
  return s * (std::sqrt(1.0 + 1.0 / s) - 1.0);
}

GainChoice optimal_gain(double loss) {
  if (loss < 0.0 || loss > 1.0)
    throw std::invalid_argument("optimal_gain: loss must lie in [0, 1]");
  if (loss <= 0.5) return {false, 1.0};
  return {true, 0.0};
}

double optimal_sensitivity(double loss, double squeeze_r, double photons) {
  if (!(photons > 0.0))
    throw std::invalid_argument("optimal_sensitivity: photons must be > 0");
  const double t = optimal_split(loss, squeeze_r);
  const double s = std::exp(-2.0 * squeeze_r);
  if (loss <= 0.5) {
    return std::sqrt((t * loss + (1.0 - loss) * s) /
                     (4.0 * (1.0 - t) * t * (1.0 - loss))) /
           std::sqrt(photons);
  }
  return std::sqrt((t + s) / (4.0 * (1.0 - t) * t)) / std::sqrt(photons);
}

double matched_gain(double split_ratio, double loss) {
  if (split_ratio <= 0.0 || split_ratio >= 1.0)
    throw std::invalid_argument("matched_gain: split_ratio must lie in (0, 1)");
  if (loss < 0.0 || loss >= 1.0)
    throw std::invalid_argument("matched_gain: loss must lie in [0, 1)");
  const double gain =
      1.0 / (2.0 * std::sqrt((1.0 - loss) * (1.0 - split_ratio) * split_ratio));
  if (gain < 1.0)
    throw EvaluationError("matched_gain: slope constraint would need gain < 1");
  return gain;
}

double squeeze_db_from_r(double r) {
  if (r < 0.0) throw std::invalid_argument("squeeze_db_from_r: r must be >= 0");
  return 20.0 * r / std::log(10.0);
}

double squeeze_r_from_db(double db) {
  if (db < 0.0) throw std::invalid_argument("squeeze_r_from_db: db must be >= 0");
  return db * std::log(10.0) / 20.0;
}

}  // namespace qisim::analytic
