#include "qisim/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "qisim/analytic.hpp"
#include "qisim/errors.hpp"

namespace qisim::opt {

namespace {

constexpr double kTMin = 1e-4;
constexpr double kTMax = 1.0 - 1e-4;
constexpr int kGridPoints = 64;
constexpr double kAsymptoteRelTol = 1e-6;

}  // namespace

GoldenResult golden_section(const std::function<double(double)>& f, double a,
                            double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("golden_section: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section: tol must be > 0");

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int evals = 2;
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
    ++evals;
  }
  GoldenResult out;
  out.x = 0.5 * (a + b);
  out.f = f(out.x);
  out.evaluations = evals + 1;
  return out;
}

OptimizationOutcome minimize_sensitivity(double loss, double squeeze_r,
                                         double photons, GainSearch mode,
                                         double g_max) {
  if (loss < 0.0 || loss >= 1.0)
    throw std::invalid_argument("minimize_sensitivity: loss must lie in [0, 1)");
  if (squeeze_r < 0.0)
    throw std::invalid_argument("minimize_sensitivity: squeeze_r must be >= 0");
  if (!(photons > 0.0))
    throw std::invalid_argument("minimize_sensitivity: photons must be > 0");
  if (g_max < 1.0)
    throw std::invalid_argument("minimize_sensitivity: g_max must be >= 1");

  OptimizationOutcome out;
  long evals = 0;

  const bool free_search = (mode == GainSearch::Free);
  const bool high_loss = loss > 0.5;
  const double gain = free_search ? (high_loss ? g_max : 1.0) : 0.0;

  auto objective = [&](double t) {
    ++evals;
    analytic::ParamPoint p;
    p.photons = photons;
    p.squeeze_r = squeeze_r;
    p.split_ratio = t;
    p.loss = loss;
    p.gain = free_search ? gain : analytic::matched_gain(t, loss);
    return analytic::sensitivity(p);
  };

  // Coarse scan brackets the minimum; the matched objective can develop
  // extra structure near its edges, so never hand golden section the raw
  // full interval.
  int best = -1;
  double best_f = 0.0;
  double grid_x[kGridPoints + 1];
  for (int i = 0; i <= kGridPoints; ++i) {
    const double t = kTMin + (kTMax - kTMin) * double(i) / kGridPoints;
    grid_x[i] = t;
    double f;
    try {
      f = objective(t);
    } catch (const EvaluationError&) {
      continue;  // infeasible grid point under the slope constraint
    }
    if (best < 0 || f < best_f) {
      best = i;
      best_f = f;
    }
  }
  if (best < 0)
    throw EvaluationError("minimize_sensitivity: no feasible split ratio");

  const double lo = grid_x[best > 0 ? best - 1 : 0];
  const double hi = grid_x[best < kGridPoints ? best + 1 : kGridPoints];
  const GoldenResult gr = golden_section(objective, lo, hi, 1e-7);

  out.t_star = gr.x;
  out.delta_phi_star = gr.f;
  out.evaluations = evals;

  if (free_search) {
    out.g_star = gain;
    if (high_loss) {
      // Flag the asymptotic optimum when g_max has already reached the
      // G->infinity sensitivity limit at the found split.
      analytic::ParamPoint p;
      p.photons = photons;
      p.squeeze_r = squeeze_r;
      p.split_ratio = out.t_star;
      p.loss = loss;
      p.gain = g_max;
      const double limit =
          std::sqrt((out.t_star + p.squeezed_var()) /
                    (4.0 * (1.0 - out.t_star) * out.t_star)) /
          std::sqrt(photons);
      out.gain_asymptotic =
          std::abs(analytic::sensitivity(p) - limit) / limit < kAsymptoteRelTol;
    }
  } else {
    out.g_star = analytic::matched_gain(out.t_star, loss);
  }

  out.analytic_t = analytic::optimal_split(loss, squeeze_r);
  out.analytic_delta_phi = analytic::optimal_sensitivity(loss, squeeze_r, photons);
  out.t_deviation = std::abs(out.t_star - out.analytic_t);
  out.delta_phi_rel_gap =
      (out.delta_phi_star - out.analytic_delta_phi) / out.analytic_delta_phi;
  return out;
}

ValidationReport validate_against_analytic(double loss, double squeeze_r) {
  const OptimizationOutcome res =
      minimize_sensitivity(loss, squeeze_r, 1.0, GainSearch::Free);
  ValidationReport report;
  report.t_numeric = res.t_star;
  report.t_analytic = res.analytic_t;
  report.t_deviation = res.t_deviation;
  report.delta_phi_numeric = res.delta_phi_star;
  report.delta_phi_analytic = res.analytic_delta_phi;
  report.delta_phi_rel_gap = std::abs(res.delta_phi_rel_gap);
  report.passed = report.t_deviation < 1e-4 && report.delta_phi_rel_gap < 1e-6;
  return report;
}

}  // namespace qisim::opt
