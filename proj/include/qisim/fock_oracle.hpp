#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qisim/circuit.hpp"
#include "qisim/gaussian_state.hpp"

namespace qisim {

// Brute-force truncated Fock-space simulator used as an independent oracle
// for the Gaussian engine. Gates are dense matrix exponentials of truncated
// generators, built with a guard band (constructed at cutoff+4 per mode, read
// back at the cutoff) to suppress truncation edge artifacts. Probability that
// leaks past the cutoff is tracked, never silently renormalized away:
// expectation values divide by the current norm and `truncation_warning`
// reports when the accumulated leakage exceeds 1e-6.
class FockState {
 public:
  FockState(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }

  void displace(int mode, std::complex<double> alpha);
  // angle 0 squeezes P, matching the Gaussian engine convention.
  void squeeze(int mode, double r, double angle = 0.0);
  void beamsplit(int mode_i, int mode_j, double transmissivity);
  void phase_shift(int mode, double phi);
  // cosh(g) = gain; output means follow b' = G b + sqrt(G^2-1) w^dag.
  void two_mode_squeeze(int signal_mode, int idler_mode, double gain);
  void attenuate(int mode, int ancilla_mode, double loss);

  // Test preparation helper: collapses to the basis state |occupation>.
  void set_fock(const std::vector<int>& occupation);

  double norm_squared() const;
  double leakage() const { return leakage_; }
  bool truncation_warning() const { return leakage_ > 1e-6; }

  double probability(const std::vector<int>& occupation) const;
  double mean_photon(int mode) const;
  std::complex<double> mean_annihilation(int mode) const;
  Eigen::VectorXd quadrature_mean() const;
  Eigen::MatrixXd quadrature_covariance() const;

  ObservableStats nminus_stats(int mode_i, int mode_j, double phi) const;

 private:
  void check_mode(int mode, const char* op) const;
  void apply_single(int mode, const Eigen::MatrixXcd& gate);
  void apply_pair(int mode_i, int mode_j, const Eigen::MatrixXcd& gate);
  void record_leakage();
  Eigen::VectorXcd lowered(int mode) const;  // a_mode |psi>
  Eigen::VectorXcd raised(int mode) const;   // a_mode^dag |psi>, top level dropped

  int n_modes_ = 0;
  int cutoff_ = 0;
  std::vector<long> strides_;
  Eigen::VectorXcd amp_;
  double leakage_ = 0.0;

  static constexpr int kGuard = 4;
};

void apply_circuit(FockState& state, const std::vector<CircuitOp>& ops);

// Fock-vs-Gaussian comparison of the intensity-difference moments for one
// replayed circuit. The mean deviation is normalized by max(|mean|, noise
// std) because locked operating points have mean ~ 0; the variance deviation
// is plain relative.
struct ChainAgreement {
  double gauss_mean = 0.0;
  double gauss_variance = 0.0;
  double fock_mean = 0.0;
  double fock_variance = 0.0;
  double mean_deviation = 0.0;
  double variance_deviation = 0.0;
  double leakage = 0.0;

  double worst_deviation() const {
    return mean_deviation > variance_deviation ? mean_deviation : variance_deviation;
  }
};

ChainAgreement full_chain_check(const std::vector<CircuitOp>& ops, int n_modes,
                                int mode_i, int mode_j, double phi, int cutoff);

}  // namespace qisim
