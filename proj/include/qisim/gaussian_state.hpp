#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace qisim {

// Quadrature convention: X = a + a^dag, P = i(a^dag - a), so the vacuum has
// unit variance in each quadrature and [X, P] = 2i. Quadratures are ordered
// (X_1, P_1, ..., X_n, P_n).

struct ObservableStats {
  double mean = 0.0;
  double variance = 0.0;
};

struct SourceTag {
  enum class Kind { CoherentInput, SqueezedInput, AmplifierIdler, LossVacuum, Other };
  Kind kind = Kind::Other;
  std::string label;  // distinguishes same-kind sources; empty for the canonical one

  std::string str() const;
  bool operator==(const SourceTag&) const = default;
};

// One statistically independent input source: the modes it feeds and its
// input covariance (2k x 2k for k modes). The direct sum of all blocks is the
// input covariance of the state; the cumulative symplectic map never touches
// the blocks, which is what makes per-source noise attribution exact.
struct SourceBlock {
  SourceTag tag;
  std::vector<int> modes;
  Eigen::MatrixXd cov;
};

struct LinearStats {
  double variance = 0.0;
  std::vector<std::pair<std::string, double>> by_source;  // sums to variance
};

struct PhysicalityReport {
  double symplectic_deviation = 0.0;  // max |S Omega S^T - Omega|
  double min_uncertainty_eig = 0.0;   // smallest eigenvalue of sigma + i Omega
  double tolerance = 1e-9;

  bool symplectic_ok() const { return symplectic_deviation <= tolerance; }
  bool uncertainty_ok() const { return min_uncertainty_eig >= -tolerance; }
  bool passed() const { return symplectic_ok() && uncertainty_ok(); }
};

// Multimode Gaussian state held as (cumulative symplectic map S, displacement
// mu, tagged input covariance blocks). The current covariance is
// S * sigma_in * S^T and is derived on demand. Value semantics: copy freely.
class GaussianState {
 public:
  static GaussianState vacuum(int n_modes);
  static GaussianState from_blocks(std::vector<SourceBlock> blocks);

  int n_modes() const { return n_modes_; }

  // Gaussian operations; all mutate in place.
  void displace(int mode, double dx, double dp);
  // angle 0 squeezes P: Var(P) -> e^{-2r} Var(P), Var(X) -> e^{2r} Var(X).
  void squeeze(int mode, double r, double angle = 0.0);
  // a_i' = sqrt(T) a_i - sqrt(1-T) a_j,  a_j' = sqrt(1-T) a_i + sqrt(T) a_j.
  void beamsplit(int mode_i, int mode_j, double transmissivity);
  // X -> X cos(phi) - P sin(phi), P -> X sin(phi) + P cos(phi)  (a -> e^{i phi} a).
  void phase_shift(int mode, double phi);
  // Phase-insensitive amplifier: <b'> = G <b>, Var -> G^2 Var + (G^2 - 1),
  // realized as a two-mode squeeze against a vacuum idler (cosh g = G).
  void amplify(int signal_mode, int idler_mode, double gain);
  // Beamsplit of transmissivity (1 - loss) against a vacuum ancilla.
  void attenuate(int mode, int ancilla_mode, double loss);

  // Renames the input block feeding `mode`. Throws if the tag is already in
  // use by another block.
  void tag_source(int mode, SourceTag tag);

  const Eigen::VectorXd& displacement() const { return mu_; }
  const Eigen::MatrixXd& cumulative_map() const { return map_; }
  const std::vector<SourceBlock>& source_blocks() const { return blocks_; }
  Eigen::MatrixXd covariance() const;
  std::pair<double, double> quadrature_mean(int mode) const;
  bool is_vacuum_mode(int mode, double tol = 1e-9) const;

  double mean_photon(int mode) const;

  // Exact mean and variance of J(phi) = a_i^dag a_j e^{i phi} + h.c., the
  // intensity difference behind a balanced recombiner, from the Gaussian
  // fourth-moment expansion. Includes the commutator correction, so the
  // two-mode vacuum gives variance exactly 0.
  ObservableStats nminus_exact(int mode_i, int mode_j, double phi) const;

  // Variance of a linear form c^T z (z the quadrature vector), split by input
  // source: the contribution of block k is d_k^T cov_k d_k with d = S^T c.
  LinearStats linear_observable_stats(const Eigen::VectorXd& coeffs) const;

  PhysicalityReport check_physical(double tol = 1e-9) const;

 private:
  GaussianState(int n_modes, std::vector<SourceBlock> blocks);

  void check_mode(int mode, const char* op) const;
  // Applies a 2x2 quadrature map to one mode of S and mu.
  void apply_single(int mode, const Eigen::Matrix2d& m);
  // Applies a 4x4 quadrature map to a mode pair (ordered X_i,P_i,X_j,P_j).
  void apply_pair(int mode_i, int mode_j, const Eigen::Matrix4d& m);
  SourceBlock& block_of(int mode);
  void auto_tag(int mode, SourceTag::Kind kind, const char* op);

  int n_modes_ = 0;
  Eigen::VectorXd mu_;    // 2n
  Eigen::MatrixXd map_;   // 2n x 2n, cumulative symplectic map
  std::vector<SourceBlock> blocks_;
};

// Symplectic form with [X, P] = 2i convention: Omega = direct sum of
// [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(int n_modes);

}  // namespace qisim
