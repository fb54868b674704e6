#include "qisim/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qisim {

namespace {

constexpr int kX = 0;
constexpr int kP = 1;

int quad(int mode, int which) { return 2 * mode + which; }

}  // namespace

std::string SourceTag::str() const {
  std::string base;
  switch (kind) {
    case Kind::CoherentInput: base = "coherent-input"; break;
    case Kind::SqueezedInput: base = "squeezed-input"; break;
    case Kind::AmplifierIdler: base = "amplifier-idler"; break;
    case Kind::LossVacuum: base = "loss-vacuum"; break;
    case Kind::Other: base = "other"; break;
  }
  if (!label.empty()) base += ":" + label;
  return base;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(quad(m, kX), quad(m, kP)) = 1.0;
    omega(quad(m, kP), quad(m, kX)) = -1.0;
  }
  return omega;
}

GaussianState::GaussianState(int n_modes, std::vector<SourceBlock> blocks)
    : n_modes_(n_modes),
      mu_(Eigen::VectorXd::Zero(2 * n_modes)),
      map_(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes)),
      blocks_(std::move(blocks)) {}

GaussianState GaussianState::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum: n_modes must be >= 1");
  std::vector<SourceBlock> blocks;
  blocks.reserve(n_modes);
  for (int m = 0; m < n_modes; ++m) {
    blocks.push_back({SourceTag{SourceTag::Kind::Other, "m" + std::to_string(m)},
                      {m},
                      Eigen::Matrix2d::Identity()});
  }
  return GaussianState(n_modes, std::move(blocks));
}

GaussianState GaussianState::from_blocks(std::vector<SourceBlock> blocks) {
  int n_modes = 0;
  for (const auto& b : blocks) n_modes += static_cast<int>(b.modes.size());
  if (n_modes < 1) throw std::invalid_argument("from_blocks: no modes");

  std::vector<bool> seen(n_modes, false);
  for (const auto& b : blocks) {
    const int k = static_cast<int>(b.modes.size());
    if (b.cov.rows() != 2 * k || b.cov.cols() != 2 * k)
      throw std::invalid_argument("from_blocks: covariance size must be 2k x 2k");
    if (!b.cov.isApprox(b.cov.transpose(), 1e-12))
      throw std::invalid_argument("from_blocks: covariance must be symmetric");
    for (int m : b.modes) {
      if (m < 0 || m >= n_modes || seen[m])
        throw std::invalid_argument("from_blocks: modes must partition 0..n-1");
      seen[m] = true;
    }
  }
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = i + 1; j < blocks.size(); ++j)
      if (blocks[i].tag == blocks[j].tag)
        throw std::invalid_argument("from_blocks: duplicate source tag " +
                                    blocks[i].tag.str());
  return GaussianState(n_modes, std::move(blocks));
}

void GaussianState::check_mode(int mode, const char* op) const {
  if (mode < 0 || mode >= n_modes_)
    throw std::invalid_argument(std::string(op) + ": mode index out of range");
}

void GaussianState::apply_single(int mode, const Eigen::Matrix2d& m) {
  const int x = quad(mode, kX);
  Eigen::Vector2d mu_part(mu_(x), mu_(x + 1));
  mu_.segment<2>(x) = m * mu_part;
  map_.middleRows<2>(x) = (m * map_.middleRows<2>(x)).eval();
}

void GaussianState::apply_pair(int mode_i, int mode_j, const Eigen::Matrix4d& m) {
  const int xi = quad(mode_i, kX);
  const int xj = quad(mode_j, kX);
  Eigen::Vector4d mu_part(mu_(xi), mu_(xi + 1), mu_(xj), mu_(xj + 1));
  Eigen::Vector4d mu_new = m * mu_part;
  mu_.segment<2>(xi) = mu_new.head<2>();
  mu_.segment<2>(xj) = mu_new.tail<2>();

  Eigen::MatrixXd rows(4, 2 * n_modes_);
  rows.topRows<2>() = map_.middleRows<2>(xi);
  rows.bottomRows<2>() = map_.middleRows<2>(xj);
  rows = (m * rows).eval();
  map_.middleRows<2>(xi) = rows.topRows<2>();
  map_.middleRows<2>(xj) = rows.bottomRows<2>();
}

void GaussianState::displace(int mode, double dx, double dp) {
  check_mode(mode, "displace");
  mu_(quad(mode, kX)) += dx;
  mu_(quad(mode, kP)) += dp;
}

void GaussianState::squeeze(int mode, double r, double angle) {
  check_mode(mode, "squeeze");
  if (r < 0.0) throw std::invalid_argument("squeeze: r must be >= 0");
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix2d rot, scale;
  rot << c, -s, s, c;
  scale << std::exp(r), 0.0, 0.0, std::exp(-r);
  apply_single(mode, rot * scale * rot.transpose());
}

void GaussianState::beamsplit(int mode_i, int mode_j, double transmissivity) {
  check_mode(mode_i, "beamsplit");
  check_mode(mode_j, "beamsplit");
  if (mode_i == mode_j) throw std::invalid_argument("beamsplit: modes must differ");
  if (transmissivity < 0.0 || transmissivity > 1.0)
    throw std::invalid_argument("beamsplit: transmissivity must lie in [0, 1]");
  const double ct = std::sqrt(transmissivity);
  const double st = std::sqrt(1.0 - transmissivity);
  Eigen::Matrix4d m;
  m << ct, 0, -st, 0,
       0, ct, 0, -st,
       st, 0, ct, 0,
       0, st, 0, ct;
  apply_pair(mode_i, mode_j, m);
}

void GaussianState::phase_shift(int mode, double phi) {
  check_mode(mode, "phase_shift");
  const double c = std::cos(phi), s = std::sin(phi);
  Eigen::Matrix2d m;
  m << c, -s, s, c;
  apply_single(mode, m);
}

void GaussianState::amplify(int signal_mode, int idler_mode, double gain) {
  check_mode(signal_mode, "amplify");
  check_mode(idler_mode, "amplify");
  if (signal_mode == idler_mode)
    throw std::invalid_argument("amplify: signal and idler must differ");
  if (gain < 1.0) throw std::invalid_argument("amplify: gain must be >= 1");
  if (!is_vacuum_mode(idler_mode))
    throw std::invalid_argument("amplify: idler mode must be in vacuum");
  const double g = std::sqrt(gain * gain - 1.0);
  Eigen::Matrix4d m;
  m << gain, 0, g, 0,
       0, gain, 0, -g,
       g, 0, gain, 0,
       0, -g, 0, gain;
  apply_pair(signal_mode, idler_mode, m);
  auto_tag(idler_mode, SourceTag::Kind::AmplifierIdler, "amplify");
}

void GaussianState::attenuate(int mode, int ancilla_mode, double loss) {
  check_mode(mode, "attenuate");
  check_mode(ancilla_mode, "attenuate");
  if (mode == ancilla_mode)
    throw std::invalid_argument("attenuate: mode and ancilla must differ");
  if (loss < 0.0 || loss > 1.0)
    throw std::invalid_argument("attenuate: loss must lie in [0, 1]");
  if (!is_vacuum_mode(ancilla_mode))
    throw std::invalid_argument("attenuate: ancilla mode must be in vacuum");
  beamsplit(mode, ancilla_mode, 1.0 - loss);
  auto_tag(ancilla_mode, SourceTag::Kind::LossVacuum, "attenuate");
}

SourceBlock& GaussianState::block_of(int mode) {
  for (auto& b : blocks_)
    for (int m : b.modes)
      if (m == mode) return b;
  throw std::logic_error("block_of: mode not covered by any source block");
}

void GaussianState::tag_source(int mode, SourceTag tag) {
  check_mode(mode, "tag_source");
  SourceBlock& target = block_of(mode);
  for (const auto& b : blocks_)
    if (&b != &target && b.tag == tag)
      throw std::invalid_argument("tag_source: tag already in use: " + tag.str());
  target.tag = std::move(tag);
}

void GaussianState::auto_tag(int mode, SourceTag::Kind kind, const char* op) {
  SourceTag tag{kind, ""};
  SourceBlock& target = block_of(mode);
  for (const auto& b : blocks_) {
    if (&b != &target && b.tag == tag) {
      tag.label = "m" + std::to_string(mode);
      break;
    }
  }
  for (const auto& b : blocks_)
    if (&b != &target && b.tag == tag)
      throw std::invalid_argument(std::string(op) + ": tag already in use: " + tag.str());
  target.tag = std::move(tag);
}

Eigen::MatrixXd GaussianState::covariance() const {
  Eigen::MatrixXd sigma_in = Eigen::MatrixXd::Zero(2 * n_modes_, 2 * n_modes_);
  for (const auto& b : blocks_) {
    const int k = static_cast<int>(b.modes.size());
    std::vector<int> idx(2 * k);
    for (int a = 0; a < k; ++a) {
      idx[2 * a] = quad(b.modes[a], kX);
      idx[2 * a + 1] = quad(b.modes[a], kP);
    }
    for (int r = 0; r < 2 * k; ++r)
      for (int c = 0; c < 2 * k; ++c) sigma_in(idx[r], idx[c]) = b.cov(r, c);
  }
  return map_ * sigma_in * map_.transpose();
}

std::pair<double, double> GaussianState::quadrature_mean(int mode) const {
  check_mode(mode, "quadrature_mean");
  return {mu_(quad(mode, kX)), mu_(quad(mode, kP))};
}

bool GaussianState::is_vacuum_mode(int mode, double tol) const {
  check_mode(mode, "is_vacuum_mode");
  const int x = quad(mode, kX);
  if (std::abs(mu_(x)) > tol || std::abs(mu_(x + 1)) > tol) return false;
  Eigen::MatrixXd sigma = covariance();
  return (sigma.block<2, 2>(x, x) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= tol;
}

double GaussianState::mean_photon(int mode) const {
  check_mode(mode, "mean_photon");
  const int x = quad(mode, kX);
  Eigen::MatrixXd sigma = covariance();
  const double mx = mu_(x), mp = mu_(x + 1);
  return (mx * mx + mp * mp + sigma(x, x) + sigma(x + 1, x + 1) - 2.0) / 4.0;
}

ObservableStats GaussianState::nminus_exact(int mode_i, int mode_j, double phi) const {
  check_mode(mode_i, "nminus_exact");
  check_mode(mode_j, "nminus_exact");
  if (mode_i == mode_j) throw std::invalid_argument("nminus_exact: modes must differ");

  // J(phi) = (1/2) z^T M z on z = (X_i, P_i, X_j, P_j): only cross-mode
  // entries, so operator ordering inside the form is immaterial.
  const double c = std::cos(phi), s = std::sin(phi);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 2) = m(2, 0) = 0.5 * c;   // X_i X_j
  m(1, 3) = m(3, 1) = 0.5 * c;   // P_i P_j
  m(0, 3) = m(3, 0) = -0.5 * s;  // X_i P_j
  m(1, 2) = m(2, 1) = 0.5 * s;   // P_i X_j

  Eigen::MatrixXd sigma_full = covariance();
  const int xi = quad(mode_i, kX), xj = quad(mode_j, kX);
  const int idx[4] = {xi, xi + 1, xj, xj + 1};
  Eigen::Vector4d mu;
  Eigen::Matrix4d sigma;
  for (int r = 0; r < 4; ++r) {
    mu(r) = mu_(idx[r]);
    for (int col = 0; col < 4; ++col) sigma(r, col) = sigma_full(idx[r], idx[col]);
  }
  Eigen::Matrix4d omega;
  omega << 0, 1, 0, 0,
           -1, 0, 0, 0,
           0, 0, 0, 1,
           0, 0, -1, 0;

  // Gaussian (Wick) fourth-moment expansion of a quadratic form. The last
  // term is the state-independent commutator correction; it makes the
  // two-mode vacuum variance exactly zero.
  ObservableStats out;
  out.mean = 0.5 * (mu.dot(m * mu) + (m * sigma).trace());
  const Eigen::Matrix4d ms = m * sigma;
  const Eigen::Matrix4d mo = m * omega;
  out.variance = mu.dot(m * sigma * m * mu) + 0.5 * (ms * ms).trace() +
                 0.5 * (mo * mo).trace();
  return out;
}

LinearStats GaussianState::linear_observable_stats(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != 2 * n_modes_)
    throw std::invalid_argument("linear_observable_stats: coefficient vector must have length 2n");
  const Eigen::VectorXd d = map_.transpose() * coeffs;
  LinearStats out;
  for (const auto& b : blocks_) {
    const int k = static_cast<int>(b.modes.size());
    Eigen::VectorXd dk(2 * k);
    for (int a = 0; a < k; ++a) {
      dk(2 * a) = d(quad(b.modes[a], kX));
      dk(2 * a + 1) = d(quad(b.modes[a], kP));
    }
    const double share = dk.dot(b.cov * dk);
    out.by_source.emplace_back(b.tag.str(), share);
    out.variance += share;
  }
  return out;
}

PhysicalityReport GaussianState::check_physical(double tol) const {
  PhysicalityReport report;
  report.tolerance = tol;
  const Eigen::MatrixXd omega = symplectic_form(n_modes_);
  report.symplectic_deviation =
      (map_ * omega * map_.transpose() - omega).cwiseAbs().maxCoeff();

  Eigen::MatrixXcd uncertainty =
      covariance().cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(uncertainty);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("check_physical: eigensolver failed");
  report.min_uncertainty_eig = solver.eigenvalues().minCoeff();
  return report;
}

}  // namespace qisim
