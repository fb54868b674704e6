#include "qisim/fock_oracle.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace qisim {

namespace {

using Cplx = std::complex<double>;

constexpr long kMaxAmplitudes = 1'000'000;

// Annihilation operator on a single truncated mode: a|n> = sqrt(n)|n-1>.
Eigen::MatrixXcd annihilation(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

// exp(K) for anti-Hermitian K, via the spectrum of the Hermitian iK.
Eigen::MatrixXcd exp_anti_hermitian(const Eigen::MatrixXcd& k) {
  Eigen::MatrixXcd h = Cplx(0.0, 1.0) * k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("fock gate: eigensolver failed");
  Eigen::VectorXcd phases(h.rows());
  for (int i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(Cplx(0.0, -solver.eigenvalues()(i)));
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

// Restriction of a guard-band pair operator (per-mode dimension big) to the
// working cutoff; indices are n_i * dim + n_j.
Eigen::MatrixXcd read_pair_block(const Eigen::MatrixXcd& full, int big, int cutoff) {
  Eigen::MatrixXcd out(cutoff * cutoff, cutoff * cutoff);
  for (int r1 = 0; r1 < cutoff; ++r1)
    for (int r2 = 0; r2 < cutoff; ++r2)
      for (int c1 = 0; c1 < cutoff; ++c1)
        for (int c2 = 0; c2 < cutoff; ++c2)
          out(r1 * cutoff + r2, c1 * cutoff + c2) = full(r1 * big + r2, c1 * big + c2);
  return out;
}

}  // namespace

FockState::FockState(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
  if (n_modes < 1 || n_modes > 4)
    throw std::invalid_argument("FockState: n_modes must lie in 1..4");
  if (cutoff < 2) throw std::invalid_argument("FockState: cutoff must be >= 2");
  long size = 1;
  for (int m = 0; m < n_modes; ++m) {
    strides_.push_back(size);
    size *= cutoff;
    if (size > kMaxAmplitudes)
      throw std::invalid_argument("FockState: cutoff^n_modes exceeds 1e6 amplitudes");
  }
  amp_ = Eigen::VectorXcd::Zero(size);
  amp_(0) = 1.0;
}

void FockState::check_mode(int mode, const char* op) const {
  if (mode < 0 || mode >= n_modes_)
    throw std::invalid_argument(std::string(op) + ": mode index out of range");
}

void FockState::record_leakage() {
  leakage_ = 1.0 - amp_.squaredNorm();
  if (leakage_ < 0.0) leakage_ = 0.0;
}

void FockState::apply_single(int mode, const Eigen::MatrixXcd& gate) {
  const long stride = strides_[mode];
  const long block = stride * cutoff_;
  const long total = amp_.size();
  Eigen::VectorXcd in(cutoff_), out(cutoff_);
  for (long base = 0; base < total; base += block) {
    for (long rest = 0; rest < stride; ++rest) {
      const long offset = base + rest;
      for (int n = 0; n < cutoff_; ++n) in(n) = amp_(offset + n * stride);
      out.noalias() = gate * in;
      for (int n = 0; n < cutoff_; ++n) amp_(offset + n * stride) = out(n);
    }
  }
  record_leakage();
}

void FockState::apply_pair(int mode_i, int mode_j, const Eigen::MatrixXcd& gate) {
  const long si = strides_[mode_i];
  const long sj = strides_[mode_j];
  const long total = amp_.size();
  const int c = cutoff_;

  // Enumerate configurations of the remaining modes by skipping every index
  // whose occupation of mode_i or mode_j is nonzero.
  std::vector<long> rest_offsets;
  rest_offsets.reserve(total / (c * c));
  for (long idx = 0; idx < total; ++idx) {
    if ((idx / si) % c != 0) continue;
    if ((idx / sj) % c != 0) continue;
    rest_offsets.push_back(idx);
  }

  Eigen::VectorXcd in(c * c), out(c * c);
  for (long base : rest_offsets) {
    for (int ni = 0; ni < c; ++ni)
      for (int nj = 0; nj < c; ++nj) in(ni * c + nj) = amp_(base + ni * si + nj * sj);
    out.noalias() = gate * in;
    for (int ni = 0; ni < c; ++ni)
      for (int nj = 0; nj < c; ++nj) amp_(base + ni * si + nj * sj) = out(ni * c + nj);
  }
  record_leakage();
}

void FockState::displace(int mode, Cplx alpha) {
  check_mode(mode, "displace");
  const int big = cutoff_ + kGuard;
  const Eigen::MatrixXcd a = annihilation(big);
  const Eigen::MatrixXcd k = alpha * a.adjoint() - std::conj(alpha) * a;
  apply_single(mode, exp_anti_hermitian(k).topLeftCorner(cutoff_, cutoff_));
}

void FockState::squeeze(int mode, double r, double angle) {
  check_mode(mode, "squeeze");
  if (r < 0.0) throw std::invalid_argument("squeeze: r must be >= 0");
  const int big = cutoff_ + kGuard;
  const Eigen::MatrixXcd a = annihilation(big);
  // xi = -r e^{2 i angle} puts the squeezed quadrature on P at angle 0.
  const Cplx xi = -r * std::exp(Cplx(0.0, 2.0 * angle));
  const Eigen::MatrixXcd k =
      0.5 * (std::conj(xi) * a * a - xi * a.adjoint() * a.adjoint());
  apply_single(mode, exp_anti_hermitian(k).topLeftCorner(cutoff_, cutoff_));
}

void FockState::phase_shift(int mode, double phi) {
  check_mode(mode, "phase_shift");
  // Diagonal in the number basis; exact at any cutoff.
  Eigen::MatrixXcd gate = Eigen::MatrixXcd::Zero(cutoff_, cutoff_);
  for (int n = 0; n < cutoff_; ++n) gate(n, n) = std::exp(Cplx(0.0, phi * n));
  apply_single(mode, gate);
}

void FockState::beamsplit(int mode_i, int mode_j, double transmissivity) {
  check_mode(mode_i, "beamsplit");
  check_mode(mode_j, "beamsplit");
  if (mode_i == mode_j) throw std::invalid_argument("beamsplit: modes must differ");
  if (transmissivity < 0.0 || transmissivity > 1.0)
    throw std::invalid_argument("beamsplit: transmissivity must lie in [0, 1]");
  const int big = cutoff_ + kGuard;
  const Eigen::MatrixXcd a = annihilation(big);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(big, big);
  const Eigen::MatrixXcd ai = Eigen::kroneckerProduct(a, id).eval();
  const Eigen::MatrixXcd aj = Eigen::kroneckerProduct(id, a).eval();
  // theta < 0 gives a_i' = sqrt(T) a_i - sqrt(1-T) a_j.
  const double theta = -std::acos(std::sqrt(transmissivity));
  const Eigen::MatrixXcd k = theta * (ai.adjoint() * aj - ai * aj.adjoint());
  apply_pair(mode_i, mode_j, read_pair_block(exp_anti_hermitian(k), big, cutoff_));
}

void FockState::two_mode_squeeze(int signal_mode, int idler_mode, double gain) {
  check_mode(signal_mode, "two_mode_squeeze");
  check_mode(idler_mode, "two_mode_squeeze");
  if (signal_mode == idler_mode)
    throw std::invalid_argument("two_mode_squeeze: modes must differ");
  if (gain < 1.0) throw std::invalid_argument("two_mode_squeeze: gain must be >= 1");
  const int big = cutoff_ + kGuard;
  const Eigen::MatrixXcd a = annihilation(big);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(big, big);
  const Eigen::MatrixXcd ab = Eigen::kroneckerProduct(a, id).eval();
  const Eigen::MatrixXcd aw = Eigen::kroneckerProduct(id, a).eval();
  const double g = std::acosh(gain);
  const Eigen::MatrixXcd k = g * (ab.adjoint() * aw.adjoint() - ab * aw);
  apply_pair(signal_mode, idler_mode,
             read_pair_block(exp_anti_hermitian(k), big, cutoff_));
}

void FockState::attenuate(int mode, int ancilla_mode, double loss) {
  if (loss < 0.0 || loss > 1.0)
    throw std::invalid_argument("attenuate: loss must lie in [0, 1]");
  beamsplit(mode, ancilla_mode, 1.0 - loss);
}

void FockState::set_fock(const std::vector<int>& occupation) {
  if (static_cast<int>(occupation.size()) != n_modes_)
    throw std::invalid_argument("set_fock: need one occupation per mode");
  long idx = 0;
  for (int m = 0; m < n_modes_; ++m) {
    if (occupation[m] < 0 || occupation[m] >= cutoff_)
      throw std::invalid_argument("set_fock: occupation out of range");
    idx += occupation[m] * strides_[m];
  }
  amp_.setZero();
  amp_(idx) = 1.0;
  leakage_ = 0.0;
}

double FockState::norm_squared() const { return amp_.squaredNorm(); }

double FockState::probability(const std::vector<int>& occupation) const {
  if (static_cast<int>(occupation.size()) != n_modes_)
    throw std::invalid_argument("probability: need one occupation per mode");
  long idx = 0;
  for (int m = 0; m < n_modes_; ++m) {
    if (occupation[m] < 0 || occupation[m] >= cutoff_)
      throw std::invalid_argument("probability: occupation out of range");
    idx += occupation[m] * strides_[m];
  }
  return std::norm(amp_(idx)) / norm_squared();
}

Eigen::VectorXcd FockState::lowered(int mode) const {
  const long stride = strides_[mode];
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amp_.size());
  for (long idx = 0; idx < amp_.size(); ++idx) {
    const int n = static_cast<int>((idx / stride) % cutoff_);
    if (n > 0) out(idx - stride) += std::sqrt(double(n)) * amp_(idx);
  }
  return out;
}

Eigen::VectorXcd FockState::raised(int mode) const {
  const long stride = strides_[mode];
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amp_.size());
  for (long idx = 0; idx < amp_.size(); ++idx) {
    const int n = static_cast<int>((idx / stride) % cutoff_);
    if (n + 1 < cutoff_) out(idx + stride) += std::sqrt(double(n + 1)) * amp_(idx);
  }
  return out;
}

double FockState::mean_photon(int mode) const {
  check_mode(mode, "mean_photon");
  const long stride = strides_[mode];
  double num = 0.0;
  for (long idx = 0; idx < amp_.size(); ++idx) {
    const int n = static_cast<int>((idx / stride) % cutoff_);
    num += n * std::norm(amp_(idx));
  }
  return num / norm_squared();
}

Cplx FockState::mean_annihilation(int mode) const {
  check_mode(mode, "mean_annihilation");
  return amp_.dot(lowered(mode)) / norm_squared();
}

Eigen::VectorXd FockState::quadrature_mean() const {
  Eigen::VectorXd mu(2 * n_modes_);
  for (int m = 0; m < n_modes_; ++m) {
    const Cplx a = mean_annihilation(m);
    mu(2 * m) = 2.0 * a.real();
    mu(2 * m + 1) = 2.0 * a.imag();
  }
  return mu;
}

Eigen::MatrixXd FockState::quadrature_covariance() const {
  // z_k |psi> for every quadrature; sigma_kl = Re<z_k psi|z_l psi> - m_k m_l
  // is automatically the symmetrized covariance for Hermitian z.
  const double n2 = norm_squared();
  std::vector<Eigen::VectorXcd> zpsi(2 * n_modes_);
  for (int m = 0; m < n_modes_; ++m) {
    const Eigen::VectorXcd lo = lowered(m);
    const Eigen::VectorXcd hi = raised(m);
    zpsi[2 * m] = lo + hi;
    zpsi[2 * m + 1] = Cplx(0.0, 1.0) * (hi - lo);
  }
  const Eigen::VectorXd mu = quadrature_mean();
  Eigen::MatrixXd sigma(2 * n_modes_, 2 * n_modes_);
  for (int r = 0; r < 2 * n_modes_; ++r)
    for (int c = r; c < 2 * n_modes_; ++c) {
      const double moment = (zpsi[r].dot(zpsi[c])).real() / n2;
      sigma(r, c) = sigma(c, r) = moment - mu(r) * mu(c);
    }
  return sigma;
}

ObservableStats FockState::nminus_stats(int mode_i, int mode_j, double phi) const {
  check_mode(mode_i, "nminus_stats");
  check_mode(mode_j, "nminus_stats");
  if (mode_i == mode_j) throw std::invalid_argument("nminus_stats: modes must differ");

  FockState tmp = *this;
  // J|psi> assembled from ladder actions; creation past the cutoff is exactly
  // the truncation error this oracle is allowed to carry.
  const Eigen::VectorXcd aj_psi = lowered(mode_j);
  const Eigen::VectorXcd ai_psi = lowered(mode_i);
  tmp.amp_ = aj_psi;
  const Eigen::VectorXcd term1 = tmp.raised(mode_i);
  tmp.amp_ = ai_psi;
  const Eigen::VectorXcd term2 = tmp.raised(mode_j);
  const Eigen::VectorXcd jpsi =
      std::exp(Cplx(0.0, phi)) * term1 + std::exp(Cplx(0.0, -phi)) * term2;

  const double n2 = norm_squared();
  ObservableStats out;
  out.mean = amp_.dot(jpsi).real() / n2;
  out.variance = jpsi.squaredNorm() / n2 - out.mean * out.mean;
  return out;
}

void apply_circuit(FockState& state, const std::vector<CircuitOp>& ops) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Displace:
        // Quadrature shift (dx, dp) corresponds to alpha = (dx + i dp) / 2.
        state.displace(op.mode_a, {op.arg_a / 2.0, op.arg_b / 2.0});
        break;
      case CircuitOp::Kind::Squeeze:
        state.squeeze(op.mode_a, op.arg_a, op.arg_b);
        break;
      case CircuitOp::Kind::Beamsplit:
        state.beamsplit(op.mode_a, op.mode_b, op.arg_a);
        break;
      case CircuitOp::Kind::Phase:
        state.phase_shift(op.mode_a, op.arg_a);
        break;
      case CircuitOp::Kind::Amplify:
        state.two_mode_squeeze(op.mode_a, op.mode_b, op.arg_a);
        break;
      case CircuitOp::Kind::Attenuate:
        state.attenuate(op.mode_a, op.mode_b, op.arg_a);
        break;
    }
  }
}

ChainAgreement full_chain_check(const std::vector<CircuitOp>& ops, int n_modes,
                                int mode_i, int mode_j, double phi, int cutoff) {
  GaussianState gauss = GaussianState::vacuum(n_modes);
  apply_circuit(gauss, ops);
  const ObservableStats exact = gauss.nminus_exact(mode_i, mode_j, phi);

  FockState fock(n_modes, cutoff);
  apply_circuit(fock, ops);
  const ObservableStats brute = fock.nminus_stats(mode_i, mode_j, phi);

  ChainAgreement out;
  out.gauss_mean = exact.mean;
  out.gauss_variance = exact.variance;
  out.fock_mean = brute.mean;
  out.fock_variance = brute.variance;
  out.leakage = fock.leakage();
  const double mean_scale =
      std::max(std::abs(exact.mean), std::sqrt(std::max(exact.variance, 0.0)));
  out.mean_deviation =
      mean_scale > 0.0 ? std::abs(brute.mean - exact.mean) / mean_scale : 0.0;
  out.variance_deviation =
      exact.variance > 0.0 ? std::abs(brute.variance - exact.variance) / exact.variance
                           : std::abs(brute.variance - exact.variance);
  return out;
}

}  // namespace qisim
