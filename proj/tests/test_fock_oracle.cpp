#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qisim/fock_oracle.hpp"
#include "qisim/gaussian_state.hpp"
#include "qisim/scheme.hpp"

using qisim::FockState;
using qisim::GaussianState;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("construction limits") {
  CHECK_THROWS_AS(FockState(5, 8), std::invalid_argument);
  CHECK_THROWS_AS(FockState(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(FockState(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(FockState(4, 40), std::invalid_argument);  // 40^4 > 1e6
  const FockState st(2, 6);
  CHECK(st.norm_squared() == doctest::Approx(1.0));
  CHECK(st.probability({0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("coherent state photon number") {
  FockState st(1, 20);
  st.displace(0, 1.0);
  CHECK(st.mean_photon(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(st.leakage() < 1e-9);
  CHECK_FALSE(st.truncation_warning());
  // Poisson weight of |0>: e^{-1}
  CHECK(st.probability({0}) == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK(st.mean_annihilation(0).real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("squeezed vacuum photon number") {
  FockState st(1, 30);
  st.squeeze(0, 0.5);
  CHECK(st.mean_photon(0) ==
        doctest::Approx(0.27154031740762189).epsilon(1e-6));
  // Odd number states stay empty.
  CHECK(st.probability({1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(st.probability({3}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("beamsplitter splits a single photon") {
  FockState st(2, 6);
  st.set_fock({1, 0});
  st.beamsplit(0, 1, 0.5);
  CHECK(st.probability({1, 0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(st.probability({0, 1}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(st.probability({1, 1}) == doctest::Approx(0.0).epsilon(1e-12));

  SUBCASE("transmissivity T keeps the photon with probability T") {
    FockState st2(2, 6);
    st2.set_fock({1, 0});
    st2.beamsplit(0, 1, 0.8);
    CHECK(st2.probability({1, 0}) == doctest::Approx(0.8).epsilon(1e-12));
  }
}

TEST_CASE("gates invert cleanly") {
  FockState st(2, 18);
  st.displace(0, {0.6, -0.2});
  st.squeeze(1, 0.4, 0.3);
  st.beamsplit(0, 1, 0.35);
  st.beamsplit(1, 0, 0.35);  // switched roles undo the splitter
  st.squeeze(1, 0.4, 0.3 + kPi / 2);
  st.displace(0, {-0.6, 0.2});
  CHECK(st.probability({0, 0}) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("two-mode squeezer populates signal and idler equally") {
  FockState st(2, 24);
  st.two_mode_squeeze(0, 1, 1.2);
  const double expect = 1.2 * 1.2 - 1.0;
  CHECK(st.mean_photon(0) == doctest::Approx(expect).epsilon(1e-8));
  CHECK(st.mean_photon(1) == doctest::Approx(expect).epsilon(1e-8));
  // Photons arrive strictly in pairs.
  CHECK(st.probability({1, 0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(st.probability({1, 1}) > 0.01);
  CHECK_THROWS_AS(st.two_mode_squeeze(0, 1, 0.9), std::invalid_argument);
}

TEST_CASE("quadrature moments match the gaussian engine") {
  FockState fock(2, 22);
  fock.displace(0, {0.5, 0.25});  // dx = 1, dp = 0.5
  fock.squeeze(1, 0.3, 0.4);
  fock.beamsplit(0, 1, 0.6);
  fock.phase_shift(0, 0.7);

  auto gauss = GaussianState::vacuum(2);
  gauss.displace(0, 1.0, 0.5);
  gauss.squeeze(1, 0.3, 0.4);
  gauss.beamsplit(0, 1, 0.6);
  gauss.phase_shift(0, 0.7);

  const auto fm = fock.quadrature_mean();
  const auto gm = gauss.displacement();
  const auto fc = fock.quadrature_covariance();
  const auto gc = gauss.covariance();
  for (int i = 0; i < 4; ++i) CHECK(fm(i) == doctest::Approx(gm(i)).epsilon(1e-6));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(fc(i, j) - gc(i, j) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("intensity difference against the known examples") {
  SUBCASE("coherent against vacuum at phi = pi/2") {
    FockState st(2, 20);
    st.displace(0, 1.0);
    const auto s = st.nminus_stats(0, 1, kPi / 2);
    CHECK(std::abs(s.mean) < 1e-6);
    CHECK(s.variance == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("squeezed vacuum against vacuum at phi = 0") {
    FockState st(2, 30);
    st.squeeze(0, 0.5);
    const auto s = st.nminus_stats(0, 1, 0.0);
    CHECK(std::abs(s.mean) < 1e-8);
    CHECK(s.variance ==
          doctest::Approx(0.27154031740762189).epsilon(1e-5));
  }
  SUBCASE("mode indices must differ") {
    const FockState st(2, 6);
    CHECK_THROWS_AS(st.nminus_stats(0, 0, 0.0), std::invalid_argument);
  }
}

namespace {
std::vector<qisim::CircuitOp> chain_ops(double photons, double squeeze_r,
                                        double split, double gain, double loss) {
  qisim::scheme::SchemeConfig cfg;
  cfg.scheme = qisim::scheme::Scheme::Custom;
  cfg.params.photons = photons;
  cfg.params.squeeze_r = squeeze_r;
  cfg.params.split_ratio = split;
  cfg.params.gain = gain;
  cfg.params.loss = loss;
  cfg.gain_mode = qisim::scheme::GainMode::Fixed;
  return qisim::scheme::build_circuit(cfg);
}
}  // namespace

TEST_CASE("full chain agreement, passive circuit") {
  // G = 1 keeps every occupation low, so cutoff 14 is already deep in the
  // converged regime.
  const auto ops = chain_ops(0.64, 0.3, 0.6, 1.0, 0.3);
  const auto rep = qisim::full_chain_check(ops, 4, 0, 1, 0.0, 14);
  CHECK(rep.worst_deviation() < 1e-6);
  CHECK(rep.leakage < 1e-6);
  CHECK(rep.gauss_variance > 0.0);
}

TEST_CASE("full chain agreement, amplified circuit converges with cutoff") {
  const auto ops = chain_ops(0.64, 0.3, 0.6, 1.5, 0.3);
  const auto r8 = qisim::full_chain_check(ops, 4, 0, 1, 0.0, 8);
  const auto r12 = qisim::full_chain_check(ops, 4, 0, 1, 0.0, 12);
  const auto r16 = qisim::full_chain_check(ops, 4, 0, 1, 0.0, 16);
  CHECK(r8.worst_deviation() > r12.worst_deviation());
  CHECK(r12.worst_deviation() > r16.worst_deviation());
  CHECK(r16.worst_deviation() < 1e-2);
  CHECK(r8.leakage > r12.leakage);
  CHECK(r12.leakage > r16.leakage);
  // The amplifier's thermal tail leaks past these cutoffs; the simulator
  // reports it rather than hiding it.
  CHECK(r12.leakage > 1e-6);
}
