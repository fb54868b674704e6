#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qisim/gaussian_state.hpp"

using qisim::GaussianState;
using qisim::SourceBlock;
using qisim::SourceTag;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("vacuum state basics") {
  const auto st = GaussianState::vacuum(3);
  CHECK(st.n_modes() == 3);
  CHECK(st.displacement().norm() == 0.0);
  CHECK(st.cumulative_map().isIdentity(0.0));
  CHECK(st.covariance().isIdentity(1e-15));
  CHECK(st.mean_photon(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(st.is_vacuum_mode(2));
  CHECK_THROWS_AS(GaussianState::vacuum(0), std::invalid_argument);
}

TEST_CASE("displacement sets the coherent amplitude") {
  auto st = GaussianState::vacuum(1);
  st.displace(0, 6.0, 0.0);  // alpha = 3
  const auto [x, p] = st.quadrature_mean(0);
  CHECK(x == doctest::Approx(6.0));
  CHECK(p == doctest::Approx(0.0));
  CHECK(st.mean_photon(0) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK_FALSE(st.is_vacuum_mode(0));
  CHECK(st.covariance().isIdentity(1e-14));
}

TEST_CASE("squeezing reshapes the quadrature variances") {
  auto st = GaussianState::vacuum(1);
  st.squeeze(0, 0.5);
  const auto cov = st.covariance();
  CHECK(cov(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(cov(1, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(st.mean_photon(0) ==
        doctest::Approx(0.27154031740762189).epsilon(1e-14));

  SUBCASE("angle pi/2 squeezes X instead") {
    auto st2 = GaussianState::vacuum(1);
    st2.squeeze(0, 0.5, kPi / 2);
    CHECK(st2.covariance()(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  }
  SUBCASE("negative r is rejected") {
    CHECK_THROWS_AS(st.squeeze(0, -0.1), std::invalid_argument);
  }
}

TEST_CASE("beamsplitter mixes variances with T and 1-T") {
  auto st = GaussianState::vacuum(2);
  st.squeeze(1, 0.5);
  st.beamsplit(0, 1, 0.3);
  // P of the output mode 0: 0.3 from vacuum, 0.7 from the squeezed input.
  CHECK(st.covariance()(1, 1) ==
        doctest::Approx(0.55751560882000963).epsilon(1e-14));

  SUBCASE("amplitude convention") {
    auto st2 = GaussianState::vacuum(2);
    st2.displace(0, 2.0, 0.0);  // alpha = 1 on mode 0
    st2.beamsplit(0, 1, 0.64);
    const auto [x0, p0] = st2.quadrature_mean(0);
    const auto [x1, p1] = st2.quadrature_mean(1);
    CHECK(x0 == doctest::Approx(1.6));   // sqrt(T) alpha
    CHECK(x1 == doctest::Approx(1.2));   // sqrt(1-T) alpha
    CHECK(p0 == doctest::Approx(0.0));
    CHECK(p1 == doctest::Approx(0.0));
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(st.beamsplit(0, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(st.beamsplit(0, 1, 1.2), std::invalid_argument);
  }
}

TEST_CASE("phase shift rotates the mean") {
  auto st = GaussianState::vacuum(1);
  st.displace(0, 2.0, 0.0);
  st.phase_shift(0, kPi / 2);
  const auto [x, p] = st.quadrature_mean(0);
  CHECK(x == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p == doctest::Approx(2.0));
}

TEST_CASE("amplifier adds G^2-1 photons of gain noise") {
  SUBCASE("on vacuum") {
    auto st = GaussianState::vacuum(2);
    st.amplify(0, 1, 2.0);
    CHECK(st.covariance()(0, 0) == doctest::Approx(7.0));  // 2 G^2 - 1
    CHECK(st.covariance()(1, 1) == doctest::Approx(7.0));
    CHECK(st.mean_photon(0) == doctest::Approx(3.0));  // G^2 - 1
  }
  SUBCASE("on a coherent state") {
    auto st = GaussianState::vacuum(2);
    st.displace(0, 2.0, 0.0);  // one photon
    st.amplify(0, 1, 2.0);
    CHECK(st.mean_photon(0) == doctest::Approx(7.0));  // G^2 n + G^2 - 1
    const auto [x, p] = st.quadrature_mean(0);
    CHECK(x == doctest::Approx(4.0));  // G alpha
  }
  SUBCASE("idler must be vacuum") {
    auto st = GaussianState::vacuum(2);
    st.displace(1, 1.0, 0.0);
    CHECK_THROWS_AS(st.amplify(0, 1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(st.amplify(0, 0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(st.amplify(0, 1, 0.5), std::invalid_argument);
  }
  SUBCASE("idler block is tagged") {
    auto st = GaussianState::vacuum(2);
    st.amplify(0, 1, 1.5);
    bool found = false;
    for (const auto& b : st.source_blocks())
      if (b.tag.str() == "amplifier-idler") found = true;
    CHECK(found);
  }
}

TEST_CASE("attenuation scales photon number by 1-l") {
  auto st = GaussianState::vacuum(2);
  st.displace(0, 20.0, 0.0);  // 100 photons
  st.attenuate(0, 1, 0.9);
  CHECK(st.mean_photon(0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(st.covariance()(0, 0) == doctest::Approx(1.0));  // stays coherent

  SUBCASE("ancilla must be vacuum") {
    CHECK_THROWS_AS(st.attenuate(0, 1, 0.5), std::invalid_argument);
  }
  SUBCASE("loss-vacuum tag appears") {
    bool found = false;
    for (const auto& b : st.source_blocks())
      if (b.tag.str() == "loss-vacuum") found = true;
    CHECK(found);
  }
}

TEST_CASE("intensity difference moments") {
  SUBCASE("two-mode vacuum has exactly zero variance") {
    const auto st = GaussianState::vacuum(2);
    const auto s = st.nminus_exact(0, 1, 0.0);
    CHECK(s.mean == 0.0);
    CHECK(std::abs(s.variance) < 1e-14);
  }
  SUBCASE("coherent against vacuum") {
    auto st = GaussianState::vacuum(2);
    st.displace(0, 2.0, 0.0);  // alpha = 1
    const auto s = st.nminus_exact(0, 1, kPi / 2);
    CHECK(std::abs(s.mean) < 1e-14);
    CHECK(s.variance == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("squeezed vacuum against vacuum") {
    auto st = GaussianState::vacuum(2);
    st.squeeze(0, 0.5);
    const auto s = st.nminus_exact(0, 1, 0.0);
    CHECK(std::abs(s.mean) < 1e-14);
    CHECK(s.variance ==
          doctest::Approx(0.27154031740762189).epsilon(1e-13));
  }
  SUBCASE("phase argument matches a phase gate") {
    auto st = GaussianState::vacuum(2);
    st.displace(0, 1.4, -0.3);
    st.squeeze(1, 0.4, 0.2);
    st.beamsplit(0, 1, 0.7);
    auto rotated = st;
    rotated.phase_shift(1, 0.6);
    const auto a = st.nminus_exact(0, 1, 0.6);
    const auto b = rotated.nminus_exact(0, 1, 0.0);
    CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-13));
    CHECK(a.variance == doctest::Approx(b.variance).epsilon(1e-13));
  }
  CHECK_THROWS_AS(GaussianState::vacuum(2).nminus_exact(1, 1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("per-source variance attribution") {
  auto st = GaussianState::vacuum(2);
  st.tag_source(0, {SourceTag::Kind::CoherentInput, ""});
  st.tag_source(1, {SourceTag::Kind::SqueezedInput, ""});
  st.squeeze(1, 0.5);
  st.beamsplit(0, 1, 0.3);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
  c(0) = 1.0;  // X of mode 0
  const auto stats = st.linear_observable_stats(c);
  const double e1 = std::exp(1.0);
  CHECK(stats.variance == doctest::Approx(0.3 + 0.7 * e1).epsilon(1e-14));

  double sum = 0.0;
  double coherent = -1.0, squeezed = -1.0;
  for (const auto& [tag, var] : stats.by_source) {
    sum += var;
    if (tag == "coherent-input") coherent = var;
    if (tag == "squeezed-input") squeezed = var;
  }
  CHECK(sum == doctest::Approx(stats.variance).epsilon(1e-14));
  CHECK(coherent == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(squeezed == doctest::Approx(0.7 * e1).epsilon(1e-14));

  SUBCASE("coefficient length is checked") {
    CHECK_THROWS_AS(st.linear_observable_stats(Eigen::VectorXd::Zero(3)),
                    std::invalid_argument);
  }
  SUBCASE("duplicate tags are rejected") {
    auto st2 = GaussianState::vacuum(2);
    st2.tag_source(0, {SourceTag::Kind::CoherentInput, ""});
    CHECK_THROWS_AS(st2.tag_source(1, {SourceTag::Kind::CoherentInput, ""}),
                    std::invalid_argument);
  }
}

TEST_CASE("from_blocks validates its partition") {
  SourceBlock ok;
  ok.tag = {SourceTag::Kind::Other, "a"};
  ok.modes = {0};
  ok.cov = Eigen::Matrix2d::Identity();
  SourceBlock bad = ok;
  bad.tag = {SourceTag::Kind::Other, "b"};
  bad.modes = {0};  // overlaps
  CHECK_THROWS_AS(GaussianState::from_blocks({ok, bad}),
                  std::invalid_argument);

  SUBCASE("below-vacuum covariance fails the physicality check") {
    SourceBlock thin = ok;
    thin.cov = 0.5 * Eigen::Matrix2d::Identity();
    const auto st = GaussianState::from_blocks({thin});
    CHECK_FALSE(st.check_physical().passed());
  }
}

TEST_CASE("purity is preserved by the symplectic map") {
  auto st = GaussianState::vacuum(3);
  st.displace(0, 1.0, 0.5);
  st.squeeze(1, 0.7, 0.3);
  st.beamsplit(0, 1, 0.42);
  st.amplify(1, 2, 1.8);
  st.phase_shift(0, 1.1);
  CHECK(st.covariance().determinant() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(st.check_physical().passed());
}

TEST_CASE("symplectic form squares to minus identity") {
  const auto om = qisim::symplectic_form(3);
  CHECK((om * om + Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
  CHECK((om + om.transpose()).norm() == 0.0);
}

TEST_CASE("random op sequences stay physical") {
  std::mt19937 gen(420024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](int n) { return static_cast<int>(gen() % n); };

  for (int seq = 0; seq < 200; ++seq) {
    const int n_modes = 2 + pick(3);
    auto st = GaussianState::vacuum(n_modes);
    std::vector<bool> touched(n_modes, false);
    const int n_ops = 1 + pick(30);
    for (int k = 0; k < n_ops; ++k) {
      switch (pick(6)) {
        case 0: {
          const int m = pick(n_modes);
          st.displace(m, 6.0 * u(gen) - 3.0, 6.0 * u(gen) - 3.0);
          touched[m] = true;
          break;
        }
        case 1: {
          const int m = pick(n_modes);
          st.squeeze(m, 0.2 * u(gen), 2.0 * kPi * u(gen));
          touched[m] = true;
          break;
        }
        case 2:
          st.phase_shift(pick(n_modes), 2.0 * kPi * u(gen));
          break;
        case 3: {
          const int a = pick(n_modes);
          const int b = (a + 1 + pick(n_modes - 1)) % n_modes;
          st.beamsplit(a, b, u(gen));
          touched[a] = touched[b] = true;
          break;
        }
        default: {
          const int sig = pick(n_modes);
          int anc = -1;
          for (int m = 0; m < n_modes; ++m)
            if (m != sig && !touched[m]) anc = m;
          if (anc < 0) break;
          if (pick(2) == 0)
            st.amplify(sig, anc, 1.0 + 0.2 * u(gen));
          else
            st.attenuate(sig, anc, u(gen));
          touched[sig] = touched[anc] = true;
          break;
        }
      }
    }
    const auto rep = st.check_physical();
    REQUIRE_MESSAGE(rep.passed(), "sequence ", seq, " symplectic deviation ",
                    rep.symplectic_deviation);
  }
}
