// Copyright 2026 The opamzi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "opamzi/gaussian.hpp"
#include "opamzi/opa.hpp"

namespace opamzi {
namespace {

constexpr double kPi = std::numbers::pi;

GaussianState<double> random_pure_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto s = direct_sum(coherent_state(4.0 * u(rng), 2 * kPi * u(rng)),
                      coherent_state(4.0 * u(rng), 2 * kPi * u(rng)));
  s = apply_squeezer(s, 0, 1.0 + 3.0 * u(rng), 2 * kPi * u(rng));
  s = apply_squeezer(s, 1, 1.0 + 3.0 * u(rng), 2 * kPi * u(rng));
  return apply_beam_splitter(s, 0, 1, u(rng));
}

TEST(GaussianState, VacuumConvention) {
  const auto v1 = vacuum_state(1);
  EXPECT_EQ(v1.mean(), Vector<double>::Zero(2));
  EXPECT_EQ(v1.cov(), Matrix<double>::Identity(2, 2));
  EXPECT_DOUBLE_EQ(v1.photon_number(0), 0.0);

  const auto v2 = vacuum_state(2);
  EXPECT_EQ(v2.mean(), Vector<double>::Zero(4));
  EXPECT_EQ(v2.cov(), Matrix<double>::Identity(4, 4));
  EXPECT_THROW(vacuum_state(0), std::invalid_argument);
}

TEST(GaussianState, CoherentStates) {
  const auto zero = coherent_state(0.0);
  EXPECT_EQ(zero.mean(), vacuum_state(1).mean());
  EXPECT_EQ(zero.cov(), vacuum_state(1).cov());

  const auto four = coherent_state(4.0);
  EXPECT_DOUBLE_EQ(four.mean_x(0), 4.0);
  EXPECT_DOUBLE_EQ(four.mean_p(0), 0.0);
  EXPECT_NEAR(four.photon_number(0), 4.0, 1e-12);

  const auto bright = coherent_state(4.5e13);
  EXPECT_NEAR(bright.mean_x(0), 2.0 * std::sqrt(4.5e13), 1e-3);
  EXPECT_NEAR(bright.mean_x(0) / 1.342e7, 1.0, 5e-4);
  EXPECT_THROW(coherent_state(-1.0), std::invalid_argument);
}

TEST(GaussianState, RejectsAsymmetricCovariance) {
  Matrix<double> cov = Matrix<double>::Identity(2, 2);
  cov(0, 1) = 0.1;
  EXPECT_THROW(GaussianState<double>(Vector<double>::Zero(2), cov), std::invalid_argument);
  EXPECT_THROW(vacuum_state(2).photon_number(2), std::out_of_range);
}

TEST(BeamSplitter, SplitsEnergyEvenly) {
  const auto s = apply_beam_splitter(direct_sum(coherent_state(2.0), vacuum_state(1)), 0, 1, 0.5);
  EXPECT_NEAR(s.photon_number(0), 1.0, 1e-12);
  EXPECT_NEAR(s.photon_number(1), 1.0, 1e-12);
}

TEST(BeamSplitter, FullTransmissionIsIdentity) {
  std::mt19937_64 rng(7);
  const auto in = random_pure_state(rng);
  const auto out = apply_beam_splitter(in, 0, 1, 1.0);
  EXPECT_TRUE(out.mean().isApprox(in.mean(), 1e-14));
  EXPECT_TRUE(out.cov().isApprox(in.cov(), 1e-14));
}

TEST(BeamSplitter, BalancedMachZehnderAtPiIsDark) {
  // Independent 2x2 oracle: a' = (a + b)/sqrt2, b' = (-a + b)/sqrt2 twice
  // with a phase e^{i pi} on b in between returns the seed to port a.
  auto s = direct_sum(coherent_state(3.0), vacuum_state(1));
  s = apply_beam_splitter(s, 0, 1, 0.5);
  s = apply_phase_shift(s, 1, kPi);
  s = apply_beam_splitter(s, 0, 1, 0.5);
  EXPECT_NEAR(s.photon_number(0), 3.0, 1e-12);
  EXPECT_NEAR(s.photon_number(1), 0.0, 1e-12);
  EXPECT_TRUE(s.cov().isApprox(Matrix<double>::Identity(4, 4), 1e-12));
}

TEST(PhaseShift, Rotations) {
  const auto s = coherent_state(1.0);  // mean (2, 0)
  const auto quarter = apply_phase_shift(s, 0, kPi / 2);
  EXPECT_NEAR(quarter.mean_x(0), 0.0, 1e-15);
  EXPECT_NEAR(quarter.mean_p(0), 2.0, 1e-15);
  EXPECT_EQ(apply_phase_shift(s, 0, 0.0).mean(), s.mean());
  const auto full = apply_phase_shift(s, 0, 2 * kPi);
  EXPECT_LT((full.mean() - s.mean()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Squeezer, VacuumVariances) {
  const OpaParams opa{std::sqrt(15.0), std::sqrt(14.0), 0.0};
  const auto s = apply_opa(vacuum_state(1), 0, opa);
  EXPECT_NEAR(s.cov()(0, 0), 57.98275349, 1e-7);
  EXPECT_NEAR(s.cov()(1, 1), 0.0172465076, 1e-10);
  EXPECT_NEAR(s.photon_number(0), 14.0, 1e-10);
  const auto p = homodyne_stats(s, 0, kPi / 2);
  EXPECT_NEAR(p.variance, 0.0172465076, 1e-10);
  EXPECT_NEAR(10 * std::log10(p.variance), -17.63, 0.01);
}

TEST(Squeezer, UnpumpedIsIdentity) {
  std::mt19937_64 rng(3);
  const auto in = random_pure_state(rng);
  const auto out = apply_opa(in, 0, OpaParams{});
  EXPECT_EQ(out.mean(), in.mean());
  EXPECT_TRUE(out.cov().isApprox(in.cov(), 1e-15));
}

TEST(Squeezer, SeedPowerGain) {
  // Seed along the amplified quadrature gains (G + g)^2 in power.
  const OpaParams opa = gain_to_opa({15.06, GainConvention::kPhaseSensitivePower});
  const auto s = apply_opa(coherent_state(1e12), 0, opa);
  const double coherent_part = (s.mean_x(0) * s.mean_x(0) + s.mean_p(0) * s.mean_p(0)) / 4;
  EXPECT_NEAR(coherent_part / 1e12, 15.06, 1e-9);
  EXPECT_NEAR(5e-6 * coherent_part / 1e12, 75.3e-6, 1e-10);
}

TEST(Loss, Limits) {
  const OpaParams opa{std::sqrt(15.0), std::sqrt(14.0), 0.0};
  const auto sq = apply_opa(coherent_state(2.0), 0, opa);
  const auto same = apply_loss(sq, 0, 1.0);
  EXPECT_EQ(same.mean(), sq.mean());
  EXPECT_TRUE(same.cov().isApprox(sq.cov(), 1e-15));
  const auto gone = apply_loss(sq, 0, 0.0);
  EXPECT_EQ(gone.mean(), Vector<double>::Zero(2));
  EXPECT_TRUE(gone.cov().isApprox(Matrix<double>::Identity(2, 2), 1e-15));
  EXPECT_THROW(apply_loss(sq, 0, 1.5), std::invalid_argument);
}

TEST(Loss, MixesSqueezedNoiseWithVacuum) {
  const OpaParams opa{std::sqrt(15.0), std::sqrt(14.0), 0.0};
  const auto s = apply_loss(apply_opa(vacuum_state(1), 0, opa), 0, 0.735);
  const double v = homodyne_stats(s, 0, kPi / 2).variance;
  EXPECT_NEAR(v, 0.735 * 0.0172465076 + 0.265, 1e-10);
  EXPECT_NEAR(10 * std::log10(v), -5.56, 0.01);
}

TEST(Homodyne, Examples) {
  for (const double angle : {0.0, 0.3, 1.0, 2.5}) {
    const auto v = homodyne_stats(vacuum_state(1), 0, angle);
    EXPECT_NEAR(v.mean, 0.0, 1e-15);
    EXPECT_NEAR(v.variance, 1.0, 1e-15);
  }
  const auto c = homodyne_stats(coherent_state(4.0), 0, 0.0);
  EXPECT_DOUBLE_EQ(c.mean, 4.0);
  EXPECT_DOUBLE_EQ(c.variance, 1.0);
}

// Properties

TEST(GaussianProperty, TransformsAreSymplectic) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Matrix<double> omega = symplectic_form(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix<double> mats[] = {
        beam_splitter_symplectic(2, 0, 1, u(rng)),
        phase_shift_symplectic(2, trial % 2, 4 * kPi * (u(rng) - 0.5)),
        squeezer_symplectic(2, trial % 2, 1.0 + 20.0 * u(rng), 2 * kPi * u(rng)),
    };
    for (const auto& S : mats) {
      EXPECT_LT((S * omega * S.transpose() - omega).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(GaussianProperty, PurityPreservedAndLossMixes) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_pure_state(rng);
    EXPECT_NEAR(s.cov().determinant(), 1.0, 1e-9);
    s = apply_phase_shift(s, 1, 2 * kPi * u(rng));
    s = apply_opa(s, 0, OpaParams::from_squeezing(u(rng), 2 * kPi * u(rng)));
    EXPECT_NEAR(s.cov().determinant(), 1.0, 1e-9);

    const auto sq = apply_opa(vacuum_state(1), 0, OpaParams::from_squeezing(0.1 + u(rng)));
    const double eta = 0.05 + 0.9 * u(rng);
    EXPECT_GT(apply_loss(sq, 0, eta).cov().determinant(), sq.cov().determinant());
  }
}

TEST(GaussianProperty, HomodyneIsPiPeriodicInVariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_pure_state(rng);
    const double a = u(rng);
    const auto h0 = homodyne_stats(s, trial % 2, a);
    const auto h1 = homodyne_stats(s, trial % 2, a + kPi);
    EXPECT_NEAR(h0.variance, h1.variance, 1e-12 * std::max(1.0, h0.variance));
  }
}

TEST(GaussianProperty, PhotonNumberBookkeeping) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_pure_state(rng);
    const double n = s.total_photon_number();
    EXPECT_NEAR(apply_beam_splitter(s, 0, 1, u(rng)).total_photon_number(), n, 1e-9);
    EXPECT_NEAR(apply_phase_shift(s, 0, 2 * kPi * u(rng)).total_photon_number(), n, 1e-9);
    EXPECT_GE(s.photon_number(0), -1e-12);

    const OpaParams opa = OpaParams::from_squeezing(2.0 * u(rng), 2 * kPi * u(rng));
    const auto sq = apply_opa(vacuum_state(1), 0, opa);
    EXPECT_NEAR(sq.photon_number(0), opa.amp_gain_g * opa.amp_gain_g,
                1e-12 * std::max(1.0, opa.amp_gain_g * opa.amp_gain_g));
  }
}

TEST(GaussianProperty, LossComposes) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_pure_state(rng);
    const double e1 = u(rng);
    const double e2 = u(rng);
    const auto twice = apply_loss(apply_loss(s, 1, e1), 1, e2);
    const auto once = apply_loss(s, 1, e1 * e2);
    EXPECT_LT((twice.mean() - once.mean()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((twice.cov() - once.cov()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GaussianProperty, LongDoubleInstantiation) {
  auto s = direct_sum(coherent_state<long double>(2.0L), vacuum_state<long double>(1));
  s = apply_beam_splitter(s, 0, 1, 0.5L);
  s = apply_squeezer(s, 0, 3.0L, 0.0L);
  EXPECT_NEAR(static_cast<double>(s.cov().determinant()), 1.0, 1e-15);
}

}  // namespace
}  // namespace opamzi
