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
#include <variant>

#include <gtest/gtest.h>

#include "opamzi/errors.hpp"
#include "opamzi/interferometer.hpp"

namespace opamzi {
namespace {

constexpr double kPi = std::numbers::pi;

InterferometerConfig g2_config(double g2, double flux) {
  return InterferometerConfig::with_flux(flux, 895e-9, {g2, GainConvention::kIntensityG2});
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

TEST(PhaseSensingFlux, Examples) {
  EXPECT_DOUBLE_EQ(phase_sensing_flux(OpaParams{}, 100.0), 50.0);
  const OpaParams opa = gain_to_opa({15.0, GainConvention::kIntensityG2});
  EXPECT_NEAR(phase_sensing_flux(opa, 2.25e13) / 6.52306e14, 1.0, 1e-5);
  EXPECT_NEAR(input_flux_for_phase_sensing_flux(opa, phase_sensing_flux(opa, 2.25e13)), 2.25e13,
              1e-2);
  EXPECT_THROW(input_flux_for_phase_sensing_flux(opa, 10.0), std::domain_error);
}

TEST(PhaseSensingFlux, SeedPowerPerArm) {
  // 10 uW into the interferometer leaves 5 uW per arm, amplified by (G + g)^2.
  const OpaParams opa = gain_to_opa({15.06, GainConvention::kPhaseSensitivePower});
  const double flux = flux_from_power(10e-6, 895e-9);
  const double watts = power_from_flux(phase_sensing_flux(opa, flux), 895e-9);
  EXPECT_NEAR(watts, 75.3e-6, 1e-10);
}

TEST(SensitivityLossless, Examples) {
  EXPECT_NEAR(sensitivity_lossless(OpaParams{}, 1e4), 1e-2, 1e-15);
  const OpaParams g15 = gain_to_opa({15.0, GainConvention::kIntensityG2});
  EXPECT_NEAR(sensitivity_lossless(g15, 2.25e13), 3.63588e-9, 1e-14);
  EXPECT_NEAR(sensitivity_lossless(OpaParams{1.25, 0.75, 0.0}, 1e6), 2.5e-4, 1e-15);
  // Equivalent form through I_ps.
  const double ips = phase_sensing_flux(g15, 2.25e13);
  const double gm = g15.deamplification();
  EXPECT_NEAR(sensitivity_lossless(g15, 2.25e13),
              std::sqrt(gm * gm / (2.0 * (ips - g15.amp_gain_g * g15.amp_gain_g))), 1e-20);
}

TEST(Chain, ElementOrder) {
  auto config = g2_config(15.0, 1e6);
  config.losses = {0.01, 0.9, 0.98, 0.5};
  const Chain chain = build_chain(config);
  ASSERT_EQ(chain.elements.size(), 8u);
  EXPECT_TRUE(std::holds_alternative<InputElement>(chain.elements[0]));
  EXPECT_TRUE(std::holds_alternative<BeamSplitterElement>(chain.elements[1]));
  EXPECT_TRUE(std::holds_alternative<OpaElement>(chain.elements[2]));
  EXPECT_TRUE(std::holds_alternative<OpaElement>(chain.elements[3]));
  EXPECT_TRUE(std::holds_alternative<LossElement>(chain.elements[4]));
  EXPECT_TRUE(std::holds_alternative<PhaseElement>(chain.elements[5]));
  EXPECT_TRUE(std::holds_alternative<BeamSplitterElement>(chain.elements[6]));
  EXPECT_TRUE(std::holds_alternative<LossElement>(chain.elements[7]));
  EXPECT_EQ(std::get<OpaElement>(chain.elements[2]).mode, kArmA);
  EXPECT_EQ(std::get<OpaElement>(chain.elements[3]).mode, kArmB);
  EXPECT_EQ(std::get<LossElement>(chain.elements[7]).modes, std::vector<int>{kDarkPort});
  EXPECT_NEAR(std::get<LossElement>(chain.elements[7]).efficiency,
              0.9 * 0.98 * 0.98 * std::pow(10.0, -0.05), 1e-15);
  for (const auto& e : chain.elements) EXPECT_FALSE(describe(e).empty());
}

TEST(Chain, LosslessHasNoLossElements) {
  const Chain chain = build_chain(g2_config(15.0, 1e6));
  EXPECT_EQ(chain.elements.size(), 6u);
  for (const auto& e : chain.elements) EXPECT_FALSE(std::holds_alternative<LossElement>(e));
}

TEST(Chain, DarkPortCarriesOnlySpontaneousPhotons) {
  for (const double g2 : {1.0, 2.0, 15.0}) {
    auto config = g2_config(g2, 1e10);
    config.modulation_delta = 0.0;
    const auto state = propagate(build_chain(config));
    const double g_sq = g2 - 1.0;
    EXPECT_NEAR(state.photon_number(kDarkPort), g_sq, 1e-6 * std::max(1.0, g_sq));
    const double up2 = config.opa().amplification() * config.opa().amplification();
    EXPECT_NEAR(state.total_photon_number() / (up2 * 1e10 + 2.0 * g_sq), 1.0, 1e-12);
  }
}

TEST(Simulate, ReportFields) {
  const auto r = simulate_interferometer(g2_config(15.0, 2.25e13));
  EXPECT_NEAR(r.delta_phi, 3.63588e-9, 1e-14);
  EXPECT_NEAR(r.phase_sensing_flux / 6.52306e14, 1.0, 1e-5);
  EXPECT_NEAR(r.delta_phi_snl, 3.91538e-8, 1e-13);
  EXPECT_NEAR(r.delta_phi_snl / r.delta_phi, 10.7687, 1e-3);
  EXPECT_NEAR(r.snr_improvement_db, 20.0 * std::log10(10.7687), 1e-3);
  EXPECT_NEAR(r.noise_rel_snl_db, 10.0 * std::log10(0.0172465076), 1e-8);
  EXPECT_LE(r.delta_phi_qcrb, r.delta_phi / std::sqrt(2.0) * (1 + 1e-12));
  EXPECT_EQ(r.gain_convention, GainConvention::kIntensityG2);
  EXPECT_EQ(r.snl_reference, SnlReference::kSingleArm);
  EXPECT_EQ(r.total_efficiency, 1.0);
}

TEST(Simulate, PassiveInterferometerSitsAtShotNoise) {
  auto config = g2_config(1.0, 1e8);
  const auto r = simulate_interferometer(config);
  EXPECT_NEAR(r.delta_phi, 1e-4, 1e-14);
  EXPECT_NEAR(r.noise_rel_snl_db, 0.0, 1e-12);
  config.snl_reference = SnlReference::kTwoArm;
  EXPECT_NEAR(snr_improvement_db(simulate_interferometer(config)), 0.0, 1e-9);
}

TEST(Simulate, ZeroSeedHasNoSlope) {
  EXPECT_THROW(simulate_interferometer(g2_config(15.0, 0.0)), DegenerateSlope);
}

TEST(Simulate, FewPhotonLossyPoint) {
  auto config = g2_config(5.0, 0.0);
  config.losses.internal_loss = 0.002;
  config.losses.detection_efficiency = 0.99;
  const OpaParams opa = config.opa();
  config.input_value = input_flux_for_phase_sensing_flux(opa, 4.5);
  const auto r = simulate_interferometer(config);
  EXPECT_NEAR(r.phase_sensing_flux, 4.5, 1e-12);
  EXPECT_NEAR(r.delta_phi, sensitivity_with_efficiency(opa, config.input_value, 0.998 * 0.99),
              1e-12);
  EXPECT_NEAR(r.delta_phi, 0.26049, 1e-4);
  EXPECT_NEAR(r.delta_phi_hl, 1.0 / 4.5, 1e-15);
}

TEST(Calibration, SolvesForObservedSqueezing) {
  const auto config = g2_config(15.0, 4.5e13);
  const double eta = calibrate_total_efficiency(config, -5.57);
  EXPECT_NEAR(eta, 0.73535021, 1e-6);
  auto calibrated = config;
  calibrated.losses.detection_efficiency = eta;
  EXPECT_NEAR(simulate_interferometer(calibrated).noise_rel_snl_db, -5.57, 1e-9);
  EXPECT_THROW(calibrate_total_efficiency(config, -30.0), std::domain_error);
  EXPECT_THROW(calibrate_total_efficiency(config, 1.0), std::domain_error);
}

TEST(SnrImprovement, SignalLossCorrection) {
  EXPECT_NEAR(snr_improvement_db(-5.57, 0.71), 4.86, 1e-12);
}

TEST(Validation, RejectsBadConfigs) {
  auto c = g2_config(15.0, 1e6);
  c.wavelength_m = -895e-9;
  EXPECT_THROW(c.validate(), ValidationError);
  c = g2_config(0.5, 1e6);
  EXPECT_THROW(c.validate(), ValidationError);
  c = g2_config(15.0, 1e6);
  c.losses.internal_loss = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = g2_config(15.0, -1.0);
  EXPECT_THROW(c.validate(), ValidationError);
  c = g2_config(15.0, 1e6);
  c.modulation_delta = 0.2;
  EXPECT_EQ(c.validate().size(), 1u);
}

// Properties

TEST(InterferometerProperty, ClosedFormEquivalence) {
  for (const double g2 : {1.5, 2.0, 5.0, 15.0, 50.0}) {
    for (const double flux : {1e3, 1e6, 1e13}) {
      const auto config = g2_config(g2, flux);
      EXPECT_LT(rel(simulate_interferometer(config).delta_phi,
                    sensitivity_lossless(config.opa(), flux)),
                1e-10)
          << "G2=" << g2 << " I0=" << flux;
    }
  }
}

TEST(InterferometerProperty, LossyClosedFormEquivalence) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto config = g2_config(1.0 + 40.0 * u(rng), std::pow(10.0, 2.0 + 12.0 * u(rng)));
    config.losses = {0.3 * u(rng), 0.5 + 0.5 * u(rng), 0.8 + 0.2 * u(rng), 3.0 * u(rng)};
    const auto r = simulate_interferometer(config);
    EXPECT_LT(rel(r.delta_phi, sensitivity_with_efficiency(config.opa(), config.input_flux(),
                                                           config.losses.total_efficiency())),
              1e-9);
  }
}

TEST(InterferometerProperty, MonotoneInGainAndEfficiency) {
  double previous = 1e300;
  for (double g2 = 1.0; g2 <= 50.0; g2 += 0.5) {
    const double d = simulate_interferometer(g2_config(g2, 2.25e13)).delta_phi;
    EXPECT_LT(d, previous) << g2;
    previous = d;
  }
  previous = 0.0;
  for (double eta = 1.0; eta >= 0.05; eta -= 0.05) {
    auto c = g2_config(15.0, 2.25e13);
    c.losses.detection_efficiency = eta;
    const double d = simulate_interferometer(c).delta_phi;
    EXPECT_GT(d, previous) << eta;
    previous = d;
  }
}

TEST(InterferometerProperty, LossFloor) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = g2_config(1.0 + 100.0 * u(rng), 1e10);
    c.losses = {0.5 * u(rng), 0.2 + 0.8 * u(rng), 0.5 + 0.5 * u(rng), 0.0};
    const auto r = simulate_interferometer(c);
    EXPECT_GE(r.dark_port_variance, 1.0 - r.total_efficiency - 1e-12);
  }
}

TEST(InterferometerProperty, BiasPeriodicity) {
  auto base = g2_config(15.0, 2.25e13);
  base.losses = {0.002, 0.99, 1.0, 0.0};
  const auto ref = simulate_interferometer(base);
  for (int k = -2; k <= 2; ++k) {
    auto c = base;
    c.bias_phase = kPi + 2.0 * kPi * k;
    const auto r = simulate_interferometer(c);
    EXPECT_LT(rel(r.delta_phi, ref.delta_phi), 1e-12) << k;
    EXPECT_LT(rel(r.dark_port_variance, ref.dark_port_variance), 1e-12) << k;
    EXPECT_LT(rel(std::abs(r.slope), std::abs(ref.slope)), 1e-12) << k;
    EXPECT_EQ(r.delta_phi_snl, ref.delta_phi_snl);
    EXPECT_EQ(r.delta_phi_qcrb, ref.delta_phi_qcrb);
    EXPECT_LT(std::abs(r.noise_rel_snl_db - ref.noise_rel_snl_db), 1e-12);
  }
}

TEST(InterferometerProperty, BoundOrdering) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = g2_config(1.0 + 100.0 * u(rng), std::pow(10.0, 14.0 * u(rng)));
    const auto r = simulate_interferometer(c);
    if (r.phase_sensing_flux < 1.0) continue;
    EXPECT_LE(r.delta_phi_qcrb, r.delta_phi * (1 + 1e-9));
    EXPECT_LE(r.delta_phi_hl, r.delta_phi_snl);
  }
}

}  // namespace
}  // namespace opamzi
