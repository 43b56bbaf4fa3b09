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

// Mach-Zehnder interferometer with one parametric amplifier per arm.
//
//   a_in (coherent) --+                      +-- C --+
//                     | BS1 --> OPA1 (arm A) |       | BS2 --> a_out (bright)
//   b_in (vacuum) ----+       OPA2 (arm B) --+-- D --+     --> b_out (dark, homodyne P)
//                                  phase bias + delta on D
//
// Mode 0 carries a_in / A / C / a_out, mode 1 carries b_in / B / D / b_out.
// With the bias locked at pi + 2k pi the seed interferes destructively at
// b_out and the phase signal appears in its P quadrature.

#pragma once

#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "opamzi/bounds.hpp"
#include "opamzi/gaussian.hpp"
#include "opamzi/opa.hpp"

namespace opamzi {

inline constexpr int kArmA = 0;
inline constexpr int kArmB = 1;
inline constexpr int kDarkPort = 1;

struct LossBudget {
  double internal_loss = 0.0;         // L0, applied in each arm after its OPA
  double detection_efficiency = 1.0;  // eta, at the homodyne port
  double homodyne_visibility = 1.0;   // v, effective efficiency v^2
  double external_loss_db = 0.0;      // attenuation outside the interferometer

  double arm_efficiency() const { return 1.0 - internal_loss; }
  /// eta v^2 10^(-external/10), everything after BS2.
  double detection_path_efficiency() const;
  /// (1 - L0) eta v^2 10^(-external/10).
  double total_efficiency() const;
  bool lossless() const;
  void validate() const;

  bool operator==(const LossBudget&) const = default;
};

enum class InputKind { kFlux, kPower };

struct InterferometerConfig {
  InputKind input_kind = InputKind::kFlux;
  double input_value = 0.0;  // photons/s (or photons) for kFlux, watts for kPower
  double wavelength_m = 895e-9;
  GainSpec gain{};
  double bias_phase = std::numbers::pi;
  double modulation_delta = 1e-6;
  LossBudget losses{};
  SnlReference snl_reference = SnlReference::kSingleArm;

  static InterferometerConfig with_flux(double flux, double wavelength_m, GainSpec gain);
  static InterferometerConfig with_power(double watts, double wavelength_m, GainSpec gain);

  /// alpha_in^2, the flux entering BS1.
  double input_flux() const;
  double input_power_watts() const;
  OpaParams opa() const;

  /// Throws ValidationError naming the violated invariant. Returns warnings.
  std::vector<std::string> validate() const;

  bool operator==(const InterferometerConfig&) const = default;
};

// Chain elements.

struct InputElement {
  double flux = 0.0;
};

struct BeamSplitterElement {
  int mode_a = 0;
  int mode_b = 1;
  double transmissivity = 0.5;
  std::string label;
};

struct OpaElement {
  int mode = 0;
  OpaParams opa;
  std::string label;
};

struct LossElement {
  std::vector<int> modes;
  double efficiency = 1.0;
  std::string label;
};

/// Bias phase on one arm; the probed offset is added during propagation.
struct PhaseElement {
  int mode = kArmB;
  double bias = std::numbers::pi;
  double modulation_delta = 0.0;  // reporting only
  std::string label;
};

using ChainElement =
    std::variant<InputElement, BeamSplitterElement, OpaElement, LossElement, PhaseElement>;

struct Chain {
  std::vector<ChainElement> elements;
  int dark_port = kDarkPort;
};

std::string describe(const ChainElement& element);

Chain build_chain(const InterferometerConfig& config);

/// Runs the chain; `phase_offset` is added to every phase element's bias.
GaussianState<double> propagate(const Chain& chain, double phase_offset = 0.0);

/// I_ps = (G + g)^2 I0 / 2 + g^2, the mean photon flux in one arm after its
/// OPA when I0 enters BS1.
double phase_sensing_flux(const OpaParams& opa, double input_flux_I0);

/// Inverse of phase_sensing_flux for I0. Throws std::domain_error when
/// I_ps < g^2 (the spontaneous floor).
double input_flux_for_phase_sensing_flux(const OpaParams& opa, double phase_sensing_flux);

/// Lossless sensitivity (G - g) / ((G + g) sqrt(I0)), equal to
/// sqrt((G - g)^2 / (2 (I_ps - g^2))).
double sensitivity_lossless(const OpaParams& opa, double input_flux_I0);

/// Sensitivity with total power efficiency `efficiency` between the OPAs and
/// the detector: sqrt(eff (G-g)^2 + 1 - eff) / (sqrt(eff) (G+g) sqrt(I0)).
double sensitivity_with_efficiency(const OpaParams& opa, double input_flux_I0,
                                   double efficiency);

struct SensitivityReport {
  double delta_phi = 0.0;             // rad, unit bandwidth
  double delta_phi_snl = 0.0;         // rad
  double delta_phi_hl = 0.0;          // rad
  double delta_phi_qcrb = 0.0;        // rad, lossless probe bound
  double phase_sensing_flux = 0.0;    // I_ps per arm
  double noise_rel_snl_db = 0.0;      // dark-port Var(P) in dB, negative when squeezed
  double snr_improvement_db = 0.0;    // 20 log10(delta_phi_snl / delta_phi)
  double spectral_density = 0.0;      // rad / sqrt(Hz)
  double spectral_density_snl = 0.0;  // rad / sqrt(Hz)

  double dark_port_variance = 1.0;
  double slope = 0.0;  // d<P>/d phi at the bias
  double total_efficiency = 1.0;
  GainConvention gain_convention = GainConvention::kIntensityG2;
  SnlReference snl_reference = SnlReference::kSingleArm;
};

/// Full Gaussian propagation. The slope d<P>/d phi comes from a central
/// difference (h = 1e-6 rad) cross-checked against h/2.
///
/// Throws DegenerateSlope if the dark port has no phase response (for
/// example zero input flux), ValidationError for an invalid config.
SensitivityReport simulate_interferometer(const InterferometerConfig& config);

double snr_improvement_db(const SensitivityReport& report);
/// SNR gain of a measurement whose noise sits `noise_rel_snl_db` from shot
/// noise while its signal power is attenuated by `signal_loss_db`.
double snr_improvement_db(double noise_rel_snl_db, double signal_loss_db);

/// Finds the total efficiency at which the simulated dark-port noise equals
/// `target_noise_db` (negative, dB rel. SNL), by bisection over the
/// detection efficiency with all other losses removed.
double calibrate_total_efficiency(const InterferometerConfig& config, double target_noise_db);

}  // namespace opamzi
