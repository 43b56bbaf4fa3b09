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

#include "opamzi/interferometer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "opamzi/errors.hpp"

namespace opamzi {
namespace {

constexpr double kPhaseQuadrature = std::numbers::pi / 2;
constexpr double kSlopeStep = 1e-6;
constexpr double kSlopeAgreement = 1e-8;

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

double LossBudget::detection_path_efficiency() const {
  return detection_efficiency * homodyne_visibility * homodyne_visibility *
         std::pow(10.0, -external_loss_db / 10.0);
}

double LossBudget::total_efficiency() const {
  return arm_efficiency() * detection_path_efficiency();
}

bool LossBudget::lossless() const {
  return internal_loss == 0.0 && detection_efficiency == 1.0 && homodyne_visibility == 1.0 &&
         external_loss_db == 0.0;
}

void LossBudget::validate() const {
  if (!in_unit_interval(internal_loss)) {
    throw ValidationError("internal_loss L0 must lie in [0, 1], got " + fmt_g(internal_loss));
  }
  if (!in_unit_interval(detection_efficiency)) {
    throw ValidationError("detection_efficiency eta must lie in [0, 1], got " +
                          fmt_g(detection_efficiency));
  }
  if (!in_unit_interval(homodyne_visibility)) {
    throw ValidationError("homodyne_visibility must lie in [0, 1], got " +
                          fmt_g(homodyne_visibility));
  }
  if (!(external_loss_db >= 0.0) || !std::isfinite(external_loss_db)) {
    throw ValidationError("external_loss must be a finite dB value >= 0, got " +
                          fmt_g(external_loss_db));
  }
}

InterferometerConfig InterferometerConfig::with_flux(double flux, double wavelength_m,
                                                     GainSpec gain) {
  InterferometerConfig c;
  c.input_kind = InputKind::kFlux;
  c.input_value = flux;
  c.wavelength_m = wavelength_m;
  c.gain = gain;
  return c;
}

InterferometerConfig InterferometerConfig::with_power(double watts, double wavelength_m,
                                                      GainSpec gain) {
  InterferometerConfig c = with_flux(0.0, wavelength_m, gain);
  c.input_kind = InputKind::kPower;
  c.input_value = watts;
  return c;
}

double InterferometerConfig::input_flux() const {
  return input_kind == InputKind::kFlux ? input_value : flux_from_power(input_value, wavelength_m);
}

double InterferometerConfig::input_power_watts() const {
  return input_kind == InputKind::kPower ? input_value : power_from_flux(input_value, wavelength_m);
}

OpaParams InterferometerConfig::opa() const {
  // The seed reaches arm A along +X and arm B along -X, so both pumps amplify X.
  return gain_to_opa(gain, 0.0);
}

std::vector<std::string> InterferometerConfig::validate() const {
  std::vector<std::string> warnings;
  if (!std::isfinite(input_value) || input_value < 0.0) {
    throw ValidationError(std::string(input_kind == InputKind::kFlux ? "input_flux" : "input_power") +
                          " must be finite and >= 0, got " + fmt_g(input_value));
  }
  if (!std::isfinite(wavelength_m) || wavelength_m <= 0.0) {
    throw ValidationError("wavelength must be finite and > 0, got " + fmt_g(wavelength_m));
  }
  try {
    gain_to_opa(gain).validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (!std::isfinite(bias_phase)) throw ValidationError("bias_phase must be finite");
  if (!std::isfinite(modulation_delta) || modulation_delta < 0.0) {
    throw ValidationError("modulation_delta must be finite and >= 0");
  }
  losses.validate();
  if (modulation_delta > 0.1) {
    warnings.push_back("modulation_delta " + fmt_g(modulation_delta) +
                       " rad exceeds 0.1 rad; the small-signal picture no longer holds");
  }
  return warnings;
}

std::string describe(const ChainElement& element) {
  struct Visitor {
    std::string operator()(const InputElement& e) const {
      return "input: coherent a_in (flux " + fmt_g(e.flux) + ") + vacuum b_in";
    }
    std::string operator()(const BeamSplitterElement& e) const {
      return e.label + ": beam splitter modes " + std::to_string(e.mode_a) + "," +
             std::to_string(e.mode_b) + " T=" + fmt_g(e.transmissivity);
    }
    std::string operator()(const OpaElement& e) const {
      return e.label + ": OPA on mode " + std::to_string(e.mode) + " G=" + fmt_g(e.opa.amp_gain_G) +
             " g=" + fmt_g(e.opa.amp_gain_g) + " pump=" + fmt_g(e.opa.pump_quadrature) + " rad";
    }
    std::string operator()(const LossElement& e) const {
      std::string modes;
      for (int m : e.modes) modes += (modes.empty() ? "" : ",") + std::to_string(m);
      return e.label + ": loss on modes " + modes + " efficiency=" + fmt_g(e.efficiency);
    }
    std::string operator()(const PhaseElement& e) const {
      return e.label + ": phase on mode " + std::to_string(e.mode) + " bias=" + fmt_g(e.bias) +
             " rad, delta=" + fmt_g(e.modulation_delta) + " rad";
    }
  };
  return std::visit(Visitor{}, element);
}

Chain build_chain(const InterferometerConfig& config) {
  config.validate();
  const OpaParams opa = config.opa();
  Chain chain;
  chain.elements.emplace_back(InputElement{config.input_flux()});
  chain.elements.emplace_back(BeamSplitterElement{kArmA, kArmB, 0.5, "BS1"});
  chain.elements.emplace_back(OpaElement{kArmA, opa, "OPA1"});
  chain.elements.emplace_back(OpaElement{kArmB, opa, "OPA2"});
  if (config.losses.internal_loss > 0.0) {
    chain.elements.emplace_back(
        LossElement{{kArmA, kArmB}, config.losses.arm_efficiency(), "internal loss"});
  }
  chain.elements.emplace_back(
      PhaseElement{kArmB, config.bias_phase, config.modulation_delta, "phase"});
  chain.elements.emplace_back(BeamSplitterElement{kArmA, kArmB, 0.5, "BS2"});
  const double detection = config.losses.detection_path_efficiency();
  if (detection < 1.0) {
    chain.elements.emplace_back(LossElement{{kDarkPort}, detection, "detection loss"});
  }
  return chain;
}

GaussianState<double> propagate(const Chain& chain, double phase_offset) {
  if (chain.elements.empty() || !std::holds_alternative<InputElement>(chain.elements.front())) {
    throw std::invalid_argument("chain must start with an input element");
  }
  const auto& input = std::get<InputElement>(chain.elements.front());
  GaussianState<double> state = direct_sum(coherent_state(input.flux), vacuum_state(1));
  for (std::size_t i = 1; i < chain.elements.size(); ++i) {
    const auto& element = chain.elements[i];
    if (const auto* bs = std::get_if<BeamSplitterElement>(&element)) {
      state = apply_beam_splitter(state, bs->mode_a, bs->mode_b, bs->transmissivity);
    } else if (const auto* amp = std::get_if<OpaElement>(&element)) {
      state = apply_opa(state, amp->mode, amp->opa);
    } else if (const auto* loss = std::get_if<LossElement>(&element)) {
      for (int m : loss->modes) state = apply_loss(state, m, loss->efficiency);
    } else if (const auto* phase = std::get_if<PhaseElement>(&element)) {
      state = apply_phase_shift(state, phase->mode, phase->bias + phase_offset);
    } else {
      throw std::invalid_argument("input element may only appear first in a chain");
    }
  }
  return state;
}

double phase_sensing_flux(const OpaParams& opa, double input_flux_I0) {
  opa.validate();
  if (!(input_flux_I0 >= 0.0)) throw std::invalid_argument("I0 must be >= 0");
  const double up = opa.amplification();
  return 0.5 * up * up * input_flux_I0 + opa.amp_gain_g * opa.amp_gain_g;
}

double input_flux_for_phase_sensing_flux(const OpaParams& opa, double phase_sensing) {
  opa.validate();
  const double coherent = phase_sensing - opa.amp_gain_g * opa.amp_gain_g;
  if (!(coherent >= 0.0)) {
    throw std::domain_error("phase-sensing flux " + fmt_g(phase_sensing) +
                            " is below the spontaneous floor g^2 = " +
                            fmt_g(opa.amp_gain_g * opa.amp_gain_g));
  }
  const double up = opa.amplification();
  return 2.0 * coherent / (up * up);
}

double sensitivity_lossless(const OpaParams& opa, double input_flux_I0) {
  return sensitivity_with_efficiency(opa, input_flux_I0, 1.0);
}

double sensitivity_with_efficiency(const OpaParams& opa, double input_flux_I0, double efficiency) {
  opa.validate();
  if (!(input_flux_I0 > 0.0)) throw std::invalid_argument("sensitivity undefined for I0 <= 0");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("efficiency must lie in (0, 1]");
  }
  const double down = opa.deamplification();
  const double variance = efficiency * down * down + (1.0 - efficiency);
  return std::sqrt(variance / efficiency) / (opa.amplification() * std::sqrt(input_flux_I0));
}

SensitivityReport simulate_interferometer(const InterferometerConfig& config) {
  const Chain chain = build_chain(config);
  const int dark = chain.dark_port;
  const double bias = config.bias_phase;

  const auto at_bias = propagate(chain, 0.0);
  const double variance = homodyne_stats(at_bias, dark, kPhaseQuadrature).variance;

  // Offsets are applied as bias + offset inside propagate; dividing by the
  // rounded phase difference keeps the quotient exact to the last bits.
  auto central_difference = [&](double h) {
    const double up = homodyne_stats(propagate(chain, h), dark, kPhaseQuadrature).mean;
    const double down = homodyne_stats(propagate(chain, -h), dark, kPhaseQuadrature).mean;
    return (up - down) / ((bias + h) - (bias - h));
  };
  const double slope = central_difference(kSlopeStep);
  if (!(std::abs(slope) >= 1e-300)) {
    throw DegenerateSlope("dark-port P quadrature has no phase response (slope " + fmt_g(slope) +
                          "); check the input flux and efficiencies");
  }
  const double refined = central_difference(0.5 * kSlopeStep);
  if (std::abs(refined - slope) > kSlopeAgreement * std::abs(slope)) {
    throw SimulationError("phase slope not converged: h gives " + fmt_g(slope) + ", h/2 gives " +
                          fmt_g(refined));
  }

  const OpaParams opa = config.opa();
  const double flux = config.input_flux();
  const double up = opa.amplification();

  SensitivityReport report;
  report.gain_convention = config.gain.convention;
  report.snl_reference = config.snl_reference;
  report.dark_port_variance = variance;
  report.slope = slope;
  report.total_efficiency = config.losses.total_efficiency();
  report.delta_phi = std::sqrt(variance) / std::abs(slope);
  report.phase_sensing_flux = phase_sensing_flux(opa, flux);

  const double reference_number = config.snl_reference == SnlReference::kTwoArm
                                      ? 2.0 * report.phase_sensing_flux
                                      : report.phase_sensing_flux;
  report.delta_phi_snl = snl(report.phase_sensing_flux, config.snl_reference);
  report.delta_phi_hl = hl(reference_number);
  report.delta_phi_qcrb = qcrb(0.5 * up * up * flux, opa.squeezing_parameter());
  report.noise_rel_snl_db = db_rel(variance);
  report.snr_improvement_db = snr_improvement_db(report);

  // Per-arm seed power after BS1, amplified by G' = (G + g)^2; the noise
  // factor is referred back through the signal attenuation.
  const double seed_power = 0.5 * config.input_power_watts();
  const double gain_prime = up * up;
  report.spectral_density_snl = spectral_density(1.0, gain_prime, seed_power, config.wavelength_m);
  report.spectral_density = spectral_density(variance / report.total_efficiency, gain_prime,
                                             seed_power, config.wavelength_m);
  return report;
}

double snr_improvement_db(const SensitivityReport& report) {
  return db_rel_amplitude(report.delta_phi_snl, report.delta_phi);
}

double snr_improvement_db(double noise_rel_snl_db, double signal_loss_db) {
  return -noise_rel_snl_db - signal_loss_db;
}

double calibrate_total_efficiency(const InterferometerConfig& config, double target_noise_db) {
  InterferometerConfig probe = config;
  probe.losses = LossBudget{};
  auto noise_db = [&](double efficiency) {
    probe.losses.detection_efficiency = efficiency;
    const auto state = propagate(build_chain(probe), 0.0);
    return db_rel(homodyne_stats(state, kDarkPort, kPhaseQuadrature).variance);
  };
  double lo = 0.0;  // noise 0 dB
  double hi = 1.0;  // lossless floor
  const double floor_db = noise_db(hi);
  if (!(target_noise_db >= floor_db && target_noise_db <= 0.0)) {
    throw std::domain_error("target noise " + fmt_g(target_noise_db) +
                            " dB is outside the reachable range [" + fmt_g(floor_db) + ", 0] dB");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (noise_db(mid) > target_noise_db) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace opamzi
