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

#include "opamzi/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace opamzi {

std::string_view snl_reference_name(SnlReference ref) {
  return ref == SnlReference::kTwoArm ? "two_arm" : "single_arm";
}

bool parse_snl_reference(std::string_view text, SnlReference& out) {
  if (text == "single_arm") {
    out = SnlReference::kSingleArm;
    return true;
  }
  if (text == "two_arm") {
    out = SnlReference::kTwoArm;
    return true;
  }
  return false;
}

double snl(double phase_sensing_flux, SnlReference ref) {
  if (!(phase_sensing_flux > 0.0)) throw std::invalid_argument("snl: photon number must be > 0");
  const double single = 1.0 / std::sqrt(phase_sensing_flux);
  return ref == SnlReference::kTwoArm ? single / std::numbers::sqrt2 : single;
}

double hl(double photon_number) {
  if (!(photon_number > 0.0)) throw std::invalid_argument("hl: photon number must be > 0");
  return 1.0 / photon_number;
}

double qfi_displaced_squeezed(double probe_amplitude_sq, double r) {
  if (!(probe_amplitude_sq >= 0.0)) throw std::invalid_argument("qcrb: alpha^2 must be >= 0");
  if (!(r >= 0.0)) throw std::invalid_argument("qcrb: r must be >= 0");
  const double s = std::sinh(2.0 * r);
  return 4.0 * (probe_amplitude_sq * std::exp(2.0 * r) + 0.5 * s * s);
}

double qcrb(double probe_amplitude_sq, double r) {
  const double fisher = qfi_displaced_squeezed(probe_amplitude_sq, r);
  if (!(fisher > 0.0)) throw std::domain_error("qcrb: zero Fisher information (vacuum probe)");
  return 1.0 / std::sqrt(fisher);
}

double qcrb_probe_amplitude_sq(double target_bound, double r) {
  if (!(target_bound > 0.0)) throw std::invalid_argument("qcrb target must be > 0");
  const double s = std::sinh(2.0 * r);
  const double needed = 1.0 / (4.0 * target_bound * target_bound) - 0.5 * s * s;
  if (needed < 0.0) throw std::domain_error("qcrb target is above the squeezed-vacuum bound");
  return needed * std::exp(-2.0 * r);
}

double spectral_density(double noise_factor, double actual_power_gain, double input_power_watts,
                        double wavelength_m) {
  if (!(noise_factor > 0.0)) throw std::invalid_argument("noise factor must be > 0");
  if (!(actual_power_gain > 0.0)) throw std::invalid_argument("power gain must be > 0");
  if (!(input_power_watts > 0.0)) throw std::invalid_argument("input power must be > 0");
  if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  return std::sqrt(4.0 * constants::kPlanck * constants::kSpeedOfLight * noise_factor /
                   (wavelength_m * actual_power_gain * input_power_watts));
}

SpectralPoint min_detectable_phase_spectral(double r, double actual_power_gain,
                                            double input_power_watts, double wavelength_m,
                                            double analysis_frequency_hz) {
  if (!(r >= 0.0)) throw std::invalid_argument("squeezing parameter must be >= 0");
  return {analysis_frequency_hz,
          spectral_density(std::exp(-2.0 * r), actual_power_gain, input_power_watts, wavelength_m)};
}

double flux_from_power(double power_watts, double wavelength_m) {
  if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  return power_watts * wavelength_m / (constants::kPlanck * constants::kSpeedOfLight);
}

double power_from_flux(double flux_per_s, double wavelength_m) {
  if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  return flux_per_s * constants::kPlanck * constants::kSpeedOfLight / wavelength_m;
}

double db_rel(double value, double reference) {
  if (!(value > 0.0) || !(reference > 0.0)) {
    throw std::invalid_argument("db_rel needs positive value and reference");
  }
  return 10.0 * std::log10(value / reference);
}

double db_rel_amplitude(double value, double reference) {
  if (!(value > 0.0) || !(reference > 0.0)) {
    throw std::invalid_argument("db_rel_amplitude needs positive value and reference");
  }
  return 20.0 * std::log10(value / reference);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace opamzi
