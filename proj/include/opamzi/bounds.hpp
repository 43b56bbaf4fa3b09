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

// Reference limits for phase estimation and the frequency-domain minimum
// detectable phase of an amplified, squeezed interferometer.

#pragma once

#include <string_view>

namespace opamzi {

namespace constants {
inline constexpr double kPlanck = 6.62607015e-34;      // J s, exact
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s, exact
}  // namespace constants

/// Which photon flux the shot-noise limit is referenced to: the phase-sensing
/// flux of one arm (N = I_ps) or of both arms (N = 2 I_ps).
enum class SnlReference { kSingleArm, kTwoArm };

std::string_view snl_reference_name(SnlReference ref);
bool parse_snl_reference(std::string_view text, SnlReference& out);

/// 1/sqrt(N) with N = I_ps (single arm) or 2 I_ps (two arm).
double snl(double phase_sensing_flux, SnlReference ref = SnlReference::kSingleArm);

/// 1/N.
double hl(double photon_number);

/// Quantum Fisher information 4 Var(n) of a pure displaced squeezed probe whose
/// displacement lies along the anti-squeezed quadrature:
/// 4 (alpha^2 e^{2r} + sinh^2(2r)/2).
double qfi_displaced_squeezed(double probe_amplitude_sq, double r);

/// 1/sqrt(F_Q). Throws std::domain_error when F_Q = 0 (vacuum probe).
double qcrb(double probe_amplitude_sq, double r);

/// Inverts qcrb() for the displacement at fixed r. Throws std::domain_error when
/// the target is unreachable (larger than the squeezed-vacuum bound).
double qcrb_probe_amplitude_sq(double target_bound, double r);

struct SpectralPoint {
  double analysis_frequency_hz = 0.0;  // metadata, phi_min does not depend on it
  double phi_min = 0.0;                // rad / sqrt(Hz)
};

/// phi_min = sqrt(4 h c e^{-2r} / (lambda G' P_in)).
SpectralPoint min_detectable_phase_spectral(double r, double actual_power_gain,
                                            double input_power_watts, double wavelength_m,
                                            double analysis_frequency_hz = 2.0e6);

/// Same relation with e^{-2r} given directly as a noise factor relative to shot
/// noise; the factor may exceed 1 (noise above the SNL).
double spectral_density(double noise_factor, double actual_power_gain,
                        double input_power_watts, double wavelength_m);

/// Photon flux (s^-1) of a beam of the given power and wavelength.
double flux_from_power(double power_watts, double wavelength_m);
double power_from_flux(double flux_per_s, double wavelength_m);

/// 10 log10(value / reference), power convention.
double db_rel(double value, double reference = 1.0);
/// 20 log10(value / reference), amplitude convention.
double db_rel_amplitude(double value, double reference = 1.0);
/// Inverse of db_rel: 10^(db/10).
double from_db(double db);

}  // namespace opamzi
