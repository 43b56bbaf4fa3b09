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

#pragma once

#include <string>
#include <string_view>

#include "opamzi/gaussian.hpp"

namespace opamzi {

/// Degenerate optical parametric amplifier a -> G a + g e^{2i theta} a^dag,
/// with G^2 - g^2 = 1. The quadrature at angle theta = pump_quadrature is
/// amplified by G + g = e^r, the conjugate one deamplified by G - g = e^-r.
struct OpaParams {
  double amp_gain_G = 1.0;
  double amp_gain_g = 0.0;
  double pump_quadrature = 0.0;

  static OpaParams from_squeezing(double r, double pump_quadrature = 0.0);

  double squeezing_parameter() const;
  double amplification() const { return amp_gain_G + amp_gain_g; }
  // 1/(G+g) rather than G-g: no cancellation at large gain.
  double deamplification() const { return 1.0 / (amp_gain_G + amp_gain_g); }

  /// Throws std::invalid_argument unless G >= 1, g >= 0 and G^2 - g^2 = 1.
  void validate() const;

  bool operator==(const OpaParams&) const = default;
};

enum class GainConvention {
  kAmplitudeG,            // value = G
  kIntensityG2,           // value = G^2
  kPhaseSensitivePower,   // value = (G + g)^2, the seed power gain
};

struct GainSpec {
  double value = 1.0;
  GainConvention convention = GainConvention::kIntensityG2;

  bool operator==(const GainSpec&) const = default;
};

/// Short unit tokens used in config files: "G", "G2", "PSP".
std::string_view convention_token(GainConvention convention);
/// Long names: AMPLITUDE_G, INTENSITY_G2, PHASE_SENSITIVE_POWER.
std::string_view convention_name(GainConvention convention);
/// Accepts either the token or the long name; returns false when unknown.
bool parse_convention(std::string_view text, GainConvention& out);

OpaParams gain_to_opa(const GainSpec& gain, double pump_quadrature = 0.0);
GainSpec opa_to_gain(const OpaParams& opa, GainConvention convention);

/// (G + g), approximately 2G at large gain: the asymptotic improvement over
/// the shot-noise limit referenced to the total (two-arm) phase-sensing flux.
double enhancement_factor(const OpaParams& opa);

template <typename Scalar>
GaussianState<Scalar> apply_opa(const GaussianState<Scalar>& state, int mode,
                                const OpaParams& opa) {
  opa.validate();
  return apply_squeezer(state, mode, static_cast<Scalar>(opa.amplification()),
                        static_cast<Scalar>(opa.pump_quadrature));
}

}  // namespace opamzi
