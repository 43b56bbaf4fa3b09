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

#include "opamzi/opa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opamzi {

OpaParams OpaParams::from_squeezing(double r, double pump_quadrature) {
  if (!(r >= 0.0)) throw std::invalid_argument("squeezing parameter must be >= 0");
  return OpaParams{std::cosh(r), std::sinh(r), pump_quadrature};
}

double OpaParams::squeezing_parameter() const { return std::asinh(amp_gain_g); }

void OpaParams::validate() const {
  if (!(amp_gain_G >= 1.0)) throw std::invalid_argument("OPA amplitude gain G must be >= 1");
  if (!(amp_gain_g >= 0.0)) throw std::invalid_argument("OPA amplitude gain g must be >= 0");
  const double G2 = amp_gain_G * amp_gain_G;
  if (std::abs(G2 - amp_gain_g * amp_gain_g - 1.0) > 1e-12 * std::max(1.0, G2)) {
    throw std::invalid_argument("OPA gains violate G^2 - g^2 = 1");
  }
  if (!std::isfinite(pump_quadrature)) {
    throw std::invalid_argument("OPA pump quadrature must be finite");
  }
}

std::string_view convention_token(GainConvention convention) {
  switch (convention) {
    case GainConvention::kAmplitudeG: return "G";
    case GainConvention::kIntensityG2: return "G2";
    case GainConvention::kPhaseSensitivePower: return "PSP";
  }
  return "?";
}

std::string_view convention_name(GainConvention convention) {
  switch (convention) {
    case GainConvention::kAmplitudeG: return "AMPLITUDE_G";
    case GainConvention::kIntensityG2: return "INTENSITY_G2";
    case GainConvention::kPhaseSensitivePower: return "PHASE_SENSITIVE_POWER";
  }
  return "?";
}

bool parse_convention(std::string_view text, GainConvention& out) {
  for (auto c : {GainConvention::kAmplitudeG, GainConvention::kIntensityG2,
                 GainConvention::kPhaseSensitivePower}) {
    if (text == convention_token(c) || text == convention_name(c)) {
      out = c;
      return true;
    }
  }
  return false;
}

OpaParams gain_to_opa(const GainSpec& gain, double pump_quadrature) {
  const double v = gain.value;
  if (!std::isfinite(v) || v < 1.0) {
    throw std::invalid_argument(std::string("gain ") + std::string(convention_name(gain.convention)) +
                                " must be a finite value >= 1");
  }
  OpaParams opa;
  opa.pump_quadrature = pump_quadrature;
  switch (gain.convention) {
    case GainConvention::kAmplitudeG:
      opa.amp_gain_G = v;
      opa.amp_gain_g = std::sqrt((v - 1.0) * (v + 1.0));
      break;
    case GainConvention::kIntensityG2:
      opa.amp_gain_G = std::sqrt(v);
      opa.amp_gain_g = std::sqrt(v - 1.0);
      break;
    case GainConvention::kPhaseSensitivePower: {
      const double up = std::sqrt(v);
      opa.amp_gain_G = 0.5 * (up + 1.0 / up);
      opa.amp_gain_g = 0.5 * (up - 1.0 / up);
      break;
    }
  }
  return opa;
}

GainSpec opa_to_gain(const OpaParams& opa, GainConvention convention) {
  opa.validate();
  switch (convention) {
    case GainConvention::kAmplitudeG: return {opa.amp_gain_G, convention};
    case GainConvention::kIntensityG2: return {opa.amp_gain_G * opa.amp_gain_G, convention};
    case GainConvention::kPhaseSensitivePower:
      return {opa.amplification() * opa.amplification(), convention};
  }
  return {};
}

double enhancement_factor(const OpaParams& opa) {
  opa.validate();
  return opa.amplification();
}

}  // namespace opamzi
