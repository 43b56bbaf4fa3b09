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

// Flat `key = value unit` experiment files.
//
//   # lines starting with '#' (or trailing '#' text) are comments
//   input_power = 10 uW          # or: input_flux = 4.5e13 /s
//   wavelength = 895 nm
//   gain = 15 G2                 # G, G2 or PSP
//   bias_phase = 1 pi
//   internal_loss = 0.2 %
//
// Every physical quantity needs a unit; dimensionless ratios take `frac` or
// `%`. Keys prefixed sweep_ or trace_ turn the file into a sweep or trace
// description on top of the baseline configuration.

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "opamzi/interferometer.hpp"
#include "opamzi/sweep.hpp"

namespace opamzi {

using ParsedFile = std::variant<InterferometerConfig, SweepSpec, TraceSpec>;

/// Detects the file kind from its keys. Throws ParseError (with line and
/// column) for syntax and unit problems, ValidationError for bad values.
ParsedFile parse_config(std::string_view text);

InterferometerConfig parse_interferometer_config(std::string_view text);
SweepSpec parse_sweep_spec(std::string_view text);
TraceSpec parse_trace_spec(std::string_view text);

/// Canonical text form; parse_*(render(x)) == x.
std::string render(const InterferometerConfig& config);
std::string render(const SweepSpec& spec);
std::string render(const TraceSpec& spec);

/// Reads a whole file, throwing IoError with the path on failure.
std::string read_text_file(const std::string& path);

}  // namespace opamzi
