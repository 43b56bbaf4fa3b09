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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opamzi/fock.hpp"
#include "opamzi/interferometer.hpp"

namespace opamzi {

enum class SweepVariable { kGain, kPhaseSensingFlux, kInputPower, kEfficiency };
enum class SweepScale { kLinear, kLog };

std::string_view sweep_variable_name(SweepVariable v);
bool parse_sweep_variable(std::string_view text, SweepVariable& out);

/// One-dimensional scan of a baseline configuration. Values are in base
/// units: the baseline's gain convention, photons/s, watts, or the detection
/// efficiency eta as a fraction.
struct SweepSpec {
  SweepVariable variable = SweepVariable::kGain;
  double start = 1.0;
  double stop = 2.0;
  int points = 2;
  SweepScale scale = SweepScale::kLinear;
  InterferometerConfig fixed{};
  std::vector<std::string> outputs;  // empty: default columns

  void validate() const;
  bool operator==(const SweepSpec&) const = default;
};

/// Spectrum-analyzer style rendering of the dark-port noise and the phase
/// modulation peak. span_hz = 0 selects zero-span mode (time axis).
struct TraceSpec {
  double center_frequency_hz = 2.0e6;
  double span_hz = 0.0;
  double rbw_hz = 100.0e3;
  double vbw_hz = 3.0e3;  // recorded, does not shape the trace
  int points = 401;
  double signal_frequency_hz = 2.0e6;
  double jitter_db = 0.0;  // standard deviation of seeded level jitter
  InterferometerConfig noise_floor_source{};

  void validate() const;
  bool operator==(const TraceSpec&) const = default;
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Fixed sweep column order. Columns after phase_sensing_flux_per_s are extras.
const std::vector<std::string>& sweep_columns();
/// Report columns that `outputs` may select.
const std::vector<std::string>& sweep_optional_columns();

std::vector<double> sweep_grid(const SweepSpec& spec);
InterferometerConfig config_at(const SweepSpec& spec, double value);

/// Rows follow grid order regardless of `workers`. A point that fails is kept
/// as a row with NaN fields and the error text in the status column.
Table run_sweep(const SweepSpec& spec, int workers = 1);

Table report_table(const SensitivityReport& report);
Table bounds_table(const InterferometerConfig& config);
Table oracle_table(const OracleComparison& comparison);

/// Power SNR of a phase modulation of depth `delta` in bandwidth `rbw_hz`:
/// delta^2 / (delta_phi^2 rbw).
double modulation_snr(const SensitivityReport& report, double delta, double rbw_hz);

Table synthesize_trace(const TraceSpec& spec, std::optional<std::uint64_t> seed = std::nullopt);

enum class OutputFormat { kCsv, kJson };

bool parse_output_format(std::string_view text, OutputFormat& out);
std::string format_table(const Table& table, OutputFormat format);
/// Writes to `destination`, or standard output when it is empty or "-".
/// Throws IoError naming the path.
void emit(const Table& table, OutputFormat format, const std::string& destination);

}  // namespace opamzi
