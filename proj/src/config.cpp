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

#include "opamzi/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "opamzi/errors.hpp"

namespace opamzi {
namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int key_column = 0;
  int value_column = 0;
};

using Units = std::vector<std::pair<std::string_view, double>>;

const Units kPowerUnits = {{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"µW", 1e-6}, {"nW", 1e-9}};
const Units kFluxUnits = {{"/s", 1.0}, {"s^-1", 1.0}, {"photons", 1.0}};
const Units kLengthUnits = {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6}, {"nm", 1e-9}};
const Units kAngleUnits = {{"rad", 1.0}, {"mrad", 1e-3}, {"urad", 1e-6}, {"pi", std::numbers::pi}};
const Units kRatioUnits = {{"frac", 1.0}, {"%", 1e-2}};
const Units kDbUnits = {{"dB", 1.0}};
const Units kFrequencyUnits = {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};

const std::vector<std::string_view> kConfigKeys = {
    "input_power",   "input_flux",           "wavelength",          "gain",
    "bias_phase",    "modulation_delta",     "internal_loss",       "detection_efficiency",
    "homodyne_visibility", "external_loss",  "snl_reference"};
const std::vector<std::string_view> kSweepKeys = {"sweep_variable", "sweep_start", "sweep_stop",
                                                  "sweep_points",   "sweep_scale", "sweep_outputs"};
const std::vector<std::string_view> kTraceKeys = {"trace_center", "trace_span",   "trace_rbw",
                                                  "trace_vbw",    "trace_points", "trace_signal",
                                                  "trace_jitter"};

constexpr std::string_view kConventionHelp =
    "gain needs a convention unit: G (AMPLITUDE_G, value = G), G2 (INTENSITY_G2, value = G^2) or "
    "PSP (PHASE_SENSITIVE_POWER, value = (G+g)^2)";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unit_list(const Units& units) {
  std::string out;
  for (const auto& [name, factor] : units) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Entries {
 public:
  explicit Entries(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view raw =
          text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      if (trim(raw).empty()) continue;
      const auto eq = raw.find('=');
      const int first_col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
      if (eq == std::string_view::npos) {
        throw ParseError(line_no, first_col, "expected 'key = value'");
      }
      Entry e;
      e.line = line_no;
      e.key = trim(raw.substr(0, eq));
      e.key_column = first_col;
      if (e.key.empty()) throw ParseError(line_no, first_col, "missing key before '='");
      for (std::size_t i = 0; i < e.key.size(); ++i) {
        const char c = e.key[i];
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) {
          throw ParseError(line_no, first_col + static_cast<int>(i),
                           "invalid character in key '" + e.key + "'");
        }
      }
      const auto rest = raw.substr(eq + 1);
      const auto value_start = rest.find_first_not_of(" \t");
      e.value = trim(rest);
      e.value_column = static_cast<int>(eq) + 2 +
                       static_cast<int>(value_start == std::string_view::npos ? 0 : value_start);
      if (e.value.empty()) {
        throw ParseError(line_no, e.value_column, "missing value for key '" + e.key + "'");
      }
      if (const auto it = entries_.find(e.key); it != entries_.end()) {
        throw ParseError(line_no, first_col,
                         "duplicate key '" + e.key + "' (first set on line " +
                             std::to_string(it->second.line) + ")");
      }
      entries_.emplace(e.key, std::move(e));
    }
  }

  const Entry* find(std::string_view key) const {
    const auto it = entries_.find(std::string(key));
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool any_with_prefix(std::string_view prefix) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& kv) { return kv.first.starts_with(prefix); });
  }

  /// ParseError on the first key (in file order) not in any allowed list.
  void reject_unknown(std::initializer_list<const std::vector<std::string_view>*> allowed) const {
    std::vector<const Entry*> ordered;
    for (const auto& kv : entries_) ordered.push_back(&kv.second);
    std::sort(ordered.begin(), ordered.end(),
              [](const Entry* a, const Entry* b) { return a->line < b->line; });
    for (const Entry* e : ordered) {
      bool known = false;
      for (const auto* list : allowed) {
        known = known || std::find(list->begin(), list->end(), e->key) != list->end();
      }
      if (!known) throw ParseError(e->line, e->key_column, "unknown key '" + e->key + "'");
    }
  }

 private:
  std::map<std::string, Entry> entries_;
};

// Leading number of a value; `rest` receives the trimmed remainder and
// `rest_column` its column.
double leading_number(const Entry& e, std::string& rest, int& rest_column) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin) {
    throw ParseError(e.line, e.value_column, "expected a number for '" + e.key + "'");
  }
  if (!std::isfinite(v) || errno == ERANGE) {
    throw ParseError(e.line, e.value_column, "number out of range for '" + e.key + "'");
  }
  const std::string_view tail(end);
  const auto offset = tail.find_first_not_of(" \t");
  rest = trim(tail);
  rest_column = e.value_column + static_cast<int>(end - begin) +
                static_cast<int>(offset == std::string_view::npos ? 0 : offset);
  return v;
}

double quantity(const Entry& e, const Units& units) {
  std::string unit;
  int unit_column = 0;
  const double v = leading_number(e, unit, unit_column);
  if (unit.empty()) {
    throw ParseError(e.line, unit_column,
                     "'" + e.key + "' needs a unit (one of: " + unit_list(units) + ")");
  }
  for (const auto& [name, factor] : units) {
    if (unit == name) return v * factor;
  }
  throw ParseError(e.line, unit_column,
                   "unknown unit '" + unit + "' for '" + e.key + "' (expected one of: " +
                       unit_list(units) + ")");
}

int integer(const Entry& e) {
  int v = 0;
  const auto* begin = e.value.data();
  const auto* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(e.line, e.value_column + static_cast<int>(ptr - begin),
                     "'" + e.key + "' must be an integer count");
  }
  return v;
}

GainSpec gain_value(const Entry& e) {
  std::string unit;
  int unit_column = 0;
  GainSpec gain;
  gain.value = leading_number(e, unit, unit_column);
  if (unit.empty() || !parse_convention(unit, gain.convention)) {
    throw ValidationError(std::string(kConventionHelp) +
                          (unit.empty() ? "" : "; got '" + unit + "'"));
  }
  return gain;
}

InterferometerConfig config_from(const Entries& entries) {
  InterferometerConfig c;
  const Entry* power = entries.find("input_power");
  const Entry* flux = entries.find("input_flux");
  if ((power == nullptr) == (flux == nullptr)) {
    throw ValidationError("exactly one of input_power or input_flux must be given");
  }
  if (power != nullptr) {
    c.input_kind = InputKind::kPower;
    c.input_value = quantity(*power, kPowerUnits);
  } else {
    c.input_kind = InputKind::kFlux;
    c.input_value = quantity(*flux, kFluxUnits);
  }
  const Entry* wavelength = entries.find("wavelength");
  if (wavelength == nullptr) throw ValidationError("missing required key 'wavelength'");
  c.wavelength_m = quantity(*wavelength, kLengthUnits);

  const Entry* gain = entries.find("gain");
  if (gain == nullptr) throw ValidationError("missing required key 'gain'; " + std::string(kConventionHelp));
  c.gain = gain_value(*gain);

  if (const Entry* e = entries.find("bias_phase")) c.bias_phase = quantity(*e, kAngleUnits);
  if (const Entry* e = entries.find("modulation_delta")) {
    c.modulation_delta = quantity(*e, kAngleUnits);
  }
  if (const Entry* e = entries.find("internal_loss")) {
    c.losses.internal_loss = quantity(*e, kRatioUnits);
  }
  if (const Entry* e = entries.find("detection_efficiency")) {
    c.losses.detection_efficiency = quantity(*e, kRatioUnits);
  }
  if (const Entry* e = entries.find("homodyne_visibility")) {
    c.losses.homodyne_visibility = quantity(*e, kRatioUnits);
  }
  if (const Entry* e = entries.find("external_loss")) {
    c.losses.external_loss_db = quantity(*e, kDbUnits);
  }
  if (const Entry* e = entries.find("snl_reference")) {
    if (!parse_snl_reference(e->value, c.snl_reference)) {
      throw ParseError(e->line, e->value_column, "snl_reference must be single_arm or two_arm");
    }
  }
  c.validate();
  return c;
}

const Units& sweep_units(SweepVariable v) {
  switch (v) {
    case SweepVariable::kPhaseSensingFlux: return kFluxUnits;
    case SweepVariable::kInputPower: return kPowerUnits;
    case SweepVariable::kEfficiency: return kRatioUnits;
    case SweepVariable::kGain: break;
  }
  return kRatioUnits;  // unused for gain
}

double sweep_bound(const Entry& e, SweepVariable variable, const InterferometerConfig& fixed) {
  if (variable != SweepVariable::kGain) return quantity(e, sweep_units(variable));
  const GainSpec g = gain_value(e);
  if (g.convention != fixed.gain.convention) {
    throw ValidationError("'" + e.key + "' uses gain convention " +
                          std::string(convention_name(g.convention)) + " but the baseline uses " +
                          std::string(convention_name(fixed.gain.convention)));
  }
  return g.value;
}

const Entry& required(const Entries& entries, std::string_view key) {
  const Entry* e = entries.find(key);
  if (e == nullptr) throw ValidationError("missing required key '" + std::string(key) + "'");
  return *e;
}

std::string sweep_unit_token(const SweepSpec& spec) {
  switch (spec.variable) {
    case SweepVariable::kGain: return std::string(convention_token(spec.fixed.gain.convention));
    case SweepVariable::kPhaseSensingFlux: return "/s";
    case SweepVariable::kInputPower: return "W";
    case SweepVariable::kEfficiency: return "frac";
  }
  return "";
}

}  // namespace

InterferometerConfig parse_interferometer_config(std::string_view text) {
  const Entries entries(text);
  entries.reject_unknown({&kConfigKeys});
  return config_from(entries);
}

SweepSpec parse_sweep_spec(std::string_view text) {
  const Entries entries(text);
  entries.reject_unknown({&kConfigKeys, &kSweepKeys});
  SweepSpec spec;
  spec.fixed = config_from(entries);

  const Entry& variable = required(entries, "sweep_variable");
  if (!parse_sweep_variable(variable.value, spec.variable)) {
    throw ParseError(variable.line, variable.value_column,
                     "sweep_variable must be gain, phase_sensing_flux, input_power or efficiency");
  }
  spec.start = sweep_bound(required(entries, "sweep_start"), spec.variable, spec.fixed);
  spec.stop = sweep_bound(required(entries, "sweep_stop"), spec.variable, spec.fixed);
  spec.points = integer(required(entries, "sweep_points"));
  if (const Entry* e = entries.find("sweep_scale")) {
    if (e->value == "linear") {
      spec.scale = SweepScale::kLinear;
    } else if (e->value == "log") {
      spec.scale = SweepScale::kLog;
    } else {
      throw ParseError(e->line, e->value_column, "sweep_scale must be linear or log");
    }
  }
  if (const Entry* e = entries.find("sweep_outputs")) {
    std::stringstream list(e->value);
    std::string item;
    while (std::getline(list, item, ',')) {
      item = trim(item);
      if (!item.empty()) spec.outputs.push_back(item);
    }
  }
  spec.validate();
  return spec;
}

TraceSpec parse_trace_spec(std::string_view text) {
  const Entries entries(text);
  entries.reject_unknown({&kConfigKeys, &kTraceKeys});
  TraceSpec spec;
  spec.noise_floor_source = config_from(entries);
  spec.center_frequency_hz = quantity(required(entries, "trace_center"), kFrequencyUnits);
  spec.span_hz = quantity(required(entries, "trace_span"), kFrequencyUnits);
  spec.rbw_hz = quantity(required(entries, "trace_rbw"), kFrequencyUnits);
  if (const Entry* e = entries.find("trace_vbw")) spec.vbw_hz = quantity(*e, kFrequencyUnits);
  spec.points = integer(required(entries, "trace_points"));
  spec.signal_frequency_hz = quantity(required(entries, "trace_signal"), kFrequencyUnits);
  if (const Entry* e = entries.find("trace_jitter")) spec.jitter_db = quantity(*e, kDbUnits);
  spec.validate();
  return spec;
}

ParsedFile parse_config(std::string_view text) {
  const Entries entries(text);
  const bool sweep = entries.any_with_prefix("sweep_");
  const bool trace = entries.any_with_prefix("trace_");
  if (sweep && trace) {
    throw ValidationError("a file may describe a sweep or a trace, not both");
  }
  if (sweep) return parse_sweep_spec(text);
  if (trace) return parse_trace_spec(text);
  return parse_interferometer_config(text);
}

std::string render(const InterferometerConfig& c) {
  std::string out;
  if (c.input_kind == InputKind::kPower) {
    out += "input_power = " + num(c.input_value) + " W\n";
  } else {
    out += "input_flux = " + num(c.input_value) + " /s\n";
  }
  out += "wavelength = " + num(c.wavelength_m) + " m\n";
  out += "gain = " + num(c.gain.value) + " " + std::string(convention_token(c.gain.convention)) + "\n";
  out += "bias_phase = " + num(c.bias_phase) + " rad\n";
  out += "modulation_delta = " + num(c.modulation_delta) + " rad\n";
  out += "internal_loss = " + num(c.losses.internal_loss) + " frac\n";
  out += "detection_efficiency = " + num(c.losses.detection_efficiency) + " frac\n";
  out += "homodyne_visibility = " + num(c.losses.homodyne_visibility) + " frac\n";
  out += "external_loss = " + num(c.losses.external_loss_db) + " dB\n";
  out += "snl_reference = " + std::string(snl_reference_name(c.snl_reference)) + "\n";
  return out;
}

std::string render(const SweepSpec& spec) {
  const std::string unit = sweep_unit_token(spec);
  std::string out = render(spec.fixed);
  out += "sweep_variable = " + std::string(sweep_variable_name(spec.variable)) + "\n";
  out += "sweep_start = " + num(spec.start) + " " + unit + "\n";
  out += "sweep_stop = " + num(spec.stop) + " " + unit + "\n";
  out += "sweep_points = " + std::to_string(spec.points) + "\n";
  out += std::string("sweep_scale = ") + (spec.scale == SweepScale::kLog ? "log" : "linear") + "\n";
  if (!spec.outputs.empty()) {
    std::string list;
    for (const auto& o : spec.outputs) list += (list.empty() ? "" : ", ") + o;
    out += "sweep_outputs = " + list + "\n";
  }
  return out;
}

std::string render(const TraceSpec& spec) {
  std::string out = render(spec.noise_floor_source);
  out += "trace_center = " + num(spec.center_frequency_hz) + " Hz\n";
  out += "trace_span = " + num(spec.span_hz) + " Hz\n";
  out += "trace_rbw = " + num(spec.rbw_hz) + " Hz\n";
  out += "trace_vbw = " + num(spec.vbw_hz) + " Hz\n";
  out += "trace_points = " + std::to_string(spec.points) + "\n";
  out += "trace_signal = " + num(spec.signal_frequency_hz) + " Hz\n";
  out += "trace_jitter = " + num(spec.jitter_db) + " dB\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "': " + std::strerror(errno));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buffer.str();
}

}  // namespace opamzi
