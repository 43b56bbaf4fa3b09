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

#include "opamzi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <thread>

#include "json.hpp"

#include "opamzi/errors.hpp"

namespace opamzi {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct OptionalColumn {
  std::string_view name;
  double (*value)(const SensitivityReport&, const InterferometerConfig&);
};

const std::vector<OptionalColumn>& optional_columns() {
  static const std::vector<OptionalColumn> columns = {
      {"delta_phi_lossless_rad",
       [](const SensitivityReport&, const InterferometerConfig& c) {
         return sensitivity_lossless(c.opa(), c.input_flux());
       }},
      {"spectral_density_rad_per_rthz",
       [](const SensitivityReport& r, const InterferometerConfig&) { return r.spectral_density; }},
      {"spectral_density_snl_rad_per_rthz",
       [](const SensitivityReport& r, const InterferometerConfig&) {
         return r.spectral_density_snl;
       }},
      {"dark_port_variance",
       [](const SensitivityReport& r, const InterferometerConfig&) { return r.dark_port_variance; }},
      {"slope", [](const SensitivityReport& r, const InterferometerConfig&) { return r.slope; }},
      {"total_efficiency",
       [](const SensitivityReport& r, const InterferometerConfig&) { return r.total_efficiency; }},
  };
  return columns;
}

const OptionalColumn& optional_column(const std::string& name) {
  for (const auto& c : optional_columns()) {
    if (c.name == name) return c;
  }
  throw ValidationError("unknown sweep output '" + name + "'");
}

std::string fmt_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<Cell> sweep_row(const SweepSpec& spec, double value) {
  std::vector<Cell> row;
  row.emplace_back(std::string(sweep_variable_name(spec.variable)));
  row.emplace_back(value);
  const std::size_t numeric = sweep_columns().size() - 2 + spec.outputs.size();
  try {
    const InterferometerConfig config = config_at(spec, value);
    const SensitivityReport r = simulate_interferometer(config);
    for (const double v : {r.delta_phi, r.delta_phi_snl, r.delta_phi_hl, r.delta_phi_qcrb,
                           r.noise_rel_snl_db, r.snr_improvement_db, r.phase_sensing_flux}) {
      row.emplace_back(v);
    }
    for (const auto& name : spec.outputs) row.emplace_back(optional_column(name).value(r, config));
    row.emplace_back(std::string("ok"));
  } catch (const std::exception& e) {
    row.resize(2);
    for (std::size_t i = 0; i < numeric; ++i) row.emplace_back(kNaN);
    row.emplace_back(std::string(e.what()));
  }
  return row;
}

}  // namespace

std::string_view sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::kGain: return "gain";
    case SweepVariable::kPhaseSensingFlux: return "phase_sensing_flux";
    case SweepVariable::kInputPower: return "input_power";
    case SweepVariable::kEfficiency: return "efficiency";
  }
  return "";
}

bool parse_sweep_variable(std::string_view text, SweepVariable& out) {
  for (const auto v : {SweepVariable::kGain, SweepVariable::kPhaseSensingFlux,
                       SweepVariable::kInputPower, SweepVariable::kEfficiency}) {
    if (text == sweep_variable_name(v)) {
      out = v;
      return true;
    }
  }
  return false;
}

void SweepSpec::validate() const {
  if (points < 2) throw ValidationError("sweep needs at least 2 points");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ValidationError("sweep range must be finite");
  }
  if (!(start < stop)) throw ValidationError("sweep start must be below sweep stop");
  if (scale == SweepScale::kLog && !(start > 0.0)) {
    throw ValidationError("log-scale sweep needs a positive start");
  }
  if (variable == SweepVariable::kEfficiency && (start <= 0.0 || stop > 1.0)) {
    throw ValidationError("efficiency sweep must stay within (0, 1]");
  }
  for (const auto& name : outputs) optional_column(name);
  fixed.validate();
}

void TraceSpec::validate() const {
  if (!(rbw_hz > 0.0) || !std::isfinite(rbw_hz)) {
    throw ValidationError("resolution bandwidth must be positive");
  }
  if (!(vbw_hz > 0.0) || !std::isfinite(vbw_hz)) {
    throw ValidationError("video bandwidth must be positive");
  }
  if (!(span_hz >= 0.0) || !std::isfinite(span_hz)) {
    throw ValidationError("span must be >= 0");
  }
  if (!(center_frequency_hz >= 0.0) || !std::isfinite(center_frequency_hz)) {
    throw ValidationError("center frequency must be >= 0");
  }
  if (points < 2) throw ValidationError("trace needs at least 2 points");
  if (!(jitter_db >= 0.0) || !std::isfinite(jitter_db)) {
    throw ValidationError("jitter must be >= 0 dB");
  }
  if (span_hz > 0.0 && std::abs(signal_frequency_hz - center_frequency_hz) > 0.5 * span_hz) {
    throw ValidationError("signal frequency lies outside the displayed span");
  }
  noise_floor_source.validate();
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns = {
      "sweep_variable",     "value",            "delta_phi_rad",
      "delta_phi_snl_rad",  "delta_phi_hl_rad", "delta_phi_qcrb_rad",
      "noise_rel_snl_db",   "snr_improvement_db", "phase_sensing_flux_per_s"};
  return columns;
}

const std::vector<std::string>& sweep_optional_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : optional_columns()) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const double last = spec.points - 1;
  for (int i = 0; i < spec.points; ++i) {
    const double t = i / last;
    grid[i] = spec.scale == SweepScale::kLog
                  ? spec.start * std::pow(spec.stop / spec.start, t)
                  : spec.start + (spec.stop - spec.start) * t;
  }
  grid.front() = spec.start;
  grid.back() = spec.stop;
  return grid;
}

InterferometerConfig config_at(const SweepSpec& spec, double value) {
  InterferometerConfig c = spec.fixed;
  switch (spec.variable) {
    case SweepVariable::kGain:
      c.gain.value = value;
      break;
    case SweepVariable::kPhaseSensingFlux:
      c.input_kind = InputKind::kFlux;
      c.input_value = input_flux_for_phase_sensing_flux(c.opa(), value);
      break;
    case SweepVariable::kInputPower:
      c.input_kind = InputKind::kPower;
      c.input_value = value;
      break;
    case SweepVariable::kEfficiency:
      c.losses.detection_efficiency = value;
      break;
  }
  return c;
}

Table run_sweep(const SweepSpec& spec, int workers) {
  const std::vector<double> grid = sweep_grid(spec);
  Table table;
  table.columns = sweep_columns();
  for (const auto& name : spec.outputs) table.columns.push_back(name);
  table.columns.emplace_back("status");
  table.rows.resize(grid.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      table.rows[i] = sweep_row(spec, grid[i]);
    }
  };
  const auto n_threads =
      static_cast<std::size_t>(std::clamp<long>(workers, 1, static_cast<long>(grid.size())));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return table;
}

Table report_table(const SensitivityReport& r) {
  Table table;
  table.columns = {"delta_phi_rad",
                   "delta_phi_snl_rad",
                   "delta_phi_hl_rad",
                   "delta_phi_qcrb_rad",
                   "phase_sensing_flux_per_s",
                   "noise_rel_snl_db",
                   "snr_improvement_db",
                   "spectral_density_rad_per_rthz",
                   "spectral_density_snl_rad_per_rthz",
                   "dark_port_variance",
                   "slope",
                   "total_efficiency",
                   "gain_convention",
                   "snl_reference"};
  table.rows.push_back({r.delta_phi, r.delta_phi_snl, r.delta_phi_hl, r.delta_phi_qcrb,
                        r.phase_sensing_flux, r.noise_rel_snl_db, r.snr_improvement_db,
                        r.spectral_density, r.spectral_density_snl, r.dark_port_variance, r.slope,
                        r.total_efficiency, std::string(convention_name(r.gain_convention)),
                        std::string(snl_reference_name(r.snl_reference))});
  return table;
}

Table bounds_table(const InterferometerConfig& config) {
  config.validate();
  const OpaParams opa = config.opa();
  const double flux = config.input_flux();
  const double ips = phase_sensing_flux(opa, flux);
  const double probe = 0.5 * opa.amplification() * opa.amplification() * flux;
  const double r = opa.squeezing_parameter();

  Table table;
  table.columns = {"bound", "photon_number", "delta_phi_rad"};
  auto add = [&](std::string name, double n, double value) {
    table.rows.push_back({std::move(name), n, value});
  };
  add("snl_single_arm", ips, snl(ips, SnlReference::kSingleArm));
  add("snl_two_arm", 2.0 * ips, snl(ips, SnlReference::kTwoArm));
  add("hl_single_arm", ips, hl(ips));
  add("hl_two_arm", 2.0 * ips, hl(2.0 * ips));
  add("qcrb", probe, qcrb(probe, r));
  add("lossless", ips, sensitivity_lossless(opa, flux));
  add("with_losses", ips,
      sensitivity_with_efficiency(opa, flux, config.losses.total_efficiency()));
  return table;
}

Table oracle_table(const OracleComparison& comparison) {
  Table table;
  table.columns = {"quantity", "gaussian", "fock", "abs_difference", "cutoff"};
  const auto& g = comparison.gaussian;
  const auto& f = comparison.fock;
  const double cutoff = comparison.cutoff_used;
  table.rows.push_back({std::string("mean"), g.mean, f.mean, std::abs(g.mean - f.mean), cutoff});
  table.rows.push_back({std::string("variance"), g.variance, f.variance,
                        std::abs(g.variance - f.variance), cutoff});
  table.rows.push_back({std::string("photon_number"), g.photon_number, f.photon_number,
                        std::abs(g.photon_number - f.photon_number), cutoff});
  return table;
}

double modulation_snr(const SensitivityReport& report, double delta, double rbw_hz) {
  return delta * delta / (report.delta_phi * report.delta_phi * rbw_hz);
}

Table synthesize_trace(const TraceSpec& spec, std::optional<std::uint64_t> seed) {
  spec.validate();
  const SensitivityReport report = simulate_interferometer(spec.noise_floor_source);
  const double floor_db = report.noise_rel_snl_db;
  const double snr_db =
      db_rel(modulation_snr(report, spec.noise_floor_source.modulation_delta, spec.rbw_hz));
  // Gaussian RBW filter, -3 dB full width = rbw.
  const double shape_db_per_bw2 = -10.0 * std::log10(std::exp(1.0)) * 4.0 * std::log(2.0);

  std::mt19937_64 rng(seed.value_or(0));
  std::normal_distribution<double> jitter(0.0, spec.jitter_db > 0.0 ? spec.jitter_db : 1.0);

  const bool zero_span = spec.span_hz == 0.0;
  Table table;
  table.columns = {zero_span ? "time_s" : "frequency_hz", "level_db", "noise_db", "signal_db",
                   "snl_db"};
  const double last = spec.points - 1;
  for (int i = 0; i < spec.points; ++i) {
    const double x = zero_span ? i / spec.rbw_hz
                               : spec.center_frequency_hz - 0.5 * spec.span_hz +
                                     spec.span_hz * (i / last);
    const double tuned = zero_span ? spec.center_frequency_hz : x;
    const double detune = (tuned - spec.signal_frequency_hz) / spec.rbw_hz;
    const double signal_db = floor_db + snr_db + shape_db_per_bw2 * detune * detune;
    double level_db = floor_db + 10.0 * std::log10(1.0 + from_db(signal_db - floor_db));
    if (spec.jitter_db > 0.0) level_db += jitter(rng);
    table.rows.push_back({x, level_db, floor_db, signal_db, 0.0});
  }
  return table;
}

bool parse_output_format(std::string_view text, OutputFormat& out) {
  if (text == "csv") {
    out = OutputFormat::kCsv;
  } else if (text == "json") {
    out = OutputFormat::kJson;
  } else {
    return false;
  }
  return true;
}

std::string format_table(const Table& table, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < table.columns.size() && c < row.size(); ++c) {
        if (const auto* s = std::get_if<std::string>(&row[c])) {
          obj[table.columns[c]] = *s;
        } else {
          const double v = std::get<double>(row[c]);
          obj[table.columns[c]] =
              std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
        }
      }
      rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += csv_field(table.columns[c]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      if (const auto* s = std::get_if<std::string>(&row[c])) {
        out += csv_field(*s);
      } else {
        out += fmt_number(std::get<double>(row[c]));
      }
    }
    out += "\r\n";
  }
  return out;
}

void emit(const Table& table, OutputFormat format, const std::string& destination) {
  const std::string text = format_table(table, format);
  if (destination.empty() || destination == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("error writing to standard output");
    return;
  }
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + destination + "' for writing: " + std::strerror(errno));
  out << text;
  out.close();
  if (!out) throw IoError("error writing '" + destination + "'");
}

}  // namespace opamzi
