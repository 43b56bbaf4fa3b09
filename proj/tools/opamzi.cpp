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

// Command-line front end.
//
//   opamzi simulate <config> [--show-chain]
//   opamzi sweep <spec> [--workers N]
//   opamzi bounds <config>
//   opamzi trace <spec> [--seed S]
//   opamzi oracle <config>
//
// Exit codes: 0 ok, 2 parse/validation, 3 simulation, 4 I/O.

#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "opamzi/config.hpp"
#include "opamzi/errors.hpp"
#include "opamzi/fock.hpp"
#include "opamzi/interferometer.hpp"
#include "opamzi/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSimulation = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string path;
  std::string format = "csv";
  std::string out;
  int workers = 1;
  std::optional<std::uint64_t> seed;
  bool show_chain = false;
};

void print_warnings(const opamzi::InterferometerConfig& config) {
  for (const auto& w : config.validate()) std::cerr << "warning: " << w << "\n";
}

int run(const std::string& command, const Options& opt) {
  using namespace opamzi;
  OutputFormat format{};
  if (!parse_output_format(opt.format, format)) {
    throw ValidationError("--format must be csv or json");
  }
  const std::string text = read_text_file(opt.path);

  if (command == "simulate") {
    const auto config = parse_interferometer_config(text);
    print_warnings(config);
    if (opt.show_chain) {
      for (const auto& e : build_chain(config).elements) std::cerr << describe(e) << "\n";
    }
    emit(report_table(simulate_interferometer(config)), format, opt.out);
  } else if (command == "sweep") {
    const auto spec = parse_sweep_spec(text);
    print_warnings(spec.fixed);
    emit(run_sweep(spec, opt.workers), format, opt.out);
  } else if (command == "bounds") {
    const auto config = parse_interferometer_config(text);
    print_warnings(config);
    emit(bounds_table(config), format, opt.out);
  } else if (command == "trace") {
    const auto spec = parse_trace_spec(text);
    print_warnings(spec.noise_floor_source);
    emit(synthesize_trace(spec, opt.seed), format, opt.out);
  } else if (command == "oracle") {
    const auto config = parse_interferometer_config(text);
    print_warnings(config);
    emit(oracle_table(oracle_check(oracle_case_from_config(config))), format, opt.out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian simulator for a Mach-Zehnder interferometer with in-arm parametric amplifiers"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed = 0;
  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"simulate", "Simulate one configuration and print the sensitivity report"},
      {"sweep", "Scan one parameter of a baseline configuration"},
      {"bounds", "Tabulate the phase-estimation bounds for a configuration"},
      {"trace", "Synthesize a spectrum-analyzer trace of the dark port"},
      {"oracle", "Cross-check the dark port against the Fock-space simulator"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("file", opt.path, "Configuration file")->required();
    sub->add_option("--format", opt.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", opt.out, "Output path (default: standard output)");
    if (std::string(c.name) == "sweep") {
      sub->add_option("--workers", opt.workers, "Concurrent sweep points")
          ->check(CLI::PositiveNumber);
    }
    if (std::string(c.name) == "trace") {
      sub->add_option("--seed", seed, "Seed for the level jitter");
    }
    if (std::string(c.name) == "simulate") {
      sub->add_flag("--show-chain", opt.show_chain, "Print the optical chain to standard error");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "trace" && app.get_subcommand("trace")->count("--seed") > 0) opt.seed = seed;

  try {
    return run(command, opt);
  } catch (const opamzi::ParseError& e) {
    std::cerr << "error: " << opt.path << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const opamzi::ValidationError& e) {
    std::cerr << "error: " << opt.path << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << opt.path << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const opamzi::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSimulation;
  }
}
