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

// Truncated photon-number-basis simulator used to validate the Gaussian
// engine on small instances.
//
// Unitaries are applied as exp(K)|psi> with K the anti-Hermitian quadratic
// generator restricted to the truncated space, exponentiated through a
// Hermitian eigendecomposition (one block per total photon number for beam
// splitters); nothing here uses the symplectic algebra. Loss couples the mode to a fresh vacuum ancilla
// through a beam splitter, so states stay pure and moments of the system
// modes are taken over the enlarged space.

#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <variant>
#include <vector>

#include "opamzi/gaussian.hpp"
#include "opamzi/interferometer.hpp"

namespace opamzi {

inline constexpr int kDefaultCutoff = 40;
inline constexpr int kRetryCutoff = 60;
inline constexpr int kMaxFockModes = 3;
inline constexpr double kMaxFockAlphaSq = 9.0;
inline constexpr double kMaxFockSqueezing = 0.6;
inline constexpr double kTopLevelGuard = 1e-8;

class FockState {
 public:
  /// Vacuum on `n_modes` modes with `cutoff` levels each.
  FockState(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t stride(int mode) const;

  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::vector<std::complex<double>>& amplitudes() { return amps_; }

  double norm() const;
  /// Population of |cutoff - 1> on `mode`, traced over all other modes.
  double top_level_population(int mode) const;
  /// Throws TruncationError when any mode's top level holds more than 1e-8.
  void check_truncation() const;

  /// Adds one vacuum mode (index n_modes()).
  FockState with_ancilla() const;

 private:
  int n_modes_;
  int cutoff_;
  std::vector<std::complex<double>> amps_;
};

FockState fock_vacuum(int n_modes, int cutoff = kDefaultCutoff);
/// e^{-|alpha|^2/2} alpha^n / sqrt(n!). Throws RangeError for alpha_sq > 9.
FockState fock_coherent(double alpha_sq, double phase = 0.0, int cutoff = kDefaultCutoff);
/// Modes of `first` followed by modes of `second`; cutoffs must match.
FockState fock_tensor(const FockState& first, const FockState& second);

namespace fock {

struct BeamSplitter {
  int mode_a = 0;
  int mode_b = 1;
  double transmissivity = 0.5;
};

struct Phase {
  int mode = 0;
  double phi = 0.0;
};

/// Squeezing parameter r (G = cosh r, g = sinh r); r <= 0.6.
struct Opa {
  int mode = 0;
  double r = 0.0;
  double pump_quadrature = 0.0;
};

/// Appends an ancilla and mixes it with `mode` at transmissivity `efficiency`.
struct Loss {
  int mode = 0;
  double efficiency = 1.0;
};

using Element = std::variant<BeamSplitter, Phase, Opa, Loss>;

}  // namespace fock

FockState fock_apply_element(const FockState& state, const fock::Element& element);

QuadratureStats<double> fock_homodyne_moments(const FockState& state, int mode, double angle);
double fock_photon_number(const FockState& state, int mode);

// Cross-engine check of the interferometer chain.

struct OracleCase {
  double alpha_sq = 1.0;
  double r = 0.3;
  double pump_a = 0.0;
  double pump_b = 0.0;
  double bias = std::numbers::pi;
  double arm_efficiency = 1.0;        // 1 - L0, both arms
  double detection_efficiency = 1.0;  // everything after BS2 on the dark port
  double homodyne_angle = std::numbers::pi / 2;
};

struct PortMoments {
  double mean = 0.0;
  double variance = 1.0;
  double photon_number = 0.0;
};

struct OracleComparison {
  PortMoments gaussian;
  PortMoments fock;
  int cutoff_used = kDefaultCutoff;

  double max_abs_difference() const;
};

/// Reads the input flux as a photon number and the loss budget as efficiencies.
OracleCase oracle_case_from_config(const InterferometerConfig& config);

/// Dark-port moments from the Gaussian engine, losses at their physical
/// positions (after each OPA, and after BS2).
PortMoments gaussian_dark_port(const OracleCase& c);

/// Dark-port moments from the Fock engine. Equal arm losses commute with the
/// passive phase/BS2 section, so one combined loss is applied at the dark
/// port. Retries once at cutoff 60 when the truncation guard fires.
PortMoments fock_dark_port(const OracleCase& c, int cutoff = kDefaultCutoff,
                           int* cutoff_used = nullptr);

OracleComparison oracle_check(const OracleCase& c);

}  // namespace opamzi
