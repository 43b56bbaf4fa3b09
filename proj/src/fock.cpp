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

#include "opamzi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "opamzi/errors.hpp"

namespace opamzi {
namespace {

using Complex = std::complex<double>;

double squared_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

std::size_t power(int base, int exponent) {
  std::size_t p = 1;
  for (int i = 0; i < exponent; ++i) p *= static_cast<std::size_t>(base);
  return p;
}

// exp(K) for an anti-Hermitian K = -iH, from the eigendecomposition of H.
Eigen::MatrixXcd exp_anti_hermitian(const Eigen::MatrixXcd& k) {
  const Eigen::MatrixXcd h = Complex(0.0, 1.0) * k;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::VectorXcd phases =
      (eig.eigenvalues().cast<Complex>() * Complex(0.0, -1.0)).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

void check_mode(const FockState& s, int mode) {
  if (mode < 0 || mode >= s.n_modes()) throw std::out_of_range("Fock mode index out of range");
}

void check_unitarity(const FockState& s) {
  if (std::abs(s.norm() - 1.0) > 1e-10) {
    throw SimulationError("Fock state norm drifted to " + std::to_string(s.norm()));
  }
}

struct ElementApplier {
  const FockState& in;

  FockState operator()(const fock::BeamSplitter& bs) const {
    check_mode(in, bs.mode_a);
    check_mode(in, bs.mode_b);
    if (bs.mode_a == bs.mode_b) throw std::invalid_argument("beam splitter needs distinct modes");
    if (!(bs.transmissivity >= 0.0 && bs.transmissivity <= 1.0)) {
      throw std::invalid_argument("beam splitter transmissivity must lie in [0, 1]");
    }
    // K = theta (a^dag b - a b^dag), cos(theta) = sqrt(T). K conserves
    // n_a + n_b, so it is exponentiated block by block.
    const double theta = std::acos(std::sqrt(bs.transmissivity));
    const int d = in.cutoff();
    const std::size_t sa = in.stride(bs.mode_a);
    const std::size_t sb = in.stride(bs.mode_b);
    const auto& src = in.amplitudes();
    FockState out = in;
    auto& dst = out.amplitudes();
    std::vector<std::size_t> bases;
    for (std::size_t idx = 0; idx < src.size(); ++idx) {
      if ((idx / sa) % d == 0 && (idx / sb) % d == 0) bases.push_back(idx);
    }
    for (int total = 0; total <= 2 * (d - 1); ++total) {
      const int na_min = std::max(0, total - (d - 1));
      const int na_max = std::min(total, d - 1);
      const int size = na_max - na_min + 1;
      Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(size, size);
      for (int i = 0; i + 1 < size; ++i) {
        const int na = na_min + i;
        const int nb = total - na;
        const double c = theta * std::sqrt(double(na + 1) * nb);
        k(i + 1, i) = c;   // |na, nb> -> |na + 1, nb - 1>
        k(i, i + 1) = -c;  // |na + 1, nb - 1> -> |na, nb>
      }
      const Eigen::MatrixXcd u = exp_anti_hermitian(k);
      Eigen::VectorXcd v(size);
      for (const std::size_t base : bases) {
        for (int i = 0; i < size; ++i) {
          const int na = na_min + i;
          v(i) = src[base + na * sa + (total - na) * sb];
        }
        const Eigen::VectorXcd w = u * v;
        for (int i = 0; i < size; ++i) {
          const int na = na_min + i;
          dst[base + na * sa + (total - na) * sb] = w(i);
        }
      }
    }
    check_unitarity(out);
    return out;
  }

  FockState operator()(const fock::Phase& ph) const {
    check_mode(in, ph.mode);
    const int d = in.cutoff();
    const std::size_t s = in.stride(ph.mode);
    FockState out = in;
    auto& amps = out.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
      const int n = static_cast<int>((idx / s) % d);
      amps[idx] *= std::polar(1.0, ph.phi * n);
    }
    return out;
  }

  FockState operator()(const fock::Opa& opa) const {
    check_mode(in, opa.mode);
    if (!(opa.r >= 0.0)) throw std::invalid_argument("squeezing parameter must be >= 0");
    if (opa.r > kMaxFockSqueezing) {
      throw RangeError("Fock oracle supports r <= 0.6, got r = " + std::to_string(opa.r));
    }
    // K = (r/2) (e^{2i theta} a^dag^2 - e^{-2i theta} a^2) on the truncated mode.
    const Complex up = 0.5 * opa.r * std::polar(1.0, 2.0 * opa.pump_quadrature);
    const int d = in.cutoff();
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n + 2 < d; ++n) {
      const double c = std::sqrt(double(n + 1) * (n + 2));
      k(n + 2, n) = up * c;
      k(n, n + 2) = -std::conj(up) * c;
    }
    const Eigen::MatrixXcd u = exp_anti_hermitian(k);
    const std::size_t s = in.stride(opa.mode);
    const auto& src = in.amplitudes();
    FockState out = in;
    auto& dst = out.amplitudes();
    Eigen::VectorXcd v(d);
    for (std::size_t base = 0; base < src.size(); ++base) {
      if ((base / s) % d != 0) continue;
      for (int n = 0; n < d; ++n) v(n) = src[base + n * s];
      const Eigen::VectorXcd w = u * v;
      for (int n = 0; n < d; ++n) dst[base + n * s] = w(n);
    }
    check_unitarity(out);
    return out;
  }

  FockState operator()(const fock::Loss& loss) const {
    check_mode(in, loss.mode);
    if (!(loss.efficiency >= 0.0 && loss.efficiency <= 1.0)) {
      throw std::invalid_argument("loss efficiency must lie in [0, 1]");
    }
    if (loss.efficiency == 1.0) return in;
    if (in.n_modes() + 1 > kMaxFockModes) {
      throw RangeError("Fock oracle holds at most " + std::to_string(kMaxFockModes) +
                       " modes including loss ancillas");
    }
    const FockState widened = in.with_ancilla();
    return ElementApplier{widened}(fock::BeamSplitter{loss.mode, in.n_modes(), loss.efficiency});
  }
};

}  // namespace

FockState::FockState(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
  if (n_modes < 1) throw std::invalid_argument("FockState needs at least one mode");
  if (n_modes > kMaxFockModes) {
    throw RangeError("Fock oracle holds at most " + std::to_string(kMaxFockModes) + " modes");
  }
  if (cutoff < 2) throw std::invalid_argument("Fock cutoff must be >= 2");
  amps_.assign(power(cutoff, n_modes), Complex{});
  amps_[0] = 1.0;
}

std::size_t FockState::stride(int mode) const { return power(cutoff_, mode); }

double FockState::norm() const { return std::sqrt(squared_norm(amps_)); }

double FockState::top_level_population(int mode) const {
  check_mode(*this, mode);
  const std::size_t s = stride(mode);
  double p = 0.0;
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    if (static_cast<int>((idx / s) % cutoff_) == cutoff_ - 1) p += std::norm(amps_[idx]);
  }
  return p;
}

void FockState::check_truncation() const {
  for (int m = 0; m < n_modes_; ++m) {
    const double p = top_level_population(m);
    if (p > kTopLevelGuard) {
      throw TruncationError("mode " + std::to_string(m) + " top Fock level holds " +
                            std::to_string(p) + " at cutoff " + std::to_string(cutoff_));
    }
  }
}

FockState FockState::with_ancilla() const {
  FockState out(1, cutoff_);
  out.n_modes_ = n_modes_ + 1;
  // The new mode is the slowest index, so its vacuum block is the old vector.
  out.amps_ = amps_;
  out.amps_.resize(amps_.size() * static_cast<std::size_t>(cutoff_), Complex{});
  return out;
}

FockState fock_vacuum(int n_modes, int cutoff) { return FockState(n_modes, cutoff); }

FockState fock_coherent(double alpha_sq, double phase, int cutoff) {
  if (!(alpha_sq >= 0.0)) throw std::invalid_argument("alpha_sq must be >= 0");
  if (alpha_sq > kMaxFockAlphaSq) {
    throw RangeError("Fock oracle supports alpha^2 <= 9, got " + std::to_string(alpha_sq));
  }
  FockState state(1, cutoff);
  auto& amps = state.amplitudes();
  const Complex alpha = std::polar(std::sqrt(alpha_sq), phase);
  Complex c = std::exp(-0.5 * alpha_sq);
  amps[0] = c;
  for (int n = 1; n < cutoff; ++n) {
    c *= alpha / std::sqrt(double(n));
    amps[n] = c;
  }
  state.check_truncation();
  return state;
}

FockState fock_tensor(const FockState& first, const FockState& second) {
  if (first.cutoff() != second.cutoff()) throw std::invalid_argument("Fock cutoffs differ");
  if (first.n_modes() + second.n_modes() > kMaxFockModes) {
    throw RangeError("Fock oracle holds at most " + std::to_string(kMaxFockModes) + " modes");
  }
  FockState out(1, first.cutoff());
  // Build through ancilla widening to reuse the layout logic.
  for (int m = 1; m < first.n_modes() + second.n_modes(); ++m) out = out.with_ancilla();
  auto& amps = out.amplitudes();
  const auto& a = first.amplitudes();
  const auto& b = second.amplitudes();
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t i = 0; i < a.size(); ++i) amps[j * a.size() + i] = a[i] * b[j];
  }
  return out;
}

FockState fock_apply_element(const FockState& state, const fock::Element& element) {
  FockState out = std::visit(ElementApplier{state}, element);
  out.check_truncation();
  return out;
}

QuadratureStats<double> fock_homodyne_moments(const FockState& state, int mode, double angle) {
  check_mode(state, mode);
  const int d = state.cutoff();
  const std::size_t s = state.stride(mode);
  const auto& psi = state.amplitudes();
  Complex a1{};  // <a>
  Complex a2{};  // <a^2>
  double n1 = 0.0;
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    const int n = static_cast<int>((idx / s) % d);
    n1 += n * std::norm(psi[idx]);
    if (n >= 1) a1 += std::conj(psi[idx - s]) * std::sqrt(double(n)) * psi[idx];
    if (n >= 2) a2 += std::conj(psi[idx - 2 * s]) * std::sqrt(double(n) * (n - 1)) * psi[idx];
  }
  const Complex rot = std::polar(1.0, -angle);
  QuadratureStats<double> stats;
  stats.quadrature_angle = angle;
  stats.mean = 2.0 * std::real(a1 * rot);
  const double second = 2.0 * std::real(a2 * rot * rot) + 2.0 * n1 + 1.0;
  stats.variance = second - stats.mean * stats.mean;
  return stats;
}

double fock_photon_number(const FockState& state, int mode) {
  check_mode(state, mode);
  const int d = state.cutoff();
  const std::size_t s = state.stride(mode);
  const auto& psi = state.amplitudes();
  double n1 = 0.0;
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    n1 += static_cast<int>((idx / s) % d) * std::norm(psi[idx]);
  }
  return n1;
}

double OracleComparison::max_abs_difference() const {
  return std::max({std::abs(gaussian.mean - fock.mean), std::abs(gaussian.variance - fock.variance),
                   std::abs(gaussian.photon_number - fock.photon_number)});
}

OracleCase oracle_case_from_config(const InterferometerConfig& config) {
  config.validate();
  OracleCase c;
  c.alpha_sq = config.input_flux();
  c.r = config.opa().squeezing_parameter();
  c.bias = config.bias_phase;
  c.arm_efficiency = config.losses.arm_efficiency();
  c.detection_efficiency = config.losses.detection_path_efficiency();
  return c;
}

PortMoments gaussian_dark_port(const OracleCase& c) {
  Chain chain;
  chain.elements.emplace_back(InputElement{c.alpha_sq});
  chain.elements.emplace_back(BeamSplitterElement{kArmA, kArmB, 0.5, "BS1"});
  OpaParams opa = OpaParams::from_squeezing(c.r);
  opa.pump_quadrature = c.pump_a;
  chain.elements.emplace_back(OpaElement{kArmA, opa, "OPA1"});
  opa.pump_quadrature = c.pump_b;
  chain.elements.emplace_back(OpaElement{kArmB, opa, "OPA2"});
  chain.elements.emplace_back(LossElement{{kArmA, kArmB}, c.arm_efficiency, "internal loss"});
  chain.elements.emplace_back(PhaseElement{kArmB, c.bias, 0.0, "phase"});
  chain.elements.emplace_back(BeamSplitterElement{kArmA, kArmB, 0.5, "BS2"});
  chain.elements.emplace_back(LossElement{{kDarkPort}, c.detection_efficiency, "detection loss"});
  const auto state = propagate(chain);
  const auto stats = homodyne_stats(state, kDarkPort, c.homodyne_angle);
  return {stats.mean, stats.variance, state.photon_number(kDarkPort)};
}

PortMoments fock_dark_port(const OracleCase& c, int cutoff, int* cutoff_used) {
  if (cutoff_used != nullptr) *cutoff_used = cutoff;
  try {
    FockState s = fock_tensor(fock_coherent(c.alpha_sq, 0.0, cutoff), fock_vacuum(1, cutoff));
    s = fock_apply_element(s, fock::BeamSplitter{0, 1, 0.5});
    s = fock_apply_element(s, fock::Opa{0, c.r, c.pump_a});
    s = fock_apply_element(s, fock::Opa{1, c.r, c.pump_b});
    s = fock_apply_element(s, fock::Phase{1, c.bias});
    s = fock_apply_element(s, fock::BeamSplitter{0, 1, 0.5});
    s = fock_apply_element(s, fock::Loss{1, c.arm_efficiency * c.detection_efficiency});
    const auto stats = fock_homodyne_moments(s, 1, c.homodyne_angle);
    return {stats.mean, stats.variance, fock_photon_number(s, 1)};
  } catch (const TruncationError&) {
    if (cutoff >= kRetryCutoff) throw;
    return fock_dark_port(c, kRetryCutoff, cutoff_used);
  }
}

OracleComparison oracle_check(const OracleCase& c) {
  OracleComparison result;
  result.gaussian = gaussian_dark_port(c);
  result.fock = fock_dark_port(c, kDefaultCutoff, &result.cutoff_used);
  return result;
}

}  // namespace opamzi
