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

// Multimode Gaussian states in the (X1, P1, X2, P2, ...) ordering.
//
// Quadrature convention: X = a + a^dag, P = -i (a - a^dag), so the vacuum
// has Var(X) = Var(P) = 1 and a coherent state |alpha> with real alpha has
// <X> = 2 alpha. Every transform below returns a new state; inputs are
// never modified.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace opamzi {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct QuadratureStats {
  Scalar mean{0};
  Scalar variance{1};
  Scalar quadrature_angle{0};
};

template <typename Scalar = double>
class GaussianState {
 public:
  /// Builds a state from a mean vector and covariance matrix. Throws
  /// std::invalid_argument on odd or mismatched dimensions, or when cov is
  /// not symmetric to 1e-12 (scaled by the largest entry when that exceeds 1).
  GaussianState(Vector<Scalar> mean, Matrix<Scalar> cov)
      : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
      throw std::invalid_argument("GaussianState: mean length must be 2 * n_modes");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
      throw std::invalid_argument("GaussianState: covariance shape does not match mean");
    }
    const Scalar scale = std::max<Scalar>(Scalar(1), cov_.cwiseAbs().maxCoeff());
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale) {
      throw std::invalid_argument("GaussianState: covariance is not symmetric");
    }
  }

  int n_modes() const { return static_cast<int>(mean_.size() / 2); }
  const Vector<Scalar>& mean() const { return mean_; }
  const Matrix<Scalar>& cov() const { return cov_; }

  Scalar mean_x(int mode) const { return mean_(2 * check(mode)); }
  Scalar mean_p(int mode) const { return mean_(2 * check(mode) + 1); }

  /// <a^dag a> of one mode: (mx^2 + mp^2)/4 + (Vx + Vp - 2)/4.
  Scalar photon_number(int mode) const {
    const int i = 2 * check(mode);
    const Scalar mx = mean_(i);
    const Scalar mp = mean_(i + 1);
    return (mx * mx + mp * mp) / Scalar(4) +
           (cov_(i, i) + cov_(i + 1, i + 1) - Scalar(2)) / Scalar(4);
  }

  Scalar total_photon_number() const {
    Scalar total{0};
    for (int m = 0; m < n_modes(); ++m) total += photon_number(m);
    return total;
  }

  int check(int mode) const {
    if (mode < 0 || mode >= n_modes()) {
      throw std::out_of_range("mode index " + std::to_string(mode) + " out of range for " +
                              std::to_string(n_modes()) + "-mode state");
    }
    return mode;
  }

 private:
  Vector<Scalar> mean_;
  Matrix<Scalar> cov_;
};

template <typename Scalar = double>
GaussianState<Scalar> vacuum_state(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum_state: n_modes must be >= 1");
  const int dim = 2 * n_modes;
  return GaussianState<Scalar>(Vector<Scalar>::Zero(dim), Matrix<Scalar>::Identity(dim, dim));
}

/// Single-mode coherent state with mean photon number (or flux) alpha_sq.
template <typename Scalar = double>
GaussianState<Scalar> coherent_state(Scalar alpha_sq, Scalar phase = Scalar(0)) {
  if (!(alpha_sq >= Scalar(0))) {
    throw std::invalid_argument("coherent_state: alpha_sq must be non-negative");
  }
  using std::cos;
  using std::sin;
  using std::sqrt;
  Vector<Scalar> mean(2);
  const Scalar amplitude = Scalar(2) * sqrt(alpha_sq);
  mean << amplitude * cos(phase), amplitude * sin(phase);
  return GaussianState<Scalar>(std::move(mean), Matrix<Scalar>::Identity(2, 2));
}

/// Direct sum: modes of `first` followed by modes of `second`, uncorrelated.
template <typename Scalar>
GaussianState<Scalar> direct_sum(const GaussianState<Scalar>& first,
                                 const GaussianState<Scalar>& second) {
  const auto n1 = first.mean().size();
  const auto n2 = second.mean().size();
  Vector<Scalar> mean(n1 + n2);
  mean << first.mean(), second.mean();
  Matrix<Scalar> cov = Matrix<Scalar>::Zero(n1 + n2, n1 + n2);
  cov.topLeftCorner(n1, n1) = first.cov();
  cov.bottomRightCorner(n2, n2) = second.cov();
  return GaussianState<Scalar>(std::move(mean), std::move(cov));
}

// Symplectic matrices

template <typename Scalar = double>
Matrix<Scalar> symplectic_form(int n_modes) {
  Matrix<Scalar> omega = Matrix<Scalar>::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(2 * m, 2 * m + 1) = Scalar(1);
    omega(2 * m + 1, 2 * m) = Scalar(-1);
  }
  return omega;
}

namespace detail {

inline void check_pair(int n_modes, int a, int b) {
  if (a < 0 || a >= n_modes || b < 0 || b >= n_modes) {
    throw std::out_of_range("beam splitter mode index out of range");
  }
  if (a == b) throw std::invalid_argument("beam splitter needs two distinct modes");
}

inline void check_mode(int n_modes, int mode) {
  if (mode < 0 || mode >= n_modes) throw std::out_of_range("mode index out of range");
}

}  // namespace detail

/// a' = sqrt(T) a + sqrt(1-T) b,  b' = -sqrt(1-T) a + sqrt(T) b.
template <typename Scalar = double>
Matrix<Scalar> beam_splitter_symplectic(int n_modes, int mode_a, int mode_b,
                                        Scalar transmissivity) {
  detail::check_pair(n_modes, mode_a, mode_b);
  if (!(transmissivity >= Scalar(0) && transmissivity <= Scalar(1))) {
    throw std::invalid_argument("beam splitter transmissivity must lie in [0, 1]");
  }
  using std::sqrt;
  const Scalar t = sqrt(transmissivity);
  const Scalar s = sqrt(Scalar(1) - transmissivity);
  Matrix<Scalar> S = Matrix<Scalar>::Identity(2 * n_modes, 2 * n_modes);
  for (int q = 0; q < 2; ++q) {
    const int ia = 2 * mode_a + q;
    const int ib = 2 * mode_b + q;
    S(ia, ia) = t;
    S(ia, ib) = s;
    S(ib, ia) = -s;
    S(ib, ib) = t;
  }
  return S;
}

/// a -> a e^{i phi}: (X, P) rotated counter-clockwise by phi.
template <typename Scalar = double>
Matrix<Scalar> phase_shift_symplectic(int n_modes, int mode, Scalar phi) {
  detail::check_mode(n_modes, mode);
  using std::cos;
  using std::sin;
  Matrix<Scalar> S = Matrix<Scalar>::Identity(2 * n_modes, 2 * n_modes);
  const int i = 2 * mode;
  const Scalar c = cos(phi);
  const Scalar s = sin(phi);
  S(i, i) = c;
  S(i, i + 1) = -s;
  S(i + 1, i) = s;
  S(i + 1, i + 1) = c;
  return S;
}

/// Phase-sensitive amplifier: the quadrature at `orientation` is scaled by
/// `amplification`, the conjugate one by 1/amplification.
template <typename Scalar = double>
Matrix<Scalar> squeezer_symplectic(int n_modes, int mode, Scalar amplification,
                                   Scalar orientation) {
  detail::check_mode(n_modes, mode);
  if (!(amplification > Scalar(0))) {
    throw std::invalid_argument("squeezer amplification must be positive");
  }
  using std::cos;
  using std::sin;
  const Scalar c = cos(orientation);
  const Scalar s = sin(orientation);
  const Scalar up = amplification;
  const Scalar down = Scalar(1) / amplification;
  // R(theta) diag(up, down) R(-theta)
  Matrix<Scalar> S = Matrix<Scalar>::Identity(2 * n_modes, 2 * n_modes);
  const int i = 2 * mode;
  S(i, i) = up * c * c + down * s * s;
  S(i, i + 1) = (up - down) * c * s;
  S(i + 1, i) = (up - down) * c * s;
  S(i + 1, i + 1) = up * s * s + down * c * c;
  return S;
}

template <typename Scalar>
GaussianState<Scalar> apply_symplectic(const GaussianState<Scalar>& state,
                                       const Matrix<Scalar>& S) {
  if (S.rows() != state.mean().size() || S.cols() != state.mean().size()) {
    throw std::invalid_argument("apply_symplectic: dimension mismatch");
  }
  Matrix<Scalar> cov = S * state.cov() * S.transpose();
  cov = (Scalar(0.5) * (cov + cov.transpose())).eval();
  return GaussianState<Scalar>(S * state.mean(), std::move(cov));
}

template <typename Scalar>
GaussianState<Scalar> apply_beam_splitter(const GaussianState<Scalar>& state, int mode_a,
                                          int mode_b, Scalar transmissivity) {
  return apply_symplectic(
      state, beam_splitter_symplectic<Scalar>(state.n_modes(), mode_a, mode_b, transmissivity));
}

template <typename Scalar>
GaussianState<Scalar> apply_phase_shift(const GaussianState<Scalar>& state, int mode, Scalar phi) {
  return apply_symplectic(state, phase_shift_symplectic<Scalar>(state.n_modes(), mode, phi));
}

template <typename Scalar>
GaussianState<Scalar> apply_squeezer(const GaussianState<Scalar>& state, int mode,
                                     Scalar amplification, Scalar orientation) {
  return apply_symplectic(
      state, squeezer_symplectic<Scalar>(state.n_modes(), mode, amplification, orientation));
}

/// Pure-loss channel (beam splitter to vacuum) with power transmission
/// `efficiency`: mean scaled by sqrt(efficiency), the mode's covariance block
/// mixed with vacuum, cross-correlations scaled by sqrt(efficiency).
template <typename Scalar>
GaussianState<Scalar> apply_loss(const GaussianState<Scalar>& state, int mode, Scalar efficiency) {
  state.check(mode);
  if (!(efficiency >= Scalar(0) && efficiency <= Scalar(1))) {
    throw std::invalid_argument("loss efficiency must lie in [0, 1]");
  }
  using std::sqrt;
  const Scalar root = sqrt(efficiency);
  const int i = 2 * mode;
  Vector<Scalar> mean = state.mean();
  Matrix<Scalar> cov = state.cov();
  mean.template segment<2>(i) *= root;
  cov.middleRows(i, 2) *= root;
  cov.middleCols(i, 2) *= root;
  cov(i, i) += Scalar(1) - efficiency;
  cov(i + 1, i + 1) += Scalar(1) - efficiency;
  return GaussianState<Scalar>(std::move(mean), std::move(cov));
}

/// Statistics of X cos(angle) + P sin(angle) on one mode.
template <typename Scalar>
QuadratureStats<Scalar> homodyne_stats(const GaussianState<Scalar>& state, int mode,
                                       Scalar quadrature_angle) {
  state.check(mode);
  using std::cos;
  using std::sin;
  const int i = 2 * mode;
  const Scalar c = cos(quadrature_angle);
  const Scalar s = sin(quadrature_angle);
  const auto& m = state.mean();
  const auto& v = state.cov();
  QuadratureStats<Scalar> stats;
  stats.mean = c * m(i) + s * m(i + 1);
  stats.variance = c * c * v(i, i) + Scalar(2) * c * s * v(i, i + 1) + s * s * v(i + 1, i + 1);
  stats.quadrature_angle = quadrature_angle;
  return stats;
}

}  // namespace opamzi
