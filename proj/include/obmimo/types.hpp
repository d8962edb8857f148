// SPDX-License-Identifier: Apache-2.0
//
// obmimo - two-stage MMSE precoding for 1-bit quantized massive MIMO downlinks
// Copyright (C) 2026 the obmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace obmimo {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd; // dense complex matrix
using CVec = Eigen::VectorXcd; // dense complex column vector
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Gap between arcsin(1) and the slope-1 linearization of arcsin at 0,
/// i.e. the constant c = pi/2 - 1 that restores the exact unit diagonal of
/// the linearized quantizer-output covariance.
inline const double kArcsinGap = M_PI / 2.0 - 1.0;

/// Scenario parameters of the downlink: a base station with `n_antennas`
/// serves `n_users` single-antenna users over an i.i.d. Rayleigh channel.
/// `tx_power` is the transmit power budget in linear units; `symbol_power`
/// is the QPSK symbol variance sigma_s^2. The noise covariance is
/// `noise_power * I` (kept as a field, but the stock experiments never
/// change it from 1).
struct SystemDimensions {
  int n_antennas = 20;      // N
  int n_users = 4;          // M
  double symbol_power = 2.0; // sigma_s^2
  double tx_power = 10.0;    // Etx, linear
  double noise_power = 1.0;  // C_eta = noise_power * I

  double sigma_s() const { return std::sqrt(symbol_power); }

  /// Throws std::invalid_argument when N < M, M < 1 or a power is not positive.
  void validate() const;
};

/// Converts a power value from dB to linear units.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// --- error taxonomy ------------------------------------------------------

/// A covariance matrix with a zero or negative diagonal entry.
struct DegenerateCovarianceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A covariance matrix whose normalized correlations leave [-1, 1] by more
/// than the floating-point guard band.
struct InvalidCovarianceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A digital precoder with an all-zero row (the antenna would transmit pure
/// quantizer noise and its row normalization is undefined).
struct DegeneratePrecoderError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The optimizer produced a non-finite objective or gradient.
struct DivergedError : std::runtime_error {
  DivergedError(const std::string &what, int iteration_)
      : std::runtime_error(what), iteration(iteration_) {}
  int iteration;
};

/// Invalid or inconsistent experiment configuration (CLI layer).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace obmimo
