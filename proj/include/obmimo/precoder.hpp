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
//
// Precoder-level math: the closed-form MSE of the 1-bit downlink chain,
// its gradient with respect to the digital precoder, the analog precoder
// extraction, the transmit-power projection, and the linear Wiener filter
// baseline.
//
// Conventions. The digital precoder P is N x M (antennas x users), the
// channel H is M x N. The analog precoder is the positive diagonal
// D = diag(P P^H)^{1/2}, i.e. d_i = ||row i of P||. With that choice the
// received-signal covariance of the quantized chain reduces to
//   C_x = (4/pi) H (P P^H + c diag(P P^H)) H^H + C_eta,   c = pi/2 - 1,
// and the MSE to
//   MSE = sigma_s^2 M + 2 M - (8 sigma_s / pi) Re tr(K1 H P),
// with K1 = diag(C_x)^{-1/2}.

#pragma once

#include "obmimo/types.hpp"

namespace obmimo {

/// MSE value together with the diagonal normalizers it was computed from.
/// `k1` has one entry per user (diag(C_x)^{-1/2}), `k2` one entry per
/// antenna (inverse row norms of P). `arcsin_gap` is the constant c.
struct MseEvaluation {
  double mse = 0.0;
  RVec k1;
  RVec k2;
  double arcsin_gap = kArcsinGap;
  RVec rx_cov_diag; // diag(C_x), per user
};

/// Inverse row norms of P: entry i is 1 / ||row i of P||.
/// Throws DegeneratePrecoderError when a row is zero.
RVec k2_of(const CMat &precoder);

/// Analog precoder matched to P: d_i = ||row i of P||, i.e. D = K2^{-1}.
/// Zero rows are tolerated and yield d_i = 0 (antenna off).
RVec analog_from_digital(const CMat &precoder);

/// diag(C_x) of the quantized chain with the matched analog precoder,
/// one entry per user. Strictly positive whenever noise_power > 0.
RVec effective_rx_cov_diag(const CMat &channel, const CMat &precoder,
                           const SystemDimensions &dims);

/// Closed-form MSE of the quantized chain at digital precoder P with the
/// matched analog precoder. Throws DegeneratePrecoderError for zero rows
/// (through the cached k2); the optimizer uses the k2-free value path
/// internally and never trips this.
MseEvaluation mse_objective(const CMat &channel, const CMat &precoder,
                            const SystemDimensions &dims);

/// dMSE/dP in the Wirtinger sense (holding P* fixed), term by term.
/// The descent direction on the real parameterization is the conjugate of
/// this matrix; equivalently the derivative with respect to Re/Im of an
/// entry is 2 Re / -2 Im of the corresponding entry here, and the factor
/// of two is absorbed by the step size of the optimizer.
CMat mse_gradient(const CMat &channel, const CMat &precoder,
                  const SystemDimensions &dims);

/// Projects P onto the transmit-power ball tr(P P^H) <= Etx / 2 by
/// rescaling; feasible inputs are returned unchanged (bit-identical).
CMat project_power(const CMat &precoder, const SystemDimensions &dims);

/// Linear transmit Wiener filter baseline
///   P = beta (H^H H + xi I)^{-1} H^H,  xi = tr(C_eta) M / Etx,
/// with beta scaled for the unquantized budget
/// sigma_s^2 tr(P P^H) = Etx. Quantized uses re-project via project_power.
CMat wf_precoder(const CMat &channel, const SystemDimensions &dims);

/// Same with an explicit regularizer, e.g. xi -> 0 for the zero-forcing
/// limit.
CMat wf_precoder_with_regularizer(const CMat &channel, const SystemDimensions &dims,
                                  double regularizer);

namespace detail {

/// MSE value and K1 without forming k2 (safe for zero rows); `gap`
/// parameterizes the constant c so tests can switch the arcsin correction
/// off.
double mse_value(const CMat &channel, const CMat &precoder, const SystemDimensions &dims,
                 double gap, RVec *k1_out = nullptr);

/// MSE of the chain with an explicitly given analog precoder d (the form
/// that keeps D and K2 separate). With d = analog_from_digital(P) this
/// equals mse_value; with d fixed it depends on P only through the
/// row-normalized K2 P. Rows with norm below `kRowNormFloor` are floored.
double mse_fixed_analog(const CMat &channel, const CMat &precoder, const RVec &analog,
                        const SystemDimensions &dims, double gap);

CMat mse_gradient_impl(const CMat &channel, const CMat &precoder,
                       const SystemDimensions &dims, double gap);

inline constexpr double kRowNormFloor = 1e-12;

} // namespace detail

} // namespace obmimo
