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

#include "obmimo/precoder.hpp"

#include "obmimo/quant.hpp"

#include <cmath>
#include <string>

namespace obmimo {

namespace {

void check_shapes(const CMat &channel, const CMat &precoder, const SystemDimensions &dims,
                  const char *caller) {
  if (channel.rows() != dims.n_users || channel.cols() != dims.n_antennas ||
      precoder.rows() != dims.n_antennas || precoder.cols() != dims.n_users) {
    throw std::invalid_argument(std::string(caller) + ": channel must be M x N and precoder N x M");
  }
}

} // namespace

void SystemDimensions::validate() const {
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
  if (n_antennas < n_users) throw std::invalid_argument("n_antennas must be >= n_users");
  if (!(symbol_power > 0.0)) throw std::invalid_argument("symbol_power must be positive");
  if (!(tx_power > 0.0)) throw std::invalid_argument("tx_power must be positive");
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be positive");
}

RVec k2_of(const CMat &precoder) {
  const Eigen::Index n = precoder.rows();
  RVec k2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = precoder.row(i).norm();
    if (!(norm > 0.0)) {
      throw DegeneratePrecoderError("k2_of: precoder row " + std::to_string(i) +
                                    " is zero; this antenna would transmit pure quantizer noise");
    }
    k2(i) = 1.0 / norm;
  }
  return k2;
}

RVec analog_from_digital(const CMat &precoder) {
  return precoder.rowwise().norm();
}

namespace detail {

// diag(C_x) with the matched analog stage:
//   (4/pi) [ ||h_m^T P||^2 + gap * sum_i |H_mi|^2 ||row_i P||^2 ] + noise.
RVec rx_cov_diag_impl(const CMat &channel, const CMat &precoder, const SystemDimensions &dims,
                      double gap) {
  const CMat hp = channel * precoder; // M x M
  const RVec hp_row_sq = hp.rowwise().squaredNorm();
  const RVec row_power = precoder.rowwise().squaredNorm();          // diag(P P^H)
  const RVec shaped = channel.cwiseAbs2() * row_power;              // per user
  return ((4.0 / M_PI) * (hp_row_sq + gap * shaped)).array() + dims.noise_power;
}

double mse_value(const CMat &channel, const CMat &precoder, const SystemDimensions &dims,
                 double gap, RVec *k1_out) {
  check_shapes(channel, precoder, dims, "mse_value");
  const int m = dims.n_users;
  const double sigma_s = dims.sigma_s();
  const RVec diag = rx_cov_diag_impl(channel, precoder, dims, gap);
  const RVec k1 = diag.array().rsqrt();
  const double matched = (k1.array() * (channel * precoder).diagonal().real().array()).sum();
  if (k1_out) *k1_out = k1;
  return dims.symbol_power * m + 2.0 * m - (8.0 * sigma_s / M_PI) * matched;
}

double mse_fixed_analog(const CMat &channel, const CMat &precoder, const RVec &analog,
                        const SystemDimensions &dims, double gap) {
  check_shapes(channel, precoder, dims, "mse_fixed_analog");
  const int m = dims.n_users;
  const double sigma_s = dims.sigma_s();

  // Row-normalized precoder; K2 floored so near-silent antennas stay finite.
  CMat normalized = precoder;
  for (Eigen::Index i = 0; i < normalized.rows(); ++i) {
    const double norm = std::max(normalized.row(i).norm(), kRowNormFloor);
    normalized.row(i) /= norm;
  }

  // C_x = H D C_yQ D H^H + C_eta with C_yQ = (4/pi)(W W^H + gap I), W = K2 P.
  const CMat hd = channel * analog.asDiagonal();   // M x N
  const CMat hdw = hd * normalized;                // M x M
  const RVec diag = ((4.0 / M_PI) *
                     (hdw.rowwise().squaredNorm() + gap * hd.rowwise().squaredNorm()))
                        .array() +
                    dims.noise_power;
  const RVec k1 = diag.array().rsqrt();
  const double matched = (k1.array() * hdw.diagonal().real().array()).sum();
  return dims.symbol_power * m + 2.0 * m - (8.0 * sigma_s / M_PI) * matched;
}

CMat mse_gradient_impl(const CMat &channel, const CMat &precoder, const SystemDimensions &dims,
                       double gap) {
  check_shapes(channel, precoder, dims, "mse_gradient");
  const double sigma_s = dims.sigma_s();

  const CMat hp = channel * precoder;                      // M x M
  const RVec diag = rx_cov_diag_impl(channel, precoder, dims, gap);
  const RVec k1 = diag.array().rsqrt();
  const RVec k1_cubed = k1.array().cube();
  const RVec matched = 2.0 * hp.diagonal().real();         // 2 Re diag(H P), per user

  // Three groups: the linear term H^T K1, the K1-sensitivity through
  // ||h_m^T P||^2, and the K1-sensitivity through the diag(P P^H) shaping.
  const RVec user_weight = k1_cubed.cwiseProduct(matched);                  // per user
  const RVec antenna_weight = channel.cwiseAbs2().transpose() * user_weight; // per antenna

  CMat grad = channel.transpose() * k1.asDiagonal();
  grad.noalias() -= (2.0 / M_PI) * (channel.transpose() * user_weight.asDiagonal() * hp.conjugate());
  grad -= (2.0 * gap / M_PI) * (antenna_weight.asDiagonal() * precoder.conjugate());
  return (-4.0 * sigma_s / M_PI) * grad;
}

} // namespace detail

RVec effective_rx_cov_diag(const CMat &channel, const CMat &precoder,
                           const SystemDimensions &dims) {
  check_shapes(channel, precoder, dims, "effective_rx_cov_diag");
  return detail::rx_cov_diag_impl(channel, precoder, dims, kArcsinGap);
}

MseEvaluation mse_objective(const CMat &channel, const CMat &precoder,
                            const SystemDimensions &dims) {
  MseEvaluation eval;
  eval.rx_cov_diag = effective_rx_cov_diag(channel, precoder, dims);
  eval.k1 = eval.rx_cov_diag.array().rsqrt();
  eval.k2 = k2_of(precoder);
  eval.arcsin_gap = kArcsinGap;
  const double matched = (eval.k1.array() * (channel * precoder).diagonal().real().array()).sum();
  eval.mse = dims.symbol_power * dims.n_users + 2.0 * dims.n_users -
             (8.0 * dims.sigma_s() / M_PI) * matched;
  return eval;
}

CMat mse_gradient(const CMat &channel, const CMat &precoder, const SystemDimensions &dims) {
  return detail::mse_gradient_impl(channel, precoder, dims, kArcsinGap);
}

CMat project_power(const CMat &precoder, const SystemDimensions &dims) {
  const double power = precoder.squaredNorm(); // tr(P P^H)
  const double budget = 0.5 * dims.tx_power;
  if (power <= budget) return precoder;
  return std::sqrt(budget / power) * precoder;
}

CMat wf_precoder_with_regularizer(const CMat &channel, const SystemDimensions &dims,
                                  double regularizer) {
  const int m = dims.n_users;
  // (H^H H + xi I)^{-1} H^H == H^H (H H^H + xi I)^{-1}; the M x M form is
  // cheaper and well conditioned for N >> M.
  CMat gram = channel * channel.adjoint();
  gram.diagonal().array() += regularizer;
  const Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("wf_precoder: regularized Gram matrix is not positive definite");
  }
  const CMat unscaled = channel.adjoint() * llt.solve(CMat::Identity(m, m));
  // Unquantized budget sigma_s^2 tr(P P^H) = Etx.
  const double beta = std::sqrt(dims.tx_power / (dims.symbol_power * unscaled.squaredNorm()));
  return beta * unscaled;
}

CMat wf_precoder(const CMat &channel, const SystemDimensions &dims) {
  const double xi = dims.noise_power * dims.n_users * dims.n_users / dims.tx_power;
  return wf_precoder_with_regularizer(channel, dims, xi);
}

} // namespace obmimo
