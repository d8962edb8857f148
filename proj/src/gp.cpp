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

#include "obmimo/gp.hpp"

#include "obmimo/rng.hpp"

#include <cmath>
#include <string>

namespace obmimo {

void GpConfig::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("gp step must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("gp tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("gp max_iterations must be >= 1");
}

namespace {

CMat initial_precoder(const CMat &channel, const SystemDimensions &dims, const GpConfig &cfg) {
  if (cfg.init == GpInit::kMatchedFilter) return channel.adjoint();
  RngStream rng(cfg.init_seed, 0, StreamKind::kInit);
  CMat p(dims.n_antennas, dims.n_users);
  for (Eigen::Index j = 0; j < p.cols(); ++j)
    for (Eigen::Index i = 0; i < p.rows(); ++i) p(i, j) = rng.cgaussian();
  return p;
}

} // namespace

namespace detail {

CMat row_normalized(const CMat &precoder) {
  CMat out = precoder;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = std::max(out.row(i).norm(), kRowNormFloor);
    out.row(i) /= norm;
  }
  return out;
}

double mse_equal_power(const CMat &channel, const CMat &precoder, const SystemDimensions &dims,
                       RVec *k1_out) {
  const int m = dims.n_users;
  const double alpha = equal_power_gain(dims);
  const double sigma_s = dims.sigma_s();
  const CMat w = row_normalized(precoder);
  const CMat hw = channel * w; // M x M
  // C_x = alpha^2 (4/pi)(H W W^H H^H + gap H H^H) + C_eta, W row-normalized.
  const RVec diag = (alpha * alpha * (4.0 / M_PI) *
                     (hw.rowwise().squaredNorm() + kArcsinGap * channel.rowwise().squaredNorm()))
                        .array() +
                    dims.noise_power;
  const RVec k1 = diag.array().rsqrt();
  if (k1_out) *k1_out = k1;
  const double matched = (k1.array() * hw.diagonal().real().array()).sum();
  return dims.symbol_power * m + 2.0 * m - (8.0 * sigma_s * alpha / M_PI) * matched;
}

CMat mse_equal_power_gradient(const CMat &channel, const CMat &unit_row_precoder,
                              const SystemDimensions &dims) {
  const double alpha = equal_power_gain(dims);
  const double sigma_s = dims.sigma_s();
  const CMat hw = channel * unit_row_precoder;
  const RVec diag = (alpha * alpha * (4.0 / M_PI) *
                     (hw.rowwise().squaredNorm() +
                      kArcsinGap * channel.rowwise().squaredNorm()))
                        .array() +
                    dims.noise_power;
  const RVec k1 = diag.array().rsqrt();
  const RVec user_weight = k1.array().cube() * 2.0 * hw.diagonal().real().array();
  CMat grad = channel.transpose() * k1.asDiagonal();
  grad.noalias() -= (2.0 * alpha * alpha / M_PI) *
                    (channel.transpose() * user_weight.asDiagonal() * hw.conjugate());
  return (-4.0 * sigma_s * alpha / M_PI) * grad;
}

} // namespace detail

double equal_power_gain(const SystemDimensions &dims) {
  return std::sqrt(dims.tx_power / (2.0 * dims.n_antennas));
}

GpResult gradient_projection(const CMat &channel, const SystemDimensions &dims,
                             const GpConfig &cfg) {
  dims.validate();
  cfg.validate();

  const double budget = 0.5 * dims.tx_power;
  CMat p = project_power(initial_precoder(channel, dims, cfg), dims);

  GpResult result;
  result.max_power_violation = std::max(0.0, p.squaredNorm() - budget);

  double mse = detail::mse_value(channel, p, dims, kArcsinGap);
  result.initial_mse = mse;
  if (cfg.record_trajectory) result.trajectory.push_back(mse);

  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    const CMat grad = detail::mse_gradient_impl(channel, p, dims, kArcsinGap);
    p = project_power(p - cfg.step * grad.conjugate(), dims);
    result.max_power_violation =
        std::max(result.max_power_violation, p.squaredNorm() - budget);

    const double next = detail::mse_value(channel, p, dims, kArcsinGap);
    if (!std::isfinite(next)) {
      throw DivergedError("gradient_projection: objective became non-finite", iter + 1);
    }
    if (cfg.record_trajectory) result.trajectory.push_back(next);
    const double delta = std::abs(next - mse);
    mse = next;
    if (delta <= cfg.tolerance) {
      ++iter;
      result.converged = true;
      break;
    }
  }

  result.precoder = p;
  result.analog_gains = analog_from_digital(p);
  result.final_mse = mse;
  result.iterations = iter;
  return result;
}

GpResult qp_gp_equal_power(const CMat &channel, const SystemDimensions &dims,
                           const GpConfig &cfg) {
  const double alpha = equal_power_gain(dims);

  if (!cfg.equal_power_reoptimize) {
    // Reuse the unconstrained digital solution; only the analog stage changes.
    GpResult result = gradient_projection(channel, dims, cfg);
    result.analog_gains = RVec::Constant(dims.n_antennas, alpha);
    result.final_mse = detail::mse_equal_power(channel, result.precoder, dims);
    result.initial_mse = detail::mse_equal_power(
        channel, project_power(initial_precoder(channel, dims, cfg), dims), dims);
    return result;
  }

  dims.validate();
  cfg.validate();

  // Re-descend on the row-normalized precoder under D = alpha I. Projection
  // here is row normalization; the power constraint then holds by
  // construction: 2 tr(D^2) = 2 N alpha^2 = Etx.
  CMat w = detail::row_normalized(initial_precoder(channel, dims, cfg));

  GpResult result;
  result.max_power_violation = 0.0;
  double mse = detail::mse_equal_power(channel, w, dims);
  result.initial_mse = mse;
  if (cfg.record_trajectory) result.trajectory.push_back(mse);

  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    const CMat grad = detail::mse_equal_power_gradient(channel, w, dims);
    w = detail::row_normalized(w - cfg.step * grad.conjugate());

    const double next = detail::mse_equal_power(channel, w, dims);
    if (!std::isfinite(next)) {
      throw DivergedError("qp_gp_equal_power: objective became non-finite", iter + 1);
    }
    if (cfg.record_trajectory) result.trajectory.push_back(next);
    const double delta = std::abs(next - mse);
    mse = next;
    if (delta <= cfg.tolerance) {
      ++iter;
      result.converged = true;
      break;
    }
  }

  result.precoder = w;
  result.analog_gains = RVec::Constant(dims.n_antennas, alpha);
  result.final_mse = mse;
  result.iterations = iter;
  return result;
}

} // namespace obmimo
