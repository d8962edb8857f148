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
// Gradient projection solver for the quantized-precoder MSE problem:
//   P_0 = H^H, scaled onto tr(P P^H) <= Etx/2 when outside;
//   P_{n+1} = project(P_n - mu (dMSE/dP)^*);
//   stop when |MSE_{n+1} - MSE_n| <= eps or after max_iterations.
// The returned pair (P, D) is the QP-GP precoder.

#pragma once

#include <cstdint>
#include <vector>

#include "obmimo/precoder.hpp"
#include "obmimo/types.hpp"

namespace obmimo {

enum class GpInit {
  kMatchedFilter, // P0 = H^H
  kRandom,        // P0 ~ i.i.d. CN(0, 1), from (init_seed)
};

struct GpConfig {
  double step = 0.05;      // mu, absolute (not normalized by gradient size)
  double tolerance = 1e-6; // eps on the MSE change magnitude
  int max_iterations = 10000;
  bool record_trajectory = false;
  GpInit init = GpInit::kMatchedFilter;
  std::uint64_t init_seed = 0;
  /// Equal-power variant only: re-optimize the digital precoder under the
  /// D = alpha I objective (the default). When cleared, the unconstrained
  /// GP output is reused and only the analog stage changes.
  bool equal_power_reoptimize = true;

  void validate() const;
};

struct GpResult {
  CMat precoder;    // P at termination, feasible
  RVec analog_gains; // diagonal of D
  double final_mse = 0.0;
  double initial_mse = 0.0;
  int iterations = 0;
  bool converged = false;
  /// MSE per iterate (entry 0 is the projected initialization); filled only
  /// when record_trajectory is set.
  std::vector<double> trajectory;
  /// max over iterates of tr(P P^H) - Etx/2, for feasibility auditing.
  double max_power_violation = 0.0;
};

/// Runs the gradient projection algorithm on one channel realization and
/// returns the optimized digital precoder together with the matched analog
/// precoder D = diag(P P^H)^{1/2}. Deterministic for identical inputs.
/// Throws DivergedError naming the iteration when the objective or
/// gradient turns non-finite (retry with a smaller step).
GpResult gradient_projection(const CMat &channel, const SystemDimensions &dims,
                             const GpConfig &cfg = {});

/// Equal-power variant (QP-GP, D = alpha I with 2 N alpha^2 = Etx).
/// By default the digital precoder is re-optimized under the equal-power
/// objective (row-normalized iterates); with cfg.equal_power_reoptimize
/// cleared it is reused from gradient_projection and only the analog stage
/// is swapped for alpha I. final_mse is always the MSE of the chain
/// actually returned, i.e. with D = alpha I.
GpResult qp_gp_equal_power(const CMat &channel, const SystemDimensions &dims,
                           const GpConfig &cfg = {});

/// Per-antenna gain of the equal-power analog stage: alpha = sqrt(Etx/(2N)).
double equal_power_gain(const SystemDimensions &dims);

namespace detail {

/// MSE of the chain with D = alpha I at digital precoder W (used with
/// unit-norm rows during re-optimization, but valid for any W through its
/// row normalization).
double mse_equal_power(const CMat &channel, const CMat &precoder,
                       const SystemDimensions &dims, RVec *k1_out = nullptr);

/// dMSE/dW of the equal-power objective at a unit-row W, holding the row
/// normalization fixed (the radial components are removed by the
/// renormalization step of the projected update).
CMat mse_equal_power_gradient(const CMat &channel, const CMat &unit_row_precoder,
                              const SystemDimensions &dims);

/// Rows scaled to unit norm, with norms floored at kRowNormFloor.
CMat row_normalized(const CMat &precoder);

} // namespace detail

} // namespace obmimo
