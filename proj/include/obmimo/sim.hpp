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
// Monte Carlo harness for the end-to-end chain
//   s -> P -> Q_t -> D -> H -> +eta -> Q_r -> s_hat
// under block fading: the channel is fixed per realization, noise is
// redrawn per symbol slot. Trials are partitioned by channel realization;
// every realization derives its own random streams from
// (master seed, realization index), so totals are independent of the
// thread schedule. Error/bit counters aggregate by integer addition,
// which is order-independent.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "obmimo/gp.hpp"
#include "obmimo/qpsk.hpp"
#include "obmimo/rng.hpp"
#include "obmimo/types.hpp"

namespace obmimo {

/// One channel realization: H is M x N with i.i.d. CN(0, 1) entries.
struct ChannelMatrix {
  CMat h;
  std::uint64_t seed = 0;
  std::uint64_t realization = 0;
};

/// Deterministic i.i.d. Rayleigh channel draw for (seed, realization).
ChannelMatrix draw_channel(const SystemDimensions &dims, std::uint64_t seed,
                           std::uint64_t realization = 0);

/// CN(0, noise_power I) noise block, one column per symbol slot.
CMat draw_noise(int n_users, int n_symbols, double noise_power, RngStream &rng);

/// The quantized chain for a whole symbol block:
///   s_hat = Q_r( H diag(d) Q_t(P s) + noise ).
/// Returns the decoded block with entries on {+-1 +- j}.
CMat transmit_chain(const CMat &symbols, const CMat &precoder, const RVec &analog_gains,
                    const CMat &channel, const CMat &noise);

/// The unquantized baseline chain H P s + noise (no clipping, no analog
/// stage); detection happens downstream via nearest_qpsk.
CMat linear_chain(const CMat &symbols, const CMat &precoder, const CMat &channel,
                  const CMat &noise);

// --- schemes --------------------------------------------------------------

enum class Scheme {
  kWfNoQuant,      // linear Wiener filter, quantizers bypassed
  kWfEqualPower,   // Wiener filter digital stage, D = alpha I, 1-bit chain
  kQpGpEqualPower, // gradient projection digital stage, D = alpha I
  kQpGp,           // gradient projection with matched D (the proposed design)
};

std::string scheme_name(Scheme scheme);

/// Parses a scheme token; "qwp" is a reserved name for the quantized
/// Wiener precoder baseline and raises ConfigError("... reserved ...").
Scheme scheme_from_name(const std::string &name);

const std::vector<Scheme> &all_schemes();

// --- experiments ----------------------------------------------------------

struct BerPoint {
  double etx_db = 0.0;
  double ber = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  double std_error = 0.0; // sqrt(ber (1 - ber) / bits)
};

struct BerCurve {
  std::string scheme;
  std::vector<BerPoint> points;
  std::uint64_t seed = 0;
};

/// Shared Monte Carlo controls. threads <= 0 selects hardware concurrency.
struct MonteCarloParams {
  int n_channels = 200;
  int n_symbols = 1000; // N_b, symbol slots per realization
  std::uint64_t seed = 1;
  int threads = 0;
};

/// Uncoded BER versus transmit power for the requested schemes. Every
/// (realization) shares its channel/symbol/noise draws across schemes and
/// Etx points, so curves are paired comparisons on common randomness.
std::vector<BerCurve> ber_experiment(const std::vector<Scheme> &schemes,
                                     const std::vector<double> &etx_db_grid,
                                     const MonteCarloParams &mc,
                                     const SystemDimensions &dims,
                                     const GpConfig &gp = {});

/// Multiplicative error model for the analog stage: d_i -> d_i (1 + level u_i)
/// with u_i uniform on [-1, 1] (default) or standard Gaussian.
struct PerturbationSpec {
  double level = 0.1;
  enum class Model { kUniform, kGaussian } model = Model::kUniform;
  std::uint64_t seed = 0; // extra offset folded into the perturbation streams
};

/// QP-GP with ideal D versus QP-GP with the perturbed D of `spec`; the
/// perturbed gains go on the air as-is (hardware error, not a redesign, so
/// no re-projection). Returns the (ideal, perturbed) curve pair.
std::pair<BerCurve, BerCurve> sensitivity_experiment(const PerturbationSpec &spec,
                                                     const std::vector<double> &etx_db_grid,
                                                     const MonteCarloParams &mc,
                                                     const SystemDimensions &dims,
                                                     const GpConfig &gp = {});

/// Distribution of the QP-GP analog coefficients over many realizations,
/// as deviations 20 log10(d_i / mean) from the global mean.
struct DHistogram {
  std::vector<double> bin_left_db;
  std::vector<double> bin_right_db;
  std::vector<std::uint64_t> counts;
  double mean_coefficient = 0.0;
  double max_abs_deviation_db = 0.0;
  double fraction_within_6db = 0.0;
  std::uint64_t total = 0; // N * n_channels
};

DHistogram d_distribution_experiment(int n_channels, double etx_db,
                                     const SystemDimensions &dims, const GpConfig &gp,
                                     std::uint64_t seed, int threads = 0,
                                     double bin_width_db = 0.5);

namespace detail {

/// Histogram of `values_db` on bins of width `bin_width` aligned to
/// multiples of the width; a constant input lands in one bin.
DHistogram histogram_db(const std::vector<double> &values_db, double bin_width);

double binomial_std_error(double ber, std::uint64_t bits);

} // namespace detail

} // namespace obmimo
