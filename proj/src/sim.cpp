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

#include "obmimo/sim.hpp"

#include "obmimo/quant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace obmimo {

ChannelMatrix draw_channel(const SystemDimensions &dims, std::uint64_t seed,
                           std::uint64_t realization) {
  RngStream rng(seed, realization, StreamKind::kChannel);
  ChannelMatrix ch;
  ch.h.resize(dims.n_users, dims.n_antennas);
  for (Eigen::Index j = 0; j < ch.h.cols(); ++j)
    for (Eigen::Index i = 0; i < ch.h.rows(); ++i) ch.h(i, j) = rng.cgaussian();
  ch.seed = seed;
  ch.realization = realization;
  return ch;
}

CMat draw_noise(int n_users, int n_symbols, double noise_power, RngStream &rng) {
  const double scale = std::sqrt(noise_power);
  CMat noise(n_users, n_symbols);
  for (Eigen::Index t = 0; t < noise.cols(); ++t)
    for (Eigen::Index u = 0; u < noise.rows(); ++u) noise(u, t) = scale * rng.cgaussian();
  return noise;
}

CMat transmit_chain(const CMat &symbols, const CMat &precoder, const RVec &analog_gains,
                    const CMat &channel, const CMat &noise) {
  const CMat mixed = precoder * symbols;
  const CMat antenna_signal = quantize(mixed); // entries on {+-1 +- j}
  const CMat rx =
      channel * (analog_gains.cast<Cplx>().asDiagonal() * antenna_signal) + noise;
  return quantize(rx);
}

CMat linear_chain(const CMat &symbols, const CMat &precoder, const CMat &channel,
                  const CMat &noise) {
  return channel * (precoder * symbols) + noise;
}

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kWfNoQuant: return "wf";
    case Scheme::kWfEqualPower: return "wf-di";
    case Scheme::kQpGpEqualPower: return "qp-gp-di";
    case Scheme::kQpGp: return "qp-gp";
  }
  throw std::logic_error("scheme_name: unhandled scheme");
}

Scheme scheme_from_name(const std::string &name) {
  if (name == "wf") return Scheme::kWfNoQuant;
  if (name == "wf-di") return Scheme::kWfEqualPower;
  if (name == "qp-gp-di") return Scheme::kQpGpEqualPower;
  if (name == "qp-gp") return Scheme::kQpGp;
  if (name == "qwp") {
    throw ConfigError("scheme 'qwp' is reserved for the quantized Wiener precoder "
                      "baseline and is not implemented");
  }
  throw ConfigError("unknown scheme '" + name +
                    "' (available: wf, wf-di, qp-gp-di, qp-gp)");
}

const std::vector<Scheme> &all_schemes() {
  static const std::vector<Scheme> schemes = {Scheme::kWfNoQuant, Scheme::kWfEqualPower,
                                              Scheme::kQpGpEqualPower, Scheme::kQpGp};
  return schemes;
}

namespace detail {

double binomial_std_error(double ber, std::uint64_t bits) {
  if (bits == 0) return 0.0;
  return std::sqrt(ber * (1.0 - ber) / static_cast<double>(bits));
}

DHistogram histogram_db(const std::vector<double> &values_db, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram_db: bin width must be positive");
  DHistogram hist;
  hist.total = values_db.size();
  if (values_db.empty()) return hist;

  std::vector<long long> indices(values_db.size());
  for (std::size_t i = 0; i < values_db.size(); ++i) {
    if (!std::isfinite(values_db[i])) {
      throw std::invalid_argument("histogram_db: non-finite value");
    }
    indices[i] = static_cast<long long>(std::floor(values_db[i] / bin_width));
  }
  const auto [lo_it, hi_it] = std::minmax_element(indices.begin(), indices.end());
  const long long lo = *lo_it, hi = *hi_it;

  hist.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const long long idx : indices) hist.counts[static_cast<std::size_t>(idx - lo)] += 1;
  hist.bin_left_db.resize(hist.counts.size());
  hist.bin_right_db.resize(hist.counts.size());
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    hist.bin_left_db[b] = static_cast<double>(lo + static_cast<long long>(b)) * bin_width;
    hist.bin_right_db[b] = hist.bin_left_db[b] + bin_width;
  }
  return hist;
}

} // namespace detail

namespace {

struct RealizationDraws {
  ChannelMatrix channel;
  SymbolBlock block;
  CMat noise;
};

RealizationDraws draw_realization(const SystemDimensions &dims, const MonteCarloParams &mc,
                                  std::size_t realization) {
  RealizationDraws d;
  d.channel = draw_channel(dims, mc.seed, realization);
  RngStream symbol_rng(mc.seed, realization, StreamKind::kSymbols);
  RngStream noise_rng(mc.seed, realization, StreamKind::kNoise);
  d.block = draw_symbols(dims.n_users, mc.n_symbols, dims.symbol_power, symbol_rng);
  d.noise = draw_noise(dims.n_users, mc.n_symbols, dims.noise_power, noise_rng);
  return d;
}

void check_mc(const MonteCarloParams &mc, const std::vector<double> &etx_db_grid) {
  if (mc.n_channels < 1) throw std::invalid_argument("n_channels must be >= 1");
  if (mc.n_symbols < 1) throw std::invalid_argument("n_symbols must be >= 1");
  if (etx_db_grid.empty()) throw std::invalid_argument("Etx grid must be non-empty");
}

std::vector<BerPoint> reduce_points(const std::vector<std::uint64_t> &errors, int n_channels,
                                    std::size_t stride, std::size_t offset,
                                    const std::vector<double> &etx_db_grid,
                                    std::uint64_t bits_per_point_per_channel) {
  std::vector<BerPoint> points(etx_db_grid.size());
  for (std::size_t e = 0; e < etx_db_grid.size(); ++e) {
    std::uint64_t errs = 0;
    for (int r = 0; r < n_channels; ++r) errs += errors[r * stride + offset + e];
    BerPoint &pt = points[e];
    pt.etx_db = etx_db_grid[e];
    pt.bits = bits_per_point_per_channel * static_cast<std::uint64_t>(n_channels);
    pt.errors = errs;
    pt.ber = static_cast<double>(errs) / static_cast<double>(pt.bits);
    pt.std_error = detail::binomial_std_error(pt.ber, pt.bits);
  }
  return points;
}

} // namespace

std::vector<BerCurve> ber_experiment(const std::vector<Scheme> &schemes,
                                     const std::vector<double> &etx_db_grid,
                                     const MonteCarloParams &mc, const SystemDimensions &dims,
                                     const GpConfig &gp) {
  dims.validate();
  gp.validate();
  check_mc(mc, etx_db_grid);
  if (schemes.empty()) throw std::invalid_argument("scheme list must be non-empty");

  const std::size_t n_schemes = schemes.size();
  const std::size_t n_etx = etx_db_grid.size();
  const std::size_t stride = n_schemes * n_etx;

  const bool want_wf = std::any_of(schemes.begin(), schemes.end(), [](Scheme s) {
    return s == Scheme::kWfNoQuant || s == Scheme::kWfEqualPower;
  });
  // One unconstrained GP solve per (realization, Etx) covers both qp-gp and
  // the default (reuse) equal-power variant.
  const bool want_gp = std::any_of(schemes.begin(), schemes.end(), [&](Scheme s) {
    return s == Scheme::kQpGp ||
           (s == Scheme::kQpGpEqualPower && !gp.equal_power_reoptimize);
  });
  const bool want_ep_reopt = gp.equal_power_reoptimize &&
                             std::any_of(schemes.begin(), schemes.end(), [](Scheme s) {
                               return s == Scheme::kQpGpEqualPower;
                             });

  std::vector<std::uint64_t> errors(static_cast<std::size_t>(mc.n_channels) * stride, 0);

  parallel_for(static_cast<std::size_t>(mc.n_channels), mc.threads, [&](std::size_t r) {
    const RealizationDraws draws = draw_realization(dims, mc, r);
    for (std::size_t e = 0; e < n_etx; ++e) {
      SystemDimensions de = dims;
      de.tx_power = db_to_linear(etx_db_grid[e]);

      CMat wf;
      if (want_wf) wf = wf_precoder(draws.channel.h, de);
      GpResult gp_result;
      if (want_gp) gp_result = gradient_projection(draws.channel.h, de, gp);
      GpResult ep_result;
      if (want_ep_reopt) ep_result = qp_gp_equal_power(draws.channel.h, de, gp);
      const RVec alpha = RVec::Constant(dims.n_antennas, equal_power_gain(de));

      for (std::size_t s = 0; s < n_schemes; ++s) {
        std::uint64_t errs = 0;
        switch (schemes[s]) {
          case Scheme::kWfNoQuant: {
            const CMat rx = linear_chain(draws.block.symbols, wf, draws.channel.h, draws.noise);
            errs = count_bit_errors(draws.block.symbols, nearest_qpsk(rx, dims.symbol_power));
            break;
          }
          case Scheme::kWfEqualPower: {
            const CMat rx =
                transmit_chain(draws.block.symbols, wf, alpha, draws.channel.h, draws.noise);
            errs = count_bit_errors(draws.block.symbols, rx);
            break;
          }
          case Scheme::kQpGpEqualPower: {
            const CMat &digital =
                gp.equal_power_reoptimize ? ep_result.precoder : gp_result.precoder;
            const CMat rx =
                transmit_chain(draws.block.symbols, digital, alpha, draws.channel.h, draws.noise);
            errs = count_bit_errors(draws.block.symbols, rx);
            break;
          }
          case Scheme::kQpGp: {
            const CMat rx = transmit_chain(draws.block.symbols, gp_result.precoder,
                                           gp_result.analog_gains, draws.channel.h, draws.noise);
            errs = count_bit_errors(draws.block.symbols, rx);
            break;
          }
        }
        errors[r * stride + s * n_etx + e] = errs;
      }
    }
  });

  const std::uint64_t bits_per_channel =
      2ull * dims.n_users * static_cast<std::uint64_t>(mc.n_symbols);
  std::vector<BerCurve> curves(n_schemes);
  for (std::size_t s = 0; s < n_schemes; ++s) {
    curves[s].scheme = scheme_name(schemes[s]);
    curves[s].seed = mc.seed;
    curves[s].points =
        reduce_points(errors, mc.n_channels, stride, s * n_etx, etx_db_grid, bits_per_channel);
  }
  return curves;
}

std::pair<BerCurve, BerCurve> sensitivity_experiment(const PerturbationSpec &spec,
                                                     const std::vector<double> &etx_db_grid,
                                                     const MonteCarloParams &mc,
                                                     const SystemDimensions &dims,
                                                     const GpConfig &gp) {
  dims.validate();
  gp.validate();
  check_mc(mc, etx_db_grid);
  if (!(spec.level >= 0.0)) throw std::invalid_argument("perturbation level must be >= 0");

  const std::size_t n_etx = etx_db_grid.size();
  const std::size_t stride = 2 * n_etx;
  std::vector<std::uint64_t> errors(static_cast<std::size_t>(mc.n_channels) * stride, 0);

  parallel_for(static_cast<std::size_t>(mc.n_channels), mc.threads, [&](std::size_t r) {
    const RealizationDraws draws = draw_realization(dims, mc, r);

    // One relative-error vector per realization: the perturbation models a
    // fixed hardware inaccuracy of the analog stage, not per-point noise.
    RngStream pert_rng(mc.seed + spec.seed, r, StreamKind::kPerturbation);
    RVec u(dims.n_antennas);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      u(i) = spec.model == PerturbationSpec::Model::kUniform ? pert_rng.uniform_symmetric()
                                                            : pert_rng.gaussian();
    }

    for (std::size_t e = 0; e < n_etx; ++e) {
      SystemDimensions de = dims;
      de.tx_power = db_to_linear(etx_db_grid[e]);
      const GpResult res = gradient_projection(draws.channel.h, de, gp);
      const RVec perturbed =
          res.analog_gains.array() * (1.0 + spec.level * u.array());

      const CMat rx_ideal = transmit_chain(draws.block.symbols, res.precoder, res.analog_gains,
                                           draws.channel.h, draws.noise);
      const CMat rx_pert = transmit_chain(draws.block.symbols, res.precoder, perturbed,
                                          draws.channel.h, draws.noise);
      errors[r * stride + e] = count_bit_errors(draws.block.symbols, rx_ideal);
      errors[r * stride + n_etx + e] = count_bit_errors(draws.block.symbols, rx_pert);
    }
  });

  const std::uint64_t bits_per_channel =
      2ull * dims.n_users * static_cast<std::uint64_t>(mc.n_symbols);
  std::pair<BerCurve, BerCurve> out;
  out.first.scheme = "qp-gp";
  out.second.scheme = "qp-gp-perturbed";
  out.first.seed = out.second.seed = mc.seed;
  out.first.points = reduce_points(errors, mc.n_channels, stride, 0, etx_db_grid, bits_per_channel);
  out.second.points =
      reduce_points(errors, mc.n_channels, stride, n_etx, etx_db_grid, bits_per_channel);
  return out;
}

DHistogram d_distribution_experiment(int n_channels, double etx_db, const SystemDimensions &dims,
                                     const GpConfig &gp, std::uint64_t seed, int threads,
                                     double bin_width_db) {
  dims.validate();
  gp.validate();
  if (n_channels < 1) throw std::invalid_argument("n_channels must be >= 1");

  SystemDimensions de = dims;
  de.tx_power = db_to_linear(etx_db);

  std::vector<double> coefficients(static_cast<std::size_t>(n_channels) * dims.n_antennas);
  parallel_for(static_cast<std::size_t>(n_channels), threads, [&](std::size_t r) {
    const ChannelMatrix ch = draw_channel(de, seed, r);
    const GpResult res = gradient_projection(ch.h, de, gp);
    for (int i = 0; i < dims.n_antennas; ++i) {
      coefficients[r * dims.n_antennas + i] = res.analog_gains(i);
    }
  });

  double mean = 0.0;
  for (const double d : coefficients) mean += d;
  mean /= static_cast<double>(coefficients.size());
  if (!(mean > 0.0)) {
    throw DegeneratePrecoderError("d_distribution_experiment: mean analog coefficient is zero");
  }

  std::vector<double> deviations_db(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (!(coefficients[i] > 0.0)) {
      throw DegeneratePrecoderError("d_distribution_experiment: zero analog coefficient");
    }
    deviations_db[i] = 20.0 * std::log10(coefficients[i] / mean);
  }

  DHistogram hist = detail::histogram_db(deviations_db, bin_width_db);
  hist.mean_coefficient = mean;
  std::uint64_t within = 0;
  double max_abs = 0.0;
  for (const double dev : deviations_db) {
    max_abs = std::max(max_abs, std::abs(dev));
    within += std::abs(dev) <= 6.0;
  }
  hist.max_abs_deviation_db = max_abs;
  hist.fraction_within_6db =
      static_cast<double>(within) / static_cast<double>(deviations_db.size());
  return hist;
}

} // namespace obmimo
