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

#include "doctest.h"

#include "obmimo/precoder.hpp"
#include "obmimo/quant.hpp"
#include "obmimo/rng.hpp"

#include "support/oracles.hpp"

#include <cmath>

using namespace obmimo;

namespace {

SystemDimensions scalar_dims() {
  SystemDimensions dims;
  dims.n_antennas = 1;
  dims.n_users = 1;
  return dims;
}

/// Single-antenna single-user chain: diag(C_x) = 2 p^2 + 1, so
///   MSE(p) = sigma_s^2 + 2 - (8 sigma_s / pi) p / sqrt(2 p^2 + 1).
double scalar_mse(double p, double sigma_sq) {
  const double sigma = std::sqrt(sigma_sq);
  return sigma_sq + 2.0 - (8.0 * sigma / M_PI) * p / std::sqrt(2.0 * p * p + 1.0);
}

} // namespace

TEST_CASE("closed-form MSE reproduces the hand-derived scalar chain") {
  SystemDimensions dims = scalar_dims();
  CMat h(1, 1);
  h << Cplx(1, 0);
  for (const double p : {0.3, 1.0, 2.0, 7.5}) {
    CMat precoder(1, 1);
    precoder << Cplx(p, 0);
    const MseEvaluation eval = mse_objective(h, precoder, dims);
    CHECK(eval.mse == doctest::Approx(scalar_mse(p, dims.symbol_power)).epsilon(1e-14));
    CHECK(eval.rx_cov_diag(0) == doctest::Approx(2.0 * p * p + 1.0).epsilon(1e-14));
    CHECK(eval.k1(0) == doctest::Approx(1.0 / std::sqrt(2.0 * p * p + 1.0)).epsilon(1e-14));
    CHECK(eval.k2(0) == doctest::Approx(1.0 / p).epsilon(1e-14));
  }
  // Saturation limit p -> infinity at sigma_s^2 = 2: MSE -> 4 - 8/pi.
  CMat big(1, 1);
  big << Cplx(1e8, 0);
  CHECK(mse_objective(h, big, dims).mse ==
        doctest::Approx(4.0 - 8.0 / M_PI).epsilon(1e-10));
}

TEST_CASE("analog extraction and k2 handle rows as documented") {
  CMat p(3, 2);
  p << Cplx(3, 0), Cplx(0, 4), Cplx(0, 0), Cplx(0, 0), Cplx(1, 1), Cplx(1, -1);
  const RVec d = analog_from_digital(p);
  CHECK(d(0) == doctest::Approx(5.0));
  CHECK(d(1) == 0.0); // zero row tolerated here
  CHECK(d(2) == doctest::Approx(2.0));
  CHECK_THROWS_AS(k2_of(p), DegeneratePrecoderError);

  CMat full(2, 2);
  full << Cplx(3, 0), Cplx(0, 4), Cplx(1, 1), Cplx(1, -1);
  const RVec k2 = k2_of(full);
  CHECK(k2(0) == doctest::Approx(0.2));
  CHECK(k2(1) == doctest::Approx(0.5));
}

TEST_CASE("matched-analog and fixed-analog evaluators agree at D = diag(PP^H)^{1/2}") {
  RngStream rng(21, 0, StreamKind::kOracle);
  SystemDimensions dims;
  dims.n_antennas = 4;
  dims.n_users = 2;
  for (int instance = 0; instance < 5; ++instance) {
    const CMat h = test::random_cmatrix(dims.n_users, dims.n_antennas, rng);
    const CMat p = test::random_cmatrix(dims.n_antennas, dims.n_users, rng);
    const double via_objective = mse_objective(h, p, dims).mse;
    const double via_value = detail::mse_value(h, p, dims, kArcsinGap);
    const double via_fixed = detail::mse_fixed_analog(h, p, analog_from_digital(p), dims,
                                                      kArcsinGap);
    CHECK(via_objective == via_value);
    CHECK(via_fixed == doctest::Approx(via_objective).epsilon(1e-12));
  }
}

TEST_CASE("fixed-analog MSE is invariant to positive row scaling of P") {
  RngStream rng(22, 0, StreamKind::kOracle);
  SystemDimensions dims;
  dims.n_antennas = 4;
  dims.n_users = 2;
  const CMat h = test::random_cmatrix(dims.n_users, dims.n_antennas, rng);
  const CMat p = test::random_cmatrix(dims.n_antennas, dims.n_users, rng);
  RVec analog(4);
  analog << 0.7, 1.3, 0.2, 2.0;

  // Power-of-two row scales are exact, so the row-normalized W and the MSE
  // match bit for bit; arbitrary scales match to rounding.
  CMat pow2 = p;
  pow2.row(0) *= 4.0;
  pow2.row(2) *= 0.25;
  for (const double gap : {kArcsinGap, 0.0}) {
    CHECK(detail::mse_fixed_analog(h, pow2, analog, dims, gap) ==
          detail::mse_fixed_analog(h, p, analog, dims, gap));
  }

  CMat scaled = p;
  scaled.row(0) *= 3.7;
  scaled.row(1) *= 0.013;
  scaled.row(3) *= 51.0;
  CHECK(detail::mse_fixed_analog(h, scaled, analog, dims, kArcsinGap) ==
        doctest::Approx(detail::mse_fixed_analog(h, p, analog, dims, kArcsinGap))
            .epsilon(1e-13));
}

TEST_CASE("gradient matches the scalar hand derivation") {
  // d MSE / d Re p = -(8 sigma / pi) (2 p^2 + 1)^{-3/2} = 2 Re G.
  SystemDimensions dims = scalar_dims();
  CMat h(1, 1);
  h << Cplx(1, 0);
  const double sigma = dims.sigma_s();
  for (const double p : {0.4, 1.0, 3.0}) {
    CMat precoder(1, 1);
    precoder << Cplx(p, 0);
    const CMat g = mse_gradient(h, precoder, dims);
    const double expected = -(4.0 * sigma / M_PI) * std::pow(2.0 * p * p + 1.0, -1.5);
    CHECK(g(0, 0).real() == doctest::Approx(expected).epsilon(1e-13));
    CHECK(g(0, 0).imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("gradient matches central finite differences") {
  RngStream rng(23, 0, StreamKind::kOracle);
  SystemDimensions dims;
  dims.n_antennas = 4;
  dims.n_users = 2;
  for (int instance = 0; instance < 5; ++instance) {
    const CMat h = test::random_cmatrix(dims.n_users, dims.n_antennas, rng);
    const CMat p = test::random_cmatrix(dims.n_antennas, dims.n_users, rng);
    const CMat analytic = mse_gradient(h, p, dims);
    const CMat fd = test::fd_mse_gradient(h, p, dims);
    CHECK(test::max_gradient_rel_err(analytic, fd) < 1e-5);
  }
}

TEST_CASE("power projection rescales only infeasible precoders") {
  RngStream rng(24, 0, StreamKind::kOracle);
  SystemDimensions dims;
  dims.n_antennas = 4;
  dims.n_users = 2;
  dims.tx_power = 10.0;

  const CMat small = 0.1 * test::random_cmatrix(4, 2, rng);
  CHECK(test::identical(project_power(small, dims), small)); // bit-identical

  const CMat large = 10.0 * test::random_cmatrix(4, 2, rng);
  const CMat projected = project_power(large, dims);
  CHECK(projected.squaredNorm() == doctest::Approx(0.5 * dims.tx_power).epsilon(1e-12));
  // Direction preserved: projected is a positive multiple of the input.
  const double ratio = projected(0, 0).real() / large(0, 0).real();
  CHECK((projected - ratio * large).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ratio > 0.0);
}

TEST_CASE("Wiener filter meets its budget and the push-through identity") {
  RngStream rng(25, 0, StreamKind::kOracle);
  SystemDimensions dims;
  dims.n_antennas = 6;
  dims.n_users = 3;
  dims.tx_power = 8.0;
  const CMat h = test::random_cmatrix(3, 6, rng);

  const CMat p = wf_precoder(h, dims);
  CHECK(p.rows() == 6);
  CHECK(p.cols() == 3);
  CHECK(dims.symbol_power * p.squaredNorm() == doctest::Approx(dims.tx_power).epsilon(1e-12));

  // Same precoder through the N x N normal equations.
  const double xi = dims.noise_power * dims.n_users * dims.n_users / dims.tx_power;
  CMat normal = h.adjoint() * h;
  normal.diagonal().array() += xi;
  const CMat direct_unscaled = normal.ldlt().solve(h.adjoint());
  const double beta =
      std::sqrt(dims.tx_power / (dims.symbol_power * direct_unscaled.squaredNorm()));
  CHECK((p - beta * direct_unscaled).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("vanishing regularizer drives the Wiener filter to zero forcing") {
  RngStream rng(26, 0, StreamKind::kOracle);
  SystemDimensions dims;
  dims.n_antennas = 6;
  dims.n_users = 3;
  const CMat h = test::random_cmatrix(3, 6, rng);
  const CMat p = wf_precoder_with_regularizer(h, dims, 1e-12);
  const CMat hp = h * p;
  // H P is beta I: equal diagonal, vanishing off-diagonal cross-talk.
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      if (i == j) {
        CHECK(hp(i, j).real() == doctest::Approx(hp(0, 0).real()).epsilon(1e-9));
        CHECK(std::abs(hp(i, j).imag()) < 1e-9);
      } else {
        CHECK(std::abs(hp(i, j)) < 1e-9);
      }
    }
  }
}

TEST_CASE("received covariance diagonal is positive and shape-checked") {
  RngStream rng(27, 0, StreamKind::kOracle);
  SystemDimensions dims;
  dims.n_antennas = 5;
  dims.n_users = 3;
  const CMat h = test::random_cmatrix(3, 5, rng);
  const CMat p = test::random_cmatrix(5, 3, rng);
  const RVec diag = effective_rx_cov_diag(h, p, dims);
  CHECK(diag.size() == 3);
  CHECK(diag.minCoeff() > dims.noise_power); // noise floor plus signal energy

  CHECK_THROWS_AS(effective_rx_cov_diag(h, CMat(test::random_cmatrix(4, 3, rng)), dims),
                  std::invalid_argument);
  CHECK_THROWS_AS(mse_objective(CMat(test::random_cmatrix(3, 4, rng)), p, dims),
                  std::invalid_argument);
}

TEST_CASE("closed-form MSE tracks the physical chain with Gaussian symbols") {
  // The closed form treats the receive quantizer input as Gaussian; with
  // N = 20 mixing antennas that approximation is good to a few percent.
  RngStream rng(28, 0, StreamKind::kOracle);
  SystemDimensions dims; // stock 20 x 4
  const CMat h = test::random_cmatrix(dims.n_users, dims.n_antennas, rng);
  CMat p = h.adjoint();
  p = project_power(p, dims);
  const RVec d = analog_from_digital(p);

  RngStream mc(28, 1, StreamKind::kOracle);
  const int draws = 200000;
  double acc = 0.0;
  const double sigma = dims.sigma_s();
  CVec s(dims.n_users), eta(dims.n_users);
  for (int it = 0; it < draws; ++it) {
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = sigma * mc.cgaussian();
    for (Eigen::Index i = 0; i < eta.size(); ++i) eta(i) = mc.cgaussian();
    const CVec y = p * s;
    const CVec x = h * (d.cast<Cplx>().asDiagonal() * CVec(quantize(y))) + eta;
    acc += (s - CVec(quantize(x))).squaredNorm();
  }
  const double empirical = acc / draws;
  const double closed = mse_objective(h, p, dims).mse;
  CHECK(empirical == doctest::Approx(closed).epsilon(0.05));
}
