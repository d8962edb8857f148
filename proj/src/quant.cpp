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

#include "obmimo/quant.hpp"

#include <cmath>
#include <string>

namespace obmimo {

namespace {

// Clamp band for normalized correlations before arcsin.
constexpr double kCorrelationGuard = 1e-9;

double sign_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Inverse square roots of the diagonal, errors on non-positive entries.
RVec inv_sqrt_diag(const CMat &cov, const char *caller) {
  const Eigen::Index n = cov.rows();
  RVec k(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = cov(i, i).real();
    if (!(d > 0.0)) {
      throw DegenerateCovarianceError(std::string(caller) + ": covariance diagonal entry " +
                                      std::to_string(i) + " is not strictly positive");
    }
    k(i) = 1.0 / std::sqrt(d);
  }
  return k;
}

double clamp_correlation(double rho, const char *caller, Eigen::Index i, Eigen::Index j) {
  if (rho > 1.0 + kCorrelationGuard || rho < -1.0 - kCorrelationGuard) {
    throw InvalidCovarianceError(std::string(caller) + ": normalized correlation (" +
                                 std::to_string(i) + "," + std::to_string(j) + ") = " +
                                 std::to_string(rho) + " lies outside [-1, 1]");
  }
  return std::clamp(rho, -1.0, 1.0);
}

} // namespace

Cplx quantize(Cplx x) { return {sign_plus(x.real()), sign_plus(x.imag())}; }

CVec quantize(const CVec &x) {
  CVec q(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) q(i) = quantize(x(i));
  return q;
}

CMat quantize(const CMat &x) {
  CMat q(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) q(i, j) = quantize(x(i, j));
  return q;
}

namespace detail {

void normalized_correlations(const CMat &cov, const char *caller, RMat &rho_re, RMat &rho_im) {
  const RVec k = inv_sqrt_diag(cov, caller);
  const Eigen::Index n = cov.rows();
  rho_re.resize(n, n);
  rho_im.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = k(i) * k(j);
      rho_re(i, j) = clamp_correlation(cov(i, j).real() * s, caller, i, j);
      rho_im(i, j) = clamp_correlation(cov(i, j).imag() * s, caller, i, j);
    }
  }
}

} // namespace detail

CMat cross_cov_quantized_unquantized(const CMat &cov) {
  const RVec k = inv_sqrt_diag(cov, "cross_cov_quantized_unquantized");
  return std::sqrt(4.0 / M_PI) * (k.asDiagonal() * cov);
}

CMat arcsine_cov_quantized(const CMat &cov) {
  RMat rho_re, rho_im;
  detail::normalized_correlations(cov, "arcsine_cov_quantized", rho_re, rho_im);
  const Eigen::Index n = cov.rows();
  const double scale = 4.0 / M_PI;
  CMat out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = scale * Cplx(std::asin(rho_re(i, j)), std::asin(rho_im(i, j)));
    }
  }
  // The squared norm of a quantized entry is 2 exactly; pin the diagonal
  // rather than round-trip it through asin.
  out.diagonal().setConstant(Cplx(2.0, 0.0));
  return out;
}

CMat linearized_cov_quantized(const CMat &cov) {
  RMat rho_re, rho_im;
  detail::normalized_correlations(cov, "linearized_cov_quantized", rho_re, rho_im);
  const Eigen::Index n = cov.rows();
  const double scale = 4.0 / M_PI;
  CMat out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = scale * Cplx(rho_re(i, j), rho_im(i, j));
    }
  }
  // (4/pi)(1 + c) = 2: same exact diagonal as the arcsine form.
  out.diagonal().setConstant(Cplx(2.0, 0.0));
  return out;
}

} // namespace obmimo
