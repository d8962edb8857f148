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
// The complex 1-bit quantizer and second-order statistics of quantized
// circular complex Gaussian vectors: the exact arcsine-law output
// covariance, its first-order linearization, and the input/output
// cross-covariance. All functions here are pure.

#pragma once

#include "obmimo/types.hpp"

namespace obmimo {

/// Element-wise complex sign: Q(x) = sign(Re x) + j sign(Im x), with
/// sign(0) := +1 so the map is total. Output entries lie exactly on
/// {+-1 +- j}.
Cplx quantize(Cplx x);
CVec quantize(const CVec &x);
CMat quantize(const CMat &x);

/// Cross-covariance between the quantized and the unquantized signal,
///   C_{xQ,x} = sqrt(4/pi) K C_x  with  K = diag(C_x)^{-1/2},
/// valid for circular complex Gaussian input with covariance C_x.
/// Throws DegenerateCovarianceError when a diagonal entry is not positive.
CMat cross_cov_quantized_unquantized(const CMat &cov);

/// Exact covariance of the quantized output (arcsine law):
///   C_{xQ} = (4/pi) [ arcsin(K Re{C_x} K) + j arcsin(K Im{C_x} K) ],
/// arcsin applied entry-wise. The diagonal is exactly 2. Normalized
/// correlations within 1e-9 of [-1, 1] are clamped; anything further out
/// raises InvalidCovarianceError.
CMat arcsine_cov_quantized(const CMat &cov);

/// First-order approximation arcsin(x) ~= x of the arcsine law:
///   (4/pi) [ K C_x K + (pi/2 - 1) I ].
/// Shares the exact diagonal of 2 with the exact form, and its input
/// normalization, so any positive diagonal scaling of C_x cancels.
CMat linearized_cov_quantized(const CMat &cov);

namespace detail {

/// Normalized correlation matrices K Re{C} K and K Im{C} K with the
/// clamp/raise policy shared by the covariance maps above.
void normalized_correlations(const CMat &cov, const char *caller, RMat &rho_re, RMat &rho_im);

} // namespace detail

} // namespace obmimo
