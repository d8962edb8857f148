# SPDX-License-Identifier: Apache-2.0
#
# obmimo - two-stage MMSE precoding for 1-bit quantized massive MIMO downlinks
# Copyright (C) 2026 the obmimo authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# -------------------------------------------------------------------------
"""Two-stage MMSE precoding for 1-bit quantized massive MIMO downlinks.

The package is a thin wrapper around the compiled ``_core`` extension:
numpy arrays map onto the Eigen matrices of the C++ library.
"""

from ._core import (  # noqa: F401
    ARCSIN_GAP,
    BerCurve,
    BerPoint,
    ChannelMatrix,
    DHistogram,
    GpConfig,
    GpInit,
    GpResult,
    MonteCarloParams,
    MseEvaluation,
    PerturbationSpec,
    Scheme,
    SystemDimensions,
    __version__,
    all_schemes,
    analog_from_digital,
    arcsine_cov_quantized,
    ber_experiment,
    count_bit_errors,
    cross_cov_quantized_unquantized,
    d_distribution_experiment,
    db_to_linear,
    detect_bits,
    draw_channel,
    effective_rx_cov_diag,
    equal_power_gain,
    gradient_projection,
    k2_of,
    linear_chain,
    linear_to_db,
    linearized_cov_quantized,
    map_bits_to_symbols,
    mse_gradient,
    mse_objective,
    nearest_qpsk,
    project_power,
    qp_gp_equal_power,
    quantize,
    scheme_from_name,
    scheme_name,
    sensitivity_experiment,
    transmit_chain,
    wf_precoder,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
