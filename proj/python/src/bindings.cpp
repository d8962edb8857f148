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
// Python bindings for the core operations: the 1-bit quantizer and its
// second-order statistics, the MSE objective/gradient pair, the gradient
// projection designs, and the Monte Carlo experiments. Matrices cross the
// boundary as numpy arrays via Eigen.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obmimo/gp.hpp"
#include "obmimo/precoder.hpp"
#include "obmimo/quant.hpp"
#include "obmimo/sim.hpp"
#include "obmimo/types.hpp"
#include "obmimo/version.hpp"

namespace py = pybind11;
using namespace obmimo;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-stage MMSE precoding for 1-bit quantized massive MIMO downlinks";
  m.attr("__version__") = kVersion;
  m.attr("ARCSIN_GAP") = kArcsinGap;

  py::class_<SystemDimensions>(m, "SystemDimensions")
      .def(py::init<>())
      .def_readwrite("n_antennas", &SystemDimensions::n_antennas)
      .def_readwrite("n_users", &SystemDimensions::n_users)
      .def_readwrite("symbol_power", &SystemDimensions::symbol_power)
      .def_readwrite("tx_power", &SystemDimensions::tx_power)
      .def_readwrite("noise_power", &SystemDimensions::noise_power)
      .def("sigma_s", &SystemDimensions::sigma_s)
      .def("validate", &SystemDimensions::validate);

  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("linear_to_db", &linear_to_db, py::arg("lin"));

  // --- quantizer statistics ----------------------------------------------
  m.def("quantize", py::overload_cast<const CMat &>(&quantize), py::arg("x"),
        "Element-wise 1-bit quantizer sign(Re) + j sign(Im).");
  m.def("arcsine_cov_quantized", &arcsine_cov_quantized, py::arg("cov"),
        "Exact covariance of the quantizer output for CN(0, cov) input.");
  m.def("cross_cov_quantized_unquantized", &cross_cov_quantized_unquantized, py::arg("cov"));
  m.def("linearized_cov_quantized", &linearized_cov_quantized, py::arg("cov"));

  // --- MSE objective and precoder designs --------------------------------
  py::class_<MseEvaluation>(m, "MseEvaluation")
      .def_readonly("mse", &MseEvaluation::mse)
      .def_readonly("k1", &MseEvaluation::k1)
      .def_readonly("k2", &MseEvaluation::k2)
      .def_readonly("arcsin_gap", &MseEvaluation::arcsin_gap)
      .def_readonly("rx_cov_diag", &MseEvaluation::rx_cov_diag);

  m.def("mse_objective", &mse_objective, py::arg("channel"), py::arg("precoder"),
        py::arg("dims"), "MSE of the quantized chain with the matched analog stage.");
  m.def("mse_gradient", &mse_gradient, py::arg("channel"), py::arg("precoder"),
        py::arg("dims"), "Conjugate-coordinate gradient of the matched-analog MSE.");
  m.def("effective_rx_cov_diag", &effective_rx_cov_diag, py::arg("channel"),
        py::arg("precoder"), py::arg("dims"));
  m.def("project_power", &project_power, py::arg("precoder"), py::arg("dims"),
        "Projection onto the transmit-power ball tr(P P^H) <= Etx/2.");
  m.def("analog_from_digital", &analog_from_digital, py::arg("precoder"));
  m.def("k2_of", &k2_of, py::arg("precoder"));
  m.def("wf_precoder", &wf_precoder, py::arg("channel"), py::arg("dims"),
        "Transmit Wiener filter scaled to the power budget.");

  py::enum_<GpInit>(m, "GpInit")
      .value("MATCHED_FILTER", GpInit::kMatchedFilter)
      .value("RANDOM", GpInit::kRandom);

  py::class_<GpConfig>(m, "GpConfig")
      .def(py::init<>())
      .def_readwrite("step", &GpConfig::step)
      .def_readwrite("tolerance", &GpConfig::tolerance)
      .def_readwrite("max_iterations", &GpConfig::max_iterations)
      .def_readwrite("record_trajectory", &GpConfig::record_trajectory)
      .def_readwrite("init", &GpConfig::init)
      .def_readwrite("init_seed", &GpConfig::init_seed)
      .def_readwrite("equal_power_reoptimize", &GpConfig::equal_power_reoptimize)
      .def("validate", &GpConfig::validate);

  py::class_<GpResult>(m, "GpResult")
      .def_readonly("precoder", &GpResult::precoder)
      .def_readonly("analog_gains", &GpResult::analog_gains)
      .def_readonly("final_mse", &GpResult::final_mse)
      .def_readonly("initial_mse", &GpResult::initial_mse)
      .def_readonly("iterations", &GpResult::iterations)
      .def_readonly("converged", &GpResult::converged)
      .def_readonly("trajectory", &GpResult::trajectory)
      .def_readonly("max_power_violation", &GpResult::max_power_violation);

  m.def("gradient_projection", &gradient_projection, py::arg("channel"), py::arg("dims"),
        py::arg("cfg") = GpConfig(),
        "Gradient projection design of (P, D) with the matched analog stage.");
  m.def("qp_gp_equal_power", &qp_gp_equal_power, py::arg("channel"), py::arg("dims"),
        py::arg("cfg") = GpConfig(), "Equal-power variant with D = alpha I.");
  m.def("equal_power_gain", &equal_power_gain, py::arg("dims"));

  // --- channel, symbols and the quantized chain --------------------------
  py::class_<ChannelMatrix>(m, "ChannelMatrix")
      .def_readonly("h", &ChannelMatrix::h)
      .def_readonly("seed", &ChannelMatrix::seed)
      .def_readonly("realization", &ChannelMatrix::realization);

  m.def("draw_channel", &draw_channel, py::arg("dims"), py::arg("seed"),
        py::arg("realization") = 0,
        "Deterministic i.i.d. CN(0, 1) channel draw for (seed, realization).");
  m.def("transmit_chain", &transmit_chain, py::arg("symbols"), py::arg("precoder"),
        py::arg("analog_gains"), py::arg("channel"), py::arg("noise"),
        "Quantized downlink chain Q(H D Q(P s) + noise).");
  m.def("linear_chain", &linear_chain, py::arg("symbols"), py::arg("precoder"),
        py::arg("channel"), py::arg("noise"));
  m.def("map_bits_to_symbols", &map_bits_to_symbols, py::arg("bits"), py::arg("n_users"),
        py::arg("n_symbols"), py::arg("symbol_power"));
  m.def("detect_bits", &detect_bits, py::arg("rx"));
  m.def("nearest_qpsk", &nearest_qpsk, py::arg("rx"), py::arg("symbol_power"));
  m.def("count_bit_errors", &count_bit_errors, py::arg("sent"), py::arg("decoded"));

  // --- experiments --------------------------------------------------------
  py::enum_<Scheme>(m, "Scheme")
      .value("WF_NO_QUANT", Scheme::kWfNoQuant)
      .value("WF_EQUAL_POWER", Scheme::kWfEqualPower)
      .value("QP_GP_EQUAL_POWER", Scheme::kQpGpEqualPower)
      .value("QP_GP", Scheme::kQpGp);

  m.def("scheme_name", &scheme_name, py::arg("scheme"));
  m.def("scheme_from_name", &scheme_from_name, py::arg("name"));
  m.def("all_schemes", &all_schemes);

  py::class_<MonteCarloParams>(m, "MonteCarloParams")
      .def(py::init<>())
      .def_readwrite("n_channels", &MonteCarloParams::n_channels)
      .def_readwrite("n_symbols", &MonteCarloParams::n_symbols)
      .def_readwrite("seed", &MonteCarloParams::seed)
      .def_readwrite("threads", &MonteCarloParams::threads);

  py::class_<BerPoint>(m, "BerPoint")
      .def_readonly("etx_db", &BerPoint::etx_db)
      .def_readonly("ber", &BerPoint::ber)
      .def_readonly("bits", &BerPoint::bits)
      .def_readonly("errors", &BerPoint::errors)
      .def_readonly("std_error", &BerPoint::std_error);

  py::class_<BerCurve>(m, "BerCurve")
      .def_readonly("scheme", &BerCurve::scheme)
      .def_readonly("points", &BerCurve::points)
      .def_readonly("seed", &BerCurve::seed);

  m.def("ber_experiment", &ber_experiment, py::arg("schemes"), py::arg("etx_db_grid"),
        py::arg("mc"), py::arg("dims"), py::arg("gp") = GpConfig(),
        "Uncoded BER versus transmit power on common random draws.");

  py::class_<PerturbationSpec> perturbation(m, "PerturbationSpec");
  py::enum_<PerturbationSpec::Model>(perturbation, "Model")
      .value("UNIFORM", PerturbationSpec::Model::kUniform)
      .value("GAUSSIAN", PerturbationSpec::Model::kGaussian);
  perturbation.def(py::init<>())
      .def_readwrite("level", &PerturbationSpec::level)
      .def_readwrite("model", &PerturbationSpec::model)
      .def_readwrite("seed", &PerturbationSpec::seed);

  m.def("sensitivity_experiment", &sensitivity_experiment, py::arg("spec"),
        py::arg("etx_db_grid"), py::arg("mc"), py::arg("dims"), py::arg("gp") = GpConfig(),
        "QP-GP with ideal versus perturbed analog gains; returns (ideal, perturbed).");

  py::class_<DHistogram>(m, "DHistogram")
      .def_readonly("bin_left_db", &DHistogram::bin_left_db)
      .def_readonly("bin_right_db", &DHistogram::bin_right_db)
      .def_readonly("counts", &DHistogram::counts)
      .def_readonly("mean_coefficient", &DHistogram::mean_coefficient)
      .def_readonly("max_abs_deviation_db", &DHistogram::max_abs_deviation_db)
      .def_readonly("fraction_within_6db", &DHistogram::fraction_within_6db)
      .def_readonly("total", &DHistogram::total);

  m.def("d_distribution_experiment", &d_distribution_experiment, py::arg("n_channels"),
        py::arg("etx_db"), py::arg("dims"), py::arg("gp") = GpConfig(), py::arg("seed") = 1,
        py::arg("threads") = 0, py::arg("bin_width_db") = 0.5,
        "Spread of the matched analog coefficients around their mean, in dB.");
}
