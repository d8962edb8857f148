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
// Command-line front end: configuration parsing (flags over an optional
// flat JSON config file), experiment dispatch, and plot-ready CSV/JSON
// emission. Emitted files embed their own config and seed, so re-running
// from the embedded config reproduces the data section byte for byte.

#pragma once

#include <string>
#include <vector>

#include "obmimo/sim.hpp"
#include "obmimo/types.hpp"

namespace obmimo::cli {

enum class ExperimentKind { kBer, kSensitivity, kDDistribution, kGpTrace };

enum class OutputFormat { kCsv, kJson };

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string &name);
std::string format_name(OutputFormat format);
OutputFormat format_from_name(const std::string &name);

/// Full experiment description; defaults reproduce the stock study setup
/// (20 antennas, 4 users, sigma_s^2 = 2, 200 channels, 1000 symbols,
/// mu = 0.05, eps = 1e-6).
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kBer;
  SystemDimensions dims;             // tx_power unused; the grid below rules
  std::vector<double> etx_db;        // strictly increasing
  std::vector<Scheme> schemes;       // BER experiment only
  int n_channels = 200;
  int n_symbols = 1000;
  GpConfig gp;
  std::uint64_t seed = 1;
  PerturbationSpec perturbation;
  std::string out_path;              // empty -> "<experiment>.<format>"
  OutputFormat format = OutputFormat::kCsv;
  int threads = 0;                   // execution detail, not part of the embedded config

  std::string resolved_out_path() const;
  void validate() const; // throws ConfigError with a distinct message per violation
};

/// Parses flags (and `--config <json>`, flags win) into a validated
/// config. Throws ConfigError on domain violations; CLI11 errors propagate
/// for unknown flags / malformed values.
ExperimentConfig parse_config(const std::vector<std::string> &args);

/// The embedded-config codec: flat key/value JSON with keys identical to
/// the long flag names.
std::string config_to_json(const ExperimentConfig &cfg);
ExperimentConfig config_from_json(const std::string &json_text);

/// Runs the configured experiment and renders the full output file
/// content (metadata block, header, data section).
std::string run_to_string(const ExperimentConfig &cfg);

/// Runs and writes to cfg.resolved_out_path(). Returns the process exit
/// status (0 on success).
int run_and_emit(const ExperimentConfig &cfg);

/// argv entry point used by the obmimo binary: parse, run, report errors
/// on stderr (exit 2 for config errors, 1 for runtime failures).
int run_main(int argc, char **argv);

/// Pulls the embedded config JSON back out of an emitted file.
std::string extract_embedded_config(const std::string &file_content);

/// Data section (everything after the metadata/header block) of an
/// emitted CSV, for byte-wise comparisons.
std::string csv_data_section(const std::string &file_content);

} // namespace obmimo::cli
