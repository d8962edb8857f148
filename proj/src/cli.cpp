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

#include "obmimo/cli.hpp"

#include "obmimo/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace obmimo::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string dtos(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string &text) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

std::string join(const std::vector<std::string> &parts, const char *sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// "start:step:stop" (inclusive, step > 0) or a comma list of dB values.
std::vector<double> parse_etx_spec(const std::string &spec) {
  try {
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
      const auto parts = split_csv([&] {
        std::string s = spec;
        for (auto &ch : s)
          if (ch == ':') ch = ',';
        return s;
      }());
      if (parts.size() != 3) throw ConfigError("");
      const double start = std::stod(parts[0]);
      const double step = std::stod(parts[1]);
      const double stop = std::stod(parts[2]);
      if (!(step > 0.0) || stop < start) {
        throw ConfigError("bad Etx range '" + spec + "': need start <= stop and step > 0");
      }
      for (int k = 0;; ++k) {
        const double v = start + k * step;
        if (v > stop + 1e-9 * step) break;
        values.push_back(v);
      }
    } else {
      for (const auto &tok : split_csv(spec)) values.push_back(std::stod(tok));
    }
    if (values.empty()) throw ConfigError("");
    return values;
  } catch (const ConfigError &e) {
    if (e.what()[0] != '\0') throw;
    throw ConfigError("bad Etx specification '" + spec +
                      "' (expected start:step:stop or a comma list of dB values)");
  } catch (const std::exception &) {
    throw ConfigError("bad Etx specification '" + spec +
                      "' (expected start:step:stop or a comma list of dB values)");
  }
}

std::string etx_to_string(const std::vector<double> &grid) {
  std::vector<std::string> parts;
  parts.reserve(grid.size());
  for (const double v : grid) parts.push_back(dtos(v));
  return join(parts, ",");
}

std::string schemes_to_string(const std::vector<Scheme> &schemes) {
  std::vector<std::string> parts;
  parts.reserve(schemes.size());
  for (const Scheme s : schemes) parts.push_back(scheme_name(s));
  return join(parts, ",");
}

std::string gp_init_name(GpInit init) {
  return init == GpInit::kMatchedFilter ? "mf" : "random";
}

GpInit gp_init_from_name(const std::string &name) {
  if (name == "mf" || name == "matched-filter") return GpInit::kMatchedFilter;
  if (name == "random") return GpInit::kRandom;
  throw ConfigError("unknown gp-init '" + name + "' (available: mf, random)");
}

std::string perturb_model_name(PerturbationSpec::Model model) {
  return model == PerturbationSpec::Model::kUniform ? "uniform" : "gaussian";
}

PerturbationSpec::Model perturb_model_from_name(const std::string &name) {
  if (name == "uniform") return PerturbationSpec::Model::kUniform;
  if (name == "gaussian") return PerturbationSpec::Model::kGaussian;
  throw ConfigError("unknown perturb-model '" + name + "' (available: uniform, gaussian)");
}

/// String-valued fields staged for CLI11; parsed back in `finalize`.
struct Staging {
  std::string experiment;
  std::string etx;
  std::string schemes;
  std::string format;
  std::string gp_init;
  std::string perturb_model;
};

Staging staging_from(const ExperimentConfig &cfg) {
  Staging st;
  st.experiment = experiment_name(cfg.experiment);
  st.etx = etx_to_string(cfg.etx_db);
  st.schemes = schemes_to_string(cfg.schemes);
  st.format = format_name(cfg.format);
  st.gp_init = gp_init_name(cfg.gp.init);
  st.perturb_model = perturb_model_name(cfg.perturbation.model);
  return st;
}

std::unique_ptr<CLI::App> make_app(ExperimentConfig &cfg, Staging &st, std::string &config_path) {
  auto app = std::make_unique<CLI::App>(
      "obmimo: two-stage MMSE precoding experiments for the 1-bit massive MIMO downlink");
  app->set_version_flag("--version", kVersion);
  app->add_option("--config", config_path,
                  "flat key/value JSON config file; explicit flags win over it");
  app->add_option("--experiment", st.experiment,
                  "experiment kind: ber | sensitivity | d-distribution | gp-trace")
      ->capture_default_str();
  app->add_option("--antennas", cfg.dims.n_antennas, "transmit antennas N")
      ->capture_default_str();
  app->add_option("--users", cfg.dims.n_users, "single-antenna users M")->capture_default_str();
  app->add_option("--symbol-power", cfg.dims.symbol_power, "QPSK symbol variance sigma_s^2")
      ->capture_default_str();
  app->add_option("--etx", st.etx,
                  "transmit power grid in dB: start:step:stop or a comma list "
                  "(default 0:2:20; single point for d-distribution / gp-trace: 10)");
  app->add_option("--schemes", st.schemes,
                  "comma list from wf, wf-di, qp-gp-di, qp-gp (ber experiment; default all)");
  app->add_option("--channels", cfg.n_channels, "channel realizations")->capture_default_str();
  app->add_option("--symbols", cfg.n_symbols, "symbol slots per realization (N_b)")
      ->capture_default_str();
  app->add_option("--mu", cfg.gp.step, "gradient projection step size")->capture_default_str();
  app->add_option("--epsilon", cfg.gp.tolerance, "gradient projection MSE tolerance")
      ->capture_default_str();
  app->add_option("--max-iters", cfg.gp.max_iterations, "gradient projection iteration cap")
      ->capture_default_str();
  app->add_option("--gp-init", st.gp_init, "gradient projection start: mf | random")
      ->capture_default_str();
  app->add_option("--init-seed", cfg.gp.init_seed, "seed of the random start (gp-init random)")
      ->capture_default_str();
  app->add_flag("--di-reoptimize,!--no-di-reoptimize", cfg.gp.equal_power_reoptimize,
                "re-optimize the digital precoder under the equal-power analog stage "
                "(default); --no-di-reoptimize reuses the unconstrained solution");
  app->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app->add_option("--perturb-level", cfg.perturbation.level,
                  "relative analog-gain error level (sensitivity experiment)")
      ->capture_default_str();
  app->add_option("--perturb-model", st.perturb_model, "perturbation model: uniform | gaussian")
      ->capture_default_str();
  app->add_option("--perturb-seed", cfg.perturbation.seed, "extra seed offset for perturbations")
      ->capture_default_str();
  app->add_option("--out", cfg.out_path, "output path (default <experiment>.<format>)");
  app->add_option("--format", st.format, "output format: csv | json")->capture_default_str();
  app->add_option("--threads", cfg.threads,
                  "worker threads, <= 0 for hardware concurrency (not part of the config)");
  return app;
}

void finalize(ExperimentConfig &cfg, const Staging &st) {
  cfg.experiment = experiment_from_name(st.experiment);
  cfg.format = format_from_name(st.format);
  cfg.gp.init = gp_init_from_name(st.gp_init);
  cfg.perturbation.model = perturb_model_from_name(st.perturb_model);
  cfg.etx_db = st.etx.empty() ? std::vector<double>{} : parse_etx_spec(st.etx);
  cfg.schemes.clear();
  for (const auto &tok : split_csv(st.schemes)) cfg.schemes.push_back(scheme_from_name(tok));

  if (cfg.etx_db.empty()) {
    cfg.etx_db = (cfg.experiment == ExperimentKind::kDDistribution ||
                  cfg.experiment == ExperimentKind::kGpTrace)
                     ? std::vector<double>{10.0}
                     : parse_etx_spec("0:2:20");
  }
  if (cfg.schemes.empty() && cfg.experiment == ExperimentKind::kBer) {
    cfg.schemes = all_schemes();
  }
}

void apply_json_overlay(ExperimentConfig &cfg, const std::string &json_text) {
  Json parsed;
  try {
    parsed = Json::parse(json_text);
  } catch (const std::exception &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!parsed.is_object()) throw ConfigError("config must be a JSON object");

  try {
    for (const auto &[key, value] : parsed.items()) {
      if (key == "experiment") cfg.experiment = experiment_from_name(value.get<std::string>());
      else if (key == "antennas") cfg.dims.n_antennas = value.get<int>();
      else if (key == "users") cfg.dims.n_users = value.get<int>();
      else if (key == "symbol-power") cfg.dims.symbol_power = value.get<double>();
      else if (key == "etx") {
        if (value.is_array()) {
          cfg.etx_db = value.get<std::vector<double>>();
        } else {
          cfg.etx_db = parse_etx_spec(value.get<std::string>());
        }
      } else if (key == "schemes") {
        cfg.schemes.clear();
        const auto tokens = value.is_array() ? value.get<std::vector<std::string>>()
                                             : split_csv(value.get<std::string>());
        for (const auto &tok : tokens) cfg.schemes.push_back(scheme_from_name(tok));
      } else if (key == "channels") cfg.n_channels = value.get<int>();
      else if (key == "symbols") cfg.n_symbols = value.get<int>();
      else if (key == "mu") cfg.gp.step = value.get<double>();
      else if (key == "epsilon") cfg.gp.tolerance = value.get<double>();
      else if (key == "max-iters") cfg.gp.max_iterations = value.get<int>();
      else if (key == "gp-init") cfg.gp.init = gp_init_from_name(value.get<std::string>());
      else if (key == "init-seed") cfg.gp.init_seed = value.get<std::uint64_t>();
      else if (key == "di-reoptimize") cfg.gp.equal_power_reoptimize = value.get<bool>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "perturb-level") cfg.perturbation.level = value.get<double>();
      else if (key == "perturb-model")
        cfg.perturbation.model = perturb_model_from_name(value.get<std::string>());
      else if (key == "perturb-seed") cfg.perturbation.seed = value.get<std::uint64_t>();
      else if (key == "out") cfg.out_path = value.get<std::string>();
      else if (key == "format") cfg.format = format_from_name(value.get<std::string>());
      else if (key == "threads")
        throw ConfigError("'threads' is an execution detail; pass --threads on the "
                          "command line instead of the config");
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

std::string read_file(const std::string &path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream content;
  content << stream.rdbuf();
  return content.str();
}

/// First pass over raw args: locate --config before CLI11 runs, so the
/// overlay can be applied underneath the flags.
std::string scan_config_path(const std::vector<std::string> &args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config requires a file path");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return "";
}

Json config_json_object(const ExperimentConfig &cfg) {
  Json j;
  j["experiment"] = experiment_name(cfg.experiment);
  j["antennas"] = cfg.dims.n_antennas;
  j["users"] = cfg.dims.n_users;
  j["symbol-power"] = cfg.dims.symbol_power;
  j["etx"] = etx_to_string(cfg.etx_db);
  j["schemes"] = schemes_to_string(cfg.schemes);
  j["channels"] = cfg.n_channels;
  j["symbols"] = cfg.n_symbols;
  j["mu"] = cfg.gp.step;
  j["epsilon"] = cfg.gp.tolerance;
  j["max-iters"] = cfg.gp.max_iterations;
  j["gp-init"] = gp_init_name(cfg.gp.init);
  j["init-seed"] = cfg.gp.init_seed;
  j["di-reoptimize"] = cfg.gp.equal_power_reoptimize;
  j["seed"] = cfg.seed;
  j["perturb-level"] = cfg.perturbation.level;
  j["perturb-model"] = perturb_model_name(cfg.perturbation.model);
  j["perturb-seed"] = cfg.perturbation.seed;
  j["out"] = cfg.out_path;
  j["format"] = format_name(cfg.format);
  return j;
}

MonteCarloParams mc_params(const ExperimentConfig &cfg) {
  MonteCarloParams mc;
  mc.n_channels = cfg.n_channels;
  mc.n_symbols = cfg.n_symbols;
  mc.seed = cfg.seed;
  mc.threads = cfg.threads;
  return mc;
}

void append_ber_rows(std::string &out, const BerCurve &curve) {
  for (const BerPoint &pt : curve.points) {
    out += curve.scheme;
    out += ',';
    out += dtos(pt.etx_db);
    out += ',';
    out += dtos(pt.ber);
    out += ',';
    out += std::to_string(pt.bits);
    out += ',';
    out += std::to_string(pt.errors);
    out += ',';
    out += dtos(pt.std_error);
    out += '\n';
  }
}

Json ber_rows_json(const BerCurve &curve) {
  Json rows = Json::array();
  for (const BerPoint &pt : curve.points) {
    Json row;
    row["scheme"] = curve.scheme;
    row["etx_db"] = pt.etx_db;
    row["ber"] = pt.ber;
    row["bits"] = pt.bits;
    row["errors"] = pt.errors;
    row["stderr"] = pt.std_error;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kBer: return "ber";
    case ExperimentKind::kSensitivity: return "sensitivity";
    case ExperimentKind::kDDistribution: return "d-distribution";
    case ExperimentKind::kGpTrace: return "gp-trace";
  }
  throw std::logic_error("experiment_name: unhandled kind");
}

ExperimentKind experiment_from_name(const std::string &name) {
  if (name == "ber") return ExperimentKind::kBer;
  if (name == "sensitivity") return ExperimentKind::kSensitivity;
  if (name == "d-distribution") return ExperimentKind::kDDistribution;
  if (name == "gp-trace") return ExperimentKind::kGpTrace;
  throw ConfigError("unknown experiment '" + name +
                    "' (available: ber, sensitivity, d-distribution, gp-trace)");
}

std::string format_name(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "json";
}

OutputFormat format_from_name(const std::string &name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown format '" + name + "' (available: csv, json)");
}

std::string ExperimentConfig::resolved_out_path() const {
  if (!out_path.empty()) return out_path;
  return experiment_name(experiment) + "." + format_name(format);
}

void ExperimentConfig::validate() const {
  if (dims.n_users < 1) throw ConfigError("users must be >= 1");
  if (dims.n_antennas < dims.n_users) {
    throw ConfigError("M > N: " + std::to_string(dims.n_users) + " users but only " +
                      std::to_string(dims.n_antennas) + " antennas");
  }
  if (!(dims.symbol_power > 0.0)) throw ConfigError("symbol-power must be positive");
  if (n_channels < 1) throw ConfigError("channels must be >= 1");
  if (n_symbols < 1) throw ConfigError("symbols must be >= 1");
  if (!(gp.step > 0.0)) throw ConfigError("mu must be positive");
  if (!(gp.tolerance > 0.0)) throw ConfigError("epsilon must be positive");
  if (gp.max_iterations < 1) throw ConfigError("max-iters must be >= 1");
  if (etx_db.empty()) throw ConfigError("Etx grid is empty");
  for (std::size_t i = 1; i < etx_db.size(); ++i) {
    if (!(etx_db[i] > etx_db[i - 1])) {
      throw ConfigError("Etx grid must be strictly increasing");
    }
  }
  if ((experiment == ExperimentKind::kDDistribution ||
       experiment == ExperimentKind::kGpTrace) &&
      etx_db.size() != 1) {
    throw ConfigError(experiment_name(experiment) + " needs exactly one Etx point");
  }
  if (experiment == ExperimentKind::kBer && schemes.empty()) {
    throw ConfigError("scheme list is empty");
  }
  if (!(perturbation.level >= 0.0)) throw ConfigError("perturb-level must be >= 0");
}

ExperimentConfig parse_config(const std::vector<std::string> &args) {
  ExperimentConfig cfg;
  const std::string pre_scan = scan_config_path(args);
  if (!pre_scan.empty()) apply_json_overlay(cfg, read_file(pre_scan));

  Staging st = staging_from(cfg);
  std::string config_path;
  auto app = make_app(cfg, st, config_path);

  std::vector<const char *> argv;
  argv.push_back("obmimo");
  for (const auto &arg : args) argv.push_back(arg.c_str());
  app->parse(static_cast<int>(argv.size()), argv.data());

  finalize(cfg, st);
  cfg.validate();
  return cfg;
}

std::string config_to_json(const ExperimentConfig &cfg) {
  return config_json_object(cfg).dump();
}

ExperimentConfig config_from_json(const std::string &json_text) {
  ExperimentConfig cfg;
  cfg.schemes.clear();
  cfg.etx_db.clear();
  apply_json_overlay(cfg, json_text);
  Staging st = staging_from(cfg);
  finalize(cfg, st);
  cfg.validate();
  return cfg;
}

std::string run_to_string(const ExperimentConfig &cfg) {
  cfg.validate();
  const std::string config_line = config_to_json(cfg);
  const bool csv = cfg.format == OutputFormat::kCsv;

  std::string out;
  Json root;
  if (csv) {
    out += "# obmimo ";
    out += kVersion;
    out += "\n# experiment: " + experiment_name(cfg.experiment);
    out += "\n# config: " + config_line + "\n";
  } else {
    root["version"] = kVersion;
    root["experiment"] = experiment_name(cfg.experiment);
    root["config"] = config_json_object(cfg);
  }

  switch (cfg.experiment) {
    case ExperimentKind::kBer: {
      const auto curves =
          ber_experiment(cfg.schemes, cfg.etx_db, mc_params(cfg), cfg.dims, cfg.gp);
      if (csv) {
        out += "scheme,etx_db,ber,bits,errors,stderr\n";
        for (const auto &curve : curves) append_ber_rows(out, curve);
      } else {
        Json data = Json::array();
        for (const auto &curve : curves)
          for (auto &row : ber_rows_json(curve)) data.push_back(std::move(row));
        root["data"] = std::move(data);
      }
      break;
    }
    case ExperimentKind::kSensitivity: {
      const auto pair =
          sensitivity_experiment(cfg.perturbation, cfg.etx_db, mc_params(cfg), cfg.dims, cfg.gp);
      if (csv) {
        out += "scheme,etx_db,ber,bits,errors,stderr\n";
        append_ber_rows(out, pair.first);
        append_ber_rows(out, pair.second);
      } else {
        Json data = Json::array();
        for (auto &row : ber_rows_json(pair.first)) data.push_back(std::move(row));
        for (auto &row : ber_rows_json(pair.second)) data.push_back(std::move(row));
        root["data"] = std::move(data);
      }
      break;
    }
    case ExperimentKind::kDDistribution: {
      const DHistogram hist = d_distribution_experiment(cfg.n_channels, cfg.etx_db.front(),
                                                        cfg.dims, cfg.gp, cfg.seed, cfg.threads);
      if (csv) {
        out += "# mean_coefficient: " + dtos(hist.mean_coefficient) + "\n";
        out += "# max_abs_deviation_db: " + dtos(hist.max_abs_deviation_db) + "\n";
        out += "# fraction_within_6db: " + dtos(hist.fraction_within_6db) + "\n";
        out += "# total: " + std::to_string(hist.total) + "\n";
        out += "bin_left_db,bin_right_db,count\n";
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
          out += dtos(hist.bin_left_db[b]) + "," + dtos(hist.bin_right_db[b]) + "," +
                 std::to_string(hist.counts[b]) + "\n";
        }
      } else {
        Json summary;
        summary["mean_coefficient"] = hist.mean_coefficient;
        summary["max_abs_deviation_db"] = hist.max_abs_deviation_db;
        summary["fraction_within_6db"] = hist.fraction_within_6db;
        summary["total"] = hist.total;
        root["summary"] = std::move(summary);
        Json data = Json::array();
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
          Json row;
          row["bin_left_db"] = hist.bin_left_db[b];
          row["bin_right_db"] = hist.bin_right_db[b];
          row["count"] = hist.counts[b];
          data.push_back(std::move(row));
        }
        root["data"] = std::move(data);
      }
      break;
    }
    case ExperimentKind::kGpTrace: {
      SystemDimensions de = cfg.dims;
      de.tx_power = db_to_linear(cfg.etx_db.front());
      GpConfig gp = cfg.gp;
      gp.record_trajectory = true;
      const ChannelMatrix ch = draw_channel(de, cfg.seed, 0);
      const GpResult res = gradient_projection(ch.h, de, gp);
      if (csv) {
        out += "# converged: " + std::string(res.converged ? "true" : "false") + "\n";
        out += "# iterations: " + std::to_string(res.iterations) + "\n";
        out += "iteration,mse\n";
        for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
          out += std::to_string(i) + "," + dtos(res.trajectory[i]) + "\n";
        }
      } else {
        Json summary;
        summary["converged"] = res.converged;
        summary["iterations"] = res.iterations;
        summary["final_mse"] = res.final_mse;
        root["summary"] = std::move(summary);
        Json data = Json::array();
        for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
          Json row;
          row["iteration"] = i;
          row["mse"] = res.trajectory[i];
          data.push_back(std::move(row));
        }
        root["data"] = std::move(data);
      }
      break;
    }
  }

  if (!csv) {
    out = root.dump(2);
    out += '\n';
  }
  return out;
}

int run_and_emit(const ExperimentConfig &cfg) {
  const std::string content = run_to_string(cfg);
  const std::string path = cfg.resolved_out_path();
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    std::cerr << "error: cannot open output path '" << path << "'\n";
    return 1;
  }
  stream << content;
  stream.flush();
  if (!stream) {
    std::cerr << "error: short write to '" << path << "'\n";
    return 1;
  }
  std::cout << "wrote " << path << " (" << content.size() << " bytes)\n";
  return 0;
}

int run_main(int argc, char **argv) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const CLI::CallForHelp &) {
    ExperimentConfig defaults;
    Staging st = staging_from(defaults);
    std::string config_path;
    std::cout << make_app(defaults, st, config_path)->help();
    return 0;
  } catch (const CLI::CallForVersion &) {
    std::cout << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  try {
    return run_and_emit(cfg);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

std::string extract_embedded_config(const std::string &file_content) {
  const auto first = file_content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && file_content[first] == '{') {
    try {
      const Json root = Json::parse(file_content);
      if (root.contains("config")) return root.at("config").dump();
    } catch (const std::exception &) {
      // fall through to the CSV path
    }
  }
  static const std::string prefix = "# config: ";
  std::istringstream stream(file_content);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  throw ConfigError("no embedded config found in file content");
}

std::string csv_data_section(const std::string &file_content) {
  std::size_t pos = 0;
  bool header_skipped = false;
  while (pos < file_content.size()) {
    const std::size_t eol = file_content.find('\n', pos);
    const std::size_t next = eol == std::string::npos ? file_content.size() : eol + 1;
    if (file_content[pos] != '#') {
      if (header_skipped) return file_content.substr(pos);
      header_skipped = true; // this line is the column header
    }
    pos = next;
  }
  return "";
}

} // namespace obmimo::cli
