// Copyright 2026 The lindlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configuration, data ingestion and the text formats written by the
// command-line tool.
//
// Config files are `key = value` lines grouped under `[section]` headers;
// `#` starts a comment. Unknown sections or keys are errors.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lindlearn/analysis.hpp"
#include "lindlearn/forward.hpp"
#include "lindlearn/model.hpp"
#include "lindlearn/operators.hpp"
#include "lindlearn/sampler.hpp"

namespace lindlearn {

struct GridConfig {
  double lt_start = 0.0;
  double lt_stop = 10.0;
  double lt_dt = 0.05;
  double g2_tmax = 10.0;
  double g2_dt = 0.05;
  // Rebin measured data onto the grids above instead of using them as read.
  bool rebin = false;
};

struct RunConfig {
  // [system]
  int dim = 2;
  int complexity = 2;
  // [prior]
  double eta_h = 2.0;
  double eta_l = 5.0;
  double eta_c = 1.0;
  double rate_mean = 0.6;
  double rate_variance = 144.0;
  // Optional explicit beta priors; default_beta_prior otherwise.
  std::optional<double> beta_lt_shape, beta_lt_rate, beta_g2_shape, beta_g2_rate;
  // [sampler]
  SamplerConfig sampler;
  std::size_t chains = 60;
  // [data]
  std::string lt_path;
  std::string g2_path;
  double lt_multiplier = 1.0;
  double g2_multiplier = 1.0;
  // [instrument]
  double irf_fwhm = 0.240;
  double g2_weight_width = 1.0;
  double poisson_scale = 1e4;
  double g2_beta_boost = 1.25;
  bool strip_hamiltonian_drive = true;
  // [grid]
  GridConfig grid;
  // [analysis]
  double subsample = 0.1;
  std::size_t k_max = 10;
  double variance_target = 0.95;
  std::size_t kmeans_restarts = 10;
  std::size_t mse_samples = 100;
  // [simulate]
  double noise_scale = 1e4;

  PriorConfig prior() const;
  SimulationOptions simulation() const;
  // Throws ConfigError naming the offending key.
  void validate() const;
};

RunConfig read_config(std::istream& is, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
// Every key, so that read_config(write_config(c)) == c.
void write_config(std::ostream& os, const RunConfig& config);
std::string config_to_string(const RunConfig& config);
bool operator==(const RunConfig& a, const RunConfig& b);

struct RawTrace {
  std::vector<double> tau;
  std::vector<double> counts;
};

// Two columns (tau_ns, counts) separated by commas or whitespace; an
// optional non-numeric header line; blank lines and `#` comments skipped.
// Throws DataError with source and line number.
RawTrace read_raw_trace(std::istream& is, const std::string& source);
RawTrace load_raw_trace(const std::string& path);
void write_trace(std::ostream& os, std::span<const double> tau, std::span<const double> values,
                 const std::string& value_header = "counts");

// Sums counts into bins of width dt centred on the target grid points;
// raw points outside every bin are dropped.
std::vector<double> rebin_counts(const RawTrace& raw, std::span<const double> grid);

// Normalized, weighted trace ready for the likelihood.
ExperimentTrace prepare_trace(TraceKind kind, const RawTrace& raw, const RunConfig& config);
Experiment make_experiment(ExperimentTrace trace, const RunConfig& config);
// Reads the data files named in the config.
std::vector<Experiment> load_experiments(const RunConfig& config);

// One record per operator: label, hermitian flag, optical class and the
// nonzero matrix entries as row,col pairs.
void write_library(std::ostream& os, const LibraryBuild& build, int dim, int complexity);

void write_chain_record(std::ostream& os, const ChainRecord& record);
ChainRecord read_chain_record(std::istream& is, int dim, const std::string& source = "<record>");
ChainRecord load_chain_record(const std::string& path, int dim);

}  // namespace lindlearn
