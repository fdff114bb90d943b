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

// Post-processing of chain records: Liouvillian embedding, PCA, k-means
// with an elbow rule, popularity ranking, fit errors and chain mixing.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lindlearn/forward.hpp"
#include "lindlearn/model.hpp"
#include "lindlearn/sampler.hpp"

namespace lindlearn {

struct SampleRef {
  std::size_t chain = 0;
  std::size_t sample = 0;
};

struct Embedding {
  Eigen::MatrixXd rows;                 // one row per embedded sample, 2 d^4 columns
  std::vector<SampleRef> source;
  std::vector<std::string> signatures;  // canonical_signature of each row's model
};

// [Re vec(L), Im vec(L)] of the model's Liouvillian.
Eigen::RowVectorXd embed_model(const Model& model);

// Uniform subsample (without replacement) of all recorded samples; rows
// keep record order. Throws std::invalid_argument unless 0 < fraction <= 1.
Embedding embed_liouvillians(std::span<const ChainRecord> records, double fraction, std::uint64_t seed);

struct PcaResult {
  Eigen::MatrixXd projected;
  Eigen::VectorXd component_variance;  // all components, descending
  std::size_t components = 0;
  bool zero_variance = false;          // projected is a single zero column
};

// Mean-centres and keeps the fewest leading components whose explained
// variance reaches `variance_target`. Requires at least two rows.
PcaResult pca_project(const Eigen::MatrixXd& matrix, double variance_target = 0.95);

struct KMeansResult {
  std::vector<std::size_t> assignment;
  Eigen::MatrixXd centroids;
  double sse = 0.0;
};

// Lloyd iterations from k-means++ seeds, best of `restarts`. The result
// does not depend on the row order.
KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::size_t restarts, std::uint64_t seed);

// sse[i] is the within-cluster sum of squares for k = i + 1. Picks the k
// with the largest second difference sse[k-2] - 2 sse[k-1] + sse[k]; returns
// 1 when that difference is below 0.6 (sse[0] - sse.back()), when sse[0] is
// zero, or when there are fewer than three entries.
std::size_t elbow_k(std::span<const double> sse);

struct ElbowResult {
  std::size_t k = 1;
  std::vector<std::size_t> assignment;
  std::vector<double> sse;
};

ElbowResult kmeans_elbow(const Eigen::MatrixXd& points, std::size_t k_max = 10, std::uint64_t seed = 0,
                         std::size_t restarts = 10);

struct SignatureCount {
  std::string signature;
  std::size_t count = 0;
};

struct ModelClass {
  std::size_t id = 0;       // rank, 0 = most popular
  std::size_t cluster = 0;  // label in the input assignment
  std::size_t members = 0;
  double popularity = 0.0;
  std::vector<SignatureCount> signatures;  // by frequency, then name
  std::vector<double> mse;                 // per experiment; filled by the caller
};

// Classes ordered by popularity, ties broken by their top signature.
std::vector<ModelClass> rank_classes(std::span<const std::size_t> assignment,
                                     std::span<const std::string> signatures);

struct MseResult {
  std::vector<double> mse;                     // per experiment
  std::vector<std::vector<double>> mean;       // per experiment, per point
  std::vector<std::vector<double>> sd;
  std::size_t draws_used = 0;
  std::size_t draws_failed = 0;                // unphysical draws skipped
};

// Mean over up to n_samples evenly spaced draws of the per-point squared
// residual between simulated and measured values.
MseResult compute_mse(std::span<const Model> draws, std::span<const Experiment> experiments,
                      std::size_t n_samples, const SimulationOptions& options);

std::set<std::string> signature_set(const ChainRecord& record);

// |A u B| / (|A| + |B|); nullopt when both sets are empty.
std::optional<double> mixing_mu(const std::set<std::string>& a, const std::set<std::string>& b);

// NaN where mu is undefined.
Eigen::MatrixXd mixing_matrix(std::span<const ChainRecord> records);

}  // namespace lindlearn
