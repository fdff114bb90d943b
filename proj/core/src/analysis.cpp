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

#include "lindlearn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lindlearn/errors.hpp"

namespace lindlearn {

Eigen::RowVectorXd embed_model(const Model& model) {
  const ComplexMatrix& lv = build_liouvillian(model).matrix;
  const Eigen::Index n = lv.size();
  Eigen::RowVectorXd row(2 * n);
  // Column-major storage is vec().
  for (Eigen::Index i = 0; i < n; ++i) {
    row(i) = lv.data()[i].real();
    row(n + i) = lv.data()[i].imag();
  }
  return row;
}

Embedding embed_liouvillians(std::span<const ChainRecord> records, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("subsample fraction must lie in (0, 1]");
  std::vector<SampleRef> all;
  for (std::size_t c = 0; c < records.size(); ++c) {
    for (std::size_t s = 0; s < records[c].samples.size(); ++s) all.push_back({c, s});
  }
  Embedding out;
  if (all.empty()) return out;
  std::size_t n = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(all.size())));
  n = std::clamp<std::size_t>(n, 1, all.size());
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(out.source), n, rng);

  const Model& first = records[out.source[0].chain].samples[out.source[0].sample].model;
  const Eigen::Index cols = 2 * static_cast<Eigen::Index>(std::pow(first.dim(), 4));
  out.rows.resize(static_cast<Eigen::Index>(n), cols);
  for (std::size_t i = 0; i < n; ++i) {
    const Model& m = records[out.source[i].chain].samples[out.source[i].sample].model;
    if (m.dim() != first.dim()) throw std::invalid_argument("records mix system dimensions");
    out.rows.row(static_cast<Eigen::Index>(i)) = embed_model(m);
    out.signatures.push_back(canonical_signature(m));
  }
  return out;
}

PcaResult pca_project(const Eigen::MatrixXd& matrix, double variance_target) {
  if (matrix.rows() < 2) throw std::invalid_argument("PCA needs at least two rows");
  if (!(variance_target > 0.0 && variance_target <= 1.0)) {
    throw std::invalid_argument("variance target must lie in (0, 1]");
  }
  const Eigen::MatrixXd centred = matrix.rowwise() - matrix.colwise().mean();
  PcaResult out;
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if (centred.cwiseAbs().maxCoeff() <= 1e-13 * scale) {
    out.projected = Eigen::MatrixXd::Zero(matrix.rows(), 1);
    out.component_variance = Eigen::VectorXd::Zero(1);
    out.components = 1;
    out.zero_variance = true;
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  out.component_variance = s.array().square() / static_cast<double>(matrix.rows() - 1);
  const double total = out.component_variance.sum();
  double acc = 0.0;
  std::size_t keep = 0;
  while (keep < static_cast<std::size_t>(s.size())) {
    acc += out.component_variance(static_cast<Eigen::Index>(keep));
    ++keep;
    if (acc >= variance_target * total * (1.0 - 1e-12)) break;
  }
  out.components = keep;
  out.projected = centred * svd.matrixV().leftCols(static_cast<Eigen::Index>(keep));
  return out;
}

namespace {

struct LloydResult {
  std::vector<std::size_t> assignment;
  Eigen::MatrixXd centroids;
  double sse;
};

LloydResult lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centroids) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = centroids.rows();
  std::vector<std::size_t> assign(static_cast<std::size_t>(n), 0);
  double sse = 0.0;
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = iter == 0;
    sse = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < k; ++c) {
        const double d = (x.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[static_cast<std::size_t>(i)] != static_cast<std::size_t>(best)) changed = true;
      assign[static_cast<std::size_t>(i)] = static_cast<std::size_t>(best);
      sse += best_d;
    }
    if (!changed) break;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(static_cast<Eigen::Index>(assign[static_cast<std::size_t>(i)])) += x.row(i);
      ++counts[assign[static_cast<std::size_t>(i)]];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      // An emptied cluster keeps its previous centroid.
      if (counts[static_cast<std::size_t>(c)]) {
        centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
  }
  return {std::move(assign), std::move(centroids), sse};
}

Eigen::MatrixXd plus_plus_seeds(const Eigen::MatrixXd& x, std::size_t k, std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd c(static_cast<Eigen::Index>(k), x.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  c.row(0) = x.row(first(rng));
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2(i) = (x.row(i) - c.row(0)).squaredNorm();
  for (std::size_t j = 1; j < k; ++j) {
    Eigen::Index pick;
    const double total = d2.sum();
    if (total <= 0.0) {
      pick = first(rng);
    } else {
      std::discrete_distribution<Eigen::Index> dist(d2.data(), d2.data() + n);
      pick = dist(rng);
    }
    c.row(static_cast<Eigen::Index>(j)) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2(i) = std::min(d2(i), (x.row(i) - c.row(static_cast<Eigen::Index>(j))).squaredNorm());
    }
  }
  return c;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::size_t restarts, std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(points.rows());
  if (k == 0 || k > n) throw std::invalid_argument("k-means needs 1 <= k <= rows");
  if (restarts == 0) throw std::invalid_argument("k-means needs at least one restart");

  // Work on lexicographically sorted rows so the outcome is independent of input order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      const double u = points(static_cast<Eigen::Index>(a), j);
      const double v = points(static_cast<Eigen::Index>(b), j);
      if (u != v) return u < v;
    }
    return false;
  });
  Eigen::MatrixXd sorted(points.rows(), points.cols());
  for (std::size_t i = 0; i < n; ++i) sorted.row(static_cast<Eigen::Index>(i)) = points.row(static_cast<Eigen::Index>(order[i]));

  std::mt19937_64 rng(seed);
  LloydResult best{{}, {}, std::numeric_limits<double>::infinity()};
  for (std::size_t r = 0; r < restarts; ++r) {
    LloydResult run = lloyd(sorted, plus_plus_seeds(sorted, k, rng));
    if (run.sse < best.sse) best = std::move(run);
  }
  KMeansResult out;
  out.assignment.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) out.assignment[order[i]] = best.assignment[i];
  out.centroids = std::move(best.centroids);
  out.sse = best.sse;
  return out;
}

std::size_t elbow_k(std::span<const double> sse) {
  if (sse.size() < 3 || !(sse[0] > 0.0)) return 1;
  std::size_t best_k = 2;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 2; k + 1 <= sse.size(); ++k) {
    const double d2 = sse[k - 2] - 2.0 * sse[k - 1] + sse[k];
    if (d2 > best) {
      best = d2;
      best_k = k;
    }
  }
  if (best < 0.6 * (sse[0] - sse.back())) return 1;
  return best_k;
}

ElbowResult kmeans_elbow(const Eigen::MatrixXd& points, std::size_t k_max, std::uint64_t seed, std::size_t restarts) {
  const std::size_t n = static_cast<std::size_t>(points.rows());
  if (k_max == 0) throw std::invalid_argument("k_max must be >= 1");
  if (n < k_max) throw std::invalid_argument("k-means elbow needs at least k_max rows");
  ElbowResult out;
  std::vector<std::vector<std::size_t>> assignments;
  for (std::size_t k = 1; k <= k_max; ++k) {
    KMeansResult r = kmeans(points, k, restarts, seed + k);
    out.sse.push_back(r.sse);
    assignments.push_back(std::move(r.assignment));
  }
  out.k = elbow_k(out.sse);
  out.assignment = std::move(assignments[out.k - 1]);
  return out;
}

std::vector<ModelClass> rank_classes(std::span<const std::size_t> assignment,
                                     std::span<const std::string> signatures) {
  if (assignment.size() != signatures.size()) {
    throw std::invalid_argument("assignment and signature counts differ");
  }
  std::map<std::size_t, std::map<std::string, std::size_t>> groups;
  for (std::size_t i = 0; i < assignment.size(); ++i) ++groups[assignment[i]][signatures[i]];

  std::vector<ModelClass> out;
  for (const auto& [id, counts] : groups) {
    ModelClass c;
    c.cluster = id;
    for (const auto& [sig, n] : counts) {
      c.signatures.push_back({sig, n});
      c.members += n;
    }
    std::sort(c.signatures.begin(), c.signatures.end(), [](const SignatureCount& a, const SignatureCount& b) {
      return a.count != b.count ? a.count > b.count : a.signature < b.signature;
    });
    c.popularity = static_cast<double>(c.members) / static_cast<double>(assignment.size());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const ModelClass& a, const ModelClass& b) {
    if (a.members != b.members) return a.members > b.members;
    return a.signatures.front().signature < b.signatures.front().signature;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
  return out;
}

MseResult compute_mse(std::span<const Model> draws, std::span<const Experiment> experiments,
                      std::size_t n_samples, const SimulationOptions& options) {
  MseResult out;
  const std::size_t n_exp = experiments.size();
  out.mse.assign(n_exp, std::numeric_limits<double>::quiet_NaN());
  // Running mean and sum of squared deviations (Welford).
  std::vector<Eigen::ArrayXd> mean(n_exp), m2(n_exp);
  std::vector<double> sq(n_exp, 0.0);
  for (std::size_t k = 0; k < n_exp; ++k) {
    mean[k] = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(experiments[k].data.tau.size()));
    m2[k] = mean[k];
  }
  const std::size_t take = std::min(n_samples, draws.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t idx = take == draws.size() ? i : (i * draws.size()) / take;
    std::vector<ExperimentTrace> sims;
    try {
      for (const auto& e : experiments) sims.push_back(simulate(e.data.kind, draws[idx], e.data.tau, options));
    } catch (const UnphysicalModel&) {
      ++out.draws_failed;
      continue;
    }
    ++out.draws_used;
    const double n = static_cast<double>(out.draws_used);
    for (std::size_t k = 0; k < n_exp; ++k) {
      const auto& y = experiments[k].data.values;
      const auto& s = sims[k].values;
      double acc = 0.0;
      for (std::size_t t = 0; t < y.size(); ++t) {
        const double r = s[t] - y[t];
        acc += r * r;
        const auto j = static_cast<Eigen::Index>(t);
        const double d = s[t] - mean[k](j);
        mean[k](j) += d / n;
        m2[k](j) += d * (s[t] - mean[k](j));
      }
      sq[k] += acc / static_cast<double>(y.size());
    }
  }
  out.mean.resize(n_exp);
  out.sd.resize(n_exp);
  if (out.draws_used == 0) return out;
  const double m = static_cast<double>(out.draws_used);
  for (std::size_t k = 0; k < n_exp; ++k) {
    out.mse[k] = sq[k] / m;
    out.mean[k].assign(mean[k].data(), mean[k].data() + mean[k].size());
    const Eigen::ArrayXd sd = (m2[k] / m).max(0.0).sqrt();
    out.sd[k].assign(sd.data(), sd.data() + sd.size());
  }
  return out;
}

std::set<std::string> signature_set(const ChainRecord& record) {
  std::set<std::string> out;
  for (const auto& s : record.samples) out.insert(canonical_signature(s.model));
  return out;
}

std::optional<double> mixing_mu(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return std::nullopt;
  std::size_t shared = 0;
  for (const auto& s : a) shared += b.count(s);
  const std::size_t uni = a.size() + b.size() - shared;
  return static_cast<double>(uni) / static_cast<double>(a.size() + b.size());
}

Eigen::MatrixXd mixing_matrix(std::span<const ChainRecord> records) {
  const Eigen::Index n = static_cast<Eigen::Index>(records.size());
  std::vector<std::set<std::string>> sets;
  for (const auto& r : records) sets.push_back(signature_set(r));
  Eigen::MatrixXd mu(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto v = mixing_mu(sets[static_cast<std::size_t>(i)], sets[static_cast<std::size_t>(j)]);
      mu(i, j) = mu(j, i) = v ? *v : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return mu;
}

}  // namespace lindlearn
