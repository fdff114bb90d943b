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

// Reversible-jump MCMC over model structures and rates.
//
// A chain state is a model plus one noise precision per experiment. Each
// step draws a move kind from the move table, proposes a candidate, accepts
// it with the Metropolis-Hastings-Green probability and then Gibbs-samples
// the precisions. Births draw the new rate from the rate prior, so the
// dimension-matching Jacobian is one and the rate prior density cancels
// against the proposal density.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lindlearn/forward.hpp"
#include "lindlearn/model.hpp"

namespace lindlearn {

enum class MoveKind : std::uint8_t {
  kRate,
  kBirthH,
  kDeathH,
  kSwapH,
  kBirthL,
  kDeathL,
  kSwapL,
  kBirthConj,
  kDeathConj,
  kSwapConj,
};

inline constexpr std::size_t kMoveKindCount = 10;
inline constexpr std::array<MoveKind, kMoveKindCount> kAllMoves = {
    MoveKind::kRate,   MoveKind::kBirthH, MoveKind::kDeathH,    MoveKind::kSwapH,     MoveKind::kBirthL,
    MoveKind::kDeathL, MoveKind::kSwapL,  MoveKind::kBirthConj, MoveKind::kDeathConj, MoveKind::kSwapConj};

// "RATE", "BIRTH[H]", ..., "SWAP[L*]".
std::string_view to_string(MoveKind kind);
std::optional<MoveKind> move_from_string(std::string_view name);

struct MoveTable {
  std::array<double, kMoveKindCount> probability{};

  // RATE 40, BIRTH/DEATH/SWAP[H] 4/4/8, [L] 8/8/16, [L*] 4/4/4 percent.
  static MoveTable defaults();
  static MoveTable rate_only();

  double operator[](MoveKind k) const { return probability[static_cast<std::size_t>(k)]; }
  double& operator[](MoveKind k) { return probability[static_cast<std::size_t>(k)]; }
  // Throws std::invalid_argument unless all >= 0 and the sum is 1 within 1e-12.
  void validate() const;
};

// The operators the sampler may place in a model. Lindblad candidates are
// the whole library; Hamiltonian candidates its Hermitian subset.
class ProcessCatalog {
 public:
  ProcessCatalog(int dim, std::vector<ProcessOperator> hamiltonian, std::vector<ProcessOperator> lindblad);
  static ProcessCatalog from_library(int dim, const std::vector<ProcessOperator>& library);

  int dim() const { return dim_; }
  const std::vector<ProcessOperator>& operators(ProcessKind kind) const {
    return kind == ProcessKind::kHamiltonian ? hamiltonian_ : lindblad_;
  }
  std::optional<std::size_t> index(ProcessKind kind, const std::string& label) const;
  // Lindblad index of the adjoint, if it is in the catalog and differs from the operator.
  std::optional<std::size_t> adjoint(std::size_t lindblad_index) const {
    return adjoint_[lindblad_index];
  }
  // Adjoint pairs (i, j), i < j, in Lindblad indices.
  const std::vector<std::pair<std::size_t, std::size_t>>& conjugate_pairs() const { return pairs_; }

 private:
  int dim_;
  std::vector<ProcessOperator> hamiltonian_;
  std::vector<ProcessOperator> lindblad_;
  std::unordered_map<std::string, std::size_t> h_index_;
  std::unordered_map<std::string, std::size_t> l_index_;
  std::vector<std::optional<std::size_t>> adjoint_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

// Everything the posterior depends on. With no experiments the likelihood
// is constant and the chain samples the prior.
struct Problem {
  ProcessCatalog catalog;
  std::vector<Experiment> experiments;
  SimulationOptions simulation;
  PriorConfig prior;
};

struct SamplerConfig {
  std::size_t steps = 100000;
  double proposal_variance = 0.3;  // GHz^2
  double burn_in = 0.2;            // fraction of steps discarded
  std::size_t thinning = 10;
  std::uint64_t seed = 1;
  std::size_t n_start = 2;
  int max_move_draws = 10;
  MoveTable moves = MoveTable::defaults();

  void validate() const;
};

struct ChainState {
  Model model;
  std::vector<double> beta;
  std::vector<double> sse;  // +inf when the model cannot be simulated
  double log_posterior = 0.0;
  std::size_t step = 0;
};

// Log prior of the structure, rates and precisions.
double log_prior(const Problem& problem, const Model& model, std::span<const double> beta);

// Simulates the model against every experiment and assembles the posterior:
// sum_k [n_k/2 log beta_k - m_k beta_k/2 sse_k] plus log_prior.
ChainState evaluate(const Problem& problem, Model model, std::vector<double> beta);

// Posterior for a new beta with the residuals of `state` reused.
double recompute_log_posterior(const Problem& problem, const ChainState& state);

// Structure-dependent counts used for applicability and proposal ratios.
struct StructureView {
  std::vector<bool> used_h;
  std::vector<bool> used_l;
  std::size_t unused_h = 0;
  std::size_t unused_l = 0;
  std::vector<std::size_t> conj_birth;    // model Lindblad positions whose adjoint is absent
  std::vector<std::size_t> conj_members;  // model Lindblad positions whose adjoint is present
  std::vector<std::size_t> present_pairs; // indices into catalog.conjugate_pairs()
  std::vector<std::size_t> absent_pairs;
};

StructureView structure_view(const ProcessCatalog& catalog, const Model& model);
bool applicable(const Model& model, const StructureView& view, MoveKind kind);

// log of the probability that `kind` is the move carried out from a state,
// given up to max_draws redraws when the drawn kind is inapplicable.
double log_selection_probability(const Model& model, const StructureView& view, const MoveTable& table,
                                 int max_draws, MoveKind kind);

struct Proposal {
  std::optional<Model> candidate;  // empty: outside the prior support (non-positive rate)
  double log_ratio = 0.0;          // log P(x*, x) - log P(x, x*)
};

// Returns nullopt when the move is inapplicable to the state.
std::optional<Proposal> propose(const Problem& problem, const SamplerConfig& config, const Model& current,
                                MoveKind kind, std::mt19937_64& rng);

// Accepts with probability min(1, exp(dlogpost + log_ratio)). A candidate
// with posterior -inf is rejected unless the current posterior is -inf too,
// in which case any candidate is accepted.
bool accept(double current_log_posterior, double candidate_log_posterior, double log_ratio,
            std::mt19937_64& rng);
ChainState accept_reject(const ChainState& current, ChainState candidate, double log_ratio,
                         std::mt19937_64& rng, bool* accepted = nullptr);

// Empty model plus n_start applications of birth moves, rates from the prior
// (redrawn while they underflow to zero).
Model init_model(const Problem& problem, const SamplerConfig& config, std::size_t n_start, std::mt19937_64& rng);

struct MoveStats {
  std::size_t proposed = 0;
  std::size_t accepted = 0;
  std::size_t out_of_support = 0;
};

struct ChainSample {
  std::size_t step = 0;
  Model model;
  std::vector<double> beta;
  double log_posterior = 0.0;
};

struct ChainRecord {
  std::size_t chain_index = 0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::size_t burn_in_steps = 0;
  std::size_t thinning = 1;
  std::array<MoveStats, kMoveKindCount> moves{};
  std::size_t redraws = 0;   // move kinds redrawn because they were inapplicable
  std::size_t aborted = 0;   // steps with no applicable move after all redraws
  std::string config_snapshot;
  std::vector<ChainSample> samples;
};

// Runs one chain from `initial`, or else from the first of up to 1000
// init_model draws with a finite posterior.
ChainRecord run_chain(const Problem& problem, const SamplerConfig& config, std::uint64_t seed,
                      std::optional<Model> initial = std::nullopt, std::size_t chain_index = 0);

// Independent chains seeded seed + index; output ordered by chain index.
std::vector<ChainRecord> run_parallel(const Problem& problem, const SamplerConfig& config, std::size_t n_chains,
                                      unsigned threads = 1);

// Joint rate posterior for a fixed structure.
struct RateSamples {
  std::vector<std::string> names;          // "H:<label>", "L:<label>", "background", "beta:LT", ...
  std::vector<std::vector<double>> rows;   // one row per retained sample
  ChainRecord record;

  std::vector<double> column(std::size_t j) const;
  double mean(std::size_t j) const;
  double stddev(std::size_t j) const;
};

// RATE-move-only chain over the rates, background and precisions.
RateSamples fit_rates(const Problem& problem, const Model& structure, SamplerConfig config);

}  // namespace lindlearn
