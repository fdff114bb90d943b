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

#include "lindlearn/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lindlearn/errors.hpp"

namespace lindlearn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kInitAttempts = 1000;

constexpr std::array<std::string_view, kMoveKindCount> kMoveNames = {
    "RATE",     "BIRTH[H]", "DEATH[H]", "SWAP[H]",   "BIRTH[L]",
    "DEATH[L]", "SWAP[L]",  "BIRTH[L*]", "DEATH[L*]", "SWAP[L*]"};

std::size_t uniform_index(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(rng);
}

double log_count(std::size_t n) { return std::log(static_cast<double>(n)); }

ProcessKind kind_of(MoveKind k) {
  switch (k) {
    case MoveKind::kBirthH:
    case MoveKind::kDeathH:
    case MoveKind::kSwapH:
      return ProcessKind::kHamiltonian;
    default:
      return ProcessKind::kLindblad;
  }
}

// Birth/death partner for the reverse move.
MoveKind reverse_of(MoveKind k) {
  switch (k) {
    case MoveKind::kBirthH: return MoveKind::kDeathH;
    case MoveKind::kDeathH: return MoveKind::kBirthH;
    case MoveKind::kBirthL: return MoveKind::kDeathL;
    case MoveKind::kDeathL: return MoveKind::kBirthL;
    case MoveKind::kBirthConj: return MoveKind::kDeathConj;
    case MoveKind::kDeathConj: return MoveKind::kBirthConj;
    default: return k;
  }
}

std::vector<std::size_t> unused_indices(const std::vector<bool>& used) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) out.push_back(i);
  }
  return out;
}

std::size_t model_position(const Model& model, ProcessKind kind, const std::string& label) {
  const auto& list = model.processes(kind);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].op.label() == label) return i;
  }
  throw std::logic_error("process " + label + " not in model");
}

// Adds the extra factors common to every structural move:
// log q_{x*}(reverse) - log q_x(kind).
double selection_ratio(const Problem& problem, const SamplerConfig& config, const Model& current,
                       const StructureView& view, const Model& candidate, MoveKind kind) {
  const StructureView cview = structure_view(problem.catalog, candidate);
  return log_selection_probability(candidate, cview, config.moves, config.max_move_draws, reverse_of(kind)) -
         log_selection_probability(current, view, config.moves, config.max_move_draws, kind);
}

}  // namespace

std::string_view to_string(MoveKind kind) { return kMoveNames[static_cast<std::size_t>(kind)]; }

std::optional<MoveKind> move_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kMoveKindCount; ++i) {
    if (kMoveNames[i] == name) return kAllMoves[i];
  }
  return std::nullopt;
}

MoveTable MoveTable::defaults() {
  MoveTable t;
  t.probability = {0.40, 0.04, 0.04, 0.08, 0.08, 0.08, 0.16, 0.04, 0.04, 0.04};
  return t;
}

MoveTable MoveTable::rate_only() {
  MoveTable t;
  t[MoveKind::kRate] = 1.0;
  return t;
}

void MoveTable::validate() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < kMoveKindCount; ++i) {
    const double p = probability[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("move probability for " + std::string(kMoveNames[i]) + " must be >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("move probabilities must sum to 1");
}

ProcessCatalog::ProcessCatalog(int dim, std::vector<ProcessOperator> hamiltonian,
                               std::vector<ProcessOperator> lindblad)
    : dim_(dim), hamiltonian_(std::move(hamiltonian)), lindblad_(std::move(lindblad)) {
  for (std::size_t i = 0; i < hamiltonian_.size(); ++i) {
    const auto& op = hamiltonian_[i];
    if (op.dim() != dim_) throw std::invalid_argument("catalog operator dimension mismatch");
    if (!op.hermitian()) throw std::invalid_argument("Hamiltonian candidate " + op.label() + " is not Hermitian");
    if (!h_index_.emplace(op.label(), i).second) throw std::invalid_argument("duplicate operator " + op.label());
  }
  for (std::size_t i = 0; i < lindblad_.size(); ++i) {
    const auto& op = lindblad_[i];
    if (op.dim() != dim_) throw std::invalid_argument("catalog operator dimension mismatch");
    if (!l_index_.emplace(op.label(), i).second) throw std::invalid_argument("duplicate operator " + op.label());
  }
  adjoint_.assign(lindblad_.size(), std::nullopt);
  for (std::size_t i = 0; i < lindblad_.size(); ++i) {
    const std::string adj = lindblad_[i].adjoint().label();
    if (adj == lindblad_[i].label()) continue;
    auto it = l_index_.find(adj);
    if (it == l_index_.end()) continue;
    adjoint_[i] = it->second;
    if (i < it->second) pairs_.emplace_back(i, it->second);
  }
}

ProcessCatalog ProcessCatalog::from_library(int dim, const std::vector<ProcessOperator>& library) {
  return ProcessCatalog(dim, hamiltonian_sublibrary(library), library);
}

std::optional<std::size_t> ProcessCatalog::index(ProcessKind kind, const std::string& label) const {
  const auto& map = kind == ProcessKind::kHamiltonian ? h_index_ : l_index_;
  auto it = map.find(label);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

void SamplerConfig::validate() const {
  if (!(proposal_variance > 0.0) || !std::isfinite(proposal_variance)) {
    throw std::invalid_argument("proposal variance must be positive");
  }
  if (!(burn_in >= 0.0 && burn_in < 1.0)) throw std::invalid_argument("burn-in fraction must lie in [0, 1)");
  if (thinning == 0) throw std::invalid_argument("thinning must be >= 1");
  if (max_move_draws < 1) throw std::invalid_argument("max move draws must be >= 1");
  moves.validate();
}

double log_prior(const Problem& problem, const Model& model, std::span<const double> beta) {
  if (beta.size() != problem.experiments.size()) throw std::invalid_argument("one beta per experiment required");
  double lp = model_prior_log(structure_counts(model), problem.catalog.operators(ProcessKind::kHamiltonian).size(),
                              problem.catalog.operators(ProcessKind::kLindblad).size(), problem.prior);
  lp += rate_prior_log(model, problem.prior.rate_prior);
  for (std::size_t k = 0; k < beta.size(); ++k) lp += problem.experiments[k].beta_prior.log_density(beta[k]);
  return lp;
}

ChainState evaluate(const Problem& problem, Model model, std::vector<double> beta) {
  ChainState s{std::move(model), std::move(beta), {}, 0.0, 0};
  s.sse.assign(problem.experiments.size(), std::numeric_limits<double>::infinity());
  const double prior = log_prior(problem, s.model, s.beta);
  if (!std::isfinite(prior)) {
    s.log_posterior = kNegInf;
    return s;
  }
  if (!problem.experiments.empty()) {
    try {
      s.sse = weighted_sse(s.model, problem.experiments, problem.simulation);
    } catch (const UnphysicalModel&) {
      s.log_posterior = kNegInf;
      return s;
    }
  }
  s.log_posterior = recompute_log_posterior(problem, s);
  return s;
}

double recompute_log_posterior(const Problem& problem, const ChainState& state) {
  for (double e : state.sse) {
    if (!std::isfinite(e)) return kNegInf;
  }
  double ll = log_likelihood_from_sse(state.sse, state.beta, problem.experiments);
  // Gaussian normalization in beta; constant in the model, it makes the
  // Gibbs draw the exact conditional of the stored target.
  for (std::size_t k = 0; k < state.beta.size(); ++k) {
    ll += 0.5 * static_cast<double>(problem.experiments[k].data.tau.size()) * std::log(state.beta[k]);
  }
  const double lp = log_prior(problem, state.model, state.beta);
  if (!std::isfinite(lp) || std::isnan(ll)) return kNegInf;
  return ll + lp;
}

StructureView structure_view(const ProcessCatalog& catalog, const Model& model) {
  StructureView v;
  v.used_h.assign(catalog.operators(ProcessKind::kHamiltonian).size(), false);
  v.used_l.assign(catalog.operators(ProcessKind::kLindblad).size(), false);
  for (const auto& p : model.hamiltonian()) {
    auto i = catalog.index(ProcessKind::kHamiltonian, p.op.label());
    if (!i) throw std::invalid_argument("Hamiltonian process " + p.op.label() + " is not in the catalog");
    v.used_h[*i] = true;
  }
  std::vector<std::size_t> l_index;
  for (const auto& p : model.lindblad()) {
    auto i = catalog.index(ProcessKind::kLindblad, p.op.label());
    if (!i) throw std::invalid_argument("Lindblad process " + p.op.label() + " is not in the catalog");
    v.used_l[*i] = true;
    l_index.push_back(*i);
  }
  v.unused_h = static_cast<std::size_t>(std::count(v.used_h.begin(), v.used_h.end(), false));
  v.unused_l = static_cast<std::size_t>(std::count(v.used_l.begin(), v.used_l.end(), false));
  for (std::size_t pos = 0; pos < l_index.size(); ++pos) {
    auto adj = catalog.adjoint(l_index[pos]);
    if (!adj) continue;
    (v.used_l[*adj] ? v.conj_members : v.conj_birth).push_back(pos);
  }
  const auto& pairs = catalog.conjugate_pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const bool a = v.used_l[pairs[k].first];
    const bool b = v.used_l[pairs[k].second];
    if (a && b) v.present_pairs.push_back(k);
    if (!a && !b) v.absent_pairs.push_back(k);
  }
  return v;
}

bool applicable(const Model& model, const StructureView& view, MoveKind kind) {
  const std::size_t n_h = model.hamiltonian().size();
  const std::size_t n_l = model.lindblad().size();
  switch (kind) {
    case MoveKind::kRate: return true;
    case MoveKind::kBirthH: return view.unused_h > 0;
    case MoveKind::kDeathH: return n_h > 0;
    case MoveKind::kSwapH: return n_h > 0 && view.unused_h > 0;
    case MoveKind::kBirthL: return view.unused_l > 0;
    case MoveKind::kDeathL: return n_l > 0;
    case MoveKind::kSwapL: return n_l > 0 && view.unused_l > 0;
    case MoveKind::kBirthConj: return !view.conj_birth.empty();
    case MoveKind::kDeathConj: return !view.conj_members.empty();
    case MoveKind::kSwapConj: return !view.present_pairs.empty() && !view.absent_pairs.empty();
  }
  return false;
}

double log_selection_probability(const Model& model, const StructureView& view, const MoveTable& table,
                                 int max_draws, MoveKind kind) {
  if (!applicable(model, view, kind) || table[kind] <= 0.0) return kNegInf;
  double mass = 0.0;
  for (MoveKind k : kAllMoves) {
    if (applicable(model, view, k)) mass += table[k];
  }
  // P(kind) = p_kind * sum_{j < T} (1 - A)^j = p_kind (1 - (1 - A)^T) / A.
  const double miss = 1.0 - mass;
  double geometric = 0.0;
  double term = 1.0;
  for (int j = 0; j < max_draws; ++j) {
    geometric += term;
    term *= miss;
  }
  return std::log(table[kind]) + std::log(geometric);
}

std::optional<Proposal> propose(const Problem& problem, const SamplerConfig& config, const Model& current,
                                MoveKind kind, std::mt19937_64& rng) {
  const ProcessCatalog& catalog = problem.catalog;
  const GammaPrior& g = problem.prior.rate_prior;
  const StructureView view = structure_view(catalog, current);
  if (!applicable(current, view, kind)) return std::nullopt;

  Proposal out;
  Model next = current;

  switch (kind) {
    case MoveKind::kRate: {
      const std::size_t n_h = current.hamiltonian().size();
      const std::size_t n_l = current.lindblad().size();
      const std::size_t r = uniform_index(n_h + n_l + 1, rng);
      std::normal_distribution<double> step(0.0, std::sqrt(config.proposal_variance));
      const double delta = step(rng);
      double old_value;
      if (r < n_h) {
        old_value = current.hamiltonian()[r].rate;
      } else if (r < n_h + n_l) {
        old_value = current.lindblad()[r - n_h].rate;
      } else {
        old_value = current.background();
      }
      const double value = old_value + delta;
      if (!(value > 0.0)) return out;  // zero prior density
      if (r < n_h) {
        next.set_rate(ProcessKind::kHamiltonian, r, value);
      } else if (r < n_h + n_l) {
        next.set_rate(ProcessKind::kLindblad, r - n_h, value);
      } else {
        next.set_background(value);
      }
      out.log_ratio = 0.0;
      break;
    }
    case MoveKind::kBirthH:
    case MoveKind::kBirthL: {
      const ProcessKind pk = kind_of(kind);
      const auto free = unused_indices(pk == ProcessKind::kHamiltonian ? view.used_h : view.used_l);
      const std::size_t pick = free[uniform_index(free.size(), rng)];
      // Small-shape draws can underflow to 0; the prior term is evaluated at
      // the same floor in both directions, so they are kept.
      const double rate = g.sample(rng);
      next.add(pk, catalog.operators(pk)[pick], rate);
      const std::size_t n_after = next.processes(pk).size();
      out.log_ratio = selection_ratio(problem, config, current, view, next, kind) - log_count(n_after) +
                      log_count(free.size()) - g.log_density(rate);
      break;
    }
    case MoveKind::kDeathH:
    case MoveKind::kDeathL: {
      const ProcessKind pk = kind_of(kind);
      const std::size_t n = current.processes(pk).size();
      const std::size_t pos = uniform_index(n, rng);
      const double rate = current.processes(pk)[pos].rate;
      next.remove(pk, pos);
      const std::size_t free_after = (pk == ProcessKind::kHamiltonian ? view.unused_h : view.unused_l) + 1;
      out.log_ratio = selection_ratio(problem, config, current, view, next, kind) - log_count(free_after) +
                      log_count(n) + g.log_density(rate);
      break;
    }
    case MoveKind::kSwapH:
    case MoveKind::kSwapL: {
      const ProcessKind pk = kind_of(kind);
      const auto free = unused_indices(pk == ProcessKind::kHamiltonian ? view.used_h : view.used_l);
      const std::size_t pos = uniform_index(current.processes(pk).size(), rng);
      const std::size_t pick = free[uniform_index(free.size(), rng)];
      next.replace_operator(pk, pos, catalog.operators(pk)[pick]);
      // Forward and reverse choose among the same numbers of positions and free operators.
      out.log_ratio = selection_ratio(problem, config, current, view, next, kind);
      break;
    }
    case MoveKind::kBirthConj: {
      const std::size_t pos = view.conj_birth[uniform_index(view.conj_birth.size(), rng)];
      const std::size_t li = *catalog.index(ProcessKind::kLindblad, current.lindblad()[pos].op.label());
      const std::size_t adj = *catalog.adjoint(li);
      const double rate = g.sample(rng);
      next.add(ProcessKind::kLindblad, catalog.operators(ProcessKind::kLindblad)[adj], rate);
      const StructureView nview = structure_view(catalog, next);
      out.log_ratio = selection_ratio(problem, config, current, view, next, kind) -
                      log_count(nview.conj_members.size()) + log_count(view.conj_birth.size()) -
                      g.log_density(rate);
      break;
    }
    case MoveKind::kDeathConj: {
      const std::size_t pos = view.conj_members[uniform_index(view.conj_members.size(), rng)];
      const double rate = current.lindblad()[pos].rate;
      next.remove(ProcessKind::kLindblad, pos);
      const StructureView nview = structure_view(catalog, next);
      out.log_ratio = selection_ratio(problem, config, current, view, next, kind) -
                      log_count(nview.conj_birth.size()) + log_count(view.conj_members.size()) +
                      g.log_density(rate);
      break;
    }
    case MoveKind::kSwapConj: {
      const auto& pairs = catalog.conjugate_pairs();
      const auto& lib = catalog.operators(ProcessKind::kLindblad);
      const auto& old_pair = pairs[view.present_pairs[uniform_index(view.present_pairs.size(), rng)]];
      const auto& new_pair = pairs[view.absent_pairs[uniform_index(view.absent_pairs.size(), rng)]];
      const std::size_t p1 = model_position(current, ProcessKind::kLindblad, lib[old_pair.first].label());
      const std::size_t p2 = model_position(current, ProcessKind::kLindblad, lib[old_pair.second].label());
      next.replace_operator(ProcessKind::kLindblad, p1, lib[new_pair.first]);
      next.replace_operator(ProcessKind::kLindblad, p2, lib[new_pair.second]);
      const StructureView nview = structure_view(catalog, next);
      out.log_ratio = selection_ratio(problem, config, current, view, next, kind) -
                      log_count(nview.present_pairs.size()) - log_count(nview.absent_pairs.size()) +
                      log_count(view.present_pairs.size()) + log_count(view.absent_pairs.size());
      break;
    }
  }
  out.candidate = std::move(next);
  return out;
}

bool accept(double current_log_posterior, double candidate_log_posterior, double log_ratio,
            std::mt19937_64& rng) {
  if (std::isnan(candidate_log_posterior) || std::isnan(log_ratio)) return false;
  // Outside the posterior support every in-support move is taken, so a
  // chain started on an unphysical model can walk back to physical ones.
  if (current_log_posterior == kNegInf) return true;
  if (candidate_log_posterior == kNegInf || log_ratio == kNegInf) return false;
  const double log_alpha = candidate_log_posterior - current_log_posterior + log_ratio;
  if (log_alpha >= 0.0) return true;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::log(u(rng)) < log_alpha;
}

ChainState accept_reject(const ChainState& current, ChainState candidate, double log_ratio,
                         std::mt19937_64& rng, bool* accepted) {
  const bool ok = accept(current.log_posterior, candidate.log_posterior, log_ratio, rng);
  if (accepted) *accepted = ok;
  if (!ok) return current;
  candidate.step = current.step;
  return candidate;
}

Model init_model(const Problem& problem, const SamplerConfig& config, std::size_t n_start, std::mt19937_64& rng) {
  static constexpr std::array<MoveKind, 3> kBirths = {MoveKind::kBirthH, MoveKind::kBirthL, MoveKind::kBirthConj};
  Model model(problem.catalog.dim());
  const GammaPrior& g = problem.prior.rate_prior;
  model.set_background(g.sample(rng));
  for (std::size_t added = 0; added < n_start; ++added) {
    const StructureView view = structure_view(problem.catalog, model);
    std::vector<MoveKind> kinds;
    std::vector<double> weights;
    for (MoveKind k : kBirths) {
      if (applicable(model, view, k) && config.moves[k] > 0.0) {
        kinds.push_back(k);
        weights.push_back(config.moves[k]);
      }
    }
    if (kinds.empty()) break;
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    const MoveKind k = kinds[pick(rng)];
    model = std::move(*propose(problem, config, model, k, rng)->candidate);
  }
  // Underflowed draws are redrawn so the start lies inside the prior support.
  auto positive = [&](double x) {
    for (int i = 0; i < 100 && !(x > 0.0); ++i) x = g.sample(rng);
    return x > 0.0 ? x : kRateFloor;
  };
  for (ProcessKind pk : {ProcessKind::kHamiltonian, ProcessKind::kLindblad}) {
    for (std::size_t i = 0; i < model.processes(pk).size(); ++i) {
      model.set_rate(pk, i, positive(model.processes(pk)[i].rate));
    }
  }
  model.set_background(positive(model.background()));
  return model;
}

namespace {

void record_sample(ChainRecord& rec, const ChainState& s) {
  rec.samples.push_back(ChainSample{s.step, s.model, s.beta, s.log_posterior});
}

void gibbs_betas(const Problem& problem, ChainState& s, std::mt19937_64& rng) {
  bool changed = false;
  for (std::size_t k = 0; k < problem.experiments.size(); ++k) {
    if (!std::isfinite(s.sse[k])) continue;
    const Experiment& e = problem.experiments[k];
    s.beta[k] = gibbs_update_beta(s.sse[k], e.data.tau.size(), e.multiplier, e.beta_prior, rng);
    changed = true;
  }
  if (changed) s.log_posterior = recompute_log_posterior(problem, s);
}

}  // namespace

ChainRecord run_chain(const Problem& problem, const SamplerConfig& config, std::uint64_t seed,
                      std::optional<Model> initial, std::size_t chain_index) {
  config.validate();
  std::mt19937_64 rng(seed);
  ChainRecord rec;
  rec.chain_index = chain_index;
  rec.seed = seed;
  rec.steps = config.steps;
  rec.burn_in_steps = static_cast<std::size_t>(std::floor(config.burn_in * static_cast<double>(config.steps)));
  rec.thinning = config.thinning;

  std::vector<double> beta;
  for (const auto& e : problem.experiments) beta.push_back(e.beta_prior.sample(rng));
  ChainState state = initial ? evaluate(problem, std::move(*initial), beta)
                             : evaluate(problem, init_model(problem, config, config.n_start, rng), beta);
  for (int attempt = 1; !initial && attempt < kInitAttempts && state.log_posterior == kNegInf; ++attempt) {
    state = evaluate(problem, init_model(problem, config, config.n_start, rng), beta);
  }

  if (config.steps == 0) {
    record_sample(rec, state);
    return rec;
  }

  std::discrete_distribution<std::size_t> draw(config.moves.probability.begin(), config.moves.probability.end());
  for (std::size_t i = 1; i <= config.steps; ++i) {
    state.step = i;
    std::optional<Proposal> proposal;
    MoveKind kind = MoveKind::kRate;
    for (int attempt = 0; attempt < config.max_move_draws; ++attempt) {
      kind = kAllMoves[draw(rng)];
      proposal = propose(problem, config, state.model, kind, rng);
      if (proposal) break;
      ++rec.redraws;
    }
    if (!proposal) {
      ++rec.aborted;
    } else {
      MoveStats& stats = rec.moves[static_cast<std::size_t>(kind)];
      ++stats.proposed;
      if (!proposal->candidate) {
        ++stats.out_of_support;
      } else {
        bool ok = false;
        state = accept_reject(state, evaluate(problem, std::move(*proposal->candidate), state.beta),
                              proposal->log_ratio, rng, &ok);
        if (ok) ++stats.accepted;
      }
    }
    gibbs_betas(problem, state, rng);
    if (i > rec.burn_in_steps && (i - rec.burn_in_steps) % config.thinning == 0) record_sample(rec, state);
  }
  return rec;
}

std::vector<ChainRecord> run_parallel(const Problem& problem, const SamplerConfig& config, std::size_t n_chains,
                                      unsigned threads) {
  config.validate();
  std::vector<ChainRecord> out(n_chains);
  std::vector<std::exception_ptr> errors(n_chains);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < n_chains; c = next++) {
      try {
        out[c] = run_chain(problem, config, config.seed + c, std::nullopt, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n_chains, 1))));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> RateSamples::column(std::size_t j) const {
  std::vector<double> c;
  c.reserve(rows.size());
  for (const auto& r : rows) c.push_back(r.at(j));
  return c;
}

double RateSamples::mean(std::size_t j) const {
  const auto c = column(j);
  if (c.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
}

double RateSamples::stddev(std::size_t j) const {
  const auto c = column(j);
  if (c.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean(j);
  double acc = 0.0;
  for (double x : c) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(c.size() - 1));
}

RateSamples fit_rates(const Problem& problem, const Model& structure, SamplerConfig config) {
  config.moves = MoveTable::rate_only();
  RateSamples out;
  for (const auto& p : structure.hamiltonian()) out.names.push_back("H:" + p.op.label());
  for (const auto& p : structure.lindblad()) out.names.push_back("L:" + p.op.label());
  out.names.push_back("background");
  for (const auto& e : problem.experiments) out.names.push_back("beta:" + std::string(to_string(e.data.kind)));
  out.record = run_chain(problem, config, config.seed, structure);
  for (const auto& s : out.record.samples) {
    std::vector<double> row = s.model.rates();
    row.insert(row.end(), s.beta.begin(), s.beta.end());
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace lindlearn
