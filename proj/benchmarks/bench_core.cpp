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

#include <random>

#include <benchmark/benchmark.h>

#include "lindlearn/forward.hpp"
#include "lindlearn/sampler.hpp"

namespace lindlearn {
namespace {

Model two_emitters() { return preset_symmetric_two_emitter(1.0, 0.1, 0.5); }

Model for_dim(int dim) { return dim == 2 ? preset_driven_two_level(0.5, 1.0) : two_emitters(); }

void BM_BuildLiouvillian(benchmark::State& state) {
  const Model m = for_dim(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(m));
}
BENCHMARK(BM_BuildLiouvillian)->Arg(2)->Arg(4);

void BM_MatrixExp(benchmark::State& state) {
  const Superoperator lv = build_liouvillian(for_dim(static_cast<int>(state.range(0))));
  const ComplexMatrix a = lv.matrix * 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(a));
}
BENCHMARK(BM_MatrixExp)->Arg(2)->Arg(4);

void BM_SteadyState(benchmark::State& state) {
  const Superoperator lv = build_liouvillian(for_dim(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(lv));
}
BENCHMARK(BM_SteadyState)->Arg(2)->Arg(4);

void BM_LifetimeTrace(benchmark::State& state) {
  const Model m = for_dim(static_cast<int>(state.range(0)));
  const auto tau = uniform_grid(0.0, 10.0, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(lifetime_trace(m, tau));
}
BENCHMARK(BM_LifetimeTrace)->Arg(2)->Arg(4);

void BM_G2Trace(benchmark::State& state) {
  const Model m = for_dim(static_cast<int>(state.range(0)));
  const auto tau = symmetric_grid(10.0, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(g2_trace(m, tau));
}
BENCHMARK(BM_G2Trace)->Arg(2)->Arg(4);

Problem single_emitter_problem() {
  const Model truth = preset_driven_two_level(0.5, 1.0);
  std::mt19937_64 rng(1);
  std::vector<Experiment> exps;
  for (TraceKind kind : {TraceKind::kLifetime, TraceKind::kG2}) {
    const auto tau = kind == TraceKind::kLifetime ? uniform_grid(0.0, 10.0, 0.05) : symmetric_grid(10.0, 0.05);
    Experiment e;
    e.data = synth_data(kind, truth, NoiseModel{}, tau, rng);
    e.data.weights = kind == TraceKind::kLifetime ? weight_lt(e.data.values, tau) : weight_g2(tau, 1.0);
    e.beta_prior = default_beta_prior(e.data, 1e4);
    exps.push_back(std::move(e));
  }
  return Problem{ProcessCatalog::from_library(2, build_library(2, 2)), std::move(exps), SimulationOptions{},
                 PriorConfig{}};
}

// Cost per chain step, averaged over a short chain from the true model.
void BM_ChainSteps(benchmark::State& state) {
  const Problem p = single_emitter_problem();
  SamplerConfig cfg;
  cfg.steps = 1000;
  const Model start = preset_driven_two_level(0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(run_chain(p, cfg, 3, start));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.steps));
}
BENCHMARK(BM_ChainSteps)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lindlearn

BENCHMARK_MAIN();
