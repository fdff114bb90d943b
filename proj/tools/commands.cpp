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

#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "lindlearn/analysis.hpp"
#include "lindlearn/errors.hpp"
#include "lindlearn/io.hpp"
#include "lindlearn/sampler.hpp"
#include "lindlearn/text.hpp"

namespace lindlearn::cli {

namespace fs = std::filesystem;
using text::format_double;

namespace {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

RunConfig resolve_config(const CommonOptions& common) {
  RunConfig c = common.config_path.empty() ? RunConfig{} : load_config(common.config_path);
  if (common.seed) c.sampler.seed = *common.seed;
  if (common.chains) c.chains = *common.chains;
  c.validate();
  return c;
}

unsigned resolve_threads(const CommonOptions& common) {
  if (common.threads) return std::max(1u, *common.threads);
  if (const char* env = std::getenv("LL_THREADS")) {
    try {
      const long long n = text::parse_int(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("LL_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

fs::path out_dir(const CommonOptions& common) {
  fs::path dir(common.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file " + path);
  return read_model(in, path);
}

Model preset_model(const std::string& name) {
  if (name == "driven-two-level") return preset_driven_two_level(0.5, 1.0);
  if (name == "symmetric-two-emitter") return preset_symmetric_two_emitter(1.0, 0.1, 0.5);
  if (name == "independent-emitters") return preset_independent_emitters(1.0, 0.1);
  throw ConfigError("unknown preset '" + name + "'");
}

std::string chain_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "chain_%03zu.txt", index);
  return buf;
}

Problem make_problem(const RunConfig& config, std::vector<Experiment> experiments) {
  const auto library = build_library(config.dim, config.complexity);
  return Problem{ProcessCatalog::from_library(config.dim, library), std::move(experiments), config.simulation(),
                 config.prior()};
}

}  // namespace

int gen_library(const CommonOptions& common, const GenLibraryOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig c = resolve_config(common);
    if (opts.dim) c.dim = *opts.dim;
    if (opts.complexity) c.complexity = *opts.complexity;
    c.validate();
    const LibraryBuild build = build_library_detailed(c.dim, c.complexity);
    const fs::path path = out_dir(common) / ("library_d" + std::to_string(c.dim) + "_c" +
                                             std::to_string(c.complexity) + ".txt");
    auto os = open_out(path);
    write_library(os, build, c.dim, c.complexity);
    out << "candidates " << build.candidates << ", unique operators " << build.operators.size() << " -> "
        << path.string() << '\n';
    return kExitOk;
  });
}

int simulate(const CommonOptions& common, const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolve_config(common);
    if (opts.model_path.empty() == opts.preset.empty()) {
      throw ConfigError("give exactly one of --model or --preset");
    }
    const Model model = opts.model_path.empty() ? preset_model(opts.preset) : load_model_file(opts.model_path);
    const fs::path dir = out_dir(common);
    std::mt19937_64 rng(c.sampler.seed);
    const SimulationOptions sim = c.simulation();
    const std::vector<std::pair<TraceKind, std::vector<double>>> grids = {
        {TraceKind::kLifetime, uniform_grid(c.grid.lt_start, c.grid.lt_stop, c.grid.lt_dt)},
        {TraceKind::kG2, symmetric_grid(c.grid.g2_tmax, c.grid.g2_dt)}};
    for (const auto& [kind, tau] : grids) {
      const std::string stem = kind == TraceKind::kLifetime ? "lt" : "g2";
      ExperimentTrace ideal;
      try {
        ideal = simulate(kind, model, tau, sim);
      } catch (const UnphysicalModel& e) {
        err << "warning: no " << stem << " trace: " << e.what() << '\n';
        continue;
      }
      const auto counts = synth_counts(ideal, c.noise_scale, rng);
      auto ideal_os = open_out(dir / (stem + "_ideal.csv"));
      write_trace(ideal_os, ideal.tau, ideal.values, "value");
      auto noisy_os = open_out(dir / (stem + ".csv"));
      write_trace(noisy_os, ideal.tau, counts, "counts");
      out << "wrote " << (dir / (stem + ".csv")).string() << " and " << (dir / (stem + "_ideal.csv")).string()
          << '\n';
    }
    auto model_os = open_out(dir / "model.txt");
    write_model(model_os, model);
    return kExitOk;
  });
}

int learn(const CommonOptions& common, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolve_config(common);
    const unsigned threads = resolve_threads(common);
    const Problem problem = make_problem(c, load_experiments(c));
    const fs::path dir = out_dir(common);

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ChainRecord> records = run_parallel(problem, c.sampler, c.chains, threads);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string snapshot = config_to_string(c);
    std::array<MoveStats, kMoveKindCount> totals{};
    std::map<std::string, std::size_t> signatures;
    std::size_t n_samples = 0;
    for (auto& r : records) {
      r.config_snapshot = snapshot;
      auto os = open_out(dir / chain_file_name(r.chain_index));
      write_chain_record(os, r);
      for (std::size_t k = 0; k < kMoveKindCount; ++k) {
        totals[k].proposed += r.moves[k].proposed;
        totals[k].accepted += r.moves[k].accepted;
        totals[k].out_of_support += r.moves[k].out_of_support;
      }
      for (const auto& s : r.samples) ++signatures[canonical_signature(s.model)];
      n_samples += r.samples.size();
    }

    auto os = open_out(dir / "summary.txt");
    os << "chains = " << records.size() << '\n';
    os << "steps = " << c.sampler.steps << '\n';
    os << "seed = " << c.sampler.seed << '\n';
    os << "samples = " << n_samples << '\n';
    os << "\n# move proposed accepted acceptance_rate\n";
    for (MoveKind k : kAllMoves) {
      const auto& m = totals[static_cast<std::size_t>(k)];
      const double rate = m.proposed ? static_cast<double>(m.accepted) / static_cast<double>(m.proposed) : 0.0;
      os << to_string(k) << ' ' << m.proposed << ' ' << m.accepted << ' ' << format_double(rate) << '\n';
    }
    os << "\n# chain final_log_posterior distinct_structures\n";
    for (const auto& r : records) {
      const double lp = r.samples.empty() ? 0.0 : r.samples.back().log_posterior;
      os << r.chain_index << ' ' << format_double(lp) << ' ' << signature_set(r).size() << '\n';
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(signatures.begin(), signatures.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    os << "\n# count fraction structure\n";
    for (std::size_t i = 0; i < ranked.size() && i < 20; ++i) {
      os << ranked[i].second << ' '
         << format_double(static_cast<double>(ranked[i].second) / static_cast<double>(n_samples)) << ' '
         << ranked[i].first << '\n';
    }

    auto timing = open_out(dir / "timing.txt");
    timing << "seconds = " << format_double(seconds) << "\nthreads = " << threads << '\n';
    out << "ran " << records.size() << " chains x " << c.sampler.steps << " steps in " << std::fixed
        << std::setprecision(2) << seconds << " s; output in " << dir.string() << '\n';
    if (!ranked.empty()) out << "most frequent structure: " << ranked.front().first << '\n';
    return kExitOk;
  });
}

int fit_rates(const CommonOptions& common, const FitRatesOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolve_config(common);
    if (opts.model_path.empty()) throw ConfigError("fit-rates needs --model");
    const Model structure = load_model_file(opts.model_path);
    if (structure.dim() != c.dim) throw ConfigError("model dimension differs from system.dim");
    // The structure need not come from the library; fit only needs its own operators.
    std::vector<ProcessOperator> h, l;
    for (const auto& p : structure.hamiltonian()) h.push_back(p.op);
    for (const auto& p : structure.lindblad()) l.push_back(p.op);
    const Problem problem{ProcessCatalog(c.dim, h, l), load_experiments(c), c.simulation(), c.prior()};
    const RateSamples fit = lindlearn::fit_rates(problem, structure, c.sampler);
    const fs::path dir = out_dir(common);

    auto samples = open_out(dir / "rate_samples.csv");
    for (std::size_t j = 0; j < fit.names.size(); ++j) samples << (j ? "," : "") << fit.names[j];
    samples << '\n';
    for (const auto& row : fit.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) samples << (j ? "," : "") << format_double(row[j]);
      samples << '\n';
    }
    auto summary = open_out(dir / "rate_summary.txt");
    summary << "# name mean sd\n";
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
      summary << fit.names[j] << ' ' << format_double(fit.mean(j)) << ' ' << format_double(fit.stddev(j)) << '\n';
      out << fit.names[j] << " = " << fit.mean(j) << " +- " << fit.stddev(j) << '\n';
    }
    return kExitOk;
  });
}

namespace {

std::vector<ChainRecord> load_records(const RecordOptions& opts, int dim) {
  if (opts.record_paths.empty()) throw ConfigError("no chain records given");
  std::vector<ChainRecord> out;
  for (const auto& p : opts.record_paths) out.push_back(load_chain_record(p, dim));
  return out;
}

void write_mixing(std::ostream& os, const Eigen::MatrixXd& mu) {
  for (Eigen::Index i = 0; i < mu.rows(); ++i) {
    for (Eigen::Index j = 0; j < mu.cols(); ++j) os << (j ? "," : "") << format_double(mu(i, j));
    os << '\n';
  }
}

}  // namespace

int analyze(const CommonOptions& common, const RecordOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolve_config(common);
    const std::vector<ChainRecord> records = load_records(opts, c.dim);
    std::size_t total = 0;
    for (const auto& r : records) total += r.samples.size();
    if (total == 0) throw DataError("chain records contain no post-burn-in samples");

    const Embedding emb = embed_liouvillians(records, c.subsample, c.sampler.seed);
    const std::size_t n = emb.signatures.size();
    std::vector<std::size_t> assignment(n, 0);
    std::size_t k = 1;
    std::size_t components = 0;
    if (n >= 2) {
      const PcaResult pca = pca_project(emb.rows, c.variance_target);
      components = pca.components;
      if (!pca.zero_variance) {
        const ElbowResult elbow =
            kmeans_elbow(pca.projected, std::min(c.k_max, n), c.sampler.seed, c.kmeans_restarts);
        assignment = elbow.assignment;
        k = elbow.k;
      }
    }
    std::vector<ModelClass> classes = rank_classes(assignment, emb.signatures);

    std::vector<Experiment> experiments;
    if (!c.lt_path.empty() || !c.g2_path.empty()) experiments = load_experiments(c);
    const fs::path dir = out_dir(common);

    std::map<std::size_t, std::size_t> rank_of;
    for (const auto& cl : classes) rank_of[cl.cluster] = cl.id;

    for (auto& cl : classes) {
      std::vector<Model> draws;
      for (std::size_t i = 0; i < n; ++i) {
        if (rank_of[assignment[i]] != cl.id) continue;
        const auto& ref = emb.source[i];
        draws.push_back(records[ref.chain].samples[ref.sample].model);
      }
      if (experiments.empty()) continue;
      const MseResult mse = compute_mse(draws, experiments, c.mse_samples, c.simulation());
      cl.mse = mse.mse;
      for (std::size_t e = 0; e < experiments.size(); ++e) {
        if (mse.draws_used == 0) continue;
        const auto& data = experiments[e].data;
        auto os = open_out(dir / ("class_" + std::to_string(cl.id) + "_" +
                                  std::string(to_string(data.kind)) + ".csv"));
        os << "tau_ns,data,mean,sd\n";
        for (std::size_t t = 0; t < data.tau.size(); ++t) {
          os << format_double(data.tau[t]) << ',' << format_double(data.values[t]) << ','
             << format_double(mse.mean[e][t]) << ',' << format_double(mse.sd[e][t]) << '\n';
        }
      }
    }

    const Eigen::MatrixXd mu = mixing_matrix(records);
    auto mix_os = open_out(dir / "mixing.csv");
    write_mixing(mix_os, mu);

    auto sig_os = open_out(dir / "signatures.csv");
    sig_os << "class,signature,count\n";
    for (const auto& cl : classes) {
      for (const auto& s : cl.signatures) sig_os << cl.id << ",\"" << s.signature << "\"," << s.count << '\n';
    }

    auto report = open_out(dir / "report.txt");
    report << "records = " << records.size() << "\nsamples = " << total << "\nembedded = " << n
           << "\npca_components = " << components << "\nclasses = " << k << "\n";
    for (const auto& cl : classes) {
      report << "\nclass " << cl.id << " popularity " << format_double(cl.popularity) << " members " << cl.members
             << '\n';
      for (std::size_t e = 0; e < cl.mse.size(); ++e) {
        report << "  mse " << to_string(experiments[e].data.kind) << ' ' << format_double(cl.mse[e]) << '\n';
      }
      for (std::size_t s = 0; s < cl.signatures.size() && s < 5; ++s) {
        report << "  " << cl.signatures[s].count << ' ' << cl.signatures[s].signature << '\n';
      }
    }
    out << k << " model classes from " << n << " embedded samples; top: "
        << classes.front().signatures.front().signature << " (" << classes.front().popularity << ")\n";
    return kExitOk;
  });
}

int mix(const CommonOptions& common, const RecordOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolve_config(common);
    const auto records = load_records(opts, c.dim);
    const Eigen::MatrixXd mu = mixing_matrix(records);
    auto os = open_out(out_dir(common) / "mixing.csv");
    write_mixing(os, mu);
    write_mixing(out, mu);
    return kExitOk;
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn Lindblad master-equation models from photon-counting data"};
  app.require_subcommand(1);
  CommonOptions common;
  GenLibraryOptions lib;
  SimulateOptions sim;
  FitRatesOptions fit;
  RecordOptions rec;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "Config file (key = value with [sections])");
    sub->add_option("--seed", common.seed, "Base RNG seed (overrides sampler.seed)");
    sub->add_option("--chains", common.chains, "Number of chains (overrides sampler.chains)");
    sub->add_option("--out", common.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads (default: LL_THREADS or 1)");
  };

  auto* gen = app.add_subcommand("gen-library", "Write the operator library");
  add_common(gen);
  gen->add_option("--dim", lib.dim, "System dimension (2 or 4)");
  gen->add_option("--complexity", lib.complexity, "Basis terms per operator");

  auto* simc = app.add_subcommand("simulate", "Simulate lifetime and g2 traces of a model");
  add_common(simc);
  simc->add_option("--model", sim.model_path, "Model file");
  simc->add_option("--preset", sim.preset, "driven-two-level, symmetric-two-emitter or independent-emitters")
      ->check(CLI::IsMember({"driven-two-level", "symmetric-two-emitter", "independent-emitters"}));

  auto* learnc = app.add_subcommand("learn", "Run the reversible-jump chains");
  add_common(learnc);

  auto* fitc = app.add_subcommand("fit-rates", "Sample the rates of a fixed structure");
  add_common(fitc);
  fitc->add_option("--model", fit.model_path, "Model file giving the structure and starting rates")->required();

  auto* an = app.add_subcommand("analyze", "Cluster, rank and score chain records");
  add_common(an);
  an->add_option("records", rec.record_paths, "Chain record files")->required();

  auto* mixc = app.add_subcommand("mix", "Mixing matrix of chain records");
  add_common(mixc);
  mixc->add_option("records", rec.record_paths, "Chain record files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) return gen_library(common, lib, out, err);
  if (simc->parsed()) return simulate(common, sim, out, err);
  if (learnc->parsed()) return learn(common, out, err);
  if (fitc->parsed()) return fit_rates(common, fit, out, err);
  if (an->parsed()) return analyze(common, rec, out, err);
  return mix(common, rec, out, err);
}

}  // namespace lindlearn::cli
