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

// Forward models for photon-counting experiments: lifetime traces after
// pulsed excitation and second-order intensity correlations g2(tau) under
// continuous driving, plus detector effects, data weighting, the weighted
// least-squares likelihood and Gibbs updates of the noise precisions.

#pragma once

#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "lindlearn/model.hpp"

namespace lindlearn {

enum class TraceKind { kLifetime, kG2 };

std::string_view to_string(TraceKind kind);

// Values are normalized: lifetime traces to peak 1, g2 traces to 1 at long
// delay. Grids are uniform; g2 grids are mirror-symmetric about tau = 0.
struct ExperimentTrace {
  TraceKind kind = TraceKind::kLifetime;
  std::vector<double> tau;
  std::vector<double> values;
  std::vector<double> weights;

  double dt() const { return tau.size() > 1 ? tau[1] - tau[0] : 0.0; }
  // Throws std::invalid_argument when an invariant fails.
  void validate() const;
};

std::vector<double> uniform_grid(double start, double stop, double dt);
// -tmax .. tmax, always containing 0.
std::vector<double> symmetric_grid(double tmax, double dt);
// Throws std::invalid_argument unless strictly increasing with spacing
// uniform to 1e-9 ns.
void check_uniform_grid(std::span<const double> tau);

struct SimulationOptions {
  double irf_fwhm = 0.240;  // ns; 0 disables the IRF
  // Remove Hamiltonian terms with off-diagonal entries for lifetime
  // simulation (the pulse is off while the system decays).
  bool strip_hamiltonian_drive = true;
};

// The model used for lifetime simulation: excitation-class Lindblad
// processes removed, drive terms removed if requested.
Model lifetime_model(const Model& model, bool strip_hamiltonian_drive);

// Emission intensity I(tau) = sum_v gamma_v Tr(v^dag v rho(tau)) from the
// fully excited state, before any detector effects. tau >= 0, uniform.
std::vector<double> lifetime_intensity(const Model& model, std::span<const double> tau,
                                       bool strip_hamiltonian_drive = true);

// Full lifetime observable: intensity, IRF, peak normalization, background
// floor, renormalization.
ExperimentTrace lifetime_trace(const Model& model, std::span<const double> tau,
                               const SimulationOptions& options = {});

// Reference window used to normalize g2: count points spaced by dt,
// starting at start >= 5 ns.
struct G2Window {
  double start = 0.0;
  std::size_t count = 1;
};
G2Window g2_reference_window(std::size_t nonnegative_points, double dt);

// Normalized g2 on a symmetric grid before IRF and background. Throws
// UnphysicalModel when the steady state does not emit.
std::vector<double> g2_ideal(const Model& model, std::span<const double> tau);

ExperimentTrace g2_trace(const Model& model, std::span<const double> tau,
                         const SimulationOptions& options = {});

ExperimentTrace simulate(TraceKind kind, const Model& model, std::span<const double> tau,
                         const SimulationOptions& options = {});

// Gaussian kernel truncated at +-5 sigma, unit sum, symmetric edge padding.
// Throws std::invalid_argument for fwhm <= 0 or a non-uniform grid.
std::vector<double> convolve_irf(std::span<const double> values, std::span<const double> tau,
                                 double fwhm);

// |dy/dtau| / sum(y); uniform 1/n if the result is all zero.
std::vector<double> weight_lt(std::span<const double> values, std::span<const double> tau);
// exp(-tau^2 / (2 width^2)).
std::vector<double> weight_g2(std::span<const double> tau, double width);

// Normalization used for measured traces.
std::vector<double> normalize_lifetime(std::span<const double> counts);
std::vector<double> normalize_g2(std::span<const double> counts, std::span<const double> tau);

struct Experiment {
  ExperimentTrace data;       // includes the point weights
  double multiplier = 1.0;    // relative importance of this experiment
  GammaPrior beta_prior;
};

// Prior on the noise precision with mean equal to the reciprocal weighted
// Poisson variance expected at poisson_scale counts (times boost) and
// variance mean^2.
GammaPrior default_beta_prior(const ExperimentTrace& data, double poisson_scale, double boost = 1.0);

// Per-experiment sum_tau w (sim - data)^2. Throws UnphysicalModel if a
// trace cannot be simulated; throws std::invalid_argument on a grid mismatch.
std::vector<double> weighted_sse(const Model& model, std::span<const Experiment> experiments,
                                 const SimulationOptions& options);

// sum_k -beta_k m_k / 2 * sse_k.
double log_likelihood_from_sse(std::span<const double> sse, std::span<const double> beta,
                               std::span<const Experiment> experiments);

// -inf when the model cannot be simulated.
double log_likelihood(const Model& model, std::span<const Experiment> experiments,
                      std::span<const double> beta, const SimulationOptions& options);

// Conjugate draw from Gamma(a + n/2, b + m/2 * sse).
double gibbs_update_beta(double sse, std::size_t n_points, double multiplier,
                         const GammaPrior& prior, std::mt19937_64& rng);

struct NoiseModel {
  double irf_fwhm = 0.240;
  double poisson_scale = 1e4;  // expected counts at peak (lifetime) or long delay (g2)
};

// Ideal traces with IRF and the model's background, scaled to
// poisson_scale counts, Poisson sampled per bin. Returned as raw counts.
std::vector<double> synth_counts(const ExperimentTrace& ideal, double poisson_scale,
                                 std::mt19937_64& rng);
ExperimentTrace synth_data(TraceKind kind, const Model& model, const NoiseModel& noise,
                           std::span<const double> tau, std::mt19937_64& rng,
                           bool strip_hamiltonian_drive = true);

}  // namespace lindlearn
