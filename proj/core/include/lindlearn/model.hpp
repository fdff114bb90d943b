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

// Candidate models (a set of Hamiltonian and Lindblad processes with their
// rates plus a detector background), their priors and reference presets.

#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "lindlearn/engine.hpp"
#include "lindlearn/operators.hpp"

namespace lindlearn {

enum class ProcessKind { kHamiltonian, kLindblad };

struct Process {
  ProcessOperator op;
  double rate = 0.0;  // GHz; an energy for Hamiltonian processes
};

// Invariants: rates and background non-negative, no operator repeated within
// a kind, Hamiltonian operators Hermitian, all operators of dimension dim().
class Model {
 public:
  explicit Model(int dim);

  int dim() const { return dim_; }
  double background() const { return background_; }
  const std::vector<Process>& hamiltonian() const { return hamiltonian_; }
  const std::vector<Process>& lindblad() const { return lindblad_; }
  const std::vector<Process>& processes(ProcessKind kind) const {
    return kind == ProcessKind::kHamiltonian ? hamiltonian_ : lindblad_;
  }
  std::size_t process_count() const { return hamiltonian_.size() + lindblad_.size(); }

  bool contains(ProcessKind kind, const std::string& label) const;

  // All mutators throw std::invalid_argument when an invariant would break.
  void add(ProcessKind kind, ProcessOperator op, double rate);
  void remove(ProcessKind kind, std::size_t index);
  void replace_operator(ProcessKind kind, std::size_t index, ProcessOperator op);
  void set_rate(ProcessKind kind, std::size_t index, double rate);
  void set_background(double b);

  // Every rate in a fixed order: Hamiltonian energies, Lindblad rates, background.
  std::vector<double> rates() const;

  bool operator==(const Model& other) const;

 private:
  int dim_;
  std::vector<Process> hamiltonian_;
  std::vector<Process> lindblad_;
  double background_ = 0.0;
};

// H = sum_h omega_h H_h.
ComplexMatrix hamiltonian_matrix(const Model& model);
Superoperator build_liouvillian(const Model& model);

// Gamma distribution in shape/rate form.
struct GammaPrior {
  double shape = 1.0;
  double rate = 1.0;

  // shape = m^2 / v, rate = m / v.
  static GammaPrior from_moments(double mean, double variance);

  double mean() const { return shape / rate; }
  // -inf for x < 0; x == 0 is evaluated at kRateFloor.
  double log_density(double x) const;
  template <class Rng>
  double sample(Rng& rng) const {
    std::gamma_distribution<double> dist(shape, 1.0 / rate);
    return dist(rng);
  }
};

inline constexpr double kRateFloor = 1e-12;

struct PriorConfig {
  double eta_h = 2.0;
  double eta_l = 5.0;
  double eta_c = 1.0;
  // Shared by Hamiltonian energies, Lindblad rates and the background.
  GammaPrior rate_prior = GammaPrior::from_moments(0.6, 12.0 * 12.0);
};

struct StructureCounts {
  std::size_t n_h = 0;
  std::size_t n_l = 0;
  std::size_t n_c = 0;  // basis terms summed over Lindblad processes
};

StructureCounts structure_counts(const Model& model);

// log p_m = -log C(|H|, n_h) - log C(|L|, n_l) - n_h/eta_H - n_l/eta_L - n_c/eta_c.
// Returns -inf if a count exceeds its library size.
double model_prior_log(const StructureCounts& counts, std::size_t hamiltonian_library_size,
                       std::size_t lindblad_library_size, const PriorConfig& prior);

// Sum of independent Gamma log densities over rates(). -inf if any rate < 0.
double rate_prior_log(const Model& model, const GammaPrior& prior);

double log_binomial(std::size_t n, std::size_t k);

// Order- and rate-independent key, e.g. "H{sp+sm} L{sm}".
std::string canonical_signature(const Model& model);

// Driven two-level emitter: H = omega (sp + sm), L = sm at gamma.
Model preset_driven_two_level(double omega, double gamma);

// Two identical emitters in the site basis mapped onto (g, a, b, e) with
// a = |eg>, b = |ge>: decay sigma_1^-, sigma_2^- at gamma, incoherent pumping
// sigma_1^+, sigma_2^+ at gamma_p and dephasing n_1, n_2 at gamma_d.
Model preset_symmetric_two_emitter(double gamma, double gamma_p, double gamma_d);

// Two uncoupled, incoherently pumped two-level emitters.
Model preset_independent_emitters(double gamma, double gamma_p);

// Text record:
//   # lindlearn model
//   dim = 2
//   background = 0.01
//   H sp+sm 0.5
//   L sm 1
// Doubles are written in shortest round-trip form.
void write_model(std::ostream& os, const Model& model);
std::string model_to_string(const Model& model);
// Throws DataError with the offending line number.
Model read_model(std::istream& is, const std::string& source = "<model>");
Model model_from_string(const std::string& text);

}  // namespace lindlearn
