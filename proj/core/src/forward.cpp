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

#include "lindlearn/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lindlearn/errors.hpp"

namespace lindlearn {

namespace {

constexpr double kGridTol = 1e-9;
constexpr double kMinG2Reference = 5.0;  // ns
constexpr double kMinNormalization = 1e-14;

bool has_off_diagonal(const ProcessOperator& op) {
  for (const auto& t : op.terms()) {
    if (t.from_level != t.to_level) return true;
  }
  return false;
}

// Row vector r with r . vec(X) = Tr(N X) for column-stacked X.
Eigen::RowVectorXcd trace_functional(const ComplexMatrix& n) {
  const ComplexMatrix nt = n.transpose();
  return Eigen::Map<const Eigen::RowVectorXcd>(nt.data(), nt.size());
}

ComplexMatrix emission_number_operator(const Model& model) {
  ComplexMatrix n = ComplexMatrix::Zero(model.dim(), model.dim());
  for (const auto& p : model.lindblad()) {
    if (p.op.optical_class() == OpticalClass::kMonitoredEmission) {
      n += p.rate * (p.op.matrix().adjoint() * p.op.matrix());
    }
  }
  return n;
}

std::size_t zero_index(std::span<const double> tau) {
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (std::abs(tau[i]) < kGridTol) return i;
  }
  throw std::invalid_argument("g2 grid must contain tau = 0");
}

void check_symmetric_grid(std::span<const double> tau) {
  check_uniform_grid(tau);
  const std::size_t n = tau.size();
  if (n % 2 == 0) throw std::invalid_argument("g2 grid must be mirror-symmetric about 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(tau[i] + tau[n - 1 - i]) > kGridTol) {
      throw std::invalid_argument("g2 grid must be mirror-symmetric about 0");
    }
  }
  zero_index(tau);
}

// Mean over the last `m` non-negative points mirrored on both sides.
double g2_tail_mean(std::span<const double> values, std::span<const double> tau) {
  const std::size_t zero = zero_index(tau);
  const std::size_t n_pos = tau.size() - zero;
  const G2Window w = g2_reference_window(n_pos, tau.size() > 1 ? tau[1] - tau[0] : 1.0);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = n_pos - w.count; k < n_pos; ++k) {
    sum += values[zero + k];
    ++count;
    if (k > 0 && zero >= k) {
      sum += values[zero - k];
      ++count;
    }
  }
  return sum / double(count);
}

}  // namespace

std::string_view to_string(TraceKind kind) { return kind == TraceKind::kLifetime ? "LT" : "G2"; }

void ExperimentTrace::validate() const {
  if (tau.empty()) throw std::invalid_argument("trace is empty");
  if (values.size() != tau.size()) throw std::invalid_argument("trace values and grid differ in length");
  if (!weights.empty() && weights.size() != tau.size()) {
    throw std::invalid_argument("trace weights and grid differ in length");
  }
  check_uniform_grid(tau);
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("trace values must be finite and >= 0");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("trace weights must be finite and >= 0");
  }
  if (kind == TraceKind::kG2) check_symmetric_grid(tau);
}

std::vector<double> uniform_grid(double start, double stop, double dt) {
  if (!(dt > 0.0) || stop < start) throw std::invalid_argument("bad grid bounds");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / dt + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + double(i) * dt;
  return out;
}

std::vector<double> symmetric_grid(double tmax, double dt) {
  if (!(dt > 0.0) || tmax < 0.0) throw std::invalid_argument("bad grid bounds");
  const auto half = static_cast<long>(std::floor(tmax / dt + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * half + 1));
  for (long k = -half; k <= half; ++k) out.push_back(double(k) * dt);
  return out;
}

void check_uniform_grid(std::span<const double> tau) {
  if (tau.empty()) throw std::invalid_argument("empty time grid");
  if (tau.size() == 1) return;
  const double dt = tau[1] - tau[0];
  if (!(dt > 0.0)) throw std::invalid_argument("time grid must be strictly increasing");
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (std::abs((tau[i] - tau[i - 1]) - dt) > kGridTol) {
      throw std::invalid_argument("time grid spacing is not uniform");
    }
  }
}

Model lifetime_model(const Model& model, bool strip_hamiltonian_drive) {
  Model out(model.dim());
  for (const auto& p : model.hamiltonian()) {
    if (strip_hamiltonian_drive && has_off_diagonal(p.op)) continue;
    out.add(ProcessKind::kHamiltonian, p.op, p.rate);
  }
  for (const auto& p : model.lindblad()) {
    if (p.op.optical_class() == OpticalClass::kExcitation) continue;
    out.add(ProcessKind::kLindblad, p.op, p.rate);
  }
  out.set_background(model.background());
  return out;
}

std::vector<double> lifetime_intensity(const Model& model, std::span<const double> tau,
                                       bool strip_hamiltonian_drive) {
  check_uniform_grid(tau);
  if (tau.front() < 0.0) throw std::invalid_argument("lifetime grid must start at tau >= 0");
  const Model decay = lifetime_model(model, strip_hamiltonian_drive);
  const ComplexMatrix n = emission_number_operator(decay);
  std::vector<double> out(tau.size(), 0.0);
  if (n.isZero(0.0)) return out;

  const Superoperator lv = build_liouvillian(decay);
  const auto r = trace_functional(n);
  ComplexVector v = vectorize(DensityMatrix::projector(model.dim(), excited_level(model.dim())));
  if (tau.front() > 0.0) v = matrix_exp(lv.matrix * tau.front()) * v;
  out[0] = (r * v).value().real();
  if (tau.size() > 1) {
    const GridPropagator prop(lv, tau[1] - tau[0]);
    for (std::size_t i = 1; i < tau.size(); ++i) {
      prop.advance(v);
      out[i] = (r * v).value().real();
    }
  }
  return out;
}

ExperimentTrace lifetime_trace(const Model& model, std::span<const double> tau,
                               const SimulationOptions& options) {
  std::vector<double> y = lifetime_intensity(model, tau, options.strip_hamiltonian_drive);
  if (options.irf_fwhm > 0.0) y = convolve_irf(y, tau, options.irf_fwhm);
  const double peak = *std::max_element(y.begin(), y.end());
  const double b = model.background();
  if (peak > 0.0) {
    for (double& v : y) v = (v / peak + b) / (1.0 + b);
  } else {
    std::fill(y.begin(), y.end(), b);
  }
  return ExperimentTrace{TraceKind::kLifetime, {tau.begin(), tau.end()}, std::move(y), {}};
}

G2Window g2_reference_window(std::size_t nonnegative_points, double dt) {
  const std::size_t m = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.05 * double(nonnegative_points) - 1e-12)));
  const std::size_t k0 = nonnegative_points >= m ? nonnegative_points - m : 0;
  return G2Window{std::max(kMinG2Reference, double(k0) * dt), m};
}

std::vector<double> g2_ideal(const Model& model, std::span<const double> tau) {
  check_symmetric_grid(tau);
  const std::size_t zero = zero_index(tau);
  const std::size_t n_pos = tau.size() - zero;
  const double dt = tau.size() > 1 ? tau[1] - tau[0] : 1.0;

  const ComplexMatrix n = emission_number_operator(model);
  if (n.isZero(0.0)) throw UnphysicalModel("model has no monitored emission process");

  const Superoperator lv = build_liouvillian(model);
  ComplexMatrix rho_ss;
  try {
    rho_ss = steady_state(lv).rho.matrix();
  } catch (const std::runtime_error& e) {
    throw UnphysicalModel(e.what());
  }
  ComplexMatrix first = ComplexMatrix::Zero(model.dim(), model.dim());
  for (const auto& p : model.lindblad()) {
    if (p.op.optical_class() == OpticalClass::kMonitoredEmission) {
      first += p.rate * (p.op.matrix() * rho_ss * p.op.matrix().adjoint());
    }
  }
  const auto r = trace_functional(n);
  const ComplexVector x0 = vectorize(first);

  std::vector<double> g(n_pos);
  ComplexVector x = x0;
  g[0] = (r * x).value().real();
  const GridPropagator prop(lv, dt);
  for (std::size_t k = 1; k < n_pos; ++k) {
    prop.advance(x);
    g[k] = (r * x).value().real();
  }

  const G2Window w = g2_reference_window(n_pos, dt);
  const std::size_t k0 = n_pos - std::min(w.count, n_pos);
  double denom = 0.0;
  if (std::abs(double(k0) * dt - w.start) < 1e-9) {
    for (std::size_t k = k0; k < n_pos; ++k) denom += g[k];
  } else {
    x = matrix_exp(lv.matrix * w.start) * x0;
    for (std::size_t j = 0; j < w.count; ++j) {
      if (j) prop.advance(x);
      denom += (r * x).value().real();
    }
  }
  denom /= double(w.count);
  if (!(denom >= kMinNormalization)) {
    throw UnphysicalModel("steady-state emission too small to normalize g2");
  }

  std::vector<double> out(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::llround(std::abs(tau[i]) / dt));
    out[i] = g[std::min(k, n_pos - 1)] / denom;
  }
  return out;
}

ExperimentTrace g2_trace(const Model& model, std::span<const double> tau, const SimulationOptions& options) {
  std::vector<double> y = g2_ideal(model, tau);
  if (options.irf_fwhm > 0.0) y = convolve_irf(y, tau, options.irf_fwhm);
  const double b = model.background();
  for (double& v : y) v = (v + b) / (1.0 + b);
  return ExperimentTrace{TraceKind::kG2, {tau.begin(), tau.end()}, std::move(y), {}};
}

ExperimentTrace simulate(TraceKind kind, const Model& model, std::span<const double> tau,
                         const SimulationOptions& options) {
  return kind == TraceKind::kLifetime ? lifetime_trace(model, tau, options) : g2_trace(model, tau, options);
}

std::vector<double> convolve_irf(std::span<const double> values, std::span<const double> tau, double fwhm) {
  if (!(fwhm > 0.0)) throw std::invalid_argument("IRF FWHM must be positive");
  if (values.size() != tau.size()) throw std::invalid_argument("values and grid differ in length");
  check_uniform_grid(tau);
  const std::size_t n = values.size();
  if (n < 2) return {values.begin(), values.end()};
  const double dt = tau[1] - tau[0];
  const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const auto half = static_cast<long>(std::ceil(5.0 * sigma / dt));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  double norm = 0.0;
  for (long k = -half; k <= half; ++k) {
    const double x = double(k) * dt;
    const double w = std::exp(-x * x / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(k + half)] = w;
    norm += w;
  }
  for (double& w : kernel) w /= norm;

  const auto ln = static_cast<long>(n);
  auto reflect = [ln](long i) {
    // Symmetric padding: x[-1] = x[0], x[n] = x[n-1].
    const long period = 2 * ln;
    i %= period;
    if (i < 0) i += period;
    return i < ln ? i : period - 1 - i;
  };
  std::vector<double> out(n, 0.0);
  for (long i = 0; i < ln; ++i) {
    double acc = 0.0;
    for (long k = -half; k <= half; ++k) {
      acc += kernel[static_cast<std::size_t>(k + half)] * values[static_cast<std::size_t>(reflect(i - k))];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<double> weight_lt(std::span<const double> values, std::span<const double> tau) {
  if (values.size() != tau.size()) throw std::invalid_argument("values and grid differ in length");
  const std::size_t n = values.size();
  std::vector<double> w(n, 0.0);
  if (n == 0) return w;
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (n > 1 && total > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
      w[i] = std::abs((values[hi] - values[lo]) / (tau[hi] - tau[lo])) / total;
    }
  }
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) {
    std::fill(w.begin(), w.end(), 1.0 / double(n));
  }
  return w;
}

std::vector<double> weight_g2(std::span<const double> tau, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("g2 weight width must be positive");
  std::vector<double> w(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) w[i] = std::exp(-tau[i] * tau[i] / (2.0 * width * width));
  return w;
}

std::vector<double> normalize_lifetime(std::span<const double> counts) {
  if (counts.empty()) throw std::invalid_argument("empty lifetime trace");
  const double peak = *std::max_element(counts.begin(), counts.end());
  if (!(peak > 0.0)) throw std::invalid_argument("lifetime trace has no positive counts");
  std::vector<double> out(counts.begin(), counts.end());
  for (double& v : out) v /= peak;
  return out;
}

std::vector<double> normalize_g2(std::span<const double> counts, std::span<const double> tau) {
  if (counts.size() != tau.size()) throw std::invalid_argument("values and grid differ in length");
  check_symmetric_grid(tau);
  const double ref = g2_tail_mean(counts, tau);
  if (!(ref > 0.0)) throw std::invalid_argument("g2 trace has no counts at long delay");
  std::vector<double> out(counts.begin(), counts.end());
  for (double& v : out) v /= ref;
  return out;
}

GammaPrior default_beta_prior(const ExperimentTrace& data, double poisson_scale, double boost) {
  if (!(poisson_scale > 0.0)) throw std::invalid_argument("poisson_scale must be positive");
  double expected = 0.0;
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    const double w = data.weights.empty() ? 1.0 : data.weights[i];
    expected += w * std::max(data.values[i], 1.0 / poisson_scale) / poisson_scale;
  }
  if (!(expected > 0.0)) expected = 1.0 / poisson_scale;
  const double mean = boost * double(data.values.size()) / expected;
  return GammaPrior::from_moments(mean, mean * mean);
}

std::vector<double> weighted_sse(const Model& model, std::span<const Experiment> experiments,
                                 const SimulationOptions& options) {
  std::vector<double> out;
  out.reserve(experiments.size());
  for (const auto& exp : experiments) {
    const ExperimentTrace sim = simulate(exp.data.kind, model, exp.data.tau, options);
    if (sim.values.size() != exp.data.values.size()) throw std::invalid_argument("grid mismatch");
    double sse = 0.0;
    for (std::size_t i = 0; i < sim.values.size(); ++i) {
      const double dy = sim.values[i] - exp.data.values[i];
      sse += (exp.data.weights.empty() ? 1.0 : exp.data.weights[i]) * dy * dy;
    }
    out.push_back(sse);
  }
  return out;
}

double log_likelihood_from_sse(std::span<const double> sse, std::span<const double> beta,
                               std::span<const Experiment> experiments) {
  if (sse.size() != beta.size() || sse.size() != experiments.size()) {
    throw std::invalid_argument("one precision and one residual per experiment required");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < sse.size(); ++k) acc += -0.5 * beta[k] * experiments[k].multiplier * sse[k];
  return acc;
}

double log_likelihood(const Model& model, std::span<const Experiment> experiments,
                      std::span<const double> beta, const SimulationOptions& options) {
  try {
    const auto sse = weighted_sse(model, experiments, options);
    return log_likelihood_from_sse(sse, beta, experiments);
  } catch (const UnphysicalModel&) {
    return -std::numeric_limits<double>::infinity();
  }
}

double gibbs_update_beta(double sse, std::size_t n_points, double multiplier, const GammaPrior& prior,
                         std::mt19937_64& rng) {
  const double shape = prior.shape + 0.5 * double(n_points);
  const double rate = prior.rate + 0.5 * multiplier * sse;
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(rng);
}

std::vector<double> synth_counts(const ExperimentTrace& ideal, double poisson_scale, std::mt19937_64& rng) {
  if (!(poisson_scale > 0.0)) throw std::invalid_argument("poisson_scale must be positive");
  std::vector<double> out(ideal.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double mean = ideal.values[i] * poisson_scale;
    if (mean > 0.0) {
      std::poisson_distribution<long long> dist(mean);
      out[i] = double(dist(rng));
    } else {
      out[i] = 0.0;
    }
  }
  return out;
}

ExperimentTrace synth_data(TraceKind kind, const Model& model, const NoiseModel& noise,
                           std::span<const double> tau, std::mt19937_64& rng, bool strip_hamiltonian_drive) {
  const SimulationOptions opts{noise.irf_fwhm, strip_hamiltonian_drive};
  ExperimentTrace trace = simulate(kind, model, tau, opts);
  const auto counts = synth_counts(trace, noise.poisson_scale, rng);
  trace.values = kind == TraceKind::kLifetime ? normalize_lifetime(counts) : normalize_g2(counts, tau);
  return trace;
}

}  // namespace lindlearn
