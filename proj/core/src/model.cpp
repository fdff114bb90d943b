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

#include "lindlearn/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lindlearn/errors.hpp"
#include "lindlearn/text.hpp"

namespace lindlearn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_rate(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("rates must be finite and non-negative");
  }
}

std::vector<Process>& mutable_list(ProcessKind kind, std::vector<Process>& h, std::vector<Process>& l) {
  return kind == ProcessKind::kHamiltonian ? h : l;
}

}  // namespace

Model::Model(int dim) : dim_(dim) {
  if (dim != 2 && dim != 4) throw std::invalid_argument("model dimension must be 2 or 4");
}

bool Model::contains(ProcessKind kind, const std::string& label) const {
  const auto& list = processes(kind);
  return std::any_of(list.begin(), list.end(), [&](const Process& p) { return p.op.label() == label; });
}

void Model::add(ProcessKind kind, ProcessOperator op, double rate) {
  check_rate(rate);
  if (op.dim() != dim_) throw std::invalid_argument("operator dimension does not match model");
  if (kind == ProcessKind::kHamiltonian && !op.hermitian()) {
    throw std::invalid_argument("Hamiltonian process " + op.label() + " is not Hermitian");
  }
  if (contains(kind, op.label())) throw std::invalid_argument("duplicate process " + op.label());
  mutable_list(kind, hamiltonian_, lindblad_).push_back(Process{std::move(op), rate});
}

void Model::remove(ProcessKind kind, std::size_t index) {
  auto& list = mutable_list(kind, hamiltonian_, lindblad_);
  if (index >= list.size()) throw std::invalid_argument("process index out of range");
  list.erase(list.begin() + static_cast<std::ptrdiff_t>(index));
}

void Model::replace_operator(ProcessKind kind, std::size_t index, ProcessOperator op) {
  auto& list = mutable_list(kind, hamiltonian_, lindblad_);
  if (index >= list.size()) throw std::invalid_argument("process index out of range");
  if (op.dim() != dim_) throw std::invalid_argument("operator dimension does not match model");
  if (kind == ProcessKind::kHamiltonian && !op.hermitian()) {
    throw std::invalid_argument("Hamiltonian process " + op.label() + " is not Hermitian");
  }
  if (list[index].op.label() != op.label() && contains(kind, op.label())) {
    throw std::invalid_argument("duplicate process " + op.label());
  }
  list[index].op = std::move(op);
}

void Model::set_rate(ProcessKind kind, std::size_t index, double rate) {
  check_rate(rate);
  auto& list = mutable_list(kind, hamiltonian_, lindblad_);
  if (index >= list.size()) throw std::invalid_argument("process index out of range");
  list[index].rate = rate;
}

void Model::set_background(double b) {
  check_rate(b);
  background_ = b;
}

std::vector<double> Model::rates() const {
  std::vector<double> out;
  out.reserve(process_count() + 1);
  for (const auto& p : hamiltonian_) out.push_back(p.rate);
  for (const auto& p : lindblad_) out.push_back(p.rate);
  out.push_back(background_);
  return out;
}

bool Model::operator==(const Model& other) const {
  auto same = [](const std::vector<Process>& a, const std::vector<Process>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const Process& x, const Process& y) {
      return x.op == y.op && x.rate == y.rate;
    });
  };
  return dim_ == other.dim_ && background_ == other.background_ &&
         same(hamiltonian_, other.hamiltonian_) && same(lindblad_, other.lindblad_);
}

ComplexMatrix hamiltonian_matrix(const Model& model) {
  ComplexMatrix h = ComplexMatrix::Zero(model.dim(), model.dim());
  for (const auto& p : model.hamiltonian()) h += p.rate * p.op.matrix();
  return h;
}

Superoperator build_liouvillian(const Model& model) {
  std::vector<Dissipator> diss;
  diss.reserve(model.lindblad().size());
  for (const auto& p : model.lindblad()) diss.push_back(Dissipator{p.op.matrix(), p.rate});
  return build_liouvillian(model.dim(), hamiltonian_matrix(model), diss);
}

GammaPrior GammaPrior::from_moments(double mean, double variance) {
  if (!(mean > 0.0) || !(variance > 0.0)) {
    throw std::invalid_argument("Gamma prior needs positive mean and variance");
  }
  return GammaPrior{mean * mean / variance, mean / variance};
}

double GammaPrior::log_density(double x) const {
  if (x < 0.0 || std::isnan(x)) return kNegInf;
  if (x == 0.0) x = kRateFloor;
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

StructureCounts structure_counts(const Model& model) {
  StructureCounts c;
  c.n_h = model.hamiltonian().size();
  c.n_l = model.lindblad().size();
  for (const auto& p : model.lindblad()) c.n_c += p.op.term_count();
  return c;
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return kNegInf;
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) - std::lgamma(double(n - k) + 1.0);
}

double model_prior_log(const StructureCounts& counts, std::size_t hamiltonian_library_size,
                       std::size_t lindblad_library_size, const PriorConfig& prior) {
  if (counts.n_h > hamiltonian_library_size || counts.n_l > lindblad_library_size) return kNegInf;
  return -log_binomial(hamiltonian_library_size, counts.n_h) -
         log_binomial(lindblad_library_size, counts.n_l) - double(counts.n_h) / prior.eta_h -
         double(counts.n_l) / prior.eta_l - double(counts.n_c) / prior.eta_c;
}

double rate_prior_log(const Model& model, const GammaPrior& prior) {
  double acc = 0.0;
  for (double r : model.rates()) {
    const double lp = prior.log_density(r);
    if (lp == kNegInf) return kNegInf;
    acc += lp;
  }
  return acc;
}

std::string canonical_signature(const Model& model) {
  auto block = [](char tag, const std::vector<Process>& list) {
    std::vector<std::string> labels;
    labels.reserve(list.size());
    for (const auto& p : list) labels.push_back(p.op.label());
    std::sort(labels.begin(), labels.end());
    std::string out(1, tag);
    out += '{';
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) out += ',';
      out += labels[i];
    }
    out += '}';
    return out;
  };
  return block('H', model.hamiltonian()) + " " + block('L', model.lindblad());
}

Model preset_driven_two_level(double omega, double gamma) {
  Model m(2);
  m.add(ProcessKind::kHamiltonian, ProcessOperator::from_label(2, "sp+sm"), omega);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(2, "sm"), gamma);
  return m;
}

Model preset_symmetric_two_emitter(double gamma, double gamma_p, double gamma_d) {
  Model m(4);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_ga+s_be"), gamma);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_gb+s_ae"), gamma);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_ag+s_eb"), gamma_p);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_bg+s_ea"), gamma_p);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_aa+s_ee"), gamma_d);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_bb+s_ee"), gamma_d);
  return m;
}

Model preset_independent_emitters(double gamma, double gamma_p) {
  Model m(4);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_ga+s_be"), gamma);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_gb+s_ae"), gamma);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_ag+s_eb"), gamma_p);
  m.add(ProcessKind::kLindblad, ProcessOperator::from_label(4, "s_bg+s_ea"), gamma_p);
  return m;
}

void write_model(std::ostream& os, const Model& model) {
  os << "# lindlearn model\n";
  os << "dim = " << model.dim() << '\n';
  os << "background = " << text::format_double(model.background()) << '\n';
  for (const auto& p : model.hamiltonian()) {
    os << "H " << p.op.label() << ' ' << text::format_double(p.rate) << '\n';
  }
  for (const auto& p : model.lindblad()) {
    os << "L " << p.op.label() << ' ' << text::format_double(p.rate) << '\n';
  }
}

std::string model_to_string(const Model& model) {
  std::ostringstream os;
  write_model(os, model);
  return os.str();
}

Model read_model(std::istream& is, const std::string& source) {
  std::optional<Model> model;
  std::optional<double> background;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw DataError(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    const auto body = text::trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    try {
      if (const auto eq = body.find('='); eq != std::string_view::npos) {
        const auto key = text::trim(body.substr(0, eq));
        const auto value = text::trim(body.substr(eq + 1));
        if (key == "dim") {
          if (model) fail("dim given twice");
          model.emplace(static_cast<int>(text::parse_int(value)));
        } else if (key == "background") {
          background = text::parse_double(value);
        } else {
          fail("unknown key '" + std::string(key) + "'");
        }
        continue;
      }
      const auto tok = text::split(body);
      if (tok.size() != 3 || (tok[0] != "H" && tok[0] != "L")) fail("expected 'H|L <label> <rate>'");
      if (!model) fail("process listed before 'dim'");
      const auto kind = tok[0] == "H" ? ProcessKind::kHamiltonian : ProcessKind::kLindblad;
      model->add(kind, ProcessOperator::from_label(model->dim(), tok[1]), text::parse_double(tok[2]));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!model) throw DataError(source + ": missing 'dim'");
  if (background) {
    try {
      model->set_background(*background);
    } catch (const std::invalid_argument& e) {
      throw DataError(source + ": " + e.what());
    }
  }
  return *std::move(model);
}

Model model_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_model(is);
}

}  // namespace lindlearn
