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

#include "lindlearn/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace lindlearn {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("unsupported system dimension " + std::to_string(dim) +
                                " (expected 2 or 4)");
  }
}

std::string term_label(int dim, int to, int from) {
  if (dim == 2) {
    if (to == 0 && from == 1) return "sp";
    if (to == 1 && from == 0) return "sm";
    return to == 0 ? "se" : "sg";
  }
  static constexpr char kLevels[] = {'g', 'a', 'b', 'e'};
  return std::string("s_") + kLevels[to] + kLevels[from];
}

bool dipole_lowering(int dim, const BasisTerm& t) {
  if (dim == 2) return t.from_level == 0 && t.to_level == 1;
  // (g, a, b, e) = (0, 1, 2, 3)
  const bool from_e = t.from_level == 3 && (t.to_level == 1 || t.to_level == 2);
  const bool to_g = t.to_level == 0 && (t.from_level == 1 || t.from_level == 2);
  return from_e || to_g;
}

bool dipole_raising(int dim, const BasisTerm& t) {
  return dipole_lowering(dim, BasisTerm{t.to_level, t.from_level, {}});
}

// Equal up to a positive real scalar.
bool positively_proportional(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return na == nb;
  return approx_equal(a / na, b / nb, 1e-12);
}

}  // namespace

std::string_view to_string(OpticalClass c) {
  switch (c) {
    case OpticalClass::kMonitoredEmission:
      return "monitored_emission";
    case OpticalClass::kExcitation:
      return "excitation";
    case OpticalClass::kDark:
      return "dark";
  }
  return "dark";
}

ComplexMatrix BasisTerm::matrix(int dim) const {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(to_level, from_level) = 1.0;
  return m;
}

int excited_level(int dim) {
  check_dim(dim);
  return dim == 2 ? 0 : 3;
}

std::vector<BasisTerm> enumerate_basis(int dim) {
  check_dim(dim);
  std::vector<BasisTerm> out;
  out.reserve(static_cast<std::size_t>(dim * dim));
  for (int to = 0; to < dim; ++to) {
    for (int from = 0; from < dim; ++from) {
      out.push_back(BasisTerm{from, to, term_label(dim, to, from)});
    }
  }
  return out;
}

ProcessOperator::ProcessOperator(int dim, std::vector<BasisTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  check_dim(dim);
  if (terms_.empty()) throw std::invalid_argument("process operator needs at least one term");
  std::sort(terms_.begin(), terms_.end(), [](const BasisTerm& a, const BasisTerm& b) {
    return std::pair(a.to_level, a.from_level) < std::pair(b.to_level, b.from_level);
  });
  if (std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end()) {
    throw std::invalid_argument("process operator has a repeated term");
  }
  matrix_ = ComplexMatrix::Zero(dim, dim);
  for (auto& t : terms_) {
    if (t.from_level < 0 || t.from_level >= dim || t.to_level < 0 || t.to_level >= dim) {
      throw std::invalid_argument("basis term level out of range");
    }
    t.label = term_label(dim, t.to_level, t.from_level);
    matrix_ += t.matrix(dim);
    if (!label_.empty()) label_ += '+';
    label_ += t.label;
  }
  hermitian_ = matrix_ == matrix_.adjoint();
  optical_class_ = classify_optical(*this, dim);
}

ProcessOperator ProcessOperator::from_label(int dim, std::string_view label) {
  const auto basis = enumerate_basis(dim);
  std::vector<BasisTerm> terms;
  std::size_t pos = 0;
  while (pos <= label.size()) {
    const auto next = std::min(label.find('+', pos), label.size());
    const auto token = label.substr(pos, next - pos);
    const auto it = std::find_if(basis.begin(), basis.end(),
                                 [&](const BasisTerm& t) { return t.label == token; });
    if (it == basis.end()) {
      throw std::invalid_argument("unknown operator term '" + std::string(token) + "' for d=" +
                                  std::to_string(dim));
    }
    terms.push_back(*it);
    pos = next + 1;
  }
  return ProcessOperator(dim, std::move(terms));
}

ProcessOperator ProcessOperator::adjoint() const {
  std::vector<BasisTerm> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) terms.push_back(BasisTerm{t.to_level, t.from_level, {}});
  return ProcessOperator(dim_, std::move(terms));
}

OpticalClass classify_optical(const ProcessOperator& op, int dim) {
  const auto& terms = op.terms();
  if (std::all_of(terms.begin(), terms.end(), [&](const auto& t) { return dipole_lowering(dim, t); })) {
    return OpticalClass::kMonitoredEmission;
  }
  if (std::all_of(terms.begin(), terms.end(), [&](const auto& t) { return dipole_raising(dim, t); })) {
    return OpticalClass::kExcitation;
  }
  return OpticalClass::kDark;
}

LibraryBuild build_library_detailed(int dim, int complexity) {
  if (complexity < 1) throw std::invalid_argument("complexity must be at least 1");
  const auto basis = enumerate_basis(dim);
  const int n = static_cast<int>(basis.size());
  const int max_terms = std::min(complexity, n);

  LibraryBuild out;
  // Lexicographic combinations of basis indices, sizes 1..C.
  for (int size = 1; size <= max_terms; ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<BasisTerm> terms;
      for (int i : idx) terms.push_back(basis[static_cast<std::size_t>(i)]);
      ProcessOperator candidate(dim, std::move(terms));
      ++out.candidates;
      const auto dup = std::find_if(out.operators.begin(), out.operators.end(), [&](const auto& op) {
        return positively_proportional(op.matrix(), candidate.matrix());
      });
      if (dup != out.operators.end()) {
        out.dedup_log.push_back(candidate.label() + " duplicates " + dup->label());
      } else {
        out.operators.push_back(std::move(candidate));
      }
      int i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  std::sort(out.operators.begin(), out.operators.end(),
            [](const auto& a, const auto& b) { return a.label() < b.label(); });
  return out;
}

std::vector<ProcessOperator> build_library(int dim, int complexity) {
  return build_library_detailed(dim, complexity).operators;
}

std::vector<ProcessOperator> hamiltonian_sublibrary(const std::vector<ProcessOperator>& library) {
  std::vector<ProcessOperator> out;
  std::copy_if(library.begin(), library.end(), std::back_inserter(out),
               [](const auto& op) { return op.hermitian(); });
  return out;
}

std::optional<std::size_t> find_operator(const std::vector<ProcessOperator>& library,
                                         std::string_view label) {
  for (std::size_t i = 0; i < library.size(); ++i) {
    if (library[i].label() == label) return i;
  }
  return std::nullopt;
}

}  // namespace lindlearn
