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

// Restricted operator space: canonical matrix units and their equally
// weighted sums of up to C terms.
//
// Level ordering is (e, g) for d = 2 and (g, a, b, e) for d = 4, where a and
// b are the two singly excited levels. Basis labels:
//   d = 2: sp = |e><g|, sm = |g><e|, se = |e><e|, sg = |g><g|
//   d = 4: s_xy = |x><y| for x, y in {g, a, b, e}
// Multi-term operators join their term labels with '+', terms ordered by
// (row, column) index.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lindlearn/engine.hpp"

namespace lindlearn {

enum class OpticalClass { kMonitoredEmission, kExcitation, kDark };

std::string_view to_string(OpticalClass c);

// Matrix unit |to><from|.
struct BasisTerm {
  int from_level = 0;
  int to_level = 0;
  std::string label;

  ComplexMatrix matrix(int dim) const;
  bool operator==(const BasisTerm& other) const {
    return from_level == other.from_level && to_level == other.to_level;
  }
};

// Index of the topmost excited level (|e>, or the doubly excited |ee> for d = 4).
int excited_level(int dim);

// Throws std::invalid_argument unless d is 2 or 4.
std::vector<BasisTerm> enumerate_basis(int dim);

class ProcessOperator {
 public:
  // Sum of the given terms with unit coefficients. Throws on empty or
  // repeated terms.
  ProcessOperator(int dim, std::vector<BasisTerm> terms);

  // Parses a label such as "sp+sm" or "s_ga+s_ae".
  static ProcessOperator from_label(int dim, std::string_view label);

  int dim() const { return dim_; }
  const std::vector<BasisTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }
  OpticalClass optical_class() const { return optical_class_; }
  const std::string& label() const { return label_; }

  ProcessOperator adjoint() const;

  bool operator==(const ProcessOperator& other) const { return label_ == other.label_; }

 private:
  int dim_;
  std::vector<BasisTerm> terms_;
  ComplexMatrix matrix_;
  bool hermitian_ = false;
  OpticalClass optical_class_ = OpticalClass::kDark;
  std::string label_;
};

// Monitored emission iff every term is a dipole-allowed lowering transition
// (d = 2: e->g; d = 4: e->a, e->b, a->g, b->g); excitation iff every term is
// the adjoint of one; dark otherwise.
OpticalClass classify_optical(const ProcessOperator& op, int dim);

struct LibraryBuild {
  std::vector<ProcessOperator> operators;  // sorted by label
  std::size_t candidates = 0;              // before dedup
  std::vector<std::string> dedup_log;      // one line per removed candidate
};

// All unordered combinations of 1..C distinct basis terms, with candidates
// equal to an earlier one up to a positive scalar removed.
LibraryBuild build_library_detailed(int dim, int complexity);
std::vector<ProcessOperator> build_library(int dim, int complexity);

std::vector<ProcessOperator> hamiltonian_sublibrary(const std::vector<ProcessOperator>& library);

// Position of an operator in a library by label, if present.
std::optional<std::size_t> find_operator(const std::vector<ProcessOperator>& library,
                                         std::string_view label);

}  // namespace lindlearn
