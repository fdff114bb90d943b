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

// Dense complex linear algebra for small open quantum systems: Liouvillian
// assembly, propagation by matrix exponential and steady-state extraction.
//
// Conventions: hbar = 1, time in ns, rates and energies in GHz (1/ns).
// Density matrices are vectorized by column stacking, so column j of rho
// occupies entries j*d .. j*d + d - 1 and vec(A X B) = (B^T kron A) vec(X).

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lindlearn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Element-wise absolute comparison.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-12);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// A validated density matrix: Hermitian and unit trace within 1e-10, no
// eigenvalue below -1e-8.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-8;

  // Throws std::invalid_argument if any invariant fails.
  explicit DensityMatrix(ComplexMatrix m);

  // Skips validation. For results whose physicality is guaranteed by
  // construction up to rounding.
  static DensityMatrix trusted(ComplexMatrix m);

  // Pure state |level><level|.
  static DensityMatrix projector(int dim, int level);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }
  double min_eigenvalue() const;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// d^2 x d^2 generator acting on column-stacked density matrices.
struct Superoperator {
  int sysdim = 0;
  ComplexMatrix matrix;
};

// One dissipative channel gamma * D[L].
struct Dissipator {
  ComplexMatrix op;
  double rate = 0.0;
};

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexVector vectorize(const DensityMatrix& rho);
ComplexMatrix unvectorize(const ComplexVector& v);

// -i[H, .] + sum_j gamma_j (L_j . L_j^dag - {L_j^dag L_j, .}/2).
// Throws std::invalid_argument on dimension mismatch or a negative rate.
Superoperator build_liouvillian(int dim, const ComplexMatrix& hamiltonian,
                                std::span<const Dissipator> dissipators);

// Right-hand side of the master equation evaluated directly on rho,
// without going through Liouville space.
ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian,
                           std::span<const Dissipator> dissipators,
                           const ComplexMatrix& rho);

// Throws std::invalid_argument on non-finite input.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

// rho(t) = unvec(exp(Lv t) vec(rho0)). Throws std::invalid_argument for t < 0.
DensityMatrix propagate(const Superoperator& lv, const DensityMatrix& rho0, double t);

struct SteadyState {
  DensityMatrix rho;
  int null_dimension = 1;
  bool degenerate() const { return null_dimension > 1; }
};

// Eigenvalues with |lambda| below this count as null.
inline constexpr double kNullEigenvalueTol = 1e-6;

// Null-space state of Lv, trace normalized. For a multi-dimensional null
// space the result is the spectral projection of the maximally mixed state
// onto the null space, made Hermitian, with the degeneracy reported.
// Throws std::runtime_error when no eigenvalue lies within 1e-6 of zero.
SteadyState steady_state(const Superoperator& lv);

// Repeated application of exp(Lv dt) on a uniform time grid.
class GridPropagator {
 public:
  GridPropagator(const Superoperator& lv, double dt);
  double dt() const { return dt_; }
  const ComplexMatrix& step() const { return step_; }
  // Advances a column-stacked state by one grid step in place.
  void advance(ComplexVector& v) const { v = step_ * v; }

 private:
  double dt_;
  ComplexMatrix step_;
};

}  // namespace lindlearn
