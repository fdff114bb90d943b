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

#include "lindlearn/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace lindlearn {

namespace {

constexpr Complex kI{0.0, 1.0};

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  if (!all_finite(m_)) throw std::invalid_argument("density matrix has non-finite entries");
  if (!approx_equal(m_, m_.adjoint(), kHermitianTol)) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  if (min_eigenvalue() < -kEigenTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

DensityMatrix DensityMatrix::projector(int dim, int level) {
  if (dim <= 0 || level < 0 || level >= dim) throw std::invalid_argument("projector level out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(level, level) = 1.0;
  return DensityMatrix(std::move(m), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m_), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexVector vectorize(const DensityMatrix& rho) { return vectorize(rho.matrix()); }

ComplexMatrix unvectorize(const ComplexVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw std::invalid_argument("vector length is not a perfect square");
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

Superoperator build_liouvillian(int dim, const ComplexMatrix& hamiltonian,
                                std::span<const Dissipator> dissipators) {
  if (dim <= 0) throw std::invalid_argument("system dimension must be positive");
  if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
    throw std::invalid_argument("Hamiltonian dimension mismatch");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix lv = -kI * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
  for (const auto& diss : dissipators) {
    if (diss.op.rows() != dim || diss.op.cols() != dim) {
      throw std::invalid_argument("Lindblad operator dimension mismatch");
    }
    if (!(diss.rate >= 0.0)) throw std::invalid_argument("Lindblad rate must be non-negative");
    if (diss.rate == 0.0) continue;
    const ComplexMatrix ldl = diss.op.adjoint() * diss.op;
    lv += diss.rate * (kron(diss.op.conjugate(), diss.op) - 0.5 * kron(id, ldl) -
                       0.5 * kron(ldl.transpose(), id));
  }
  return Superoperator{dim, std::move(lv)};
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian,
                           std::span<const Dissipator> dissipators,
                           const ComplexMatrix& rho) {
  ComplexMatrix out = -kI * (hamiltonian * rho - rho * hamiltonian);
  for (const auto& diss : dissipators) {
    const ComplexMatrix ldl = diss.op.adjoint() * diss.op;
    out += diss.rate * (diss.op * rho * diss.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp needs a square matrix");
  if (!all_finite(m)) throw std::invalid_argument("matrix_exp input has non-finite entries");
  if (m.size() == 0) return m;
  return m.exp();
}

DensityMatrix propagate(const Superoperator& lv, const DensityMatrix& rho0, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagation time must be non-negative");
  if (rho0.dim() != lv.sysdim) throw std::invalid_argument("state and generator dimensions differ");
  if (t == 0.0) return rho0;
  const ComplexVector v = matrix_exp(lv.matrix * t) * vectorize(rho0);
  ComplexMatrix rho = unvectorize(v);
  return DensityMatrix::trusted(hermitian_part(rho) / rho.trace().real());
}

SteadyState steady_state(const Superoperator& lv) {
  const int d = lv.sysdim;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(lv.matrix, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("Liouvillian eigendecomposition failed");
  const auto& evals = es.eigenvalues();
  std::vector<Eigen::Index> null_idx;
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    if (std::abs(evals(k)) < kNullEigenvalueTol) null_idx.push_back(k);
  }
  if (null_idx.empty()) {
    throw std::runtime_error("Liouvillian has no zero eigenvalue; generator is malformed");
  }

  ComplexMatrix rho;
  if (null_idx.size() == 1) {
    // The right singular vector of the smallest singular value is far more
    // accurate than the eigenvector for the residual.
    Eigen::JacobiSVD<ComplexMatrix> svd(lv.matrix, Eigen::ComputeFullV);
    const ComplexVector v = svd.matrixV().col(svd.matrixV().cols() - 1);
    rho = unvectorize(v);
  } else {
    const ComplexMatrix& vecs = es.eigenvectors();
    const ComplexVector mixed = vectorize(ComplexMatrix(ComplexMatrix::Identity(d, d) / double(d)));
    const ComplexVector coeff = vecs.colPivHouseholderQr().solve(mixed);
    ComplexVector v = ComplexVector::Zero(vecs.rows());
    for (auto k : null_idx) v += coeff(k) * vecs.col(k);
    rho = unvectorize(v);
  }
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw std::runtime_error("steady state has zero trace");
  rho = hermitian_part(rho / tr);
  return SteadyState{DensityMatrix::trusted(std::move(rho)), static_cast<int>(null_idx.size())};
}

GridPropagator::GridPropagator(const Superoperator& lv, double dt)
    : dt_(dt), step_(matrix_exp(lv.matrix * dt)) {
  if (!(dt > 0.0)) throw std::invalid_argument("grid step must be positive");
}

}  // namespace lindlearn
