// Copyright 2026 The hsem Authors
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

#include "hsem/states.hpp"

#include <cmath>
#include <stdexcept>

namespace hsem {

namespace {

CMatrix power_from_eigensystem(const std::vector<double>& lam,
                               const CMatrix& v, double p, double clip) {
  const int n = v.dim();
  CMatrix out(n);
  for (int k = 0; k < n; ++k) {
    double l = lam[k];
    if (l < 0.0 && l >= -clip) l = 0.0;
    const double w = std::pow(l, p);
    for (int j = 0; j < n; ++j) {
      const cplx vjk = std::conj(v(j, k)) * w;
      for (int i = 0; i < n; ++i) out(i, j) += v(i, k) * vjk;
    }
  }
  return out.hermitized();
}

}  // namespace

DensityMatrix::DensityMatrix(const CMatrix& rho, const Tolerances& tol)
    : rho_(rho.hermitized()) {
  const double hdef = rho.hermiticity_defect();
  if (hdef > tol.scaled(tol.hermiticity) * std::max(1.0, rho.frobenius()))
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  const double tr_defect = std::abs(rho_.trace() - cplx(1.0, 0.0));
  if (tr_defect > tol.scaled(1e-10))
    throw std::invalid_argument("DensityMatrix: trace differs from 1");

  EigenSystem es = hermitian_eig(rho_, tol);
  const int n = dim();
  const double clip = tol.scaled(tol.psd_clip) * std::max(1.0, rho_.frobenius());
  // Store descending: h_1 is the most populated eigenvector.
  eigenvalues_.resize(n);
  eigenbasis_ = CMatrix(n);
  for (int j = 0; j < n; ++j) {
    const int src = n - 1 - j;
    double lam = es.eigenvalues[src];
    if (lam < -clip)
      throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    if (lam < 0.0) lam = 0.0;
    eigenvalues_[j] = lam;
    for (int i = 0; i < n; ++i) eigenbasis_(i, j) = es.eigenvectors(i, src);
  }
  min_eig_ = eigenvalues_.back();
  faithful_ = min_eig_ > tol.scaled(tol.faithful);

  q14_ = power_from_eigensystem(eigenvalues_, eigenbasis_, 0.25, 0.0);
  q12_ = power_from_eigensystem(eigenvalues_, eigenbasis_, 0.5, 0.0);
  q34_ = power_from_eigensystem(eigenvalues_, eigenbasis_, 0.75, 0.0);
  if (faithful_) {
    m14_ = power_from_eigensystem(eigenvalues_, eigenbasis_, -0.25, 0.0);
    m12_ = power_from_eigensystem(eigenvalues_, eigenbasis_, -0.5, 0.0);
  }
}

const CMatrix& DensityMatrix::inv_quarter() const {
  if (!faithful_)
    throw NumericError("DensityMatrix: ρ^{-1/4} requires a faithful state",
                       min_eig_);
  return m14_;
}

const CMatrix& DensityMatrix::inv_half() const {
  if (!faithful_)
    throw NumericError("DensityMatrix: ρ^{-1/2} requires a faithful state",
                       min_eig_);
  return m12_;
}

cplx DensityMatrix::omega(const CMatrix& x) const {
  if (x.dim() != dim())
    throw std::invalid_argument("omega: dimension mismatch");
  return (rho_ * x).trace();
}

bool is_faithful(const DensityMatrix& rho) { return rho.faithful(); }

CheckReport is_invariant(const Superoperator& t, const DensityMatrix& rho,
                         const Tolerances& tol) {
  if (t.hdim() != rho.dim())
    throw std::invalid_argument("is_invariant: dimension mismatch");
  const double hdef = t.hermiticity_preservation_defect();
  if (hdef > tol.scaled(tol.hermiticity) *
                 std::max(1.0, t.matrix().frobenius()))
    throw std::invalid_argument(
        "is_invariant: map is not Hermiticity-preserving");
  CheckReport r;
  r.name = "invariant";
  const CMatrix image = t.predual().apply(rho.matrix());
  r.residual = trace_norm(image - rho.matrix(), tol);
  r.verdict = r.residual <= tol.scaled(tol.invariance) ? Verdict::Pass
                                                       : Verdict::Fail;
  r.detail = "‖T†(ρ) − ρ‖₁";
  return r;
}

CheckReport is_subinvariant(const Superoperator& t, const DensityMatrix& rho,
                            const Tolerances& tol) {
  if (t.hdim() != rho.dim())
    throw std::invalid_argument("is_subinvariant: dimension mismatch");
  const double hdef = t.hermiticity_preservation_defect();
  if (hdef > tol.scaled(tol.hermiticity) *
                 std::max(1.0, t.matrix().frobenius()))
    throw std::invalid_argument(
        "is_subinvariant: map is not Hermiticity-preserving");
  CheckReport r;
  r.name = "subinvariant";
  const CMatrix gap =
      (rho.matrix() - t.predual().apply(rho.matrix())).hermitized();
  r.residual = min_eigenvalue(gap, tol);
  r.verdict = r.residual >= -tol.scaled(tol.invariance) ? Verdict::Pass
                                                        : Verdict::Fail;
  r.detail = "min eig(ρ − T†(ρ))";
  return r;
}

CheckReport subinvariant_unital_promotion(const Superoperator& t,
                                          const DensityMatrix& rho,
                                          const Tolerances& tol) {
  CheckReport r;
  r.name = "subinvariant-unital-promotion";
  const CheckReport unital = is_unital(t, tol);
  const CheckReport sub = is_subinvariant(t, rho, tol);
  if (!unital.ok() || !sub.ok()) {
    r.verdict = Verdict::SkippedHypothesis;
    r.detail = !unital.ok() ? "map is not unital" : "state is not subinvariant";
    return r;
  }
  const CMatrix image = t.predual().apply(rho.matrix());
  const double trace_residual =
      std::abs(image.trace() - rho.matrix().trace());
  const CheckReport inv = is_invariant(t, rho, tol);
  r.residual = trace_residual;
  r.verdict = inv.verdict;
  r.detail = "promoted to invariance; |Tr T†(ρ) − Tr ρ| = trace residual";
  return r;
}

}  // namespace hsem
