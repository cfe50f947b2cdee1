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

#pragma once

#include <vector>

#include "hsem/matrix.hpp"
#include "hsem/types.hpp"

namespace hsem {

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // orthonormal columns, same order
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Deterministic sweep
/// order; stops when the off-diagonal Frobenius norm falls below
/// jacobi_offdiag·‖A‖₂. Throws std::invalid_argument for a non-Hermitian
/// input and NumericError if the sweep cap is exhausted.
EigenSystem hermitian_eig(const CMatrix& a,
                          const Tolerances& tol = Tolerances::global());

/// V·diag(clip(λ,0)^p)·V† for PSD a. Eigenvalues in [−psd_clip·‖A‖, 0) are
/// clipped to zero; below that window throws. p < 0 requires all eigenvalues
/// above the faithfulness threshold.
CMatrix fractional_power(const CMatrix& a, double p,
                         const Tolerances& tol = Tolerances::global());

struct SingularSystem {
  std::vector<double> sigma;  // descending, all ≥ 0
  CMatrix u;                  // left vectors; zero columns for σ = 0
  CMatrix v;                  // right vectors, orthonormal
};

/// Singular value decomposition via the Hermitian eigenproblem of A†A.
SingularSystem svd(const CMatrix& a,
                   const Tolerances& tol = Tolerances::global());

/// Moore-Penrose pseudoinverse with relative rank cutoff pinv_cutoff·σmax.
/// Total function: defined for every square matrix including 0.
CMatrix moore_penrose(const CMatrix& x,
                      const Tolerances& tol = Tolerances::global());

/// ‖x‖_p for p ∈ {1, 2, ∞} (pass std::numeric_limits<double>::infinity()).
double schatten_norm(const CMatrix& x, double p,
                     const Tolerances& tol = Tolerances::global());

double operator_norm(const CMatrix& x,
                     const Tolerances& tol = Tolerances::global());
double trace_norm(const CMatrix& x,
                  const Tolerances& tol = Tolerances::global());

/// Smallest eigenvalue of a Hermitian matrix (hermitizes internally).
double min_eigenvalue(const CMatrix& a,
                      const Tolerances& tol = Tolerances::global());

/// Inverse by Gaussian elimination with partial pivoting. Throws
/// NumericError when a pivot falls below the relative threshold.
CMatrix invert(const CMatrix& a, double rel_pivot_tol = 1e-13);

}  // namespace hsem
