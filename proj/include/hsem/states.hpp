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

#include "hsem/eig.hpp"
#include "hsem/matrix.hpp"
#include "hsem/superop.hpp"
#include "hsem/types.hpp"

namespace hsem {

/// Positive trace-one matrix ρ together with its eigensystem and the cached
/// fractional powers the embedding i_ρ needs. The eigenbasis is stored in
/// descending eigenvalue order; that order defines the basis (h_n) used for
/// extended generators. Negative powers exist only when the state is
/// faithful.
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMatrix& rho,
                         const Tolerances& tol = Tolerances::global());

  int dim() const { return rho_.dim(); }
  const CMatrix& matrix() const { return rho_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const CMatrix& eigenbasis() const { return eigenbasis_; }
  double min_eigenvalue() const { return min_eig_; }

  bool faithful() const { return faithful_; }

  const CMatrix& quarter() const { return q14_; }         // ρ^{1/4}
  const CMatrix& half() const { return q12_; }            // ρ^{1/2}
  const CMatrix& three_quarter() const { return q34_; }   // ρ^{3/4}
  const CMatrix& inv_quarter() const;                     // ρ^{−1/4}
  const CMatrix& inv_half() const;                        // ρ^{−1/2}

  /// ω_ρ(x) = Tr(ρ x).
  cplx omega(const CMatrix& x) const;

 private:
  CMatrix rho_;
  std::vector<double> eigenvalues_;  // descending
  CMatrix eigenbasis_;               // columns h_n
  double min_eig_ = 0.0;
  bool faithful_ = false;
  CMatrix q14_, q12_, q34_, m14_, m12_;
};

bool is_faithful(const DensityMatrix& rho);

/// ‖T†(ρ) − ρ‖₁ ≤ invariance tolerance. Requires T Hermiticity-preserving.
CheckReport is_invariant(const Superoperator& t, const DensityMatrix& rho,
                         const Tolerances& tol = Tolerances::global());

/// min eig(ρ − T†(ρ)) ≥ −tolerance.
CheckReport is_subinvariant(const Superoperator& t, const DensityMatrix& rho,
                            const Tolerances& tol = Tolerances::global());

/// Subinvariant state of a unital map is invariant (trace preservation).
/// Requires is_unital and is_subinvariant to pass; the report carries the
/// trace identity residual |Tr T†(ρ) − Tr ρ|.
CheckReport subinvariant_unital_promotion(
    const Superoperator& t, const DensityMatrix& rho,
    const Tolerances& tol = Tolerances::global());

}  // namespace hsem
