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

#include <utility>

#include "hsem/states.hpp"
#include "hsem/superop.hpp"

namespace hsem {

/// i_ρ(x) = ρ^{1/4} x ρ^{1/4}.
CMatrix i_rho(const DensityMatrix& rho, const CMatrix& x);

/// i_{ρ^(−1)}(x) = (ρ^{1/4})⁺ x (ρ^{1/4})⁺; the true inverse of i_ρ when ρ is
/// faithful, otherwise inverts only on the range.
CMatrix i_rho_pinv(const DensityMatrix& rho, const CMatrix& x);

Superoperator i_rho_superop(const DensityMatrix& rho);
Superoperator i_rho_pinv_superop(const DensityMatrix& rho);

/// T̃ with T̃(i_ρ(x)) = i_ρ(T(x)), realized as i_ρ ∘ T ∘ i_ρ^{−1}.
struct InducedMap {
  Superoperator original;
  Superoperator induced;
  double intertwining_residual = 0.0;  // max over matrix units
  double s2_norm = 0.0;                // largest singular value of T̃
};

/// Requires faithful ρ (throws otherwise).
InducedMap induce(const Superoperator& t, const DensityMatrix& rho,
                  const Tolerances& tol = Tolerances::global());

/// GNS data for ω_ρ on B(H): K = B(H) with ⟨a,b⟩_ω = Tr(ρ a† b), cyclic
/// vector Ω = I. The Gram matrix in the matrix-unit basis is kron(ρᵀ, I).
struct GnsSpace {
  int hdim = 0;
  CMatrix gram;
  CMatrix gram_sqrt;      // symmetric square root
  CMatrix gram_inv_sqrt;  // defined for faithful ρ
};

GnsSpace gns_space(const DensityMatrix& rho,
                   const Tolerances& tol = Tolerances::global());

/// ω-operator norm of T̄ (T̄(aΩ) = T(a)Ω) via the similarity
/// G^{1/2}·T·G^{−1/2}. Requires faithful ρ.
double gns_norm(const GnsSpace& gns, const Superoperator& t,
                const Tolerances& tol = Tolerances::global());

struct GnsInduced {
  double weighted_norm = 0.0;
  CheckReport contraction;
};

/// Contraction check for T̄; hypothesis violations (Schwarz refuted or
/// subinvariance failing) are flagged in the report.
GnsInduced gns_induce(const Superoperator& t, const DensityMatrix& rho,
                      std::uint64_t seed = 0,
                      const Tolerances& tol = Tolerances::global());

/// (⟨i_ρ(a), i_ρ(b)⟩, ⟨a, b⟩_ω) = (Tr(a† ρ^{1/2} b ρ^{1/2}), Tr(ρ a† b)).
std::pair<cplx, cplx> inner_product_comparison(const DensityMatrix& rho,
                                               const CMatrix& a,
                                               const CMatrix& b);

}  // namespace hsem
