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

#include "hsem/induced.hpp"

#include <cmath>
#include <stdexcept>

#include "hsem/eig.hpp"

namespace hsem {

CMatrix i_rho(const DensityMatrix& rho, const CMatrix& x) {
  if (x.dim() != rho.dim())
    throw std::invalid_argument("i_rho: dimension mismatch");
  return rho.quarter() * x * rho.quarter();
}

CMatrix i_rho_pinv(const DensityMatrix& rho, const CMatrix& x) {
  if (x.dim() != rho.dim())
    throw std::invalid_argument("i_rho_pinv: dimension mismatch");
  if (rho.faithful()) return rho.inv_quarter() * x * rho.inv_quarter();
  const CMatrix q = moore_penrose(rho.quarter());
  return q * x * q;
}

Superoperator i_rho_superop(const DensityMatrix& rho) {
  return Superoperator::sandwich(rho.quarter(), rho.quarter());
}

Superoperator i_rho_pinv_superop(const DensityMatrix& rho) {
  if (rho.faithful())
    return Superoperator::sandwich(rho.inv_quarter(), rho.inv_quarter());
  const CMatrix q = moore_penrose(rho.quarter());
  return Superoperator::sandwich(q, q);
}

InducedMap induce(const Superoperator& t, const DensityMatrix& rho,
                  const Tolerances& tol) {
  if (t.hdim() != rho.dim())
    throw std::invalid_argument("induce: dimension mismatch");
  if (!rho.faithful())
    throw NumericError("induce: ρ^{-1/4} undefined for a non-faithful state",
                       rho.min_eigenvalue());
  InducedMap out;
  out.original = t;
  out.induced = i_rho_superop(rho).compose(t).compose(i_rho_pinv_superop(rho));

  double worst = 0.0;
  for (const CMatrix& e : matrix_unit_basis(rho.dim())) {
    const CMatrix lhs = out.induced.apply(i_rho(rho, e));
    const CMatrix rhs = i_rho(rho, t.apply(e));
    worst = std::max(worst, (lhs - rhs).frobenius());
  }
  out.intertwining_residual = worst;
  out.s2_norm = operator_norm(out.induced.matrix(), tol);
  return out;
}

GnsSpace gns_space(const DensityMatrix& rho, const Tolerances& tol) {
  (void)tol;
  GnsSpace g;
  const int n = rho.dim();
  g.hdim = n;
  // Gram in the matrix-unit basis: ⟨E_ij, E_kl⟩_ω = δ_ik ρ(l,j), i.e.
  // kron(ρᵀ, I); its square root is kron((ρ^{1/2})ᵀ, I).
  auto build = [n](const CMatrix& w) {
    CMatrix m(n * n);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const cplx wt = w(l, j);
        if (wt == cplx(0.0, 0.0)) continue;
        for (int i = 0; i < n; ++i) m(j * n + i, l * n + i) = wt;
      }
    return m;
  };
  g.gram = build(rho.matrix());
  g.gram_sqrt = build(rho.half());
  if (rho.faithful()) g.gram_inv_sqrt = build(rho.inv_half());
  return g;
}

double gns_norm(const GnsSpace& gns, const Superoperator& t,
                const Tolerances& tol) {
  if (gns.gram_inv_sqrt.empty())
    throw NumericError("gns_norm: requires a faithful state", 0.0);
  const CMatrix weighted = gns.gram_sqrt * t.matrix() * gns.gram_inv_sqrt;
  return operator_norm(weighted, tol);
}

GnsInduced gns_induce(const Superoperator& t, const DensityMatrix& rho,
                      std::uint64_t seed, const Tolerances& tol) {
  if (!rho.faithful())
    throw NumericError("gns_induce: requires a faithful state",
                       rho.min_eigenvalue());
  GnsInduced out;
  const GnsSpace g = gns_space(rho, tol);
  out.weighted_norm = gns_norm(g, t, tol);

  out.contraction.name = "gns-contraction";
  out.contraction.residual = out.weighted_norm;
  const bool contractive =
      out.weighted_norm <= 1.0 + tol.scaled(tol.contraction);
  const CheckReport schwarz = is_schwarz(t, 50, seed, tol);
  const CheckReport sub = is_subinvariant(t, rho, tol);
  if (!schwarz.ok() || !sub.ok()) {
    out.contraction.verdict =
        contractive ? Verdict::Pass : Verdict::SkippedHypothesis;
    out.contraction.detail = std::string("hypothesis violated (") +
                             (!schwarz.ok() ? "Schwarz refuted" :
                                              "not subinvariant") +
                             "); ω-norm reported";
  } else {
    out.contraction.verdict = contractive ? Verdict::Pass : Verdict::Fail;
    out.contraction.detail = "ω-operator norm of T̄";
  }
  return out;
}

std::pair<cplx, cplx> inner_product_comparison(const DensityMatrix& rho,
                                               const CMatrix& a,
                                               const CMatrix& b) {
  if (a.dim() != rho.dim() || b.dim() != rho.dim())
    throw std::invalid_argument("inner_product_comparison: dimension mismatch");
  const cplx induced = hs_inner(i_rho(rho, a), i_rho(rho, b));
  const cplx gns = (rho.matrix() * a.adjoint() * b).trace();
  return {induced, gns};
}

}  // namespace hsem
