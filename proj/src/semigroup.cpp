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

#include "hsem/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsem/eig.hpp"
#include "hsem/instances.hpp"

namespace hsem {

Generator::Generator(Superoperator l, Provenance p)
    : op(std::move(l)), provenance(p) {
  unitality_residual = op.apply(CMatrix::identity(op.hdim())).frobenius();
}

Superoperator exponentiate(const Superoperator& l, double t,
                           bool allow_negative, const Tolerances& tol) {
  (void)tol;
  const int n = l.hdim();
  if (t == 0.0) return Superoperator::identity_map(n);
  if (t < 0.0 && !allow_negative)
    throw std::invalid_argument(
        "exponentiate: negative time requires the analytic-continuation flag");

  const double norm_scale = l.matrix().frobenius() * std::abs(t);
  int squarings = 0;
  if (norm_scale > 0.5)
    squarings = static_cast<int>(std::ceil(std::log2(norm_scale / 0.5)));
  if (squarings > 60)
    throw NumericError("exponentiate: ‖L‖·t too large to scale", norm_scale);

  const double dt = t / std::pow(2.0, squarings);
  // Order-16 Taylor kernel via Horner on the scaled generator.
  const CMatrix& lm = l.matrix();
  CMatrix acc = CMatrix::identity(n * n);
  for (int k = 16; k >= 1; --k) {
    CMatrix scaled = lm;
    scaled *= cplx(dt / k, 0.0);
    acc = scaled * acc;
    acc += CMatrix::identity(n * n);
  }
  for (int s = 0; s < squarings; ++s) acc = acc * acc;
  return Superoperator(n, std::move(acc));
}

const Superoperator& ExpCache::at(double t) {
  auto it = memo_.find(t);
  if (it == memo_.end())
    it = memo_.emplace(t, exponentiate(l_->op, t)).first;
  return it->second;
}

namespace {

// ⟨h_n, A h_m⟩ over the columns of `basis`.
CMatrix matrix_in_basis(const CMatrix& a, const CMatrix& basis) {
  const int n = a.dim();
  CMatrix out(n);
  const CMatrix ab = a * basis;
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      cplx s = 0.0;
      for (int i = 0; i < n; ++i) s += std::conj(basis(i, k)) * ab(i, m);
      out(k, m) = s;
    }
  return out;
}

}  // namespace

ExtendedGeneratorMatrix extended_generator(const Generator& l,
                                           const DensityMatrix& rho,
                                           const CMatrix& x,
                                           const Tolerances& tol) {
  if (l.hdim() != rho.dim() || x.dim() != rho.dim())
    throw std::invalid_argument("extended_generator: dimension mismatch");
  if (!rho.faithful())
    throw NumericError("extended_generator: requires a faithful state",
                       rho.min_eigenvalue());

  ExtendedGeneratorMatrix out;
  out.basis = rho.eigenbasis();
  out.closed_form = matrix_in_basis(l.op.apply(x), out.basis);

  const double t = tol.fd_step;
  auto estimate = [&](double step) {
    const Superoperator tt = exponentiate(l.op, step);
    CMatrix quotient = tt.apply(x) - x;
    quotient *= cplx(1.0 / step, 0.0);
    return matrix_in_basis(quotient, out.basis);
  };
  const CMatrix est_t = estimate(t);
  const CMatrix est_half = estimate(t / 2.0);
  // First-order quotient: 2·est(t/2) − est(t) cancels the O(t) term.
  CMatrix extrapolated = est_half;
  extrapolated *= cplx(2.0, 0.0);
  extrapolated -= est_t;
  out.finite_difference = extrapolated;
  out.step = t;
  out.extrapolation_spread = max_abs_diff(est_t, est_half);
  out.route_disagreement = max_abs_diff(out.finite_difference, out.closed_form);
  if (out.route_disagreement > 1e3 * tol.scaled(tol.fd_agreement))
    throw NumericError("extended_generator: difference quotient diverged",
                       out.route_disagreement);
  return out;
}

CMatrix compression(const CMatrix& extended_matrix,
                    const std::vector<int>& f) {
  if (f.empty()) throw std::invalid_argument("compression: empty index set");
  const int n = extended_matrix.dim();
  for (int idx : f)
    if (idx < 0 || idx >= n)
      throw std::out_of_range("compression: index out of range");
  CMatrix out(static_cast<int>(f.size()));
  for (size_t j = 0; j < f.size(); ++j)
    for (size_t i = 0; i < f.size(); ++i)
      out(static_cast<int>(i), static_cast<int>(j)) =
          extended_matrix(f[i], f[j]);
  return out;
}

bool RelationsReport::pass(const Tolerances& tol) const {
  return intertwine_residual <= tol.scaled(tol.intertwining) &&
         generator_compose_residual <= tol.scaled(tol.intertwining) &&
         generator_relation_residual <= tol.scaled(tol.generator_relation) &&
         worst_member_intertwining <= tol.scaled(tol.intertwining) &&
         worst_s2_norm <= 1.0 + tol.scaled(tol.contraction) &&
         worst_gns_norm <= 1.0 + tol.scaled(tol.contraction) &&
         continuity_monotone;
}

RelationsReport relations_suite(const Generator& l, const DensityMatrix& rho,
                              const std::vector<double>& times,
                              std::uint64_t seed, const Tolerances& tol) {
  if (l.hdim() != rho.dim())
    throw std::invalid_argument("relations_suite: dimension mismatch");
  RelationsReport rep;

  rep.faithful.name = "faithful";
  rep.faithful.residual = rho.min_eigenvalue();
  rep.faithful.verdict = rho.faithful() ? Verdict::Pass : Verdict::Fail;
  if (!rho.faithful()) return rep;  // nothing downstream is defined

  ExpCache cache(l);
  rep.subinvariant.verdict = Verdict::Pass;
  rep.schwarz.verdict = Verdict::Pass;
  for (size_t i = 0; i < times.size(); ++i) {
    const Superoperator& tt = cache.at(times[i]);
    const CheckReport sub = is_subinvariant(tt, rho, tol);
    if (!sub.ok() || std::abs(sub.residual) >
                         std::abs(rep.subinvariant.residual))
      rep.subinvariant = sub;
    const CheckReport sw = is_schwarz(tt, 50, seed + i, tol);
    if (rep.schwarz.verdict != Verdict::Fail &&
        (sw.verdict == Verdict::Fail ||
         rep.schwarz.verdict == Verdict::Pass))
      rep.schwarz = sw;
  }

  const Superoperator irho = i_rho_superop(rho);
  const Superoperator irho_pinv = i_rho_pinv_superop(rho);
  const Superoperator l_tilde = irho.compose(l.op).compose(irho_pinv);

  // Clause (1): L̃ ∘ i_ρ = i_ρ ∘ L, on the basis and as composed matrices.
  double worst = 0.0;
  for (const CMatrix& e : matrix_unit_basis(rho.dim())) {
    const CMatrix lhs = l_tilde.apply(i_rho(rho, e));
    const CMatrix rhs = i_rho(rho, l.op.apply(e));
    worst = std::max(worst, (lhs - rhs).frobenius());
  }
  rep.intertwine_residual = worst;
  rep.generator_compose_residual =
      (l_tilde.compose(irho).matrix() - irho.compose(l.op).matrix())
          .frobenius();

  // Clause (2): i_{ρ^(−1)} ∘ L̃ ∘ i_ρ equals the extended generator.
  auto relation_residual = [&](const CMatrix& basis) {
    double r = 0.0;
    for (const CMatrix& e : matrix_unit_basis(rho.dim())) {
      const CMatrix via_tilde =
          i_rho_pinv(rho, l_tilde.apply(i_rho(rho, e)));
      const CMatrix lhs = matrix_in_basis(via_tilde, basis);
      const CMatrix rhs = matrix_in_basis(l.op.apply(e), basis);
      r = std::max(r, (lhs - rhs).frobenius());
    }
    return r;
  };
  rep.generator_relation_residual = relation_residual(rho.eigenbasis());

  // Degenerate eigenvalues of ρ leave the basis non-unique; re-run clause (2)
  // with a random unitary rotation inside each degenerate block.
  const auto& lam = rho.eigenvalues();
  std::vector<std::pair<int, int>> blocks;
  for (int start = 0; start < rho.dim();) {
    int end = start + 1;
    while (end < rho.dim() &&
           std::abs(lam[end] - lam[start]) <=
               tol.sigma_group * std::max(lam[start], 1e-300))
      ++end;
    blocks.emplace_back(start, end);
    start = end;
  }
  rep.degenerate_blocks =
      std::any_of(blocks.begin(), blocks.end(),
                  [](const auto& b) { return b.second - b.first > 1; });
  if (rep.degenerate_blocks) {
    Rng rng(seed + 1000);
    CMatrix rotated = rho.eigenbasis();
    for (const auto& [start, end] : blocks) {
      const int w = end - start;
      if (w == 1) continue;
      // QR-orthonormalized Gaussian block.
      CMatrix g(w);
      for (int j = 0; j < w; ++j)
        for (int i = 0; i < w; ++i) g(i, j) = rng.cnormal();
      for (int j = 0; j < w; ++j) {
        for (int k = 0; k < j; ++k) {
          cplx proj = 0.0;
          for (int i = 0; i < w; ++i) proj += std::conj(g(i, k)) * g(i, j);
          for (int i = 0; i < w; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < w; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        for (int i = 0; i < w; ++i) g(i, j) /= nrm;
      }
      for (int j = 0; j < w; ++j)
        for (int i = 0; i < rho.dim(); ++i) {
          cplx s = 0.0;
          for (int k = 0; k < w; ++k)
            s += rho.eigenbasis()(i, start + k) * g(k, j);
          rotated(i, start + j) = s;
        }
    }
    rep.rotated_relation_residual = relation_residual(rotated);
  } else {
    rep.rotated_relation_residual = rep.generator_relation_residual;
  }

  // Clause (3): strong continuity surrogate, plus per-member diagnostics.
  Rng rng(seed);
  std::vector<CMatrix> probes;
  for (int s = 0; s < 3; ++s) probes.push_back(random_complex(rho.dim(), rng));
  rep.continuity_monotone = true;
  const GnsSpace gns = gns_space(rho, tol);
  double previous = -1.0;
  for (int decade = 0; decade >= -6; --decade) {
    const double t = std::pow(10.0, decade);
    const Superoperator tt_tilde =
        irho.compose(cache.at(t)).compose(irho_pinv);
    double worst_probe = 0.0;
    for (const CMatrix& y : probes)
      worst_probe =
          std::max(worst_probe, (tt_tilde.apply(y) - y).frobenius());
    rep.continuity_profile.push_back(worst_probe);
    if (previous >= 0.0 && worst_probe > previous + tol.scaled(1e-12))
      rep.continuity_monotone = false;
    previous = worst_probe;
  }
  for (double t : times) {
    const InducedMap member = induce(cache.at(t), rho, tol);
    rep.worst_member_intertwining =
        std::max(rep.worst_member_intertwining, member.intertwining_residual);
    rep.worst_s2_norm = std::max(rep.worst_s2_norm, member.s2_norm);
    rep.worst_gns_norm =
        std::max(rep.worst_gns_norm, gns_norm(gns, cache.at(t), tol));
  }
  return rep;
}

}  // namespace hsem
