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

#include "hsem/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsem/eig.hpp"
#include "hsem/kernels.hpp"

namespace hsem {

namespace {

double star_preservation_defect(const Superoperator& k) {
  double defect = 0.0;
  for (const CMatrix& e : matrix_unit_basis(k.hdim()))
    defect = std::max(defect,
                      max_abs_diff(k.apply(e.adjoint()), k.apply(e).adjoint()));
  return defect;
}

// Deterministic overall sign: positive trace if significant, otherwise a
// positive leading entry (self-adjoint operators admit exactly ±1).
void canonical_sign(CMatrix& m) {
  const double tr = m.trace().real();
  if (std::abs(tr) > 1e-8) {
    if (tr < 0.0) m *= cplx(-1.0, 0.0);
    return;
  }
  for (size_t i = 0; i < m.storage().size(); ++i) {
    const cplx v = m.data()[i];
    if (std::abs(v) > 1e-8) {
      const double lead = std::abs(v.real()) >= std::abs(v.imag())
                              ? v.real()
                              : v.imag();
      if (lead < 0.0) m *= cplx(-1.0, 0.0);
      return;
    }
  }
}

}  // namespace

Superoperator resolvent_K(const Superoperator& l_tilde,
                          const Tolerances& tol) {
  const int n = l_tilde.hdim();
  const CMatrix shifted =
      l_tilde.matrix() - CMatrix::identity(n * n);
  const SingularSystem sv = svd(shifted, tol);
  const double smin = sv.sigma.empty() ? 0.0 : sv.sigma.back();
  if (smin <= tol.scaled(tol.resolvent_gap))
    throw NumericError("resolvent_K: 1 is too close to the spectrum of L̃",
                       smin);
  Superoperator k(n, invert(shifted));
  const double residual =
      (k.matrix() * shifted - CMatrix::identity(n * n)).frobenius();
  if (residual > tol.scaled(tol.resolvent_residual))
    throw NumericError("resolvent_K: inversion residual too large", residual);
  const double star = star_preservation_defect(k);
  if (star > tol.scaled(tol.star_preserve))
    throw NumericError("resolvent_K: K is not star-preserving", star);
  return k;
}

Superoperator SpectralDecomposition::reconstruct() const {
  const int n2 = hdim * hdim;
  CMatrix m = CMatrix::identity(n2);
  for (size_t t = 0; t < lambda.size(); ++t) {
    const CVector va = vectorize(a[t]);
    const CVector vb = vectorize(b[t]);
    for (int j = 0; j < n2; ++j) {
      const cplx w = lambda[t] * std::conj(vb[j]);
      if (w == cplx(0.0, 0.0)) continue;
      for (int i = 0; i < n2; ++i) m(i, j) += va[i] * w;
    }
  }
  return Superoperator(hdim, std::move(m));
}

SpectralDecomposition self_adjoint_sve(const Superoperator& k,
                                       const Tolerances& tol) {
  const int n = k.hdim();
  const int n2 = n * n;
  const double star = star_preservation_defect(k);
  if (star > tol.scaled(tol.star_preserve))
    throw NumericError("self_adjoint_sve: K is not star-preserving", star);

  const CMatrix ktk = (k.matrix().adjoint() * k.matrix()).hermitized();
  const EigenSystem es = hermitian_eig(ktk, tol);

  SpectralDecomposition d;
  d.hdim = n;
  d.sigma.resize(n2);
  for (int j = 0; j < n2; ++j) {
    const double lam = std::max(es.eigenvalues[n2 - 1 - j], 0.0);
    d.sigma[j] = std::sqrt(lam);  // descending
  }
  if (d.sigma.back() <= 0.0)
    throw NumericError("self_adjoint_sve: K is singular", d.sigma.back());

  // Group numerically equal singular values; the self-adjoint basis is
  // built per block exactly as the eigenspace construction prescribes.
  std::vector<CMatrix> v_ops;
  v_ops.reserve(n2);
  int start = 0;
  while (start < n2) {
    int end = start + 1;
    while (end < n2 &&
           d.sigma[start] - d.sigma[end] <=
               tol.scaled(tol.sigma_group) * d.sigma[start])
      ++end;
    const int width = end - start;

    // Candidate self-adjoint spanning set {y + y†, i(y − y†)}.
    std::vector<CMatrix> candidates;
    candidates.reserve(2 * width);
    for (int j = start; j < end; ++j) {
      CVector col(n2);
      for (int i = 0; i < n2; ++i)
        col[i] = es.eigenvectors(i, n2 - 1 - j);
      const CMatrix y = unvectorize(col);
      const CMatrix ya = y.adjoint();
      candidates.push_back(y + ya);
      CMatrix anti = y - ya;
      anti *= cplx(0.0, 1.0);
      candidates.push_back(anti);
    }
    // Real Gram-Schmidt with drop threshold; keeps exactly `width` vectors.
    std::vector<CMatrix> kept;
    for (CMatrix& cand : candidates) {
      if (static_cast<int>(kept.size()) == width) break;
      CMatrix w = cand;
      for (const CMatrix& prev : kept) {
        const cplx proj = hs_inner(prev, w);
        w -= proj * prev;
      }
      const double nrm = w.frobenius();
      if (nrm <= tol.scaled(tol.gram_schmidt_drop)) continue;
      w *= cplx(1.0 / nrm, 0.0);
      kept.push_back(w.hermitized());
    }
    if (static_cast<int>(kept.size()) != width)
      throw NumericError(
          "self_adjoint_sve: self-adjoint basis construction degenerated",
          static_cast<double>(kept.size()) - width);
    for (CMatrix& m : kept) {
      canonical_sign(m);
      v_ops.push_back(std::move(m));
    }
    start = end;
  }

  d.a = std::move(v_ops);
  d.b.reserve(n2);
  d.lambda.resize(n2);
  double herm_defect = 0.0;
  for (int j = 0; j < n2; ++j) {
    CMatrix u = k.apply(d.a[j]);
    u *= cplx(1.0 / d.sigma[j], 0.0);
    herm_defect = std::max(herm_defect, u.hermiticity_defect());
    d.b.push_back(u.hermitized());
    d.lambda[j] = 1.0 / d.sigma[j];
  }
  for (const CMatrix& m : d.a)
    herm_defect = std::max(herm_defect, m.hermiticity_defect());
  d.hermiticity_defect = herm_defect;
  if (herm_defect > tol.scaled(tol.sve_orthonormal))
    throw NumericError("self_adjoint_sve: singular operators not Hermitian",
                       herm_defect);

  double ortho = 0.0;
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j <= i; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      ortho = std::max(ortho,
                       std::abs(hs_inner(d.a[i], d.a[j]) - cplx(target, 0.0)));
      ortho = std::max(ortho,
                       std::abs(hs_inner(d.b[i], d.b[j]) - cplx(target, 0.0)));
    }
  d.orthonormality_defect = ortho;

  // K = Σ σ_n |b_n⟩⟨a_n| validity.
  CMatrix k_hat(n2);
  for (int t = 0; t < n2; ++t) {
    const CVector vb = vectorize(d.b[t]);
    const CVector va = vectorize(d.a[t]);
    for (int j = 0; j < n2; ++j) {
      const cplx w = d.sigma[t] * std::conj(va[j]);
      if (w == cplx(0.0, 0.0)) continue;
      for (int i = 0; i < n2; ++i) k_hat(i, j) += vb[i] * w;
    }
  }
  d.sve_residual = (k_hat - k.matrix()).frobenius();
  return d;
}

SpectralDecomposition decompose_generator(const Superoperator& l_tilde,
                                          const Tolerances& tol) {
  const Superoperator k = resolvent_K(l_tilde, tol);
  SpectralDecomposition d = self_adjoint_sve(k, tol);
  d.reconstruction_residual =
      (d.reconstruct().matrix() - l_tilde.matrix()).frobenius();
  return d;
}

CMatrix ccp_tensor_matrix(const SpectralDecomposition& d) {
  const int n = d.hdim;
  const int n2 = n * n;
  CMatrix m(n2 * n);  // index ((j·n + i)·n + k)
  const CMatrix eye = CMatrix::identity(n);
  for (size_t t = 0; t < d.lambda.size(); ++t) {
    // M_{b}⊗a = kron(bᵀ, I) ⊗ a on vec(x) ⊗ h.
    const CMatrix bt = d.b[t].transpose();
    kernels::kron3_accumulate(cplx(d.lambda[t], 0.0), bt.data(), n, eye.data(),
                              n, d.a[t].data(), n, m.data());
  }
  return m;
}

CMatrix te_matrix(const CVector& e) {
  const int n = static_cast<int>(e.size());
  const int dim = n * n * n;
  CMatrix t(dim);
  // T_e(E_{pq} ⊗ e_r) = δ_{qr} |e_p⟩⟨e| ⊗ e
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int col = (q * n + p) * n + q;  // input E_{pq} ⊗ e_q
      for (int j = 0; j < n; ++j) {
        const cplx ce = std::conj(e[j]);
        if (ce == cplx(0.0, 0.0)) continue;
        for (int k = 0; k < n; ++k) {
          if (e[k] == cplx(0.0, 0.0)) continue;
          t((j * n + p) * n + k, col) = ce * e[k];
        }
      }
    }
  return t;
}

CMatrix contraction_kernel_basis(int n) {
  const int dim = n * n * n;
  const int kdim = dim - n;
  CMatrix basis(dim);  // first kdim columns used; returned as dim×dim with
                       // trailing zero columns trimmed by callers via kdim
  int col = 0;
  // E_{ij} ⊗ e_k with j ≠ k are annihilated and orthonormal.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (j == k) continue;
        basis((j * n + i) * n + k, col++) = 1.0;
      }
  // For fixed i, the simplex directions of {E_{ij} ⊗ e_j}_j sum to zero
  // under the contraction; w_m ∝ Σ_{j≤m} E_{ij}⊗e_j − m·E_{i,m+1}⊗e_{m+1}.
  for (int i = 0; i < n; ++i)
    for (int m = 1; m < n; ++m) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(m) * (m + 1));
      for (int j = 0; j < m; ++j)
        basis((j * n + i) * n + j, col) = scale;
      basis((m * n + i) * n + m, col) = -scale * m;
      ++col;
    }
  if (col != kdim)
    throw std::logic_error("contraction_kernel_basis: dimension bookkeeping");
  return basis;
}

CcpReport ccp_test(const SpectralDecomposition& d, const CVector& e,
                   SandwichSign sign, const Tolerances& tol) {
  const int n = d.hdim;
  if (static_cast<int>(e.size()) != n)
    throw std::invalid_argument("ccp_test: vector dimension mismatch");
  if (std::abs(vec_norm(e) - 1.0) > 1e-10)
    throw std::invalid_argument("ccp_test: e must be a unit vector");

  CcpReport rep;
  rep.sign = sign;
  const CMatrix m = ccp_tensor_matrix(d);
  rep.m_norm = m.frobenius();
  const int dim = n * n * n;

  CMatrix s = CMatrix::identity(dim);
  const CMatrix te = te_matrix(e);
  if (sign == SandwichSign::Minus)
    s -= te;
  else
    s += te;
  const CMatrix sandwiched = (s.adjoint() * m * s).hermitized();
  rep.sandwich_min_eig = min_eigenvalue(sandwiched, tol);

  // Kernel-projection oracle: positivity of M on {w : Σ y_i(h_i) = 0}.
  // Vacuous (min eig 0) when the kernel is the zero subspace (n = 1).
  const int kdim = dim - n;
  if (kdim > 0) {
    const CMatrix kb = contraction_kernel_basis(n);
    CMatrix projected(kdim);
    const CMatrix mk = m * kb;
    for (int j = 0; j < kdim; ++j)
      for (int i = 0; i < kdim; ++i) {
        cplx acc = 0.0;
        for (int r = 0; r < dim; ++r) acc += std::conj(kb(r, i)) * mk(r, j);
        projected(i, j) = acc;
      }
    rep.kernel_min_eig = min_eigenvalue(projected.hermitized(), tol);
  }

  const double slack = tol.scaled(tol.ccp) * std::max(1.0, rep.m_norm);
  rep.sandwich_verdict = rep.sandwich_min_eig >= -slack;
  rep.kernel_verdict = rep.kernel_min_eig >= -slack;
  if (rep.sandwich_verdict != rep.kernel_verdict)
    throw NumericError(
        "ccp_test: sandwich and kernel-projection verdicts disagree",
        rep.sandwich_min_eig - rep.kernel_min_eig);
  rep.ccp = rep.sandwich_verdict;

  rep.report.name = "ccp";
  rep.report.verdict = rep.ccp ? Verdict::Pass : Verdict::Fail;
  rep.report.residual = rep.kernel_min_eig;
  rep.report.detail =
      sign == SandwichSign::Minus
          ? "sandwich (Id − T_e)† M (Id − T_e) and kernel projection"
          : "sandwich (Id + T_e)† M (Id + T_e) and kernel projection "
            "(non-default sign convention)";
  return rep;
}

CMatrix GkslForm::apply(const CMatrix& x) const {
  CMatrix out = x;
  for (const Jump& j : jumps) {
    CMatrix term = j.y * x * j.y.adjoint();
    term *= cplx(j.rate, 0.0);
    out += term;
  }
  return out;
}

CMatrix GkslForm::apply_normal_form(const CMatrix& x) const {
  CMatrix out(x.dim());
  for (const Jump& j : jumps) {
    const CMatrix yy = j.y * j.y.adjoint();
    CMatrix term = j.y * x * j.y.adjoint();
    CMatrix anti = yy * x + x * yy;
    anti *= cplx(0.5, 0.0);
    term -= anti;
    term *= cplx(j.rate, 0.0);
    out += term;
  }
  return out;
}

GkslForm gksl_reconstruct(const SpectralDecomposition& d,
                          const DensityMatrix& rho, const Generator& l,
                          const std::vector<CMatrix>& basis_in,
                          const Tolerances& tol) {
  const int n = d.hdim;
  if (rho.dim() != n || l.hdim() != n)
    throw std::invalid_argument("gksl_reconstruct: dimension mismatch");
  if (!rho.faithful())
    throw NumericError("gksl_reconstruct: requires a faithful state",
                       rho.min_eigenvalue());
  const std::vector<CMatrix> basis =
      basis_in.empty() ? matrix_unit_basis(n) : basis_in;

  GkslForm form;
  const double clip = tol.scaled(tol.psd_clip);

  auto psd_parts = [&](const CMatrix& m) {
    const EigenSystem es = hermitian_eig(m, tol);
    CMatrix pos(n), neg(n);
    for (int k = 0; k < n; ++k) {
      const double lam = es.eigenvalues[k];
      if (std::abs(lam) <= clip * std::max(1.0, m.frobenius())) continue;
      CMatrix& dst = lam > 0.0 ? pos : neg;
      const double w = std::abs(lam);
      for (int j = 0; j < n; ++j) {
        const cplx vjk = std::conj(es.eigenvectors(j, k)) * w;
        for (int i = 0; i < n; ++i) dst(i, j) += es.eigenvectors(i, k) * vjk;
      }
    }
    return std::make_pair(pos.hermitized(), neg.hermitized());
  };

  const double prune = tol.scaled(tol.jump_prune);
  for (size_t t = 0; t < d.lambda.size(); ++t) {
    const auto [a_pos, a_neg] = psd_parts(d.a[t]);
    const auto [b_pos, b_neg] = psd_parts(d.b[t]);
    form.c_parts.push_back(a_pos);
    form.c_parts.push_back(a_neg);
    form.d_parts.push_back(b_pos);
    form.d_parts.push_back(b_neg);
    const std::pair<const CMatrix*, double> cs[2] = {{&a_pos, 1.0},
                                                     {&a_neg, -1.0}};
    const std::pair<const CMatrix*, double> ds[2] = {{&b_pos, 1.0},
                                                     {&b_neg, -1.0}};
    for (const auto& [c, sc] : cs) {
      if (c->frobenius() == 0.0) continue;
      const CMatrix sqrt_c = fractional_power(*c, 0.5, tol);
      for (const auto& [dm, sd] : ds) {
        if (dm->frobenius() == 0.0) continue;
        const CMatrix sqrt_d = fractional_power(*dm, 0.5, tol);
        const double rate = d.lambda[t] * sc * sd;
        const CMatrix left = rho.inv_quarter() * sqrt_c;
        const CMatrix right = sqrt_d * rho.quarter();
        for (const CMatrix& ek : basis) {
          CMatrix y = left * ek * right;
          form.raw_jump_count++;
          if (std::abs(rate) * y.frobenius() * y.frobenius() <= prune)
            continue;
          form.jumps.push_back({std::move(y), rate});
        }
      }
    }
  }

  // Assemble the two reconstructed superoperators jump by jump:
  //   apply form   x + Σ λ′ y x y†
  //   normal form  Σ λ′ (y x y† − ½{y y†, x})
  // vec(y x y†)[(j,i)] = Σ_{p,q} y(i,p)·conj(y(j,q))·x(p,q).
  const int n2 = n * n;
  CMatrix m_apply = CMatrix::identity(n2);
  CMatrix m_normal(n2);
  CMatrix unit(n);
  for (const auto& jmp : form.jumps) {
    const CMatrix& y = jmp.y;
    const cplx w(jmp.rate, 0.0);
    for (int j = 0; j < n; ++j)
      for (int q = 0; q < n; ++q) {
        const cplx wyjq = w * std::conj(y(j, q));
        if (wyjq == cplx(0.0, 0.0)) continue;
        for (int p = 0; p < n; ++p)
          for (int i = 0; i < n; ++i) {
            const cplx term = wyjq * y(i, p);
            m_apply(j * n + i, q * n + p) += term;
            m_normal(j * n + i, q * n + p) += term;
          }
      }
    CMatrix yy = y * y.adjoint();
    yy *= w;
    unit += yy;
    // −½(yy†·x + x·yy†)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int i = 0; i < n; ++i) {
          m_normal(j * n + i, j * n + p) -= 0.5 * yy(i, p);
          m_normal(p * n + i, j * n + i) -= 0.5 * yy(j, p);
        }
  }
  form.unit_residual = (unit + CMatrix::identity(n)).frobenius();

  CMatrix identity_c(n);
  for (size_t t = 0; t < d.lambda.size(); ++t) {
    const cplx weight =
        d.lambda[t] * hs_inner(d.b[t], rho.half());
    CMatrix term = i_rho_pinv(rho, d.a[t]);
    term *= weight;
    identity_c += term;
  }
  form.identity_c_residual =
      (identity_c + CMatrix::identity(n)).frobenius();

  // Max over the matrix-unit basis of ‖L(x) − form(x)‖₂ is the largest
  // column norm of the superoperator difference.
  auto worst_column = [&](const CMatrix& recon) {
    double worst = 0.0;
    for (int s = 0; s < n2; ++s) {
      double col = 0.0;
      for (int r = 0; r < n2; ++r)
        col += std::norm(recon(r, s) - l.op.matrix()(r, s));
      worst = std::max(worst, std::sqrt(col));
    }
    return worst;
  };
  form.generator_residual = worst_column(m_apply);
  form.normal_form_residual = worst_column(m_normal);
  return form;
}

double trace_identity_defect(const std::vector<CMatrix>& basis,
                             const CMatrix& a) {
  const int n = a.dim();
  CMatrix sum(n);
  for (const CMatrix& ek : basis) sum += ek * a * ek.adjoint();
  CMatrix target = CMatrix::identity(n);
  target *= a.trace();
  return (sum - target).frobenius();
}

}  // namespace hsem
