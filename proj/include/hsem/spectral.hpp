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

#include "hsem/semigroup.hpp"
#include "hsem/states.hpp"
#include "hsem/superop.hpp"

namespace hsem {

/// K = (L̃ − I)⁻¹. Guards the spectral gap at 1 by the smallest singular
/// value of L̃ − I and verifies K is star-preserving. Throws NumericError
/// with the offending singular value when 1 is too close to the spectrum.
Superoperator resolvent_K(const Superoperator& l_tilde,
                          const Tolerances& tol = Tolerances::global());

/// Self-adjoint singular system of K: K = Σ σ_n |u_n⟩⟨v_n| with u_n, v_n
/// Hermitian orthonormal operators, built per eigenvalue block of K†K via
/// {y + y†, i(y − y†)} and real Gram-Schmidt. λ_n = 1/σ_n gives
/// L̃ = I + Σ λ_n |a_n⟩⟨b_n| with a_n = v_n, b_n = u_n.
struct SpectralDecomposition {
  int hdim = 0;
  std::vector<double> sigma;   // descending
  std::vector<double> lambda;  // 1/σ, ascending in magnitude order of σ
  std::vector<CMatrix> a;      // = v_n, Hermitian orthonormal
  std::vector<CMatrix> b;      // = u_n, Hermitian orthonormal
  double sve_residual = 0.0;            // ‖K − Σ σ_n |b_n⟩⟨a_n|‖₂
  double reconstruction_residual = 0.0; // ‖L̃ − (I + Σ λ_n |a_n⟩⟨b_n|)‖₂
  double orthonormality_defect = 0.0;
  double hermiticity_defect = 0.0;

  /// I + Σ λ_n |a_n⟩⟨b_n| as a superoperator.
  Superoperator reconstruct() const;
};

SpectralDecomposition self_adjoint_sve(
    const Superoperator& k, const Tolerances& tol = Tolerances::global());

/// resolvent_K followed by self_adjoint_sve, with the reconstruction
/// residual measured against the given L̃.
SpectralDecomposition decompose_generator(
    const Superoperator& l_tilde, const Tolerances& tol = Tolerances::global());

enum class SandwichSign { Minus, Plus };

/// Σ λ_n M_{b_n} ⊗ a_n on S₂(H)⊗H as an n³×n³ matrix (assembled by the
/// kron3 kernel; this is the hot loop).
CMatrix ccp_tensor_matrix(const SpectralDecomposition& d);

/// Matrix of T_e: x⊗h ↦ |x(h)⟩⟨e| ⊗ e.
CMatrix te_matrix(const CVector& e);

/// Orthonormal basis of the kernel of the contraction y⊗h ↦ y(h)
/// (dimension n³ − n); the subspace where conditional complete positivity
/// is decided.
CMatrix contraction_kernel_basis(int n);

struct CcpReport {
  SandwichSign sign = SandwichSign::Minus;
  double sandwich_min_eig = 0.0;
  double kernel_min_eig = 0.0;
  double m_norm = 0.0;
  bool sandwich_verdict = false;
  bool kernel_verdict = false;
  bool ccp = false;  // agreed verdict
  CheckReport report;
};

/// Positivity of (Id ∓ T_e)† (Σ λ_n M_{b_n}⊗a_n) (Id ∓ T_e) for a unit
/// vector e, cross-checked against the kernel-projection oracle. Throws
/// std::invalid_argument for a non-unit e and NumericError when the two
/// verdicts disagree.
CcpReport ccp_test(const SpectralDecomposition& d, const CVector& e,
                   SandwichSign sign = SandwichSign::Minus,
                   const Tolerances& tol = Tolerances::global());

struct GkslForm {
  struct Jump {
    CMatrix y;
    double rate = 0.0;  // signed λ′
  };
  std::vector<Jump> jumps;
  std::vector<CMatrix> c_parts;  // PSD positive/negative parts of a_n
  std::vector<CMatrix> d_parts;  // PSD positive/negative parts of b_n
  int raw_jump_count = 0;        // before pruning
  double generator_residual = 0.0;      // vs L over the matrix-unit basis
  double normal_form_residual = 0.0;    // anticommutator form vs L
  double unit_residual = 0.0;           // ‖I + Σ λ′ y y†‖₂
  double identity_c_residual = 0.0;     // ‖I + Σ λ_n ⟨b_n,ρ^{1/2}⟩ i_{ρ^(−1)}(a_n)‖₂

  /// x ↦ x + Σ λ′ y x y†.
  CMatrix apply(const CMatrix& x) const;
  /// x ↦ Σ λ′ (y x y† − ½{y y†, x}).
  CMatrix apply_normal_form(const CMatrix& x) const;
};

/// Jump-operator reconstruction of the generator from the decomposition:
/// a_n, b_n split into PSD parts, y = ρ^{−1/4}√c E_k √d ρ^{1/4} over an
/// orthonormal basis (E_k) of B(H) (matrix units by default). Jumps with
/// |λ′|·‖y‖₂² ≤ jump_prune are dropped. Residuals are measured against the
/// reference generator l.
GkslForm gksl_reconstruct(const SpectralDecomposition& d,
                          const DensityMatrix& rho, const Generator& l,
                          const std::vector<CMatrix>& basis = {},
                          const Tolerances& tol = Tolerances::global());

/// Defect of the operator-valued trace identity Σ_k E_k A E_k† = Tr(A)·I.
double trace_identity_defect(const std::vector<CMatrix>& basis,
                             const CMatrix& a);

}  // namespace hsem
