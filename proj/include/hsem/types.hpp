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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsem {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Non-convergence, singularity, or conditioning failure. Carries the
/// offending residual / singular value for diagnostics.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double value)
      : std::runtime_error(what + " (value=" + std::to_string(value) + ")"),
        value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Central tolerance configuration. All thresholds are multiplied by `scale`
/// at the point of use (see scaled()).
struct Tolerances {
  double scale = 1.0;  // global multiplier (CLI --tol-scale / env var)

  double hermiticity = 1e-10;     // relative hermiticity defect
  double eig_residual = 1e-10;    // ‖A−VΛV†‖ ≤ tol·max(1,‖A‖)
  double jacobi_offdiag = 1e-13;  // sweep stop, relative to ‖A‖
  int jacobi_max_sweeps = 100;

  double psd_clip = 1e-10;     // eigenvalues in [−clip·‖A‖, 0) clip to 0
  double pinv_cutoff = 1e-10;  // σ ≤ cutoff·σmax treated as zero
  double faithful = 1e-8;      // min eigenvalue threshold, trace-1 scale

  double cp = 1e-10;            // Choi min eigenvalue slack
  double unital = 1e-10;        // ‖T(I)−I‖₂
  double positivity = 1e-10;    // sampled positivity slack
  double schwarz = 1e-9;        // sampled Schwarz slack
  double adjoint_pair = 1e-10;  // predual/adjoint agreement

  double invariance = 1e-9;     // ‖T†(ρ)−ρ‖₁
  double trace_identity = 1e-10;

  double intertwining = 1e-9;   // T̃∘i_ρ vs i_ρ∘T on the basis
  double contraction = 1e-9;    // operator norm ≤ 1 + tol
  double roundtrip = 1e-8;      // i_ρ pseudo-inverse round trip
  double generator_relation = 1e-8;  // i_{ρ^(−1)}∘L̃∘i_ρ vs extended generator
  double fd_agreement = 1e-6;   // finite-difference vs closed-form generator

  double resolvent_gap = 1e-8;      // smallest singular value of L̃−I
  double resolvent_residual = 1e-9; // ‖K(L̃−I)−I‖
  double star_preserve = 1e-9;
  double sve_orthonormal = 1e-9;
  double sve_reconstruction = 1e-8;  // relative to max(1,‖L̃‖)
  double sigma_group = 1e-8;         // relative grouping of singular values
  double gram_schmidt_drop = 1e-10;

  double ccp = 1e-8;           // min eigenvalue ≥ −ccp·‖M‖
  double gksl_identity = 1e-6; // generator reconstruction, relative
  double gksl_unit = 1e-8;     // ‖I + Σ λ′ y y†‖
  double jump_prune = 1e-12;   // |λ′|·‖y‖₂² cutoff

  // Extended-generator difference steps (t, t/2). The two-point extrapolant
  // leaves an error of ‖L³(x)‖·t²/12, which at t = 1e-3 already exceeds the
  // 1e-6 route-agreement budget for rates of order one; 1e-4 leaves four
  // orders of headroom while staying far above rounding noise.
  double fd_step = 1e-4;

  double scaled(double base) const { return scale * base; }

  static Tolerances& global();
};

}  // namespace hsem
