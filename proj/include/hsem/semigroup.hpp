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

#include <map>
#include <vector>

#include "hsem/induced.hpp"
#include "hsem/states.hpp"
#include "hsem/superop.hpp"

namespace hsem {

struct Generator {
  enum class Provenance { Gksl, RawSuperoperator, Derived };

  Superoperator op;
  Provenance provenance = Provenance::RawSuperoperator;
  double unitality_residual = 0.0;  // ‖L(I)‖₂

  Generator() = default;
  Generator(Superoperator l, Provenance p);

  int hdim() const { return op.hdim(); }
};

/// e^{tL} by scaling and squaring with an order-16 Taylor kernel; the
/// squaring count keeps ‖L‖₂·t/2^k ≤ 1/2. t = 0 returns the identity
/// exactly. Negative t requires allow_negative (analytic continuation).
Superoperator exponentiate(const Superoperator& l, double t,
                           bool allow_negative = false,
                           const Tolerances& tol = Tolerances::global());

inline Superoperator exponentiate(const Generator& l, double t,
                                  bool allow_negative = false,
                                  const Tolerances& tol = Tolerances::global()) {
  return exponentiate(l.op, t, allow_negative, tol);
}

/// Immutable memo of semigroup members, owned by the caller.
class ExpCache {
 public:
  explicit ExpCache(const Generator& l) : l_(&l) {}
  const Superoperator& at(double t);

 private:
  const Generator* l_;
  std::map<double, Superoperator> memo_;
};

/// Matrix of the extended generator in the eigenbasis (h_n) of ρ
/// (descending eigenvalue order), estimated two ways: a Richardson-
/// extrapolated difference quotient of ⟨h_n, (T_t(x)−x)/t h_m⟩ and the
/// closed form ⟨h_n, L(x) h_m⟩.
struct ExtendedGeneratorMatrix {
  CMatrix basis;              // columns h_n
  CMatrix closed_form;        // route (ii)
  CMatrix finite_difference;  // route (i)
  double route_disagreement = 0.0;
  double extrapolation_spread = 0.0;  // |est(t) − est(t/2)| diagnostic
  double step = 0.0;
};

ExtendedGeneratorMatrix extended_generator(
    const Generator& l, const DensityMatrix& rho, const CMatrix& x,
    const Tolerances& tol = Tolerances::global());

/// Compression to Span(h_n, n ∈ f): the principal submatrix. Projecting an
/// F-compression to G ⊂ F equals the G-compression exactly.
CMatrix compression(const CMatrix& extended_matrix, const std::vector<int>& f);

struct RelationsReport {
  // hypotheses (flags; the suite still runs when they fail)
  CheckReport faithful;
  CheckReport subinvariant;       // worst time
  CheckReport schwarz;            // worst time
  // clause (1): L̃ ∘ i_ρ = i_ρ ∘ L
  double intertwine_residual = 0.0;
  double generator_compose_residual = 0.0;  // ‖L̃∘i_ρ − i_ρ∘L‖₂
  // clause (2): i_{ρ^(−1)} ∘ L̃ ∘ i_ρ = extended generator
  double generator_relation_residual = 0.0;
  double rotated_relation_residual = 0.0;   // degenerate-block basis rerun
  bool degenerate_blocks = false;
  // clause (3): strong continuity surrogate
  bool continuity_monotone = false;
  std::vector<double> continuity_profile;   // ‖T̃_t(y) − y‖₂ per decade
  // semigroup member diagnostics
  double worst_s2_norm = 0.0;
  double worst_gns_norm = 0.0;
  double worst_member_intertwining = 0.0;

  bool pass(const Tolerances& tol = Tolerances::global()) const;
};

RelationsReport relations_suite(const Generator& l, const DensityMatrix& rho,
                              const std::vector<double>& times = {0.1, 1.0,
                                                                  10.0},
                              std::uint64_t seed = 7,
                              const Tolerances& tol = Tolerances::global());

}  // namespace hsem
