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

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hsem/rng.hpp"
#include "hsem/semigroup.hpp"
#include "hsem/states.hpp"

namespace hsem {

struct GkslData {
  CMatrix hamiltonian;          // Hermitian, may be zero
  std::vector<CMatrix> jumps;   // V_j
  std::vector<double> rates;    // γ_j ≥ 0
};

/// Heisenberg-picture generator
/// L(x) = i[H, x] + Σ_j γ_j (V_j† x V_j − ½{V_j†V_j, x}).
/// L(I) = 0 holds by construction.
Generator make_gksl_generator(const GkslData& data);

GkslData random_gksl_data(int dim, int num_jumps, std::uint64_t seed,
                          double hamiltonian_scale = 1.0);

Generator random_gksl(int dim, int num_jumps, std::uint64_t seed,
                      double hamiltonian_scale = 1.0);

/// Two-level thermal preset: decay |1⟩→|0⟩ at γ_down, pumping at γ_up,
/// no Hamiltonian. Invariant state diag(γ_down, γ_up)/(γ_down+γ_up).
Generator thermal_qubit(double gamma_down = 2.0, double gamma_up = 1.0);
GkslData thermal_qubit_data(double gamma_down = 2.0, double gamma_up = 1.0);

enum class StateRejection { DegenerateFixedSpace, NonFaithful, NonPositive };

const char* rejection_name(StateRejection r);

struct InvariantStateResult {
  std::optional<DensityMatrix> state;
  std::optional<StateRejection> rejection;
  double residual = 0.0;  // ‖L†(ρ)‖₂ of the accepted state

  bool accepted() const { return state.has_value(); }
};

/// Solves the predual null space L†(ρ) = 0. Accepts only a one-dimensional
/// fixed space whose normalized element is PSD and faithful.
InvariantStateResult invariant_state_of(
    const Generator& l, const Tolerances& tol = Tolerances::global());

/// L = Θ − id with Θ the transpose map. e^{tL} = e^{−t}(cosh t·id +
/// sinh t·Θ) is positive and unital but not CP for t > 0; ρ = I/dim is a
/// faithful invariant state. Negative control for the ccp theorem.
Generator transpose_counterexample(int dim);

/// Closed form e^{−t}(cosh t·id + sinh t·Θ).
Superoperator transpose_semigroup_closed_form(int dim, double t);

/// L = Σ_j γ_j (U_j†·x·U_j − x) with unitaries diagonal in the eigenbasis
/// of ρ, so that ρ is exactly invariant. CP and unital by construction.
Generator unitary_commutant_instance(const DensityMatrix& rho,
                                     std::uint64_t seed,
                                     int num_unitaries = 2);

struct AcceptedInstance {
  Generator generator;
  DensityMatrix state;
  std::uint64_t seed;
};

struct SamplerTelemetry {
  int tried = 0;
  int accepted = 0;
  std::map<StateRejection, int> rejections;

  double acceptance_rate() const {
    return tried == 0 ? 0.0 : static_cast<double>(accepted) / tried;
  }
};

/// Rejection-samples random GKSL instances until `count` have a unique
/// faithful invariant state; deterministic in seed0 (instance k uses seed
/// seed0 + k across the attempt sequence).
std::vector<AcceptedInstance> sample_accepted_instances(
    int dim, int count, std::uint64_t seed0, int num_jumps = 2,
    double hamiltonian_scale = 1.0, SamplerTelemetry* telemetry = nullptr,
    const Tolerances& tol = Tolerances::global());

/// Random Hermitian matrix with independent normal entries (test helper and
/// Hamiltonian source).
CMatrix random_hermitian(int dim, Rng& rng, double scale = 1.0);

/// Random complex matrix with independent standard normal entries.
CMatrix random_complex(int dim, Rng& rng);

/// Random unit vector.
CVector random_unit_vector(int dim, Rng& rng);

}  // namespace hsem
