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

#include <cmath>

#include "doctest.h"
#include "hsem/eig.hpp"
#include "hsem/instances.hpp"
#include "hsem/semigroup.hpp"
#include "hsem/spectral.hpp"

using namespace hsem;

TEST_CASE("random_gksl: construction-forced identities") {
  // no jumps, no Hamiltonian → L = 0
  CHECK(random_gksl(3, 0, 7, 0.0).op.matrix().max_abs() == 0.0);

  for (std::uint64_t seed : {1u, 17u, 303u}) {
    const Generator l = random_gksl(3, 2, seed);
    CHECK(l.unitality_residual <= 1e-12);
    CHECK(l.op.hermiticity_preservation_defect() < 1e-12);
    for (double t : {0.3, 2.0}) {
      const Superoperator tt = exponentiate(l, t);
      CHECK(is_cp(tt).verdict == Verdict::Pass);
      CHECK(is_unital(tt).verdict == Verdict::Pass);
    }
  }
}

TEST_CASE("random_gksl: deterministic in the seed") {
  const Generator a = random_gksl(3, 2, 42);
  const Generator b = random_gksl(3, 2, 42);
  CHECK(max_abs_diff(a.op.matrix(), b.op.matrix()) == 0.0);
  const Generator c = random_gksl(3, 2, 43);
  CHECK(max_abs_diff(a.op.matrix(), c.op.matrix()) > 0.0);
}

TEST_CASE("thermal_qubit: superoperator eigenvalues {0, -3, -3/2, -3/2}") {
  const Generator l = thermal_qubit(2.0, 1.0);
  const DensityMatrix rho(CMatrix{{2.0 / 3.0, 0.0}, {0.0, 1.0 / 3.0}});
  // the induced generator is Hermitian for this detailed-balance instance
  // and similar to L, so its spectrum is L's spectrum
  const Superoperator lt =
      i_rho_superop(rho).compose(l.op).compose(i_rho_pinv_superop(rho));
  REQUIRE(lt.matrix().hermiticity_defect() < 1e-12);
  const EigenSystem es = hermitian_eig(lt.matrix());
  CHECK(es.eigenvalues[0] == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(es.eigenvalues[1] == doctest::Approx(-1.5).epsilon(1e-9));
  CHECK(es.eigenvalues[2] == doctest::Approx(-1.5).epsilon(1e-9));
  CHECK(std::abs(es.eigenvalues[3]) < 1e-12);
}

TEST_CASE("invariant_state_of: thermal qubit gives diag(2/3, 1/3)") {
  const InvariantStateResult res = invariant_state_of(thermal_qubit(2.0, 1.0));
  REQUIRE(res.accepted());
  CHECK(max_abs_diff(res.state->matrix(),
                     CMatrix{{2.0 / 3.0, 0.0}, {0.0, 1.0 / 3.0}}) < 1e-10);
  CHECK(res.residual < 1e-12);
}

TEST_CASE("invariant_state_of: rejection reasons") {
  // L = 0: every state is invariant → degenerate fixed space
  const Generator zero(Superoperator(2), Generator::Provenance::Derived);
  const InvariantStateResult r0 = invariant_state_of(zero);
  CHECK_FALSE(r0.accepted());
  CHECK(*r0.rejection == StateRejection::DegenerateFixedSpace);

  // amplitude damping only (γ_up = 0): fixed state diag(1, 0), not faithful
  const Generator damping = thermal_qubit(1.0, 0.0);
  const InvariantStateResult r1 = invariant_state_of(damping);
  CHECK_FALSE(r1.accepted());
  CHECK(*r1.rejection == StateRejection::NonFaithful);
}

TEST_CASE("transpose_counterexample: closed form and CP failure") {
  const int n = 2;
  const Generator l = transpose_counterexample(n);

  // t = 0 → identity, CP
  CHECK(max_abs_diff(exponentiate(l, 0.0).matrix(),
                     CMatrix::identity(n * n)) == 0.0);
  CHECK(is_cp(Superoperator::identity_map(n)).verdict == Verdict::Pass);

  // e^{tL} = e^{−t}(cosh t · id + sinh t · Θ)
  for (double t : {0.3, 1.0, 4.0}) {
    CHECK((exponentiate(l, t).matrix() -
           transpose_semigroup_closed_form(n, t).matrix())
              .frobenius() <= 1e-9);
  }

  // t = 1: Choi min eigenvalue −e⁻¹ sinh 1 < −0.3
  const CheckReport cp = is_cp(exponentiate(l, 1.0));
  CHECK(cp.verdict == Verdict::Fail);
  CHECK(cp.residual ==
        doctest::Approx(-std::exp(-1.0) * std::sinh(1.0)).epsilon(1e-9));
  CHECK(cp.residual < -0.3);

  // ρ = I/n is invariant and faithful
  const DensityMatrix rho(CMatrix{{0.5, 0.0}, {0.0, 0.5}});
  CHECK(rho.faithful());
  CHECK(is_invariant(exponentiate(l, 1.0), rho).verdict == Verdict::Pass);
}

TEST_CASE("unitary_commutant_instance: exact invariance, CP unital") {
  CMatrix diag(3);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  const DensityMatrix rho(diag);
  const Generator l = unitary_commutant_instance(rho, 17);
  CHECK(l.op.predual().apply(rho.matrix()).frobenius() <= 1e-12);
  const Superoperator t = exponentiate(l, 0.8);
  CHECK(is_cp(t).verdict == Verdict::Pass);
  CHECK(is_unital(t).verdict == Verdict::Pass);
  CHECK(is_invariant(t, rho).verdict == Verdict::Pass);

  // γ = 0 (no unitaries) → L = 0
  CHECK(unitary_commutant_instance(rho, 5, 0).op.matrix().max_abs() == 0.0);

  // full theorem suite on a dim-3 instance
  const RelationsReport rep = relations_suite(l, rho);
  CHECK(rep.pass());
}

TEST_CASE("sampler: acceptance rate at dims 2-4 and hypothesis set") {
  for (int dim : {2, 3, 4}) {
    SamplerTelemetry telemetry;
    const auto instances =
        sample_accepted_instances(dim, 10, 1000 + dim, 2, 1.0, &telemetry);
    CHECK(instances.size() == 10);
    CHECK(telemetry.acceptance_rate() >= 0.5);
  }
  // every accepted instance satisfies the theorem hypotheses
  const auto instances = sample_accepted_instances(3, 3, 50);
  for (const auto& inst : instances) {
    CHECK(inst.state.faithful());
    for (double t : {0.1, 1.0, 10.0}) {
      const Superoperator tt = exponentiate(inst.generator, t);
      CHECK(is_cp(tt).verdict == Verdict::Pass);
      CHECK(is_unital(tt).verdict == Verdict::Pass);
      CHECK(is_invariant(tt, inst.state).verdict == Verdict::Pass);
    }
  }
}

TEST_CASE("sampler: bit-identical across runs") {
  const auto a = sample_accepted_instances(3, 3, 99);
  const auto b = sample_accepted_instances(3, 3, 99);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == b[i].seed);
    CHECK(max_abs_diff(a[i].generator.op.matrix(),
                       b[i].generator.op.matrix()) == 0.0);
    CHECK(max_abs_diff(a[i].state.matrix(), b[i].state.matrix()) == 0.0);
  }
}
