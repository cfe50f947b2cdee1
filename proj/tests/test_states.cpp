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

#include "doctest.h"
#include "hsem/eig.hpp"
#include "hsem/instances.hpp"
#include "hsem/semigroup.hpp"
#include "hsem/states.hpp"

using namespace hsem;

namespace {

DensityMatrix random_faithful_state(int n, Rng& rng) {
  const CMatrix x = random_complex(n, rng);
  CMatrix psd = (x.adjoint() * x).hermitized() +
                cplx(0.05, 0.0) * CMatrix::identity(n);
  psd *= cplx(1.0 / psd.trace().real(), 0.0);
  return DensityMatrix(psd);
}

}  // namespace

TEST_CASE("DensityMatrix: validation and cached powers") {
  CHECK_THROWS_AS(DensityMatrix(CMatrix{{0.9, 0.0}, {0.0, 0.2}}),
                  std::invalid_argument);  // trace 1.1
  CHECK_THROWS_AS(DensityMatrix(CMatrix{{1.5, 0.0}, {0.0, -0.5}}),
                  std::invalid_argument);  // not PSD

  Rng rng(2);
  const DensityMatrix rho = random_faithful_state(4, rng);
  // power composition: ρ^q ρ^{q'} = ρ^{q+q'}
  CHECK((rho.quarter() * rho.quarter() - rho.half()).frobenius() < 1e-9);
  CHECK((rho.half() * rho.quarter() - rho.three_quarter()).frobenius() < 1e-9);
  CHECK((rho.quarter() * rho.inv_quarter() - CMatrix::identity(4)).frobenius() <
        1e-9);
  CHECK((rho.inv_quarter() * rho.inv_quarter() - rho.inv_half()).frobenius() <
        1e-9);
  // eigenbasis descending and orthonormal
  for (size_t i = 1; i < rho.eigenvalues().size(); ++i)
    CHECK(rho.eigenvalues()[i - 1] >= rho.eigenvalues()[i]);
  CHECK((rho.eigenbasis().adjoint() * rho.eigenbasis() - CMatrix::identity(4))
            .frobenius() < 1e-12);
}

TEST_CASE("is_faithful: threshold semantics") {
  CHECK(DensityMatrix(CMatrix{{2.0 / 3.0, 0.0}, {0.0, 1.0 / 3.0}}).faithful());
  CHECK_FALSE(DensityMatrix(CMatrix{{1.0, 0.0}, {0.0, 0.0}}).faithful());

  // an eigenvalue below the 1e-8 default threshold is not faithful
  const double eps = 1e-9;
  CMatrix m(3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5 - eps;
  m(2, 2) = eps;
  m *= cplx(1.0 / m.trace().real(), 0.0);
  CHECK_FALSE(DensityMatrix(m).faithful());

  // faithfulness ⇔ pinv(ρ)·ρ = I (injectivity at finite dimension)
  Rng rng(4);
  const DensityMatrix rho = random_faithful_state(3, rng);
  CHECK((moore_penrose(rho.matrix()) * rho.matrix() - CMatrix::identity(3))
            .frobenius() < 1e-8);
  const DensityMatrix pure(CMatrix{{1.0, 0.0}, {0.0, 0.0}});
  CHECK((moore_penrose(pure.matrix()) * pure.matrix() - CMatrix::identity(2))
            .frobenius() > 0.5);
}

TEST_CASE("omega: linearity, unit value, positivity") {
  Rng rng(6);
  const DensityMatrix rho = random_faithful_state(3, rng);
  CHECK(std::abs(rho.omega(CMatrix::identity(3)) - cplx(1.0, 0.0)) < 1e-12);

  const CMatrix sz{{1.0, 0.0}, {0.0, -1.0}};
  const DensityMatrix thermal(CMatrix{{2.0 / 3.0, 0.0}, {0.0, 1.0 / 3.0}});
  CHECK(thermal.omega(sz).real() == doctest::Approx(1.0 / 3.0));

  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix x = random_complex(3, rng);
    CHECK(rho.omega(x.adjoint() * x).real() > -1e-12);
    const CMatrix y = random_complex(3, rng);
    const cplx s(0.3, -0.8);
    CHECK(std::abs(rho.omega(s * x + y) - s * rho.omega(x) - rho.omega(y)) <
          1e-10);
  }
}

TEST_CASE("is_invariant: identity map and the thermal qubit") {
  Rng rng(8);
  const DensityMatrix any_rho = random_faithful_state(3, rng);
  CHECK(is_invariant(Superoperator::identity_map(3), any_rho).verdict ==
        Verdict::Pass);

  const Generator l = thermal_qubit(2.0, 1.0);
  const DensityMatrix rho(CMatrix{{2.0 / 3.0, 0.0}, {0.0, 1.0 / 3.0}});
  for (double t : {0.1, 1.0, 10.0})
    CHECK(is_invariant(exponentiate(l, t), rho).verdict == Verdict::Pass);
  // a state that is not invariant
  const DensityMatrix wrong(CMatrix{{0.5, 0.0}, {0.0, 0.5}});
  CHECK(is_invariant(exponentiate(l, 1.0), wrong).verdict == Verdict::Fail);
}

TEST_CASE("is_subinvariant: strict contraction sandwich") {
  // T = V·V† with V a strict contraction: ρ = I/n subinvariant, not invariant
  const int n = 2;
  CMatrix v(n);
  v(0, 0) = 0.6;
  v(1, 1) = 0.3;
  const Superoperator t = Superoperator::sandwich(v, v.adjoint());
  const DensityMatrix rho(CMatrix{{0.5, 0.0}, {0.0, 0.5}});
  CHECK(is_subinvariant(t, rho).verdict == Verdict::Pass);
  CHECK(is_invariant(t, rho).verdict == Verdict::Fail);
}

TEST_CASE("is_subinvariant rejects non-Hermiticity-preserving maps") {
  Rng rng(12);
  Superoperator bad(2, random_complex(4, rng));
  const DensityMatrix rho(CMatrix{{0.5, 0.0}, {0.0, 0.5}});
  CHECK_THROWS_AS(is_subinvariant(bad, rho), std::invalid_argument);
}

TEST_CASE("subinvariant_unital_promotion") {
  const Generator l = thermal_qubit();
  const DensityMatrix rho(CMatrix{{2.0 / 3.0, 0.0}, {0.0, 1.0 / 3.0}});
  const Superoperator t = exponentiate(l, 0.5);
  const CheckReport r = subinvariant_unital_promotion(t, rho);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.residual < 1e-10);

  // trivially promoted for the identity map
  CHECK(subinvariant_unital_promotion(Superoperator::identity_map(2), rho)
            .verdict == Verdict::Pass);

  // random CP unital instance with derived invariant state
  const auto instances = sample_accepted_instances(3, 1, 511);
  const CheckReport rr = subinvariant_unital_promotion(
      exponentiate(instances[0].generator, 1.0), instances[0].state);
  CHECK(rr.verdict == Verdict::Pass);
  CHECK(rr.residual < 1e-10);

  // precondition failure: non-unital map
  CMatrix half = CMatrix::identity(2);
  half *= cplx(0.5, 0.0);
  const Superoperator shrink = Superoperator::sandwich(half, half);
  CHECK(subinvariant_unital_promotion(shrink, rho).verdict ==
        Verdict::SkippedHypothesis);
}

TEST_CASE("unital maps preserve the predual trace") {
  Rng rng(31);
  const Generator l = random_gksl(3, 2, 77);
  const Superoperator t = exponentiate(l, 0.4);
  REQUIRE(is_unital(t).verdict == Verdict::Pass);
  for (int rep = 0; rep < 10; ++rep) {
    CMatrix h = random_hermitian(3, rng);
    CHECK(std::abs(t.predual().apply(h).trace() - h.trace()) < 1e-10);
  }
}

TEST_CASE("subinvariance is preserved under convex mixing of states") {
  CMatrix v(2);
  v(0, 0) = 0.7;
  v(1, 1) = 0.4;
  const Superoperator t = Superoperator::sandwich(v, v.adjoint());
  const CMatrix r1{{0.5, 0.0}, {0.0, 0.5}};
  const CMatrix r2{{0.8, 0.0}, {0.0, 0.2}};
  REQUIRE(is_subinvariant(t, DensityMatrix(r1)).verdict == Verdict::Pass);
  REQUIRE(is_subinvariant(t, DensityMatrix(r2)).verdict == Verdict::Pass);
  for (double w : {0.25, 0.5, 0.75}) {
    const CMatrix mix = cplx(w, 0.0) * r1 + cplx(1.0 - w, 0.0) * r2;
    CHECK(is_subinvariant(t, DensityMatrix(mix)).verdict == Verdict::Pass);
  }
}
