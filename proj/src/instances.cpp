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

#include "hsem/instances.hpp"

#include <cmath>
#include <stdexcept>

#include "hsem/eig.hpp"

namespace hsem {

CMatrix random_complex(int dim, Rng& rng) {
  CMatrix m(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = rng.cnormal();
  return m;
}

CMatrix random_hermitian(int dim, Rng& rng, double scale) {
  CMatrix m = random_complex(dim, rng);
  m = m.hermitized();
  m *= cplx(scale, 0.0);
  return m;
}

CVector random_unit_vector(int dim, Rng& rng) {
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.cnormal();
  vec_normalize(v);
  return v;
}

Generator make_gksl_generator(const GkslData& data) {
  const int n = data.hamiltonian.dim();
  if (data.jumps.size() != data.rates.size())
    throw std::invalid_argument("make_gksl_generator: rates/jumps mismatch");
  const CMatrix eye = CMatrix::identity(n);

  // i[H, x] = i(Hx − xH) → i(kron(I, H) − kron(Hᵀ, I)) on vec(x)
  Superoperator l =
      Superoperator::sandwich(data.hamiltonian, eye) -
      Superoperator::sandwich(eye, data.hamiltonian);
  l *= cplx(0.0, 1.0);
  for (size_t j = 0; j < data.jumps.size(); ++j) {
    const CMatrix& v = data.jumps[j];
    if (v.dim() != n)
      throw std::invalid_argument("make_gksl_generator: jump dimension");
    const CMatrix vv = v.adjoint() * v;
    Superoperator dissipator =
        Superoperator::sandwich(v.adjoint(), v) -
        cplx(0.5, 0.0) * (Superoperator::sandwich(vv, eye) +
                          Superoperator::sandwich(eye, vv));
    dissipator *= cplx(data.rates[j], 0.0);
    l += dissipator;
  }
  return Generator(std::move(l), Generator::Provenance::Gksl);
}

GkslData random_gksl_data(int dim, int num_jumps, std::uint64_t seed,
                          double hamiltonian_scale) {
  if (dim < 1) throw std::invalid_argument("random_gksl_data: dim ≥ 1");
  Rng rng(seed);
  GkslData data;
  data.hamiltonian = random_hermitian(dim, rng, hamiltonian_scale);
  if (hamiltonian_scale == 0.0) data.hamiltonian = CMatrix(dim);
  for (int j = 0; j < num_jumps; ++j) {
    CMatrix v = random_complex(dim, rng);
    const double on = operator_norm(v);
    if (on > 0) v *= cplx(1.0 / on, 0.0);
    data.jumps.push_back(std::move(v));
    data.rates.push_back(rng.uniform(0.5, 2.0));
  }
  return data;
}

Generator random_gksl(int dim, int num_jumps, std::uint64_t seed,
                      double hamiltonian_scale) {
  return make_gksl_generator(
      random_gksl_data(dim, num_jumps, seed, hamiltonian_scale));
}

GkslData thermal_qubit_data(double gamma_down, double gamma_up) {
  GkslData data;
  data.hamiltonian = CMatrix(2);
  data.jumps.push_back(matrix_unit(2, 0, 1));  // decay |1⟩ → |0⟩
  data.rates.push_back(gamma_down);
  data.jumps.push_back(matrix_unit(2, 1, 0));  // pumping |0⟩ → |1⟩
  data.rates.push_back(gamma_up);
  return data;
}

Generator thermal_qubit(double gamma_down, double gamma_up) {
  return make_gksl_generator(thermal_qubit_data(gamma_down, gamma_up));
}

const char* rejection_name(StateRejection r) {
  switch (r) {
    case StateRejection::DegenerateFixedSpace: return "degenerate-fixed-space";
    case StateRejection::NonFaithful: return "non-faithful";
    case StateRejection::NonPositive: return "non-positive";
  }
  return "?";
}

InvariantStateResult invariant_state_of(const Generator& l,
                                        const Tolerances& tol) {
  InvariantStateResult out;
  const double hdef = l.op.hermiticity_preservation_defect();
  if (hdef > tol.scaled(tol.hermiticity) *
                 std::max(1.0, l.op.matrix().frobenius()))
    throw std::invalid_argument(
        "invariant_state_of: generator is not Hermiticity-preserving");

  const Superoperator pd = l.op.predual();
  const CMatrix& p = pd.matrix();
  const CMatrix ptp = (p.adjoint() * p).hermitized();
  const EigenSystem es = hermitian_eig(ptp, tol);
  const double scale = std::max(1.0, ptp.frobenius());
  const double null_tol = 1e-12 * scale;
  int null_count = 0;
  for (double lam : es.eigenvalues)
    if (lam <= null_tol) ++null_count;
  if (null_count != 1) {
    out.rejection = StateRejection::DegenerateFixedSpace;
    return out;
  }

  CVector null_vec(p.dim());
  for (int i = 0; i < p.dim(); ++i) null_vec[i] = es.eigenvectors(i, 0);
  CMatrix cand = unvectorize(null_vec);
  const cplx tr = cand.trace();
  if (std::abs(tr) < 1e-8) {
    out.rejection = StateRejection::NonPositive;
    return out;
  }
  cand *= std::conj(tr) / std::abs(tr);  // rotate the free phase
  cand = cand.hermitized();
  cand *= cplx(1.0 / cand.trace().real(), 0.0);

  const double min_eig = min_eigenvalue(cand, tol);
  const double clip = tol.scaled(tol.psd_clip) * std::max(1.0, cand.frobenius());
  if (min_eig < -clip) {
    out.rejection = StateRejection::NonPositive;
    return out;
  }
  DensityMatrix rho(cand, tol);
  if (!rho.faithful()) {
    out.rejection = StateRejection::NonFaithful;
    return out;
  }
  out.residual = pd.apply(rho.matrix()).frobenius();
  out.state = std::move(rho);
  return out;
}

Generator transpose_counterexample(int dim) {
  if (dim < 2)
    throw std::invalid_argument("transpose_counterexample: dim ≥ 2");
  Superoperator l = Superoperator::transpose_map(dim);
  l -= Superoperator::identity_map(dim);
  return Generator(std::move(l), Generator::Provenance::Derived);
}

Superoperator transpose_semigroup_closed_form(int dim, double t) {
  Superoperator theta = Superoperator::transpose_map(dim);
  Superoperator id = Superoperator::identity_map(dim);
  const double decay = std::exp(-t);
  id *= cplx(decay * std::cosh(t), 0.0);
  theta *= cplx(decay * std::sinh(t), 0.0);
  return id + theta;
}

Generator unitary_commutant_instance(const DensityMatrix& rho,
                                     std::uint64_t seed, int num_unitaries) {
  if (!rho.faithful())
    throw NumericError("unitary_commutant_instance: requires faithful ρ",
                       rho.min_eigenvalue());
  const int n = rho.dim();
  Rng rng(seed);
  const CMatrix& basis = rho.eigenbasis();

  Superoperator l(n);
  for (int u = 0; u < num_unitaries; ++u) {
    // Unitary diagonal in the eigenbasis of ρ, hence commuting with ρ.
    CMatrix unitary(n);
    for (int k = 0; k < n; ++k) {
      const double theta = rng.uniform(0.0, 6.283185307179586);
      const cplx phase(std::cos(theta), std::sin(theta));
      for (int j = 0; j < n; ++j) {
        const cplx bk = basis(j, k);
        for (int i = 0; i < n; ++i)
          unitary(i, j) += basis(i, k) * phase * std::conj(bk);
      }
    }
    Superoperator term =
        Superoperator::sandwich(unitary.adjoint(), unitary) -
        Superoperator::identity_map(n);
    term *= cplx(rng.uniform(0.5, 2.0), 0.0);
    l += term;
  }
  return Generator(std::move(l), Generator::Provenance::Gksl);
}

std::vector<AcceptedInstance> sample_accepted_instances(
    int dim, int count, std::uint64_t seed0, int num_jumps,
    double hamiltonian_scale, SamplerTelemetry* telemetry,
    const Tolerances& tol) {
  std::vector<AcceptedInstance> out;
  SamplerTelemetry local;
  std::uint64_t seed = seed0;
  while (static_cast<int>(out.size()) < count) {
    local.tried++;
    Generator l = random_gksl(dim, num_jumps, seed, hamiltonian_scale);
    InvariantStateResult res = invariant_state_of(l, tol);
    if (res.accepted()) {
      local.accepted++;
      out.push_back({std::move(l), std::move(*res.state), seed});
    } else {
      local.rejections[*res.rejection]++;
    }
    ++seed;
    if (local.tried > 100 * count + 100)
      throw NumericError("sample_accepted_instances: acceptance rate too low",
                         local.acceptance_rate());
  }
  if (telemetry) *telemetry = local;
  return out;
}

}  // namespace hsem
