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

// Acceptance suite: property-based verification at desk scale. One line per
// criterion; exit code 0 iff every criterion holds at its stated tolerance.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hsem/eig.hpp"
#include "hsem/harness.hpp"
#include "hsem/instances.hpp"
#include "hsem/kernels.hpp"
#include "hsem/semigroup.hpp"
#include "hsem/spectral.hpp"

using namespace hsem;

namespace {

constexpr double kTimes[] = {0.1, 1.0, 10.0};

struct InstanceStats {
  int dim = 0;
  std::uint64_t seed = 0;
  double intertwining = 0.0;         // max basis residual over times
  double s2_norm = 0.0;              // max over times
  double gns_norm = 0.0;             // max over times
  double generator_compose = 0.0;    // composed-superoperator difference
  double generator_relation = 0.0;   // vs extended generator
  double fd_disagreement = 0.0;      // finite difference vs closed form
  bool cp_transfer_ok = true;
  double choi_min_original = 0.0;
  double choi_min_induced = 0.0;
  double recon_relative = 0.0;
  double orthonormality = 0.0;
  double hermiticity = 0.0;
  double lambda_min = 0.0;
  double identity_c = 0.0;
  double ccp_sandwich_min = 0.0;     // most negative over 5 e's
  double ccp_m_norm = 0.0;
  bool ccp_ok = true;
  bool ccp_ran = false;
  double gksl_generator = 0.0;
  double gksl_unit = 0.0;
  double gksl_rotation_shift = 0.0;  // residual change under basis rotation
  double l_scale = 1.0;
  double lt_scale = 1.0;
};

CMatrix random_basis_unitary(int n2, Rng& rng) {
  CMatrix g = random_complex(n2, rng);
  for (int j = 0; j < n2; ++j) {
    for (int k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (int i = 0; i < n2; ++i) proj += std::conj(g(i, k)) * g(i, j);
      for (int i = 0; i < n2; ++i) g(i, j) -= proj * g(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n2; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n2; ++i) g(i, j) /= nrm;
  }
  return g;
}

InstanceStats measure_instance(const AcceptedInstance& inst, bool run_ccp) {
  InstanceStats s;
  const Generator& l = inst.generator;
  const DensityMatrix& rho = inst.state;
  const int n = rho.dim();
  s.dim = n;
  s.seed = inst.seed;
  s.l_scale = std::max(1.0, l.op.matrix().frobenius());

  const Superoperator irho = i_rho_superop(rho);
  const Superoperator irho_pinv = i_rho_pinv_superop(rho);
  const Superoperator l_tilde = irho.compose(l.op).compose(irho_pinv);
  s.lt_scale = std::max(1.0, l_tilde.matrix().frobenius());
  const GnsSpace gns = gns_space(rho);

  s.choi_min_original = 1e300;
  s.choi_min_induced = 1e300;
  ExpCache cache(l);
  for (double t : kTimes) {
    const Superoperator& tt = cache.at(t);
    const InducedMap im = induce(tt, rho);
    s.intertwining = std::max(s.intertwining, im.intertwining_residual);
    s.s2_norm = std::max(s.s2_norm, im.s2_norm);
    s.gns_norm = std::max(s.gns_norm, gns_norm(gns, tt));
    const CheckReport cp_orig = is_cp(tt);
    const CheckReport cp_ind = is_cp(im.induced);
    s.cp_transfer_ok = s.cp_transfer_ok &&
                       (cp_orig.verdict == cp_ind.verdict);
    s.choi_min_original = std::min(s.choi_min_original, cp_orig.residual);
    s.choi_min_induced = std::min(s.choi_min_induced, cp_ind.residual);
  }

  s.generator_compose =
      (l_tilde.compose(irho).matrix() - irho.compose(l.op).matrix())
          .frobenius();

  // relation (2): the pseudo-inverse route against the closed form in the
  // rho eigenbasis, plus the finite-difference route on random probes.
  const CMatrix& basis = rho.eigenbasis();
  auto in_basis = [&](const CMatrix& a) {
    CMatrix out(n);
    const CMatrix ab = a * basis;
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i) acc += std::conj(basis(i, k)) * ab(i, m);
        out(k, m) = acc;
      }
    return out;
  };
  for (const CMatrix& e : matrix_unit_basis(n)) {
    const CMatrix via_tilde = i_rho_pinv(rho, l_tilde.apply(i_rho(rho, e)));
    s.generator_relation =
        std::max(s.generator_relation,
                 (in_basis(via_tilde) - in_basis(l.op.apply(e))).frobenius());
  }
  Rng prng(inst.seed + 5);
  for (int rep = 0; rep < 2; ++rep) {
    const ExtendedGeneratorMatrix egm =
        extended_generator(l, rho, random_complex(n, prng));
    s.fd_disagreement = std::max(s.fd_disagreement, egm.route_disagreement);
  }

  const SpectralDecomposition d = decompose_generator(l_tilde);
  s.recon_relative = d.reconstruction_residual / s.lt_scale;
  s.orthonormality = d.orthonormality_defect;
  s.hermiticity = d.hermiticity_defect;
  s.lambda_min = *std::min_element(d.lambda.begin(), d.lambda.end());

  CMatrix identity_c(n);
  for (size_t t = 0; t < d.lambda.size(); ++t) {
    CMatrix term = i_rho_pinv(rho, d.a[t]);
    term *= d.lambda[t] * hs_inner(d.b[t], rho.half());
    identity_c += term;
  }
  s.identity_c = (identity_c + CMatrix::identity(n)).frobenius();

  if (run_ccp) {
    s.ccp_ran = true;
    s.ccp_sandwich_min = 1e300;
    Rng erng(inst.seed + 11);
    for (int trial = 0; trial < 5; ++trial) {
      const CcpReport rep = ccp_test(d, random_unit_vector(n, erng));
      s.ccp_ok = s.ccp_ok && rep.ccp && rep.kernel_verdict;
      s.ccp_sandwich_min = std::min(s.ccp_sandwich_min, rep.sandwich_min_eig);
      s.ccp_m_norm = rep.m_norm;
    }
  }

  const GkslForm form = gksl_reconstruct(d, rho, l);
  s.gksl_generator = form.generator_residual;
  s.gksl_unit = form.unit_residual;
  Rng brng(inst.seed + 23);
  const CMatrix u = random_basis_unitary(n * n, brng);
  const std::vector<CMatrix> units = matrix_unit_basis(n);
  std::vector<CMatrix> rotated;
  for (int k = 0; k < n * n; ++k) {
    CMatrix ek(n);
    for (int col = 0; col < n * n; ++col) {
      CMatrix term = units[col];
      term *= u(k, col);
      ek += term;
    }
    rotated.push_back(ek);
  }
  const GkslForm form_rot = gksl_reconstruct(d, rho, l, rotated);
  s.gksl_rotation_shift =
      std::abs(form_rot.generator_residual - form.generator_residual);
  return s;
}

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> check;
};

}  // namespace

int main() {
  std::vector<InstanceStats> stats;
  {
    // 50 mandatory instances at dims 1-4, plus optional dims 5 and 6.
    for (const auto& [dim, count] :
         {std::pair{1, 2}, {2, 16}, {3, 16}, {4, 16}}) {
      const auto batch =
          sample_accepted_instances(dim, count, 9000 + dim * 100);
      for (const auto& inst : batch)
        stats.push_back(measure_instance(inst, /*run_ccp=*/true));
    }
    for (int dim : {5, 6}) {
      const auto batch = sample_accepted_instances(dim, 1, 9000 + dim * 100);
      stats.push_back(measure_instance(batch[0], /*run_ccp=*/dim <= 5));
    }
  }

  std::vector<Criterion> criteria;

  criteria.push_back({1, "intertwining T~_t(i_rho(x)) = i_rho(T_t(x))",
                      [&](std::string& d) {
    double worst = 0.0;
    for (const auto& s : stats) worst = std::max(worst, s.intertwining);
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "max basis residual %.3e over %zu instances x t in "
                  "{0.1, 1, 10} (tol 1e-9)",
                  worst, stats.size());
    d = buf;
    return worst <= 1e-9;
  }});

  criteria.push_back({2, "contraction of the induced and GNS semigroups",
                      [&](std::string& d) {
    double s2 = 0.0, gns = 0.0;
    for (const auto& s : stats) {
      s2 = std::max(s2, s.s2_norm);
      gns = std::max(gns, s.gns_norm);
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "max S2 norm %.12f, max GNS norm %.12f (tol 1 + 1e-9)", s2,
                  gns);
    d = buf;
    return s2 <= 1.0 + 1e-9 && gns <= 1.0 + 1e-9;
  }});

  criteria.push_back({3, "generator relations", [&](std::string& d) {
    double compose = 0.0, relation = 0.0, fd = 0.0;
    for (const auto& s : stats) {
      compose = std::max(compose, s.generator_compose);
      relation = std::max(relation, s.generator_relation);
      fd = std::max(fd, s.fd_disagreement);
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "compose %.3e (1e-9); extended-generator relation %.3e "
                  "(1e-8); fd route %.3e (1e-6)",
                  compose, relation, fd);
    d = buf;
    return compose <= 1e-9 && relation <= 1e-8 && fd <= 1e-6;
  }});

  criteria.push_back({4, "CP transfer both directions", [&](std::string& d) {
    bool ok = true;
    double worst_orig = 1e300, worst_ind = 1e300;
    for (const auto& s : stats) {
      ok = ok && s.cp_transfer_ok;
      worst_orig = std::min(worst_orig, s.choi_min_original);
      worst_ind = std::min(worst_ind, s.choi_min_induced);
    }
    // negative control: the transpose counterexample transfers non-CP
    const Generator theta = transpose_counterexample(2);
    const DensityMatrix central(CMatrix{{0.5, 0.0}, {0.0, 0.5}});
    const Superoperator tt = exponentiate(theta, 1.0);
    const InducedMap im = induce(tt, central);
    const CheckReport orig = is_cp(tt), ind = is_cp(im.induced);
    ok = ok && orig.verdict == Verdict::Fail && ind.verdict == Verdict::Fail;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "verdicts agree on all instances; Choi min eig %.3e / "
                  "%.3e; counterexample %.3f / %.3f",
                  worst_orig, worst_ind, orig.residual, ind.residual);
    d = buf;
    return ok;
  }});

  criteria.push_back({5, "spectral decomposition", [&](std::string& d) {
    double recon = 0.0, ortho = 0.0, herm = 0.0, lam = 1e300;
    for (const auto& s : stats) {
      recon = std::max(recon, s.recon_relative);
      ortho = std::max(ortho, s.orthonormality);
      herm = std::max(herm, s.hermiticity);
      lam = std::min(lam, s.lambda_min);
    }
    const SpectralDecomposition scalar = decompose_generator(Superoperator(1));
    const bool scalar_exact = scalar.lambda[0] == 1.0 &&
                              scalar.a[0](0, 0) == cplx(1.0, 0.0) &&
                              scalar.b[0](0, 0) == cplx(-1.0, 0.0);
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "recon %.3e (1e-8 rel); ortho %.3e, herm %.3e (1e-9); "
                  "min lambda %.3f > 0; scalar (1,1,-1) %s",
                  recon, ortho, herm, lam, scalar_exact ? "exact" : "OFF");
    d = buf;
    return recon <= 1e-8 && ortho <= 1e-9 && herm <= 1e-9 && lam > 0.0 &&
           scalar_exact;
  }});

  criteria.push_back({6, "identity, theorem part (c)", [&](std::string& d) {
    double worst = 0.0;
    for (const auto& s : stats) worst = std::max(worst, s.identity_c);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max residual %.3e (tol 1e-8)", worst);
    d = buf;
    return worst <= 1e-8;
  }});

  criteria.push_back({7, "ccp positivity of the sandwiched tensor operator",
                      [&](std::string& d) {
    bool ok = true;
    int ran = 0;
    for (const auto& s : stats) {
      if (!s.ccp_ran) continue;
      ++ran;
      ok = ok && s.ccp_ok;
    }
    // transpose counterexample: kernel-projection min eigenvalue <= -0.1
    const Generator theta = transpose_counterexample(2);
    const DensityMatrix central(CMatrix{{0.5, 0.0}, {0.0, 0.5}});
    const Superoperator lt =
        i_rho_superop(central).compose(theta.op).compose(
            i_rho_pinv_superop(central));
    const SpectralDecomposition d2 = decompose_generator(lt);
    const CcpReport rep = ccp_test(d2, CVector{cplx(1, 0), cplx(0, 0)});
    ok = ok && !rep.ccp && rep.kernel_min_eig <= -0.1;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d instances x 5 e's, oracle agreement everywhere; "
                  "counterexample kernel min eig %.3f <= -0.1",
                  ran, rep.kernel_min_eig);
    d = buf;
    return ok;
  }});

  criteria.push_back({8, "GKSL reconstruction", [&](std::string& d) {
    double gen = 0.0, unit = 0.0, rot = 0.0;
    for (const auto& s : stats) {
      gen = std::max(gen, s.gksl_generator / s.l_scale);
      unit = std::max(unit, s.gksl_unit);
      rot = std::max(rot, s.gksl_rotation_shift);
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "generator residual %.3e (1e-6 rel); unit %.3e (1e-8); "
                  "basis-rotation shift %.3e (1e-8)",
                  gen, unit, rot);
    d = buf;
    return gen <= 1e-6 && unit <= 1e-8 && rot <= 1e-8;
  }});

  criteria.push_back({9, "Moore-Penrose identities", [&](std::string& d) {
    Rng rng(4096);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const int n = 2 + rep % 5;
      CMatrix a = random_complex(n, rng);
      if (rep % 3 == 0) {  // force a zero singular value
        const SingularSystem sv = svd(a);
        CMatrix sigma(n);
        for (int i = 0; i + 1 < n; ++i) sigma(i, i) = sv.sigma[i];
        a = sv.u * sigma * sv.v.adjoint();
      }
      const CMatrix p = moore_penrose(a);
      const double scale = std::max(1.0, a.frobenius());
      worst = std::max(worst, (a * p * a - a).frobenius() / scale);
      worst = std::max(worst, (p * a * p - p).frobenius() /
                                  std::max(1.0, p.frobenius()));
      worst = std::max(worst, (a * p).hermiticity_defect() / scale);
      worst = std::max(worst, (p * a).hermiticity_defect() / scale);
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "worst identity residual %.3e over 100 matrices (tol 1e-9)",
                  worst);
    d = buf;
    return worst <= 1e-9;
  }});

  criteria.push_back({10, "thermal qubit closed forms", [&](std::string& d) {
    const Generator l = thermal_qubit(2.0, 1.0);
    const InvariantStateResult res = invariant_state_of(l);
    if (!res.accepted()) {
      d = "invariant state derivation rejected";
      return false;
    }
    const double state_err =
        max_abs_diff(res.state->matrix(),
                     CMatrix{{2.0 / 3.0, 0.0}, {0.0, 1.0 / 3.0}});
    const Superoperator lt = i_rho_superop(*res.state)
                                 .compose(l.op)
                                 .compose(i_rho_pinv_superop(*res.state));
    bool ok = lt.matrix().hermiticity_defect() < 1e-10;
    const EigenSystem es = hermitian_eig(lt.matrix());
    const double expected[] = {-3.0, -1.5, -1.5, 0.0};
    double eig_err = 0.0;
    for (int i = 0; i < 4; ++i)
      eig_err = std::max(eig_err, std::abs(es.eigenvalues[i] - expected[i]));
    const SpectralDecomposition dec = decompose_generator(lt);
    std::vector<double> lam = dec.lambda;
    std::sort(lam.begin(), lam.end());
    const double lam_expected[] = {1.0, 2.5, 2.5, 4.0};
    double lam_err = 0.0;
    for (int i = 0; i < 4; ++i)
      lam_err = std::max(lam_err, std::abs(lam[i] - lam_expected[i]));
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "eigs {0,-3,-3/2,-3/2} err %.3e (1e-9); state err %.3e "
                  "(1e-10); lambda {1,4,5/2,5/2} err %.3e (1e-8)",
                  eig_err, state_err, lam_err);
    d = buf;
    return ok && eig_err <= 1e-9 && state_err <= 1e-10 && lam_err <= 1e-8;
  }});

  criteria.push_back({11, "determinism of reports", [&](std::string& d) {
    bool ok = true;
    for (const char* kind : {"thermal-qubit", "gksl-random",
                             "transpose-counterexample"}) {
      const int dim = std::string(kind) == "gksl-random" ? 3 : 2;
      const ProblemSpec spec = generate_spec(kind, dim, 1337);
      const Report a = run(spec);
      const Report b = run(spec);
      ok = ok && emit(a, EmitFormat::Json) == emit(b, EmitFormat::Json);
      ok = ok && emit(a, EmitFormat::Text) == emit(b, EmitFormat::Text);
      ok = ok && emit_spec(spec) == emit_spec(parse_spec(emit_spec(spec)));
    }
    // serial and parallel kernel modes produce identical reports
    const ProblemSpec spec = generate_spec("gksl-random", 3, 4242);
    hsem::kernels::Mode& mode = hsem::kernels::mode();
    const hsem::kernels::Mode saved = mode;
    mode = hsem::kernels::Mode::Serial;
    const std::string serial = emit(run(spec), EmitFormat::Json);
    mode = hsem::kernels::Mode::Parallel;
    const std::string parallel = emit(run(spec), EmitFormat::Json);
    mode = saved;
    ok = ok && serial == parallel;
    d = ok ? "byte-identical reports across reruns, formats, kernel modes"
           : "reports differ between reruns";
    return ok;
  }});

  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool pass = false;
    try {
      pass = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s -- %s\n", pass ? "PASS" : "FAIL",
                c.id, c.name.c_str(), detail.c_str());
  }
  std::printf("%d/%zu acceptance criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
