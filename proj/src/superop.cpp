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

#include "hsem/superop.hpp"

#include <cmath>
#include <stdexcept>

#include "hsem/eig.hpp"
#include "hsem/rng.hpp"

namespace hsem {

CVector vectorize(const CMatrix& x) {
  return x.storage();  // column-major storage is already column-stacked
}

CMatrix unvectorize(const CVector& v) {
  const int n = static_cast<int>(std::lround(std::sqrt(double(v.size()))));
  if (static_cast<size_t>(n) * n != v.size())
    throw std::invalid_argument("unvectorize: length is not a perfect square");
  CMatrix x(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = v[static_cast<size_t>(j) * n + i];
  return x;
}

Superoperator::Superoperator(int hdim, CMatrix m) : hdim_(hdim), m_(std::move(m)) {
  if (m_.dim() != hdim_ * hdim_)
    throw std::invalid_argument("Superoperator: matrix must be n²×n²");
}

Superoperator Superoperator::identity_map(int hdim) {
  return Superoperator(hdim, CMatrix::identity(hdim * hdim));
}

Superoperator Superoperator::sandwich(const CMatrix& a, const CMatrix& b) {
  const int n = a.dim();
  if (b.dim() != n)
    throw std::invalid_argument("sandwich: dimension mismatch");
  // vec(a x b) = (bᵀ ⊗ a) vec(x)
  CMatrix m(n * n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      const cplx bt = b(l, j);  // bᵀ(j,l)
      if (bt == cplx(0.0, 0.0)) continue;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m(j * n + i, l * n + k) = bt * a(i, k);
    }
  return Superoperator(n, std::move(m));
}

Superoperator Superoperator::transpose_map(int hdim) {
  CMatrix m(hdim * hdim);
  for (int j = 0; j < hdim; ++j)
    for (int i = 0; i < hdim; ++i) m(j * hdim + i, i * hdim + j) = 1.0;
  return Superoperator(hdim, std::move(m));
}

CMatrix Superoperator::apply(const CMatrix& x) const {
  if (x.dim() != hdim_)
    throw std::invalid_argument("Superoperator::apply: dimension mismatch");
  return unvectorize(apply_matrix(m_, vectorize(x)));
}

Superoperator Superoperator::hs_adjoint() const {
  return Superoperator(hdim_, m_.adjoint());
}

Superoperator Superoperator::predual(double* hermiticity_warning) const {
  // T†(ρ) = (T*(ρ†))† in the HS adjoint T*; as a matrix,
  // P[(i,j),(k,l)] = M[(l,k),(j,i)].
  if (hermiticity_warning)
    *hermiticity_warning = hermiticity_preservation_defect();
  const int n = hdim_;
  CMatrix p(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          p(j * n + i, l * n + k) = m_(k * n + l, i * n + j);
  return Superoperator(n, std::move(p));
}

double Superoperator::hermiticity_preservation_defect() const {
  // T(x†) = T(x)† for all x  ⇔  M[(i,j),(k,l)] = conj(M[(j,i),(l,k)]).
  const int n = hdim_;
  double defect = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          defect = std::max(defect,
                            std::abs(m_(j * n + i, l * n + k) -
                                     std::conj(m_(i * n + j, k * n + l))));
  return defect;
}

CMatrix Superoperator::choi() const {
  const int n = hdim_;
  CMatrix c(n * n);
  // C[(i,k),(j,l)] = T(E_{ij})[k,l] = M[(l n + k),(j n + i)]
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          c(i * n + k, j * n + l) = m_(l * n + k, j * n + i);
  return c;
}

Superoperator Superoperator::compose(const Superoperator& inner) const {
  if (inner.hdim_ != hdim_)
    throw std::invalid_argument("compose: dimension mismatch");
  return Superoperator(hdim_, m_ * inner.m_);
}

Superoperator& Superoperator::operator+=(const Superoperator& o) {
  m_ += o.m_;
  return *this;
}
Superoperator& Superoperator::operator-=(const Superoperator& o) {
  m_ -= o.m_;
  return *this;
}
Superoperator& Superoperator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

Superoperator operator+(Superoperator a, const Superoperator& b) {
  return a += b;
}
Superoperator operator-(Superoperator a, const Superoperator& b) {
  return a -= b;
}
Superoperator operator*(cplx s, Superoperator a) { return a *= s; }
Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  return a.compose(b);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotFalsified: return "not-falsified";
    case Verdict::SkippedHypothesis: return "skipped-hypothesis";
  }
  return "?";
}

CheckReport is_cp(const Superoperator& t, const Tolerances& tol) {
  CheckReport r;
  r.name = "cp";
  const CMatrix c = t.choi();
  const double hdef = c.hermiticity_defect();
  if (hdef > tol.scaled(tol.hermiticity) * std::max(1.0, c.frobenius())) {
    r.verdict = Verdict::Fail;
    r.residual = hdef;
    r.detail = "Choi matrix is not Hermitian (map not Hermiticity-preserving)";
    return r;
  }
  const double mineig = min_eigenvalue(c, tol);
  r.residual = mineig;
  const double slack = tol.scaled(tol.cp) * std::max(1.0, c.frobenius());
  r.verdict = mineig >= -slack ? Verdict::Pass : Verdict::Fail;
  r.detail = "Choi min eigenvalue";
  return r;
}

namespace {

CMatrix random_gaussian(int n, Rng& rng) {
  CMatrix x(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = rng.cnormal();
  return x;
}

}  // namespace

CheckReport is_positive_sampled(const Superoperator& t, int samples,
                                std::uint64_t seed, const Tolerances& tol) {
  CheckReport r;
  r.name = "positive";
  const CheckReport cp = is_cp(t, tol);
  if (cp.verdict == Verdict::Pass) {
    r.verdict = Verdict::Pass;
    r.residual = cp.residual;
    r.detail = "proven: completely positive";
    return r;
  }
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CMatrix x = random_gaussian(t.hdim(), rng);
    const CMatrix psd = (x.adjoint() * x).hermitized();
    const CMatrix img = t.apply(psd).hermitized();
    const double mineig = min_eigenvalue(img, tol);
    const double slack =
        tol.scaled(tol.positivity) * std::max(1.0, psd.frobenius());
    if (mineig < -slack) {
      r.verdict = Verdict::Fail;
      r.residual = mineig;
      r.detail = "refuted: PSD input mapped to a non-PSD output";
      r.witness = psd;
      return r;
    }
    worst = std::min(worst, mineig);
  }
  r.verdict = Verdict::NotFalsified;
  r.residual = worst;
  r.detail = "sampled positivity held on " + std::to_string(samples) +
             " PSD inputs";
  return r;
}

CheckReport is_unital(const Superoperator& t, const Tolerances& tol) {
  CheckReport r;
  r.name = "unital";
  const CMatrix img = t.apply(CMatrix::identity(t.hdim()));
  r.residual = (img - CMatrix::identity(t.hdim())).frobenius();
  r.verdict =
      r.residual <= tol.scaled(tol.unital) ? Verdict::Pass : Verdict::Fail;
  r.detail = "‖T(I) − I‖₂";
  return r;
}

CheckReport is_schwarz(const Superoperator& t, int samples,
                       std::uint64_t seed, const Tolerances& tol) {
  CheckReport r;
  r.name = "schwarz";
  const CheckReport cp = is_cp(t, tol);
  if (cp.verdict == Verdict::Pass) {
    const double tnorm =
        operator_norm(t.apply(CMatrix::identity(t.hdim())), tol);
    if (tnorm <= 1.0 + tol.scaled(tol.unital)) {
      r.verdict = Verdict::Pass;
      r.residual = tnorm;
      r.detail = "proven: CP with ‖T(I)‖_∞ ≤ 1";
      return r;
    }
  }
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    CMatrix x = random_gaussian(t.hdim(), rng);
    const double on = operator_norm(x, tol);
    if (on > 0) x *= cplx(1.0 / on, 0.0);
    const CMatrix lhs = t.apply((x.adjoint() * x).hermitized()).hermitized();
    const CMatrix tx = t.apply(x);
    const CMatrix gap = (lhs - tx.adjoint() * tx).hermitized();
    const double mineig = min_eigenvalue(gap, tol);
    if (mineig < -tol.scaled(tol.schwarz)) {
      r.verdict = Verdict::Fail;
      r.residual = mineig;
      r.detail = "refuted: T(x†x) − T(x)†T(x) has a negative eigenvalue";
      r.witness = x;
      return r;
    }
    worst = std::min(worst, mineig);
  }
  r.verdict = Verdict::NotFalsified;
  r.residual = worst;
  r.detail = "sampled Schwarz inequality held on " + std::to_string(samples) +
             " inputs";
  return r;
}

double cp_block_sample_min(const Superoperator& t, int tuples, int tuple_size,
                           std::uint64_t seed) {
  Rng rng(seed);
  const int n = t.hdim();
  double min_value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < tuples; ++s) {
    std::vector<CMatrix> xs;
    std::vector<CVector> hs;
    for (int k = 0; k < tuple_size; ++k) {
      xs.push_back(random_gaussian(n, rng));
      CVector h(n);
      for (int i = 0; i < n; ++i) h[i] = rng.cnormal();
      hs.push_back(std::move(h));
    }
    cplx sum = 0.0;
    for (int i = 0; i < tuple_size; ++i)
      for (int j = 0; j < tuple_size; ++j) {
        const CMatrix img = t.apply(xs[i].adjoint() * xs[j]);
        sum += vec_dot(hs[i], apply_matrix(img, hs[j]));
      }
    min_value = std::min(min_value, sum.real());
  }
  return min_value;
}

}  // namespace hsem
