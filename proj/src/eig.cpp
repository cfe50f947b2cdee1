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

#include "hsem/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hsem {

namespace {

double offdiag_frobenius(const CMatrix& a) {
  const int n = a.dim();
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eig(const CMatrix& input, const Tolerances& tol) {
  const int n = input.dim();
  if (n == 0) throw std::invalid_argument("hermitian_eig: empty matrix");
  const double scale = input.frobenius();
  if (input.hermiticity_defect() >
      tol.scaled(tol.hermiticity) * std::max(1.0, scale))
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");

  CMatrix a = input.hermitized();
  CMatrix v = CMatrix::identity(n);
  const double stop = tol.jacobi_offdiag * std::max(scale, 1e-300);

  bool converged = (n == 1) || offdiag_frobenius(a) <= stop;
  for (int sweep = 0; sweep < tol.jacobi_max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx beta = a(p, q);
        const double babs = std::abs(beta);
        if (babs <= 1e-300) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Unitary 2x2 rotation annihilating a(p,q): a phase times a real
        // Jacobi rotation.
        const cplx phase = beta / babs;
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        // Small root of t² − 2τt − 1 = 0 annihilates a(p,q).
        const double tau = (gamma - alpha) / (2.0 * babs);
        const double t =
            (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx sp = s * phase;             // appears as ±s·e^{±iφ}
        const cplx spc = s * std::conj(phase);

        // A <- R† A R, columns then rows.
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + spc * akq;
          a(k, q) = -sp * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + sp * aqk;
          a(q, k) = -spc * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + spc * vkq;
          v(k, q) = -sp * vkp + c * vkq;
        }
      }
    }
    converged = offdiag_frobenius(a) <= stop;
  }
  if (!converged)
    throw NumericError("hermitian_eig: Jacobi sweeps exhausted",
                       offdiag_frobenius(a));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

CMatrix fractional_power(const CMatrix& a, double p, const Tolerances& tol) {
  const EigenSystem es = hermitian_eig(a, tol);
  const int n = a.dim();
  const double scale = a.frobenius();
  const double clip = tol.scaled(tol.psd_clip) * std::max(1.0, scale);

  std::vector<double> lam(es.eigenvalues);
  for (double& l : lam) {
    if (l < -clip)
      throw std::invalid_argument(
          "fractional_power: matrix is not positive semidefinite");
    if (l < 0.0) l = 0.0;
  }
  if (p < 0.0) {
    for (double l : lam)
      if (l <= tol.scaled(tol.faithful))
        throw NumericError(
            "fractional_power: negative power of a singular matrix",
            lam.empty() ? 0.0 : lam.front());
  }

  CMatrix out(n);
  const CMatrix& v = es.eigenvectors;
  for (int k = 0; k < n; ++k) {
    const double w = std::pow(lam[k], p);
    if (w == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const cplx vjk = std::conj(v(j, k)) * w;
      for (int i = 0; i < n; ++i) out(i, j) += v(i, k) * vjk;
    }
  }
  return out.hermitized();
}

SingularSystem svd(const CMatrix& a, const Tolerances& tol) {
  // One-sided (Hestenes) Jacobi: orthogonalize the columns of W = A by
  // right rotations, so small singular values keep full relative accuracy
  // and the rank cutoff is meaningful.
  const int n = a.dim();
  CMatrix w = a;
  CMatrix v = CMatrix::identity(n);

  auto column_dot = [&](int p, int q) {  // ⟨w_p, w_q⟩
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(w(i, p)) * w(i, q);
    return s;
  };

  bool converged = n == 1;
  for (int sweep = 0; sweep < tol.jacobi_max_sweeps && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx gpq = column_dot(p, q);
        const double gpp = column_dot(p, p).real();
        const double gqq = column_dot(q, q).real();
        const double gabs = std::abs(gpq);
        if (gabs <= 1e-14 * std::sqrt(std::max(gpp * gqq, 1e-300))) continue;
        converged = false;
        const cplx phase = gpq / gabs;
        const double tau = (gqq - gpp) / (2.0 * gabs);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx sp = s * phase;
        const cplx spc = s * std::conj(phase);
        for (int i = 0; i < n; ++i) {
          const cplx wip = w(i, p);
          const cplx wiq = w(i, q);
          w(i, p) = c * wip + spc * wiq;
          w(i, q) = -sp * wip + c * wiq;
        }
        for (int i = 0; i < n; ++i) {
          const cplx vip = v(i, p);
          const cplx viq = v(i, q);
          v(i, p) = c * vip + spc * viq;
          v(i, q) = -sp * vip + c * viq;
        }
      }
    }
  }
  if (!converged)
    throw NumericError("svd: one-sided Jacobi sweeps exhausted", 0.0);

  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::norm(w(i, j));
    sigma[j] = std::sqrt(s);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sigma[i] > sigma[j]; });

  SingularSystem out;
  out.sigma.resize(n);
  out.u = CMatrix(n);
  out.v = CMatrix(n);
  const double cutoff = tol.scaled(tol.pinv_cutoff) *
                        (n > 0 ? sigma[order[0]] : 0.0);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.sigma[j] = sigma[src];
    for (int i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    if (sigma[src] <= cutoff) continue;  // leave u column zero
    for (int i = 0; i < n; ++i) out.u(i, j) = w(i, src) / sigma[src];
  }
  return out;
}

CMatrix moore_penrose(const CMatrix& x, const Tolerances& tol) {
  const int n = x.dim();
  const SingularSystem sv = svd(x, tol);
  const double cutoff =
      sv.sigma.empty() ? 0.0 : tol.scaled(tol.pinv_cutoff) * sv.sigma[0];
  CMatrix pinv(n);
  for (int k = 0; k < n; ++k) {
    if (sv.sigma[k] <= cutoff) continue;
    const double w = 1.0 / sv.sigma[k];
    // pinv += w · v_k u_k†
    for (int j = 0; j < n; ++j) {
      const cplx ukj = std::conj(sv.u(j, k)) * w;
      for (int i = 0; i < n; ++i) pinv(i, j) += sv.v(i, k) * ukj;
    }
  }
  return pinv;
}

double schatten_norm(const CMatrix& x, double p, const Tolerances& tol) {
  if (p == 2.0) return x.frobenius();
  if (p == 1.0) {
    const SingularSystem sv = svd(x, tol);
    double s = 0.0;
    for (double sig : sv.sigma) s += sig;
    return s;
  }
  if (std::isinf(p) && p > 0) {
    const SingularSystem sv = svd(x, tol);
    return sv.sigma.empty() ? 0.0 : sv.sigma[0];
  }
  throw std::invalid_argument("schatten_norm: p must be 1, 2, or infinity");
}

double operator_norm(const CMatrix& x, const Tolerances& tol) {
  return schatten_norm(x, std::numeric_limits<double>::infinity(), tol);
}

double trace_norm(const CMatrix& x, const Tolerances& tol) {
  return schatten_norm(x, 1.0, tol);
}

double min_eigenvalue(const CMatrix& a, const Tolerances& tol) {
  const EigenSystem es = hermitian_eig(a.hermitized(), tol);
  return es.eigenvalues.front();
}

CMatrix invert(const CMatrix& a, double rel_pivot_tol) {
  const int n = a.dim();
  CMatrix work = a;
  CMatrix inv = CMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(work(i, col)) > std::abs(work(pivot, col))) pivot = i;
    if (std::abs(work(pivot, col)) <= rel_pivot_tol * scale)
      throw NumericError("invert: matrix is numerically singular",
                         std::abs(work(pivot, col)));
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(work(col, j), work(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const cplx d = work(col, col);
    for (int j = 0; j < n; ++j) {
      work(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const cplx f = work(i, col);
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) {
        work(i, j) -= f * work(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace hsem
