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

#include "hsem/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsem/kernels.hpp"

namespace hsem {

Tolerances& Tolerances::global() {
  static Tolerances t;
  return t;
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : CMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("CMatrix: ragged initializer");
    int j = 0;
    for (const cplx& v : row) (*this)(i, j++) = v;
    ++i;
  }
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("CMatrix: dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("CMatrix: dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(n_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(n_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m(n_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
  return m;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double CMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i <= j; ++i)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

CMatrix CMatrix::hermitized() const {
  CMatrix m(n_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i)
      m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return m;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("matmul: dimension mismatch");
  CMatrix c(a.dim());
  kernels::matmul(a.data(), b.data(), c.data(), a.dim());
  return c;
}

cplx hs_inner(const CMatrix& x, const CMatrix& y) {
  if (x.dim() != y.dim())
    throw std::invalid_argument("hs_inner: dimension mismatch");
  cplx s = 0.0;
  const cplx* px = x.data();
  const cplx* py = y.data();
  const size_t m = x.storage().size();
  for (size_t i = 0; i < m; ++i) s += std::conj(px[i]) * py[i];
  return s;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.storage().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

CVector apply_matrix(const CMatrix& a, const CVector& v) {
  const int n = a.dim();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("apply_matrix: dimension mismatch");
  CVector out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const cplx vj = v[j];
    if (vj == cplx(0.0, 0.0)) continue;
    for (int i = 0; i < n; ++i) out[i] += a(i, j) * vj;
  }
  return out;
}

double vec_norm(const CVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cplx vec_dot(const CVector& x, const CVector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("vec_dot: dimension mismatch");
  cplx s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

void vec_normalize(CVector& v) {
  const double n = vec_norm(v);
  if (n == 0.0) throw std::invalid_argument("vec_normalize: zero vector");
  for (auto& x : v) x /= n;
}

CMatrix matrix_unit(int n, int i, int j) {
  CMatrix m(n);
  m(i, j) = 1.0;
  return m;
}

std::vector<CMatrix> matrix_unit_basis(int n) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) basis.push_back(matrix_unit(n, i, j));
  return basis;
}

}  // namespace hsem
