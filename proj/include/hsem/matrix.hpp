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

#include <cmath>
#include <initializer_list>
#include <vector>

#include "hsem/types.hpp"

namespace hsem {

/// Dense square complex matrix, column-major storage. Immutable by
/// convention once handed out of a constructor function; operations return
/// fresh values.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}
  /// Row-major nested initializer, e.g. CMatrix({{1, 0}, {0, 1}}).
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(int n);

  int dim() const { return n_; }
  bool empty() const { return n_ == 0; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(j) * n_ + i]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<size_t>(j) * n_ + i];
  }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  const std::vector<cplx>& storage() const { return a_; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;

  cplx trace() const;
  double frobenius() const;  // Schatten-2 norm
  double max_abs() const;
  double hermiticity_defect() const;  // max |A(i,j) − conj(A(j,i))|

  /// (A + A†)/2
  CMatrix hermitized() const;

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);  // kernel matmul

/// Tr(x† y); conjugate-linear in the first argument.
cplx hs_inner(const CMatrix& x, const CMatrix& y);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// A·v for a column vector.
CVector apply_matrix(const CMatrix& a, const CVector& v);

double vec_norm(const CVector& v);
cplx vec_dot(const CVector& x, const CVector& y);  // conjugate-first
void vec_normalize(CVector& v);

/// Matrix unit E_{ij} = |i⟩⟨j|.
CMatrix matrix_unit(int n, int i, int j);

/// The n² matrix units in column-stacking order (an orthonormal basis of
/// B(H) under the Hilbert-Schmidt inner product).
std::vector<CMatrix> matrix_unit_basis(int n);

}  // namespace hsem
