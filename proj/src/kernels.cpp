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

#include "hsem/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsem::kernels {

Mode& mode() {
#ifdef _OPENMP
  static Mode m = Mode::Parallel;
#else
  static Mode m = Mode::Serial;
#endif
  return m;
}

namespace {

// One output column of c = a·b; k ascending so serial and parallel variants
// accumulate in the same order.
inline void matmul_column(const cplx* a, const cplx* b, cplx* c, int n,
                          int j) {
  cplx* cj = c + static_cast<size_t>(j) * n;
  const cplx* bj = b + static_cast<size_t>(j) * n;
  for (int i = 0; i < n; ++i) cj[i] = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx bkj = bj[k];
    if (bkj == cplx(0.0, 0.0)) continue;
    const cplx* ak = a + static_cast<size_t>(k) * n;
    for (int i = 0; i < n; ++i) cj[i] += ak[i] * bkj;
  }
}

inline void kron3_row_range(cplx w, const cplx* x, int nx, const cplx* y,
                            int ny, const cplx* z, int nz, cplx* m, int row) {
  const int dim = nx * ny * nz;
  const int iz = row % nz;
  const int iy = (row / nz) % ny;
  const int ix = row / (nz * ny);
  for (int jx = 0; jx < nx; ++jx) {
    const cplx wx = w * x[static_cast<size_t>(jx) * nx + ix];
    if (wx == cplx(0.0, 0.0)) continue;
    for (int jy = 0; jy < ny; ++jy) {
      const cplx wxy = wx * y[static_cast<size_t>(jy) * ny + iy];
      if (wxy == cplx(0.0, 0.0)) continue;
      for (int jz = 0; jz < nz; ++jz) {
        const int col = (jx * ny + jy) * nz + jz;
        m[static_cast<size_t>(col) * dim + row] +=
            wxy * z[static_cast<size_t>(jz) * nz + iz];
      }
    }
  }
}

}  // namespace

void matmul_serial(const cplx* a, const cplx* b, cplx* c, int n) {
  for (int j = 0; j < n; ++j) matmul_column(a, b, c, n, j);
}

void matmul_parallel(const cplx* a, const cplx* b, cplx* c, int n) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= 48)
#endif
  for (int j = 0; j < n; ++j) matmul_column(a, b, c, n, j);
}

void matmul(const cplx* a, const cplx* b, cplx* c, int n) {
  if (mode() == Mode::Parallel)
    matmul_parallel(a, b, c, n);
  else
    matmul_serial(a, b, c, n);
}

void kron3_accumulate_serial(cplx w, const cplx* x, int nx, const cplx* y,
                             int ny, const cplx* z, int nz, cplx* m) {
  const int dim = nx * ny * nz;
  for (int row = 0; row < dim; ++row)
    kron3_row_range(w, x, nx, y, ny, z, nz, m, row);
}

void kron3_accumulate_parallel(cplx w, const cplx* x, int nx, const cplx* y,
                               int ny, const cplx* z, int nz, cplx* m) {
  const int dim = nx * ny * nz;
  // Below ~200 rows the fork/join overhead dominates the row work.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (dim >= 200)
#endif
  for (int row = 0; row < dim; ++row)
    kron3_row_range(w, x, nx, y, ny, z, nz, m, row);
}

void kron3_accumulate(cplx w, const cplx* x, int nx, const cplx* y, int ny,
                      const cplx* z, int nz, cplx* m) {
  if (mode() == Mode::Parallel)
    kron3_accumulate_parallel(w, x, nx, y, ny, z, nz, m);
  else
    kron3_accumulate_serial(w, x, nx, y, ny, z, nz, m);
}

}  // namespace hsem::kernels
