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

#include "hsem/types.hpp"

namespace hsem::kernels {

enum class Mode { Serial, Parallel };

/// Process-wide kernel dispatch mode. Defaults to Parallel when compiled with
/// OpenMP, Serial otherwise. The parallel variants perform the same per-entry
/// operation order as the serial reference, so results are bitwise identical.
Mode& mode();

// c = a·b, square n×n, column-major. Serial reference and OpenMP variant.
void matmul_serial(const cplx* a, const cplx* b, cplx* c, int n);
void matmul_parallel(const cplx* a, const cplx* b, cplx* c, int n);
void matmul(const cplx* a, const cplx* b, cplx* c, int n);

/// m += w · (x ⊗ y ⊗ z) on the (nx·ny·nz)-dimensional product space,
/// column-major, row index (ix·ny + iy)·nz + iz. Serial reference and
/// entry-parallel OpenMP variant with deterministic accumulation order.
void kron3_accumulate_serial(cplx w, const cplx* x, int nx, const cplx* y,
                             int ny, const cplx* z, int nz, cplx* m);
void kron3_accumulate_parallel(cplx w, const cplx* x, int nx, const cplx* y,
                               int ny, const cplx* z, int nz, cplx* m);
void kron3_accumulate(cplx w, const cplx* x, int nx, const cplx* y, int ny,
                      const cplx* z, int nz, cplx* m);

}  // namespace hsem::kernels
