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

// Compares the serial reference kernels against the OpenMP variants and
// verifies the two produce bitwise-identical results.

#include <chrono>
#include <cstdio>
#include <functional>

#include "hsem/instances.hpp"
#include "hsem/kernels.hpp"
#include "hsem/matrix.hpp"

using hsem::CMatrix;
using hsem::cplx;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

bool bitwise_equal(const CMatrix& a, const CMatrix& b) {
  for (size_t i = 0; i < a.storage().size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %8s %6s\n", "kernel", "serial ms", "omp ms",
              "speedup", "equal");

  hsem::Rng rng(42);
  for (int n : {64, 128, 256, 512}) {
    const CMatrix a = hsem::random_complex(n, rng);
    const CMatrix b = hsem::random_complex(n, rng);
    CMatrix cs(n), cp(n);
    const int reps = n <= 128 ? 20 : 5;
    const double ts = time_ms(
        [&] { hsem::kernels::matmul_serial(a.data(), b.data(), cs.data(), n); },
        reps);
    const double tp = time_ms(
        [&] {
          hsem::kernels::matmul_parallel(a.data(), b.data(), cp.data(), n);
        },
        reps);
    char label[64];
    std::snprintf(label, sizeof(label), "matmul %dx%d", n, n);
    std::printf("%-28s %10.3f %10.3f %7.2fx %6s\n", label, ts, tp, ts / tp,
                bitwise_equal(cs, cp) ? "yes" : "NO");
  }

  for (int n : {4, 6, 8, 10}) {
    const int dim = n * n * n;
    const CMatrix x = hsem::random_complex(n, rng);
    const CMatrix y = CMatrix::identity(n);
    const CMatrix z = hsem::random_complex(n, rng);
    CMatrix ms(dim), mp(dim);
    const int terms = n * n;  // one per spectral term
    const int reps = n <= 6 ? 10 : 2;
    const double ts = time_ms(
        [&] {
          for (size_t i = 0; i < ms.storage().size(); ++i) ms.data()[i] = 0.0;
          for (int t = 0; t < terms; ++t)
            hsem::kernels::kron3_accumulate_serial(
                cplx(1.0 / (t + 1), 0.0), x.data(), n, y.data(), n, z.data(),
                n, ms.data());
        },
        reps);
    const double tp = time_ms(
        [&] {
          for (size_t i = 0; i < mp.storage().size(); ++i) mp.data()[i] = 0.0;
          for (int t = 0; t < terms; ++t)
            hsem::kernels::kron3_accumulate_parallel(
                cplx(1.0 / (t + 1), 0.0), x.data(), n, y.data(), n, z.data(),
                n, mp.data());
        },
        reps);
    char label[64];
    std::snprintf(label, sizeof(label), "ccp tensor build n=%d (%d^3)", n,
                  n);
    std::printf("%-28s %10.3f %10.3f %7.2fx %6s\n", label, ts, tp, ts / tp,
                bitwise_equal(ms, mp) ? "yes" : "NO");
  }
  return 0;
}
