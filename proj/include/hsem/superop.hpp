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
#include <optional>
#include <string>

#include "hsem/matrix.hpp"
#include "hsem/types.hpp"

namespace hsem {

/// Fixed vectorization convention for every serialized superoperator.
inline constexpr const char* kVectorization = "column-stacking";

/// vec(x)[j·n + i] = x(i, j).
CVector vectorize(const CMatrix& x);
CMatrix unvectorize(const CVector& v);  // throws unless length is a square

/// Linear map on B(H) represented as an n²×n² matrix acting on column-stacked
/// n×n matrices.
class Superoperator {
 public:
  Superoperator() = default;
  explicit Superoperator(int hdim)
      : hdim_(hdim), m_(hdim * hdim) {}  // zero map
  Superoperator(int hdim, CMatrix m);

  static Superoperator identity_map(int hdim);
  /// x ↦ a·x·b, i.e. kron(bᵀ, a) on vectorized input.
  static Superoperator sandwich(const CMatrix& a, const CMatrix& b);
  /// x ↦ xᵀ.
  static Superoperator transpose_map(int hdim);

  int hdim() const { return hdim_; }
  const CMatrix& matrix() const { return m_; }

  CMatrix apply(const CMatrix& x) const;

  /// Adjoint with respect to the Hilbert-Schmidt inner product.
  Superoperator hs_adjoint() const;

  /// Predual action on trace-class operators: Tr(T†(ρ)x) = Tr(ρ T(x)).
  /// Predual semantics presume a Hermiticity-preserving map; when
  /// `hermiticity_warning` is supplied it receives the preservation defect
  /// so callers can flag the result.
  Superoperator predual(double* hermiticity_warning = nullptr) const;

  /// max over the matrix-unit basis of ‖T(x†) − T(x)†‖_max.
  double hermiticity_preservation_defect() const;

  /// C(T) = Σ_{ij} |i⟩⟨j| ⊗ T(|i⟩⟨j|).
  CMatrix choi() const;

  /// this ∘ inner.
  Superoperator compose(const Superoperator& inner) const;

  Superoperator& operator+=(const Superoperator& o);
  Superoperator& operator-=(const Superoperator& o);
  Superoperator& operator*=(cplx s);

 private:
  int hdim_ = 0;
  CMatrix m_;
};

Superoperator operator+(Superoperator a, const Superoperator& b);
Superoperator operator-(Superoperator a, const Superoperator& b);
Superoperator operator*(cplx s, Superoperator a);
Superoperator operator*(const Superoperator& a, const Superoperator& b);

enum class Verdict { Pass, Fail, NotFalsified, SkippedHypothesis };

const char* verdict_name(Verdict v);

struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::Pass;
  double residual = 0.0;  // primary scalar: defect norm or worst eigenvalue
  std::string detail;
  std::optional<CMatrix> witness;

  bool ok() const {
    return verdict == Verdict::Pass || verdict == Verdict::NotFalsified;
  }
};

/// Complete positivity via the Choi matrix: pass iff Choi is Hermitian and
/// its minimum eigenvalue is ≥ −cp·max(1,‖C‖).
CheckReport is_cp(const Superoperator& t,
                  const Tolerances& tol = Tolerances::global());

/// Sampled positivity of the map (not complete positivity). Verdicts:
/// Pass means proven (CP implies positive), Fail carries a PSD witness x
/// with T(x) not PSD, NotFalsified otherwise.
CheckReport is_positive_sampled(const Superoperator& t, int samples,
                                std::uint64_t seed,
                                const Tolerances& tol = Tolerances::global());

CheckReport is_unital(const Superoperator& t,
                      const Tolerances& tol = Tolerances::global());

/// Schwarz property T(x)†T(x) ≤ T(x†x). Pass = proven via the sufficient
/// condition (CP and ‖T(I)‖_∞ ≤ 1); Fail = refuted with witness;
/// NotFalsified = sampled falsification found nothing.
CheckReport is_schwarz(const Superoperator& t, int samples, std::uint64_t seed,
                       const Tolerances& tol = Tolerances::global());

/// Sampling oracle for the block-positivity definition of complete
/// positivity: minimum over sampled tuples of Re Σ_{ij}⟨h_i, T(x_i†x_j)h_j⟩.
double cp_block_sample_min(const Superoperator& t, int tuples, int tuple_size,
                           std::uint64_t seed);

}  // namespace hsem
