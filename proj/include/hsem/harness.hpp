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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsem/instances.hpp"
#include "hsem/spectral.hpp"

namespace hsem {

/// Schema violation in a problem spec; carries a JSON-pointer-ish path.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class CheckKind {
  Faithful,
  Invariance,
  Subinvariance,
  Schwarz,
  Cp,
  Unital,
  Induce,
  Gns,
  Theorem4,
  Decompose,
  Ccp,
  Gksl,
};

const char* check_name(CheckKind k);
std::optional<CheckKind> check_from_name(const std::string& name);

struct GeneratorSpec {
  enum class Kind { Gksl, RawSuperoperator, SemigroupMember };
  Kind kind = Kind::Gksl;
  GkslData gksl;            // kind == Gksl
  CMatrix superop_matrix;   // kind == RawSuperoperator / SemigroupMember
  double member_time = 0.0; // kind == SemigroupMember
};

struct ProblemSpec {
  int dim = 0;
  std::uint64_t seed = 0;
  GeneratorSpec generator;
  std::optional<CMatrix> state;  // derived from the generator when absent
  std::vector<CheckKind> checks;
  std::vector<double> times = {0.1, 1.0, 10.0};
  double tol_scale = 1.0;
  SandwichSign sign = SandwichSign::Minus;
  int max_dim = 6;  // ccp tensor dimension cap
};

struct CheckResult {
  CheckKind kind = CheckKind::Faithful;
  Verdict verdict = Verdict::Pass;
  std::map<std::string, double> residuals;
  std::string detail;
  std::optional<CMatrix> witness;  // violating input, when one exists
  double elapsed_ms = 0.0;
};

struct Report {
  int dim = 0;
  std::uint64_t seed = 0;
  std::string state_provenance;  // "given" | "derived" | "rejected: <reason>"
  std::string sign_convention;
  std::optional<CMatrix> state;        // the ρ the checks ran against
  std::optional<CMatrix> state_basis;  // eigenbasis h_n, descending order
  std::vector<CheckResult> checks;
  // populated when decompose ran
  std::optional<SpectralDecomposition> decomposition;
  std::optional<GkslForm> gksl;

  /// 0 all pass / not-falsified / skipped; 1 at least one fail.
  int exit_code() const;
};

ProblemSpec parse_spec(const std::string& bytes);
std::string emit_spec(const ProblemSpec& spec);

Report run(const ProblemSpec& spec);

enum class EmitFormat { Json, Text };

/// Deterministic serialization: sorted keys, floats at 17 significant
/// digits. Timing is included only on request so reports stay bit-identical
/// across runs.
std::string emit(const Report& report, EmitFormat format,
                 bool include_timing = false);

/// Problem spec for a named instance kind ("gksl-random", "thermal-qubit",
/// "transpose-counterexample", "unitary-commutant").
ProblemSpec generate_spec(const std::string& kind, int dim,
                          std::uint64_t seed, int num_jumps = 2,
                          double hamiltonian_scale = 1.0);

}  // namespace hsem
