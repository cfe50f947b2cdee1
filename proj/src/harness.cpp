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

#include "hsem/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hsem {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Canonical JSON writer: sorted keys (nlohmann objects are ordered maps),
// floats at 17 significant digits, no whitespace surprises.

void write_json(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += json(it.key()).dump();
        out += ": ";
        write_json(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Scalar-only arrays stay on one line (matrix rows, residual lists).
      const bool flat =
          std::all_of(j.begin(), j.end(), [](const json& v) {
            return !v.is_object() &&
                   !(v.is_array() &&
                     std::any_of(v.begin(), v.end(), [](const json& w) {
                       return w.is_array() || w.is_object();
                     }));
          });
      if (flat) {
        out += "[";
        bool first = true;
        for (const json& v : j) {
          if (!first) out += ", ";
          first = false;
          write_json(v, out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const json& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        write_json(v, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

std::string canonical_dump(const json& j) {
  std::string out;
  write_json(j, out, 0);
  out += "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Matrix (de)serialization: row-major nested arrays of [re, im] pairs.

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

cplx complex_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SpecError(path, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw SpecError(path, "expected a non-empty nested array");
  const int n = static_cast<int>(j.size());
  CMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw SpecError(path + "[" + std::to_string(i) + "]",
                      "matrix must be square");
    for (int c = 0; c < n; ++c)
      m(i, c) = complex_from_json(
          j[i][c], path + "[" + std::to_string(i) + "][" + std::to_string(c) +
                       "]");
  }
  return m;
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

const char* check_name(CheckKind k) {
  switch (k) {
    case CheckKind::Faithful: return "faithful";
    case CheckKind::Invariance: return "invariance";
    case CheckKind::Subinvariance: return "subinvariance";
    case CheckKind::Schwarz: return "schwarz";
    case CheckKind::Cp: return "cp";
    case CheckKind::Unital: return "unital";
    case CheckKind::Induce: return "induce";
    case CheckKind::Gns: return "gns";
    case CheckKind::Theorem4: return "theorem4";
    case CheckKind::Decompose: return "decompose";
    case CheckKind::Ccp: return "ccp";
    case CheckKind::Gksl: return "gksl";
  }
  return "?";
}

std::optional<CheckKind> check_from_name(const std::string& name) {
  static const std::pair<const char*, CheckKind> table[] = {
      {"faithful", CheckKind::Faithful},
      {"invariance", CheckKind::Invariance},
      {"subinvariance", CheckKind::Subinvariance},
      {"schwarz", CheckKind::Schwarz},
      {"cp", CheckKind::Cp},
      {"unital", CheckKind::Unital},
      {"induce", CheckKind::Induce},
      {"gns", CheckKind::Gns},
      {"theorem4", CheckKind::Theorem4},
      {"decompose", CheckKind::Decompose},
      {"ccp", CheckKind::Ccp},
      {"gksl", CheckKind::Gksl},
  };
  for (const auto& [n, k] : table)
    if (name == n) return k;
  return std::nullopt;
}

int Report::exit_code() const {
  for (const CheckResult& c : checks)
    if (c.verdict == Verdict::Fail) return 1;
  return 0;
}

ProblemSpec parse_spec(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw SpecError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("$", "spec must be a JSON object");

  ProblemSpec spec;
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw SpecError("$.dim", "required integer");
  spec.dim = j["dim"].get<int>();
  if (spec.dim < 1) throw SpecError("$.dim", "must be ≥ 1");
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("times")) {
    spec.times.clear();
    for (const json& t : j["times"]) spec.times.push_back(t.get<double>());
    if (spec.times.empty()) throw SpecError("$.times", "must be non-empty");
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw SpecError("$.tolerances", "must be an object");
    if (t.contains("scale")) spec.tol_scale = t["scale"].get<double>();
  }
  if (j.contains("sign_convention")) {
    const std::string s = j["sign_convention"].get<std::string>();
    if (s == "minus")
      spec.sign = SandwichSign::Minus;
    else if (s == "plus")
      spec.sign = SandwichSign::Plus;
    else
      throw SpecError("$.sign_convention", "must be \"minus\" or \"plus\"");
  }
  if (j.contains("max_dim")) spec.max_dim = j["max_dim"].get<int>();

  if (!j.contains("generator") || !j["generator"].is_object())
    throw SpecError("$.generator", "required object");
  const json& g = j["generator"];
  const std::string kind = g.value("kind", "");
  auto require_convention = [&](const char* where) {
    if (!g.contains("vectorization"))
      throw SpecError(std::string("$.generator.") + where,
                      "superoperators must carry a vectorization tag");
    if (g["vectorization"].get<std::string>() != kVectorization)
      throw SpecError("$.generator.vectorization",
                      std::string("unknown convention; expected \"") +
                          kVectorization + "\"");
  };
  if (kind == "gksl") {
    spec.generator.kind = GeneratorSpec::Kind::Gksl;
    spec.generator.gksl.hamiltonian =
        g.contains("hamiltonian")
            ? matrix_from_json(g["hamiltonian"], "$.generator.hamiltonian")
            : CMatrix(spec.dim);
    if (spec.generator.gksl.hamiltonian.dim() != spec.dim)
      throw SpecError("$.generator.hamiltonian", "dimension mismatch");
    if (g.contains("jumps")) {
      const json& jumps = g["jumps"];
      for (size_t i = 0; i < jumps.size(); ++i) {
        CMatrix v = matrix_from_json(
            jumps[i], "$.generator.jumps[" + std::to_string(i) + "]");
        if (v.dim() != spec.dim)
          throw SpecError("$.generator.jumps[" + std::to_string(i) + "]",
                          "dimension mismatch");
        spec.generator.gksl.jumps.push_back(std::move(v));
      }
    }
    if (g.contains("rates"))
      for (const json& r : g["rates"])
        spec.generator.gksl.rates.push_back(r.get<double>());
    if (spec.generator.gksl.rates.size() != spec.generator.gksl.jumps.size())
      throw SpecError("$.generator.rates", "one rate per jump operator");
  } else if (kind == "superoperator" || kind == "semigroup_member") {
    spec.generator.kind = kind == "superoperator"
                              ? GeneratorSpec::Kind::RawSuperoperator
                              : GeneratorSpec::Kind::SemigroupMember;
    require_convention("matrix");
    if (!g.contains("matrix"))
      throw SpecError("$.generator.matrix", "required");
    spec.generator.superop_matrix =
        matrix_from_json(g["matrix"], "$.generator.matrix");
    if (spec.generator.superop_matrix.dim() != spec.dim * spec.dim)
      throw SpecError("$.generator.matrix", "must be n²×n²");
    if (spec.generator.kind == GeneratorSpec::Kind::SemigroupMember) {
      if (!g.contains("time"))
        throw SpecError("$.generator.time", "required for a semigroup member");
      spec.generator.member_time = g["time"].get<double>();
    }
  } else {
    throw SpecError("$.generator.kind",
                    "must be \"gksl\", \"superoperator\", or "
                    "\"semigroup_member\"");
  }

  if (j.contains("state")) {
    CMatrix rho = matrix_from_json(j["state"], "$.state");
    if (rho.dim() != spec.dim) throw SpecError("$.state", "dimension mismatch");
    spec.state = std::move(rho);
  }

  if (j.contains("checks")) {
    for (const json& c : j["checks"]) {
      const std::string name = c.get<std::string>();
      const auto kind_opt = check_from_name(name);
      if (!kind_opt)
        throw SpecError("$.checks", "unknown check \"" + name + "\"");
      if (std::find(spec.checks.begin(), spec.checks.end(), *kind_opt) ==
          spec.checks.end())
        spec.checks.push_back(*kind_opt);
    }
  }
  if (spec.checks.empty())
    for (int k = 0; k <= static_cast<int>(CheckKind::Gksl); ++k)
      spec.checks.push_back(static_cast<CheckKind>(k));
  return spec;
}

std::string emit_spec(const ProblemSpec& spec) {
  json j;
  j["dim"] = spec.dim;
  j["seed"] = spec.seed;
  j["times"] = spec.times;
  j["tolerances"] = json{{"scale", spec.tol_scale}};
  j["sign_convention"] = spec.sign == SandwichSign::Minus ? "minus" : "plus";
  j["max_dim"] = spec.max_dim;
  json g;
  switch (spec.generator.kind) {
    case GeneratorSpec::Kind::Gksl: {
      g["kind"] = "gksl";
      g["hamiltonian"] = matrix_to_json(spec.generator.gksl.hamiltonian);
      json jumps = json::array();
      for (const CMatrix& v : spec.generator.gksl.jumps)
        jumps.push_back(matrix_to_json(v));
      g["jumps"] = std::move(jumps);
      g["rates"] = spec.generator.gksl.rates;
      break;
    }
    case GeneratorSpec::Kind::RawSuperoperator:
      g["kind"] = "superoperator";
      g["matrix"] = matrix_to_json(spec.generator.superop_matrix);
      g["vectorization"] = kVectorization;
      break;
    case GeneratorSpec::Kind::SemigroupMember:
      g["kind"] = "semigroup_member";
      g["matrix"] = matrix_to_json(spec.generator.superop_matrix);
      g["vectorization"] = kVectorization;
      g["time"] = spec.generator.member_time;
      break;
  }
  j["generator"] = std::move(g);
  if (spec.state) j["state"] = matrix_to_json(*spec.state);
  json checks = json::array();
  for (CheckKind k : spec.checks) checks.push_back(check_name(k));
  j["checks"] = std::move(checks);
  return canonical_dump(j);
}

namespace {

struct PipelineState {
  std::optional<Generator> generator;            // absent for members
  std::optional<Superoperator> member;           // semigroup member T
  std::optional<DensityMatrix> rho;
  std::string state_provenance;
  std::optional<ExpCache> cache;
  std::vector<double> times;
  bool faithful_ok = false;
  bool schwarz_ok = true;      // proven or not-falsified on all members
  bool subinvariant_ok = true;
  std::optional<Superoperator> l_tilde;
  std::optional<SpectralDecomposition> decomposition;
};

std::vector<const Superoperator*> members(PipelineState& st) {
  std::vector<const Superoperator*> out;
  if (st.member) {
    out.push_back(&*st.member);
  } else if (st.cache) {
    for (double t : st.times) out.push_back(&st.cache->at(t));
  }
  return out;
}

// ccp and gksl can run without an explicit decompose request; the
// decomposition is built on demand.
void ensure_decomposition(PipelineState& st, const Tolerances& tol) {
  if (st.decomposition) return;
  const Superoperator irho = i_rho_superop(*st.rho);
  const Superoperator irho_pinv = i_rho_pinv_superop(*st.rho);
  st.l_tilde = irho.compose(st.generator->op).compose(irho_pinv);
  st.decomposition = decompose_generator(*st.l_tilde, tol);
}

}  // namespace

Report run(const ProblemSpec& spec) {
  Tolerances tol = Tolerances::global();
  tol.scale *= spec.tol_scale;

  Report report;
  report.dim = spec.dim;
  report.seed = spec.seed;
  report.sign_convention =
      spec.sign == SandwichSign::Minus ? "minus" : "plus";

  PipelineState st;
  st.times = spec.times;
  switch (spec.generator.kind) {
    case GeneratorSpec::Kind::Gksl:
      st.generator = make_gksl_generator(spec.generator.gksl);
      break;
    case GeneratorSpec::Kind::RawSuperoperator:
      st.generator = Generator(
          Superoperator(spec.dim, spec.generator.superop_matrix),
          Generator::Provenance::RawSuperoperator);
      break;
    case GeneratorSpec::Kind::SemigroupMember:
      st.member = Superoperator(spec.dim, spec.generator.superop_matrix);
      break;
  }
  if (st.generator) st.cache.emplace(*st.generator);

  if (spec.state) {
    st.rho.emplace(*spec.state, tol);
    st.state_provenance = "given";
  } else if (st.generator) {
    const InvariantStateResult derived = invariant_state_of(*st.generator, tol);
    if (derived.accepted()) {
      st.rho = derived.state;
      st.state_provenance = "derived";
    } else {
      st.state_provenance =
          std::string("rejected: ") + rejection_name(*derived.rejection);
    }
  } else {
    st.state_provenance = "rejected: no generator to derive from";
  }
  report.state_provenance = st.state_provenance;
  if (st.rho) {
    report.state = st.rho->matrix();
    report.state_basis = st.rho->eigenbasis();
  }
  st.faithful_ok = st.rho && st.rho->faithful();

  // Dependency order; requested subset only (empty request means all).
  static const CheckKind order[] = {
      CheckKind::Faithful, CheckKind::Unital,    CheckKind::Cp,
      CheckKind::Schwarz,  CheckKind::Invariance, CheckKind::Subinvariance,
      CheckKind::Induce,   CheckKind::Gns,       CheckKind::Theorem4,
      CheckKind::Decompose, CheckKind::Ccp,      CheckKind::Gksl};

  std::vector<CheckKind> requested = spec.checks;
  if (requested.empty())
    requested.assign(std::begin(order), std::end(order));

  for (CheckKind kind : order) {
    if (std::find(requested.begin(), requested.end(), kind) ==
        requested.end())
      continue;
    CheckResult res;
    res.kind = kind;
    const double t0 = now_ms();
    auto skip = [&](const std::string& why) {
      res.verdict = Verdict::SkippedHypothesis;
      res.detail = why;
    };
    try {
      switch (kind) {
        case CheckKind::Faithful: {
          if (!st.rho) {
            skip("state unavailable (" + st.state_provenance + ")");
            break;
          }
          res.verdict = st.rho->faithful() ? Verdict::Pass : Verdict::Fail;
          res.residuals["min_eigenvalue"] = st.rho->min_eigenvalue();
          res.detail = "min eigenvalue vs faithfulness threshold";
          break;
        }
        case CheckKind::Unital: {
          double worst = 0.0;
          Verdict v = Verdict::Pass;
          for (const Superoperator* m : members(st)) {
            const CheckReport r = is_unital(*m, tol);
            worst = std::max(worst, r.residual);
            if (r.verdict == Verdict::Fail) v = Verdict::Fail;
          }
          if (st.generator)
            res.residuals["generator_unitality"] =
                st.generator->unitality_residual;
          res.verdict = v;
          res.residuals["worst"] = worst;
          res.detail = "‖T_t(I) − I‖₂ over requested times";
          break;
        }
        case CheckKind::Cp: {
          Verdict v = Verdict::Pass;
          double worst = std::numeric_limits<double>::infinity();
          for (const Superoperator* m : members(st)) {
            const CheckReport r = is_cp(*m, tol);
            worst = std::min(worst, r.residual);
            if (r.verdict == Verdict::Fail) v = Verdict::Fail;
          }
          res.verdict = v;
          res.residuals["choi_min_eigenvalue"] = worst;
          res.detail = "Choi minimum eigenvalue over requested times";
          break;
        }
        case CheckKind::Schwarz: {
          Verdict v = Verdict::Pass;
          double worst = std::numeric_limits<double>::infinity();
          std::string detail;
          int i = 0;
          for (const Superoperator* m : members(st)) {
            const CheckReport r = is_schwarz(*m, 200, spec.seed + i++, tol);
            worst = std::min(worst, r.residual);
            if (r.verdict == Verdict::Fail) {
              v = Verdict::Fail;
              if (!res.witness) res.witness = r.witness;
            } else if (r.verdict == Verdict::NotFalsified &&
                       v == Verdict::Pass) {
              v = Verdict::NotFalsified;
            }
            detail = r.detail;
          }
          st.schwarz_ok = v != Verdict::Fail;
          res.verdict = v;
          res.residuals["worst"] = worst;
          res.detail = detail;
          break;
        }
        case CheckKind::Invariance: {
          if (!st.rho) {
            skip("state unavailable (" + st.state_provenance + ")");
            break;
          }
          double worst = 0.0;
          Verdict v = Verdict::Pass;
          for (const Superoperator* m : members(st)) {
            const CheckReport r = is_invariant(*m, *st.rho, tol);
            worst = std::max(worst, r.residual);
            if (r.verdict == Verdict::Fail) v = Verdict::Fail;
          }
          res.verdict = v;
          res.residuals["worst_trace_norm"] = worst;
          res.detail = "‖T_t†(ρ) − ρ‖₁ over requested times";
          break;
        }
        case CheckKind::Subinvariance: {
          if (!st.rho) {
            skip("state unavailable (" + st.state_provenance + ")");
            break;
          }
          double worst = std::numeric_limits<double>::infinity();
          Verdict v = Verdict::Pass;
          for (const Superoperator* m : members(st)) {
            const CheckReport r = is_subinvariant(*m, *st.rho, tol);
            worst = std::min(worst, r.residual);
            if (r.verdict == Verdict::Fail) v = Verdict::Fail;
          }
          st.subinvariant_ok = v == Verdict::Pass;
          res.verdict = v;
          res.residuals["worst_min_eigenvalue"] = worst;
          res.detail = "min eig(ρ − T_t†(ρ)) over requested times";
          break;
        }
        case CheckKind::Induce: {
          if (!st.faithful_ok) {
            skip("requires a faithful state");
            break;
          }
          double worst_residual = 0.0, worst_norm = 0.0;
          for (const Superoperator* m : members(st)) {
            const InducedMap im = induce(*m, *st.rho, tol);
            worst_residual =
                std::max(worst_residual, im.intertwining_residual);
            worst_norm = std::max(worst_norm, im.s2_norm);
          }
          res.residuals["intertwining"] = worst_residual;
          res.residuals["s2_norm"] = worst_norm;
          const bool ok =
              worst_residual <= tol.scaled(tol.intertwining) &&
              worst_norm <= 1.0 + tol.scaled(tol.contraction);
          if (!st.schwarz_ok || !st.subinvariant_ok) {
            res.verdict = ok ? Verdict::Pass : Verdict::SkippedHypothesis;
            res.detail = "contraction hypothesis not established";
          } else {
            res.verdict = ok ? Verdict::Pass : Verdict::Fail;
            res.detail = "intertwining and S₂ contraction";
          }
          break;
        }
        case CheckKind::Gns: {
          if (!st.faithful_ok) {
            skip("requires a faithful state");
            break;
          }
          double worst = 0.0;
          Verdict v = Verdict::Pass;
          std::string detail = "ω-operator norm of T̄";
          for (const Superoperator* m : members(st)) {
            const GnsInduced g = gns_induce(*m, *st.rho, spec.seed, tol);
            worst = std::max(worst, g.weighted_norm);
            if (g.contraction.verdict != Verdict::Pass) {
              v = g.contraction.verdict;
              detail = g.contraction.detail;
            }
          }
          res.verdict = v;
          res.residuals["worst_gns_norm"] = worst;
          res.detail = detail;
          break;
        }
        case CheckKind::Theorem4: {
          if (!st.generator) {
            skip("no generator (semigroup member spec)");
            break;
          }
          if (!st.faithful_ok) {
            skip("requires a faithful state");
            break;
          }
          const RelationsReport t4 =
              relations_suite(*st.generator, *st.rho, st.times, spec.seed, tol);
          res.residuals["intertwine"] = t4.intertwine_residual;
          res.residuals["generator_compose"] = t4.generator_compose_residual;
          res.residuals["generator_relation"] =
              t4.generator_relation_residual;
          res.residuals["rotated_relation"] = t4.rotated_relation_residual;
          res.residuals["worst_s2_norm"] = t4.worst_s2_norm;
          res.residuals["worst_gns_norm"] = t4.worst_gns_norm;
          res.residuals["continuity_final"] = t4.continuity_profile.back();
          const bool ok = t4.pass(tol);
          if (!st.schwarz_ok || !st.subinvariant_ok) {
            res.verdict = ok ? Verdict::Pass : Verdict::SkippedHypothesis;
            res.detail = "hypothesis flags raised; relations still evaluated";
          } else {
            res.verdict = ok ? Verdict::Pass : Verdict::Fail;
            res.detail = "intertwining, generator relations, continuity";
          }
          break;
        }
        case CheckKind::Decompose: {
          if (!st.generator) {
            skip("no generator (semigroup member spec)");
            break;
          }
          if (!st.faithful_ok) {
            skip("requires a faithful state");
            break;
          }
          ensure_decomposition(st, tol);
          const double rel =
              st.decomposition->reconstruction_residual /
              std::max(1.0, st.l_tilde->matrix().frobenius());
          res.residuals["reconstruction"] =
              st.decomposition->reconstruction_residual;
          res.residuals["reconstruction_relative"] = rel;
          res.residuals["sve"] = st.decomposition->sve_residual;
          res.residuals["orthonormality"] =
              st.decomposition->orthonormality_defect;
          res.residuals["hermiticity"] =
              st.decomposition->hermiticity_defect;
          res.verdict = rel <= tol.scaled(tol.sve_reconstruction) &&
                                st.decomposition->orthonormality_defect <=
                                    tol.scaled(tol.sve_orthonormal)
                            ? Verdict::Pass
                            : Verdict::Fail;
          res.detail = "self-adjoint singular system of K = (L̃ − I)⁻¹";
          report.decomposition = st.decomposition;
          break;
        }
        case CheckKind::Ccp: {
          if (!st.generator || !st.faithful_ok) {
            skip(!st.generator ? "no generator (semigroup member spec)"
                               : "requires a faithful state");
            break;
          }
          if (spec.dim > spec.max_dim) {
            skip("dimension exceeds the ccp tensor cap (--max-dim)");
            break;
          }
          ensure_decomposition(st, tol);
          Rng rng(spec.seed + 17);
          bool verdict = true;
          double worst_sandwich = std::numeric_limits<double>::infinity();
          double kernel_eig = 0.0;
          for (int trial = 0; trial < 5; ++trial) {
            const CVector e = random_unit_vector(spec.dim, rng);
            const CcpReport c = ccp_test(*st.decomposition, e, spec.sign, tol);
            verdict = verdict && c.ccp;
            worst_sandwich = std::min(worst_sandwich, c.sandwich_min_eig);
            kernel_eig = c.kernel_min_eig;
          }
          res.verdict = verdict ? Verdict::Pass : Verdict::Fail;
          res.residuals["sandwich_min_eigenvalue"] = worst_sandwich;
          res.residuals["kernel_min_eigenvalue"] = kernel_eig;
          res.detail = spec.sign == SandwichSign::Minus
                           ? "5 random unit vectors e"
                           : "5 random unit vectors e "
                             "(non-default plus sign convention)";
          break;
        }
        case CheckKind::Gksl: {
          if (!st.generator || !st.faithful_ok) {
            skip(!st.generator ? "no generator (semigroup member spec)"
                               : "requires a faithful state");
            break;
          }
          ensure_decomposition(st, tol);
          const GkslForm form =
              gksl_reconstruct(*st.decomposition, *st.rho, *st.generator, {},
                               tol);
          const double lscale =
              std::max(1.0, st.generator->op.matrix().frobenius());
          res.residuals["generator"] = form.generator_residual;
          res.residuals["normal_form"] = form.normal_form_residual;
          res.residuals["unit"] = form.unit_residual;
          res.residuals["identity_c"] = form.identity_c_residual;
          res.residuals["jump_count"] =
              static_cast<double>(form.jumps.size());
          res.verdict =
              form.generator_residual <= tol.scaled(tol.gksl_identity) * lscale &&
                      form.unit_residual <= tol.scaled(tol.gksl_unit) &&
                      form.identity_c_residual <= tol.scaled(tol.gksl_unit)
                  ? Verdict::Pass
                  : Verdict::Fail;
          res.detail = "jump-operator reconstruction over the matrix-unit "
                       "basis";
          report.gksl = form;
          break;
        }
      }
    } catch (const NumericError& e) {
      res.verdict = Verdict::Fail;
      res.detail = std::string("numeric failure: ") + e.what();
      res.residuals["numeric"] = e.value();
    }
    res.elapsed_ms = now_ms() - t0;
    report.checks.push_back(std::move(res));
  }
  return report;
}

std::string emit(const Report& report, EmitFormat format,
                 bool include_timing) {
  if (format == EmitFormat::Text) {
    std::ostringstream out;
    out << "dim=" << report.dim << " seed=" << report.seed
        << " state=" << report.state_provenance
        << " sign=" << report.sign_convention << "\n";
    for (const CheckResult& c : report.checks) {
      char buf[64];
      out << "  " << check_name(c.kind) << ": " << verdict_name(c.verdict);
      for (const auto& [k, v] : c.residuals) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << " " << k << "=" << buf;
      }
      if (!c.detail.empty()) out << "  # " << c.detail;
      if (include_timing) {
        std::snprintf(buf, sizeof(buf), " [%.1f ms]", c.elapsed_ms);
        out << buf;
      }
      out << "\n";
    }
    return out.str();
  }

  json j;
  j["dim"] = report.dim;
  j["seed"] = report.seed;
  j["state_provenance"] = report.state_provenance;
  j["sign_convention"] = report.sign_convention;
  j["vectorization"] = kVectorization;
  if (report.state) j["state"] = matrix_to_json(*report.state);
  if (report.state_basis) {
    j["state_basis"] = matrix_to_json(*report.state_basis);
    j["state_basis_order"] = "descending-eigenvalue";
  }
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    json jc;
    jc["name"] = check_name(c.kind);
    jc["verdict"] = verdict_name(c.verdict);
    jc["detail"] = c.detail;
    json residuals;
    for (const auto& [k, v] : c.residuals) residuals[k] = v;
    jc["residuals"] = std::move(residuals);
    if (c.witness) jc["witness"] = matrix_to_json(*c.witness);
    if (include_timing) jc["elapsed_ms"] = c.elapsed_ms;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  if (report.decomposition) {
    const SpectralDecomposition& d = *report.decomposition;
    json jd;
    jd["sigma"] = d.sigma;
    jd["lambda"] = d.lambda;
    json as = json::array(), bs = json::array();
    for (const CMatrix& m : d.a) as.push_back(matrix_to_json(m));
    for (const CMatrix& m : d.b) bs.push_back(matrix_to_json(m));
    jd["a"] = std::move(as);
    jd["b"] = std::move(bs);
    jd["reconstruction_residual"] = d.reconstruction_residual;
    j["decomposition"] = std::move(jd);
  }
  if (report.gksl) {
    json jg;
    json jumps = json::array();
    for (const GkslForm::Jump& jp : report.gksl->jumps) {
      json one;
      one["rate"] = jp.rate;
      one["operator"] = matrix_to_json(jp.y);
      jumps.push_back(std::move(one));
    }
    jg["jumps"] = std::move(jumps);
    jg["generator_residual"] = report.gksl->generator_residual;
    jg["unit_residual"] = report.gksl->unit_residual;
    jg["identity_c_residual"] = report.gksl->identity_c_residual;
    jg["raw_jump_count"] = report.gksl->raw_jump_count;
    j["gksl"] = std::move(jg);
  }
  return canonical_dump(j);
}

ProblemSpec generate_spec(const std::string& kind, int dim,
                          std::uint64_t seed, int num_jumps,
                          double hamiltonian_scale) {
  ProblemSpec spec;
  spec.dim = dim;
  spec.seed = seed;
  for (int k = 0; k <= static_cast<int>(CheckKind::Gksl); ++k)
    spec.checks.push_back(static_cast<CheckKind>(k));
  if (kind == "gksl-random") {
    spec.generator.kind = GeneratorSpec::Kind::Gksl;
    spec.generator.gksl = random_gksl_data(dim, num_jumps, seed,
                                           hamiltonian_scale);
  } else if (kind == "thermal-qubit") {
    if (dim != 2)
      throw SpecError("$.dim", "thermal-qubit requires dim = 2");
    spec.generator.kind = GeneratorSpec::Kind::Gksl;
    spec.generator.gksl = thermal_qubit_data();
  } else if (kind == "transpose-counterexample") {
    spec.generator.kind = GeneratorSpec::Kind::RawSuperoperator;
    spec.generator.superop_matrix =
        transpose_counterexample(dim).op.matrix();
    CMatrix rho = CMatrix::identity(dim);
    rho *= cplx(1.0 / dim, 0.0);
    spec.state = std::move(rho);
  } else if (kind == "unitary-commutant") {
    Rng rng(seed);
    // Random faithful diagonal state, then commuting unitaries.
    CMatrix rho(dim);
    double total = 0.0;
    std::vector<double> w(dim);
    for (int i = 0; i < dim; ++i) {
      w[i] = rng.uniform(0.2, 1.0);
      total += w[i];
    }
    for (int i = 0; i < dim; ++i) rho(i, i) = w[i] / total;
    const DensityMatrix state(rho);
    spec.generator.kind = GeneratorSpec::Kind::RawSuperoperator;
    spec.generator.superop_matrix =
        unitary_commutant_instance(state, seed).op.matrix();
    spec.state = rho;
  } else {
    throw SpecError("$.kind", "unknown instance kind \"" + kind + "\"");
  }
  return spec;
}

}  // namespace hsem
