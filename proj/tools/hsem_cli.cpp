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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hsem/harness.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

double env_tol_scale() {
  const char* v = std::getenv("HSEM_TOL_SCALE");
  if (!v) return 1.0;
  return std::atof(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hsem: verification and decomposition of quantum dynamical "
               "semigroups on Hilbert-Schmidt space"};
  app.require_subcommand(1);

  std::string spec_path = "-";
  std::string out_path;
  std::string format = "json";
  std::string sign = "minus";
  double tol_scale = env_tol_scale();
  std::uint64_t seed = 0;
  bool seed_set = false;
  int max_dim = 6;
  bool timing = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec_path, "problem spec JSON (- for stdin)");
    cmd->add_option("-o,--output", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--tol-scale", tol_scale,
                    "global tolerance multiplier (env HSEM_TOL_SCALE)");
    cmd->add_option("--sign-convention", sign,
                    "ccp sandwich sign: minus (default) or plus")
        ->check(CLI::IsMember({"minus", "plus"}));
    cmd->add_option("--max-dim", max_dim, "ccp tensor dimension cap");
    cmd->add_flag("--timing", timing, "include timing in reports");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; },
        "override the spec seed");
  };

  CLI::App* check = app.add_subcommand("check", "run checks from a spec");
  add_common(check);
  CLI::App* decompose = app.add_subcommand(
      "decompose", "spectral decomposition and GKSL reconstruction");
  add_common(decompose);

  CLI::App* generate =
      app.add_subcommand("generate", "emit a problem spec for a named "
                                     "instance kind");
  std::string kind = "gksl-random";
  int dim = 2;
  int num_jumps = 2;
  double h_scale = 1.0;
  generate->add_option("--kind", kind,
                       "gksl-random | thermal-qubit | "
                       "transpose-counterexample | unitary-commutant");
  generate->add_option("--dim", dim, "Hilbert space dimension");
  generate->add_option("--seed", seed, "instance seed");
  generate->add_option("--jumps", num_jumps, "number of jump operators");
  generate->add_option("--hamiltonian-scale", h_scale, "Hamiltonian scale");
  generate->add_option("-o,--output", out_path, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      const hsem::ProblemSpec spec =
          hsem::generate_spec(kind, dim, seed, num_jumps, h_scale);
      write_output(out_path, hsem::emit_spec(spec));
      return 0;
    }

    hsem::ProblemSpec spec = hsem::parse_spec(read_input(spec_path));
    spec.tol_scale *= tol_scale;
    spec.sign = sign == "plus" ? hsem::SandwichSign::Plus
                               : hsem::SandwichSign::Minus;
    spec.max_dim = max_dim;
    if (seed_set) spec.seed = seed;
    if (decompose->parsed()) {
      spec.checks = {hsem::CheckKind::Faithful, hsem::CheckKind::Decompose,
                     hsem::CheckKind::Ccp, hsem::CheckKind::Gksl};
    }
    const hsem::Report report = hsem::run(spec);
    write_output(out_path,
                 hsem::emit(report,
                            format == "text" ? hsem::EmitFormat::Text
                                             : hsem::EmitFormat::Json,
                            timing));
    return report.exit_code();
  } catch (const hsem::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const hsem::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
