// Copyright 2026 The qdh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: verify the closed-form constructions, compute
// certified concealment bounds, solve the PPT discrimination sandwich and
// simulate the one-bit hiding protocol. All output is deterministic given
// (flags, input files, seed).
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical
// non-convergence.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdh/bounds.hpp"
#include "qdh/constructions.hpp"
#include "qdh/ensemble_io.hpp"
#include "qdh/hiding_sim.hpp"

namespace {

using namespace qdh;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  char hex[32];
  std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(buf.str())));
  return hex;
}

// Flat key/value report with an optional embedded table. Values are
// stored preformatted; `raw` marks JSON-literal values (numbers, bools).
struct Report {
  struct Entry {
    std::string key;
    std::string value;
    bool raw = false;
  };
  std::vector<Entry> meta;
  std::vector<Entry> results;
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table_rows;

  void meta_kv(const std::string& k, const std::string& v) {
    meta.push_back({k, v, false});
  }
  void add(const std::string& k, const std::string& v) {
    results.push_back({k, v, false});
  }
  void add_number(const std::string& k, double v) {
    results.push_back({k, fmt_double(v), true});
  }
  void add_int(const std::string& k, std::int64_t v) {
    results.push_back({k, std::to_string(v), true});
  }
  void add_bool(const std::string& k, bool v) {
    results.push_back({k, fmt_bool(v), true});
  }

  std::string to_table() const {
    std::string out;
    for (const auto& e : meta) out += "# " + e.key + ": " + e.value + "\n";
    std::size_t width = 0;
    for (const auto& e : results) width = std::max(width, e.key.size());
    for (const auto& e : results) {
      out += e.key + std::string(width - e.key.size() + 2, ' ') + e.value +
             "\n";
    }
    if (!table_header.empty()) {
      out += "\n";
      for (std::size_t i = 0; i < table_header.size(); ++i) {
        out += (i ? "  " : "") + table_header[i];
      }
      out += "\n";
      for (const auto& row : table_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          out += (i ? "  " : "") + row[i];
        }
        out += "\n";
      }
    }
    return out;
  }

  std::string to_json() const {
    std::string out = "{\n  \"meta\": {";
    for (std::size_t i = 0; i < meta.size(); ++i) {
      out += (i ? ", " : "") + ("\"" + json_escape(meta[i].key) + "\": \"" +
                                json_escape(meta[i].value) + "\"");
    }
    out += "},\n  \"results\": {";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& e = results[i];
      out += (i ? ", " : "") + ("\"" + json_escape(e.key) + "\": ");
      out += e.raw ? e.value : "\"" + json_escape(e.value) + "\"";
    }
    out += "}";
    if (!table_header.empty()) {
      out += ",\n  \"table\": [";
      for (std::size_t r = 0; r < table_rows.size(); ++r) {
        out += (r ? ", " : "") + std::string("{");
        for (std::size_t i = 0; i < table_header.size(); ++i) {
          out += (i ? ", " : "") +
                 ("\"" + json_escape(table_header[i]) + "\": " +
                  table_rows[r][i]);
        }
        out += "}";
      }
      out += "]";
    }
    out += "\n}\n";
    return out;
  }

  std::string to_csv() const {
    if (!table_header.empty()) {
      std::string out;
      for (std::size_t i = 0; i < table_header.size(); ++i) {
        out += (i ? "," : "") + table_header[i];
      }
      out += "\n";
      for (const auto& row : table_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          out += (i ? "," : "") + row[i];
        }
        out += "\n";
      }
      return out;
    }
    std::string out = "key,value\n";
    for (const auto& e : results) out += e.key + "," + e.value + "\n";
    return out;
  }

  std::string render(const std::string& format) const {
    if (format == "json") return to_json();
    if (format == "csv") return to_csv();
    return to_table();
  }
};

void emit(const Report& report, const std::string& format,
          const std::string& out_path) {
  const std::string text = report.render(format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write: " + out_path);
    out << text;
  }
}

// Common flags shared by all subcommands.
struct CommonOpts {
  std::string format = "table";
  std::string out_path;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Write the report to a file");
    cmd->add_option("--seed", seed, "Random seed")
        ->envname("SEED")
        ->capture_default_str();
  }
};

// Target selection: a named construction or an ensemble file.
struct TargetOpts {
  std::string target;
  int d = 3;
  std::string ensemble_path;
  bool allow_file = false;

  void attach(CLI::App* cmd, bool with_file) {
    allow_file = with_file;
    cmd->add_option("target", target,
                    "Named construction: example1 | exampled");
    cmd->add_option("--d", d, "Odd local dimension for exampled");
    if (with_file) {
      cmd->add_option("--ensemble", ensemble_path,
                      "Ensemble JSON file (alternative to a named target)");
    }
  }

  void check() const {
    const bool has_file = !ensemble_path.empty();
    if (has_file && !target.empty()) {
      throw CLI::ValidationError(
          "target", "give either a named target or --ensemble, not both");
    }
    if (!has_file && target != "example1" && target != "exampled") {
      throw CLI::ValidationError(
          "target", allow_file
                        ? "expected example1, exampled or --ensemble FILE"
                        : "expected example1 or exampled");
    }
    if (target == "exampled" && (d < 3 || d % 2 == 0)) {
      throw CLI::ValidationError("--d", "dimension must be odd and >= 3");
    }
  }

  bool is_file() const { return !ensemble_path.empty(); }

  std::string name() const {
    if (is_file()) return ensemble_path;
    return target == "exampled" ? "exampled(d=" + std::to_string(d) + ")"
                                : target;
  }

  TwoStateEnsemble load() const {
    if (is_file()) return read_ensemble_file(ensemble_path);
    return target == "example1" ? example1_ensemble() : exampled_ensemble(d);
  }
};

void add_provenance(Report& report, const std::string& command,
                    const TargetOpts& target, std::uint64_t seed) {
  report.meta_kv("tool", "qdh " QDH_VERSION);
  report.meta_kv("command", command);
  report.meta_kv("input", target.name());
  if (target.is_file()) {
    report.meta_kv("input_digest", file_digest(target.ensemble_path));
  }
  report.meta_kv("seed", std::to_string(seed));
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const TargetOpts& target, const CommonOpts& common,
               double tol) {
  const TwoStateEnsemble e = target.load();
  const DualCertificate cert = target.target == "example1"
                                   ? example1_certificate()
                                   : exampled_certificate(target.d);

  Report report;
  add_provenance(report, "verify", target, common.seed);
  report.meta_kv("tolerance", fmt_double(tol));

  bool ok = true;
  auto check = [&](const std::string& name, bool pass) {
    report.add(name, pass ? "PASS" : "FAIL");
    ok &= pass;
  };

  const double overlap = (e.rho0().matrix() * e.rho1().matrix()).trace().real();
  report.add_number("state_overlap", overlap);
  check("orthogonality", overlap <= 1e-12);
  check("pt_invariance", is_pt_invariant(e, tol));

  report.add_number("tr_abs_h", cert.tr_abs_h());
  report.add_number("tr_abs_h_pt", cert.tr_abs_h_pt());
  report.add_number("feasibility_residual", cert.feasibility_residual());
  check("certificate_feasible", cert.feasible(tol));

  const bool is_example1 = target.target == "example1";
  const double dd = target.d;
  const double expect_h = is_example1 ? 5.0 / 12.0 : (dd + 2.0) / (4.0 * dd);
  const double expect_h_pt =
      is_example1 ? 7.0 / 12.0 : (3.0 * dd - 2.0) / (4.0 * dd);
  const BipartiteOperator pt_reference =
      is_example1 ? example1_certificate_pt_reference()
                  : exampled_certificate_pt_reference(target.d);
  report.add_number("tr_abs_h_expected", expect_h);
  report.add_number("tr_abs_h_pt_expected", expect_h_pt);
  check("trace_norm_h", std::abs(cert.tr_abs_h() - expect_h) <= tol);
  check("trace_norm_h_pt", std::abs(cert.tr_abs_h_pt() - expect_h_pt) <= tol);
  check("pt_reference_match",
        max_abs(partial_transpose(cert.h()).matrix() -
                pt_reference.matrix()) <= tol);

  if (target.target == "exampled") {
    const DecompositionReport decomp = verify_decomposition(target.d);
    report.add_number("decomposition_residual0", decomp.residual_weighted0);
    report.add_number("decomposition_residual1", decomp.residual_weighted1);
    check("weighted_state_decomposition", decomp.pass(tol));

    const SignSumReport signs = verify_sign_sums(target.d);
    report.add_int("subset_count", signs.subset_count);
    check("sign_sums_exact", signs.pass());

    const DOperators ops = d_operators(target.d);
    const double dd = target.d;
    const double pt_residual = std::max(
        {max_abs(partial_transpose(ops.pi).matrix() - ops.pi.matrix()),
         max_abs(partial_transpose(ops.phi).matrix() -
                 (ops.pi.matrix() + ops.psi_plus.matrix() -
                  ops.psi_minus.matrix()) /
                     dd),
         max_abs(partial_transpose(ops.psi_plus).matrix() -
                 ((dd / 2.0) * ops.phi.matrix() - 0.5 * ops.pi.matrix() +
                  0.5 * (ops.psi_plus.matrix() + ops.psi_minus.matrix()))),
         max_abs(partial_transpose(ops.psi_minus).matrix() -
                 (-(dd / 2.0) * ops.phi.matrix() + 0.5 * ops.pi.matrix() +
                  0.5 * (ops.psi_plus.matrix() + ops.psi_minus.matrix())))});
    report.add_number("operator_algebra_pt_residual", pt_residual);
    check("operator_algebra_pt_identities", pt_residual <= tol);
  }

  report.add("verdict", ok ? "PASS" : "FAIL");
  emit(report, common.format, common.out_path);
  return ok ? kExitPass : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// bound

int cmd_bound(const TargetOpts& target, const CommonOpts& common, int m_max,
              SolveParams solver) {
  constexpr double kFeasibilityTol = 1e-9;
  Report report;
  add_provenance(report, "bound", target, common.seed);
  report.meta_kv("feasibility_tol", fmt_double(kFeasibilityTol));

  DualCertificate cert = [&] {
    if (!target.is_file()) {
      return target.target == "example1" ? example1_certificate()
                                         : exampled_certificate(target.d);
    }
    const TwoStateEnsemble e = target.load();
    const MinimizeResult res = minimize_q(e, solver);
    if (!res.converged) {
      throw NumericalFailure("certificate minimization did not converge");
    }
    return res.certificate;
  }();

  report.add_number("tr_abs_h", cert.tr_abs_h());
  report.add_number("tr_abs_h_pt", cert.tr_abs_h_pt());
  report.add_number("feasibility_residual", cert.feasibility_residual());

  const HidingCertificate hc = validate_hiding(cert, kFeasibilityTol);
  report.add_bool("feasible_ok", hc.feasible_ok);
  report.add_bool("sum_ok", hc.sum_ok);
  report.add_bool("half_ok", hc.half_ok);
  if (!hc.all_ok()) {
    report.add("verdict", "REFUSED");
    report.add("reason",
               "concealment guarantee needs a feasible H with "
               "Tr|H| + Tr|H^PT| <= 1 and Tr|H| < 1/2");
    emit(report, common.format, common.out_path);
    return kExitCheckFailure;
  }

  const BoundSeries series = bound_series(hc, m_max);
  report.table_header = {"m", "L", "f_m", "bound", "envelope"};
  for (const auto& row : series.rows) {
    report.table_rows.push_back({std::to_string(row.m),
                                 std::to_string(row.copies),
                                 fmt_double(row.f_m), fmt_double(row.bound),
                                 fmt_double(row.envelope)});
  }
  report.add("verdict", "PASS");
  emit(report, common.format, common.out_path);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// ppt

int cmd_ppt(const TargetOpts& target, const CommonOpts& common,
            SolveParams solver) {
  const TwoStateEnsemble e = target.load();

  Report report;
  add_provenance(report, "ppt", target, common.seed);
  report.meta_kv("tol_residual", fmt_double(solver.tol_residual));
  report.meta_kv("tol_objective", fmt_double(solver.tol_objective));

  const MinimizeResult dual = minimize_q(e, solver);
  SolveParams primal_params = SolveParams::primal_defaults();
  primal_params.tol_objective = solver.tol_objective;
  primal_params.tol_residual = solver.tol_residual;
  const PrimalResult primal = primal_ppt_ascent(e, primal_params);

  const double q = q_value(dual.certificate);
  report.add_number("locc_floor", locc_floor(e));
  report.add_number("primal_value", primal.value);
  report.add_number("dual_value", q);
  report.add_number("gap", q - primal.value);
  report.add_number("helstrom", helstrom(e));
  report.add_number("dual_residual", dual.certificate.feasibility_residual());
  report.add_number("dual_tr_abs_h", dual.certificate.tr_abs_h());
  report.add_int("dual_iterations", dual.iterations);
  report.add_int("primal_iterations", primal.iterations);
  report.add_bool("dual_converged", dual.converged);
  report.add_bool("primal_converged", primal.converged);

  emit(report, common.format, common.out_path);
  if (!dual.converged || !primal.converged) return kExitNumerical;
  return kExitPass;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const TargetOpts& target, const CommonOpts& common, int m,
                 std::uint64_t trials, bool adversary, SolveParams solver) {
  const TwoStateEnsemble e = target.load();

  // Concealment bound: closed form for the named constructions, solved
  // certificate for ensemble files.
  double tr_h = 0.0;
  if (target.target == "example1") {
    tr_h = 5.0 / 12.0;
  } else if (target.target == "exampled") {
    tr_h = (target.d + 2.0) / (4.0 * target.d);
  } else {
    const MinimizeResult res = minimize_q(e, solver);
    if (!res.converged) {
      throw NumericalFailure("certificate minimization did not converge");
    }
    const HidingCertificate hc = validate_hiding(res.certificate);
    if (!hc.all_ok()) {
      std::cerr << "no concealment guarantee: the solved certificate "
                   "violates Tr|H| + Tr|H^PT| <= 1 or Tr|H| < 1/2\n";
      return kExitCheckFailure;
    }
    tr_h = res.certificate.tr_abs_h();
  }

  const AdversaryStrategy strat =
      AdversaryStrategy::computational(e.dim_a(), e.dim_b());
  const SimReport sim = run_sim(e, m, trials, strat, common.seed, tr_h);

  Report report;
  add_provenance(report, "simulate", target, common.seed);
  report.add_int("trials", static_cast<std::int64_t>(sim.trials));
  report.add_int("m", sim.m);
  report.add_int("L", sim.copies);
  report.add_number("global_success", sim.global_success);
  if (adversary) {
    report.add_number("adversary_success", sim.adversary_success);
    report.add_number("adversary_stderr", sim.adversary_stderr);
    report.add_number("bound", sim.bound);
  }

  bool tripwire = false;
  if (adversary) {
    tripwire = sim.adversary_success >
               sim.bound + 4.0 * std::max(sim.adversary_stderr,
                                          std::sqrt(0.25 / sim.trials));
    report.add_bool("bound_respected", !tripwire);
  }
  emit(report, common.format, common.out_path);
  return tripwire ? kExitCheckFailure : kExitPass;
}

// ---------------------------------------------------------------------------
// export

int cmd_export(const TargetOpts& target, const std::string& out_path) {
  const TwoStateEnsemble e = target.load();
  if (out_path.empty()) {
    std::cout << ensemble_to_json(e);
  } else {
    write_ensemble_file(e, out_path);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite data-hiding toolkit: certified PPT bounds, "
               "closed-form constructions and protocol simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qdh " QDH_VERSION);

  // verify ------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Check a closed-form construction end to end");
  TargetOpts verify_target;
  CommonOpts verify_common;
  double verify_tol = 1e-9;
  verify_target.attach(verify, /*with_file=*/false);
  verify_common.attach(verify);
  verify->add_option("--tol", verify_tol, "Check tolerance")
      ->capture_default_str();

  // bound ---------------------------------------------------------------
  auto* bound = app.add_subcommand(
      "bound", "Certified concealment bound series along L = 3^m");
  TargetOpts bound_target;
  CommonOpts bound_common;
  int m_max = 12;
  SolveParams bound_solver;
  bound_target.attach(bound, /*with_file=*/true);
  bound_common.attach(bound);
  bound->add_option("--m-max", m_max, "Largest fold exponent m")
      ->check(CLI::Range(0, 39))
      ->capture_default_str();
  bound->add_option("--max-iters", bound_solver.max_iters,
                    "Solver iteration cap (ensemble files)");

  // ppt -----------------------------------------------------------------
  auto* ppt = app.add_subcommand(
      "ppt", "PPT discrimination value: dual certificate and primal ascent");
  TargetOpts ppt_target;
  CommonOpts ppt_common;
  SolveParams ppt_solver;
  ppt_target.attach(ppt, /*with_file=*/true);
  ppt_common.attach(ppt);
  ppt->add_option("--max-iters", ppt_solver.max_iters, "Dual iteration cap")
      ->capture_default_str();
  ppt->add_option("--tol-residual", ppt_solver.tol_residual,
                  "Feasibility residual tolerance")
      ->capture_default_str();
  ppt->add_option("--tol-objective", ppt_solver.tol_objective,
                  "Relative objective-change tolerance")
      ->capture_default_str();
  ppt->add_option("--step", ppt_solver.step,
                  "Proximal step (0 = automatic)")
      ->capture_default_str();

  // simulate --------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo simulation of the one-bit hiding protocol");
  TargetOpts sim_target;
  CommonOpts sim_common;
  int sim_m = 0;
  std::uint64_t sim_trials = 100000;
  bool sim_adversary = false;
  SolveParams sim_solver;
  sim_target.attach(simulate, /*with_file=*/true);
  sim_common.attach(simulate);
  simulate->add_option("--m", sim_m, "Fold exponent: L = 3^m copies")
      ->check(CLI::Range(0, 39))
      ->capture_default_str();
  simulate
      ->add_option("--trials", sim_trials, "Number of protocol rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_flag("--adversary", sim_adversary,
                     "Report the local-basis adversary and check the bound");

  // export ----------------------------------------------------------------
  auto* export_cmd = app.add_subcommand(
      "export", "Write a named construction as an ensemble JSON file");
  TargetOpts export_target;
  std::string export_out;
  export_target.attach(export_cmd, /*with_file=*/false);
  export_cmd->add_option("--out", export_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);

    if (verify->parsed()) {
      verify_target.check();
      return cmd_verify(verify_target, verify_common, verify_tol);
    }
    if (bound->parsed()) {
      bound_target.check();
      return cmd_bound(bound_target, bound_common, m_max, bound_solver);
    }
    if (ppt->parsed()) {
      ppt_target.check();
      if (!ppt_target.is_file()) {
        throw CLI::ValidationError("--ensemble",
                                   "ppt expects an ensemble JSON file");
      }
      return cmd_ppt(ppt_target, ppt_common, ppt_solver);
    }
    if (simulate->parsed()) {
      sim_target.check();
      return cmd_simulate(sim_target, sim_common, sim_m, sim_trials,
                          sim_adversary, sim_solver);
    }
    if (export_cmd->parsed()) {
      export_target.check();
      return cmd_export(export_target, export_out);
    }
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const NumericalFailure& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const DimensionCapExceeded& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitCheckFailure;
  }
}
