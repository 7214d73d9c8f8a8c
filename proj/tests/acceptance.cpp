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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qdh/bounds.hpp"
#include "qdh/constructions.hpp"
#include "qdh/hiding_sim.hpp"
#include "support/test_util.hpp"

using namespace qdh;

namespace {

struct Check {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void within(double value, double target, double tol,
              const std::string& what) {
    if (!(std::abs(value - target) <= tol)) {
      failures.push_back(what + ": got " + std::to_string(value) +
                         ", want " + std::to_string(target) + " +- " +
                         std::to_string(tol));
    }
  }
  void at_most(double value, double limit, const std::string& what) {
    if (!(value <= limit)) {
      failures.push_back(what + ": " + std::to_string(value) + " > " +
                         std::to_string(limit));
    }
  }
};

class Runner {
 public:
  void run(int number, const std::string& title, double budget_seconds,
           const std::function<void(Check&)>& body) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(check);
    } catch (const std::exception& err) {
      check.failures.push_back(std::string("exception: ") + err.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > budget_seconds) {
      check.failures.push_back("runtime " + std::to_string(elapsed) +
                               " s exceeds budget " +
                               std::to_string(budget_seconds) + " s");
    }
    const bool ok = check.failures.empty();
    all_ok_ &= ok;
    std::printf("[%s] criterion %d: %s (%.3f s)\n", ok ? "PASS" : "FAIL",
                number, title.c_str(), elapsed);
    for (const auto& f : check.failures) {
      std::printf("       - %s\n", f.c_str());
    }
    std::fflush(stdout);
  }

  bool all_ok() const { return all_ok_; }

 private:
  bool all_ok_ = true;
};

void criterion_1(Check& c) {
  const DualCertificate cert = example1_certificate();
  c.within(cert.tr_abs_h(), 5.0 / 12.0, 1e-9, "Tr|H|");
  c.within(cert.tr_abs_h_pt(), 7.0 / 12.0, 1e-9, "Tr|H^PT|");
  c.at_most(cert.feasibility_residual(), 1e-9, "feasibility residual");
}

void criterion_2(Check& c) {
  for (int d : {3, 5, 7, 9}) {
    const std::string tag = "d=" + std::to_string(d) + " ";
    const DualCertificate cert = exampled_certificate(d);
    const double dd = d;
    c.within(cert.tr_abs_h(), (dd + 2.0) / (4.0 * dd), 1e-9, tag + "Tr|H|");
    c.within(cert.tr_abs_h_pt(), (3.0 * dd - 2.0) / (4.0 * dd), 1e-9,
             tag + "Tr|H^PT|");
    c.at_most(cert.feasibility_residual(), 1e-9, tag + "residual");

    // Partial-transpose identities of the operator algebra.
    const DOperators ops = d_operators(d);
    c.at_most(max_abs(partial_transpose(ops.pi).matrix() - ops.pi.matrix()),
              1e-9, tag + "Pi PT identity");
    c.at_most(max_abs(partial_transpose(ops.phi).matrix() -
                      (ops.pi.matrix() + ops.psi_plus.matrix() -
                       ops.psi_minus.matrix()) /
                          dd),
              1e-9, tag + "Phi PT identity");
    c.at_most(max_abs(partial_transpose(ops.psi_plus).matrix() -
                      ((dd / 2.0) * ops.phi.matrix() -
                       0.5 * ops.pi.matrix() +
                       0.5 * (ops.psi_plus.matrix() +
                              ops.psi_minus.matrix()))),
              1e-9, tag + "Psi+ PT identity");
    c.at_most(max_abs(partial_transpose(ops.psi_minus).matrix() -
                      (-(dd / 2.0) * ops.phi.matrix() +
                       0.5 * ops.pi.matrix() +
                       0.5 * (ops.psi_plus.matrix() +
                              ops.psi_minus.matrix()))),
              1e-9, tag + "Psi- PT identity");

    // Closed-form decomposition of the weighted states.
    const DecompositionReport decomp = verify_decomposition(d);
    c.at_most(decomp.residual_weighted0, 1e-9, tag + "decomposition rho0");
    c.at_most(decomp.residual_weighted1, 1e-9, tag + "decomposition rho1");

    // Exact sign-sum identities.
    const SignSumReport signs = verify_sign_sums(d);
    c.require(signs.pass(), tag + "sign sums exact");
  }
}

void criterion_3(Check& c) {
  const TwoStateEnsemble ex1 = example1_ensemble();
  const TwoStateEnsemble exd = exampled_ensemble(5);
  c.at_most((ex1.rho0().matrix() * ex1.rho1().matrix()).trace().real(),
            1e-12, "example1 overlap");
  c.at_most((exd.rho0().matrix() * exd.rho1().matrix()).trace().real(),
            1e-12, "exampled(5) overlap");

  const std::uint64_t trials = 100000;
  for (int m = 0; m <= 3; ++m) {
    const SimReport rep =
        run_sim(ex1, m, trials, AdversaryStrategy::computational(3, 3),
                /*seed=*/11, 5.0 / 12.0);
    c.require(rep.global_success == 1.0,
              "global decode success at L=" + std::to_string(rep.copies));
  }
}

void criterion_4(Check& c) {
  const DualCertificate cert = example1_certificate();
  const BipartiteOperator lambda = weighted_difference(example1_ensemble());
  const DualCertificate lifted = lift_threefold(cert, lambda);
  c.require(lifted.h().side() == 729, "folded side is 729");
  c.at_most(lifted.feasibility_residual(), 1e-8, "lift residual");
  c.at_most(lifted.tr_abs_h(), 325.0 / 864.0 + 1e-8, "Tr|H'| contraction");
  c.at_most(lifted.tr_abs_h() + lifted.tr_abs_h_pt(), 1.0 + 1e-8,
            "Tr|H'| + Tr|H'^PT|");
}

void criterion_5(Check& c) {
  const HidingCertificate hc = validate_hiding(example1_certificate());
  c.require(hc.all_ok(), "example1 passes hiding checks");

  const auto start = std::chrono::steady_clock::now();
  const BoundSeries series = bound_series(hc, 12);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  c.at_most(elapsed, 1e-3, "series runtime (s)");

  c.require(series.rows.size() == 13, "13 rows");
  for (std::size_t i = 1; i < series.rows.size(); ++i) {
    c.require(series.rows[i].f_m < series.rows[i - 1].f_m,
              "strict decrease at m=" + std::to_string(i));
    c.at_most(series.rows[i].f_m, series.rows[i].envelope + 1e-15,
              "envelope at m=" + std::to_string(i));
  }
  c.at_most(series.rows[12].bound - 0.5, 1e-6, "convergence by m=12");
}

void criterion_6(Check& c) {
  SolveParams dual_params;
  SolveParams primal_params = SolveParams::primal_defaults();

  auto sandwich = [&](const TwoStateEnsemble& e, const std::string& tag,
                      double gap_tol) {
    const MinimizeResult dual = minimize_q(e, dual_params);
    const PrimalResult primal = primal_ppt_ascent(e, primal_params);
    const double q = q_value(dual.certificate);
    c.at_most(dual.certificate.feasibility_residual(), 1e-9,
              tag + " dual residual");
    c.at_most(primal.value, q + 1e-8, tag + " primal <= dual");
    c.at_most(q - primal.value, gap_tol, tag + " gap");
    return std::pair<double, double>{primal.value, q};
  };

  // Random PT-invariant instances.
  SplitMix64 rng(2026);
  for (int i = 0; i < 10; ++i) {
    const double eta0 = (i % 2 == 0) ? 0.5 : 0.6;
    sandwich(qdh::testing::random_pt_invariant_ensemble(rng, 2, 2, eta0),
             "2x2#" + std::to_string(i), 1e-2);
  }
  for (int i = 0; i < 10; ++i) {
    const double eta0 = (i % 2 == 0) ? 0.5 : 0.55;
    sandwich(qdh::testing::random_pt_invariant_ensemble(rng, 3, 3, eta0),
             "3x3#" + std::to_string(i), 1e-2);
  }

  // The two closed-form constructions.
  sandwich(example1_ensemble(), "example1", 1e-2);
  sandwich(exampled_ensemble(5), "exampled(5)", 1e-2);

  // Perfectly distinguishable product pairs pinch to 1 within 1e-6.
  for (const auto& [dims, idx] :
       std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>{
           {{2, 2}, {0, 3}}, {{3, 3}, {0, 8}}}) {
    const TwoStateEnsemble pair = qdh::testing::product_pair_ensemble(
        dims.first, dims.second, idx.first, idx.second);
    const std::string tag = "product " + std::to_string(dims.first) + "x" +
                            std::to_string(dims.second);
    const auto [primal, dual] = sandwich(pair, tag, 1e-6);
    c.within(dual, 1.0, 1e-6, tag + " dual value");
    c.within(primal, 1.0, 1e-6, tag + " primal value");
  }
}

void criterion_7(Check& c) {
  const TwoStateEnsemble ex1 = example1_ensemble();
  const AdversaryStrategy strat = AdversaryStrategy::computational(3, 3);
  const std::uint64_t trials = 100000;
  for (int m = 0; m <= 2; ++m) {
    const SimReport rep = run_sim(ex1, m, trials, strat, /*seed=*/29,
                                  5.0 / 12.0);
    const double sigma = std::max(rep.adversary_stderr,
                                  std::sqrt(0.25 / trials));
    c.at_most(rep.adversary_success, rep.bound + 3.0 * sigma,
              "adversary rate at m=" + std::to_string(m));
  }
}

void criterion_8(Check& c) {
  SplitMix64 rng(31337);

  // Partial-transpose involution and pairing identity.
  for (int t = 0; t < 200; ++t) {
    const BipartiteOperator a = qdh::testing::random_hermitian(rng, 2, 3);
    const BipartiteOperator b = qdh::testing::random_hermitian(rng, 2, 3);
    if (max_abs(partial_transpose(partial_transpose(a)).matrix() -
                a.matrix()) != 0.0) {
      c.require(false, "PT involution not exact");
      break;
    }
    const double lhs = (a.matrix() * b.matrix()).trace().real();
    const double rhs =
        (partial_transpose(a).matrix() * partial_transpose(b).matrix())
            .trace()
            .real();
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) {
      c.require(false, "pairing identity violated");
      break;
    }
  }

  // Trace-norm multiplicativity and triangle inequality.
  for (int t = 0; t < 200; ++t) {
    const BipartiteOperator a = qdh::testing::random_hermitian(rng, 2, 1);
    const BipartiteOperator b = qdh::testing::random_hermitian(rng, 1, 3);
    const double prod = trace_norm(a) * trace_norm(b);
    if (std::abs(trace_norm(kron(a, b)) - prod) >
        1e-8 * std::max(1.0, prod)) {
      c.require(false, "trace-norm multiplicativity violated");
      break;
    }
  }
  for (int t = 0; t < 200; ++t) {
    const BipartiteOperator a = qdh::testing::random_hermitian(rng, 2, 2);
    const BipartiteOperator b = qdh::testing::random_hermitian(rng, 2, 2);
    if (trace_norm(a + b) > trace_norm(a) + trace_norm(b) + 1e-9) {
      c.require(false, "triangle inequality violated");
      break;
    }
  }

  // Jordan reconstruction.
  for (int t = 0; t < 200; ++t) {
    const BipartiteOperator a = qdh::testing::random_hermitian(rng, 2, 2);
    const JordanPair parts = jordan_decompose(a);
    const bool ok =
        is_psd(parts.plus, 1e-10) && is_psd(parts.minus, 1e-10) &&
        max_abs((parts.plus - parts.minus).matrix() - a.matrix()) <= 1e-9 &&
        std::abs(
            (parts.plus.matrix() * parts.minus.matrix()).trace().real()) <=
            1e-9;
    if (!ok) {
      c.require(false, "Jordan decomposition invariants violated");
      break;
    }
  }

  // Contraction identities on grids.
  for (int k = 0; k <= 1000; ++k) {
    const double x = k / 1000.0;
    if (std::abs(lift_contraction(x) + lift_contraction(1.0 - x) - 1.0) >
        1e-12) {
      c.require(false, "complement identity violated");
      break;
    }
  }
  for (int k = 1; k < 1000; ++k) {
    if (lift_contraction((k - 1) / 1000.0) >=
        lift_contraction(k / 1000.0)) {
      c.require(false, "monotonicity violated");
      break;
    }
  }
  for (int k = 1; k + 1 < 500; ++k) {
    const double x = k / 1000.0;
    const double y = (k + 1) / 1000.0;
    const double rx = lift_contraction(x) / x;
    const double ry = lift_contraction(y) / y;
    if (!(rx > 0.0 && rx < ry && ry < 1.0)) {
      c.require(false, "ratio monotonicity violated");
      break;
    }
  }

  // Balance identity on every certified closed-form instance.
  auto balance = [&](const TwoStateEnsemble& e, const DualCertificate& cert,
                     const std::string& tag) {
    const JordanPair parts = jordan_decompose(cert.h());
    const Matrix lhs = e.eta0() * e.rho0().matrix() + parts.minus.matrix() +
                       partial_transpose(parts.minus).matrix();
    const Matrix rhs = e.eta1() * e.rho1().matrix() + parts.plus.matrix() +
                       partial_transpose(parts.plus).matrix();
    c.at_most(max_abs(lhs - rhs), 1e-8, tag + " balance identity");
  };
  balance(example1_ensemble(), example1_certificate(), "example1");
  for (int d : {3, 5, 7, 9}) {
    balance(exampled_ensemble(d), exampled_certificate(d),
            "exampled(" + std::to_string(d) + ")");
  }
}

}  // namespace

int main() {
  Runner runner;
  runner.run(1, "example1 certificate trace norms and feasibility", 1.0,
             criterion_1);
  runner.run(2, "exampled family certificates, PT identities, sign sums",
             60.0, criterion_2);
  runner.run(3, "orthogonality and perfect global recovery", 300.0,
             criterion_3);
  runner.run(4, "three-fold certificate lift at desk scale", 120.0,
             criterion_4);
  runner.run(5, "bound series decreases exponentially to 1/2", 10.0,
             criterion_5);
  runner.run(6, "primal/dual sandwich on random and closed-form ensembles",
             600.0, criterion_6);
  runner.run(7, "local-basis adversary stays under the certified bound",
             300.0, criterion_7);
  runner.run(8, "operator, contraction and balance property suites", 120.0,
             criterion_8);

  std::printf("%s\n", runner.all_ok() ? "ACCEPTANCE: all criteria passed"
                                      : "ACCEPTANCE: FAILURES PRESENT");
  return runner.all_ok() ? 0 : 1;
}
