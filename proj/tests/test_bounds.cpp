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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdh/bounds.hpp"
#include "qdh/constructions.hpp"
#include "support/test_util.hpp"

using namespace qdh;

namespace {

// Certificate with prescribed trace norm built on a diagonal operator;
// diagonal matrices are PT-invariant, so h is feasible for h + h^PT = 2h.
HidingCertificate synthetic_certificate(double tr_h) {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = tr_h / 2.0;
  h(1, 1) = -tr_h / 2.0;
  const BipartiteOperator op(1, 2, h);
  return validate_hiding(DualCertificate(op, op * 2.0));
}

}  // namespace

TEST_CASE("contraction polynomial fixed points and exact value") {
  CHECK(lift_contraction(0.0) == 0.0);
  CHECK(lift_contraction(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lift_contraction(1.0) == doctest::Approx(1.0).epsilon(1e-15));

  // Exact rational arithmetic pins the value at 5/12.
  CHECK(lift_contraction(Rational(5, 12)) == Rational(325, 864));
  CHECK(lift_contraction(5.0 / 12.0) ==
        doctest::Approx(325.0 / 864.0).epsilon(1e-15));
}

TEST_CASE("contraction iterates") {
  CHECK(lift_contraction_iterate(0.37, 0) == 0.37);
  CHECK_THROWS_AS(lift_contraction_iterate(0.3, -1), std::invalid_argument);

  // Two steps from 5/12, frozen by the exact pipeline.
  const Rational exact = lift_contraction_iterate(Rational(5, 12), 2);
  const double expect = exact.convert_to<double>();
  CHECK(expect == doctest::Approx(0.3180344).epsilon(1e-6));
  CHECK(lift_contraction_iterate(5.0 / 12.0, 2) ==
        doctest::Approx(expect).epsilon(1e-14));

  // Exact and double pipelines agree for the first few iterates.
  for (int m = 0; m <= 4; ++m) {
    const double exact_m =
        lift_contraction_iterate(Rational(5, 12), m).convert_to<double>();
    CHECK(lift_contraction_iterate(5.0 / 12.0, m) ==
          doctest::Approx(exact_m).epsilon(1e-12));
  }
}

TEST_CASE("geometric envelope dominates the iterates") {
  const double x = 5.0 / 12.0;
  const double ratio = lift_contraction(x) / x;
  // Equality at m = 1 (single factor), strictly below afterwards.
  CHECK(lift_contraction_iterate(x, 1) ==
        doctest::Approx(x * ratio).epsilon(1e-15));
  for (int m = 2; m <= 8; ++m) {
    CHECK(lift_contraction_iterate(x, m) < x * std::pow(ratio, m));
  }
}

TEST_CASE("contraction grid identities") {
  for (int k = 0; k <= 1000; ++k) {
    const double x = k / 1000.0;
    CHECK(std::abs(lift_contraction(x) + lift_contraction(1.0 - x) - 1.0) <=
          1e-12);
  }
  // Strictly increasing on [0, 1].
  double prev = lift_contraction(0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double cur = lift_contraction(k / 1000.0);
    CHECK(cur > prev);
    prev = cur;
  }
  // Ratio monotonicity on 0 < x < y < 1/2.
  for (int k = 1; k < 500; k += 7) {
    const double x = k / 1000.0;
    const double y = x + 0.001;
    if (y >= 0.5) break;
    const double rx = lift_contraction(x) / x;
    const double ry = lift_contraction(y) / y;
    CHECK(rx > 0.0);
    CHECK(rx < ry);
    CHECK(ry < 1.0);
  }
}

TEST_CASE("hiding validation flags") {
  const HidingCertificate ex1 = validate_hiding(example1_certificate());
  CHECK(ex1.feasible_ok);
  CHECK(ex1.sum_ok);
  CHECK(ex1.half_ok);
  CHECK(ex1.all_ok());

  for (int d : {3, 5, 7, 9}) {
    CHECK(validate_hiding(exampled_certificate(d)).all_ok());
  }

  const HidingCertificate fat = synthetic_certificate(0.6);
  CHECK(fat.feasible_ok);
  CHECK_FALSE(fat.half_ok);
  CHECK_FALSE(fat.all_ok());
  CHECK_THROWS_AS(bound_series(fat, 3), std::invalid_argument);
}

TEST_CASE("bound series decreases to one half") {
  for (double tr_h : {0.1, 0.2, 0.3, 0.4, 0.45}) {
    const BoundSeries series = bound_series(synthetic_certificate(tr_h), 12);
    REQUIRE(series.rows.size() == 13);
    CHECK(series.rows[0].f_m == doctest::Approx(tr_h).epsilon(1e-12));
    CHECK(series.rows[0].copies == 1);
    CHECK(series.rows[12].copies == 531441);  // 3^12
    for (std::size_t i = 1; i < series.rows.size(); ++i) {
      // Strictly decreasing until the iterate underflows to the fixed
      // point 0 (possible for small starting values by m = 12).
      if (series.rows[i - 1].f_m > 0.0) {
        CHECK(series.rows[i].f_m < series.rows[i - 1].f_m);
      } else {
        CHECK(series.rows[i].f_m == 0.0);
      }
      CHECK(series.rows[i].bound >= 0.5);
      // Bound sits at or below the geometric envelope (equality at m = 1).
      CHECK(series.rows[i].bound <= 0.5 + series.rows[i].envelope + 1e-15);
      if (i >= 2) {
        CHECK(series.rows[i].bound < 0.5 + series.rows[i].envelope);
      }
    }
    CHECK(series.rows[12].bound - 0.5 <= 1e-12);
  }
}

TEST_CASE("bound series input validation") {
  const HidingCertificate hc = synthetic_certificate(0.3);
  CHECK_THROWS_AS(bound_series(hc, 40), std::invalid_argument);
  CHECK_THROWS_AS(bound_series(hc, -1), std::invalid_argument);
}

TEST_CASE("bound series csv shape") {
  const BoundSeries series = bound_series(synthetic_certificate(0.25), 2);
  const std::string csv = series.to_csv();
  CHECK(csv.rfind("m,L,f_m,bound,envelope\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("0,1,0.25") != std::string::npos);
}

TEST_CASE("three-fold lift contracts the certificate") {
  const DualCertificate cert = example1_certificate();
  const BipartiteOperator lambda = weighted_difference(example1_ensemble());
  const DualCertificate lifted = lift_threefold(cert, lambda);

  CHECK(lifted.h().side() == 729);
  CHECK(lifted.feasibility_residual() <= 1e-8);
  CHECK(lifted.tr_abs_h() <= 325.0 / 864.0 + 1e-8);
  CHECK(lifted.tr_abs_h() + lifted.tr_abs_h_pt() <= 1.0 + 1e-8);
  // The partially transposed norm contracts through the same polynomial.
  CHECK(lifted.tr_abs_h_pt() <=
        lift_contraction(cert.tr_abs_h_pt()) + 1e-8);
}

TEST_CASE("three-fold lift of the zero certificate is zero") {
  const BipartiteOperator zero = BipartiteOperator::zero(1, 2);
  const DualCertificate lifted =
      lift_threefold(DualCertificate(zero, zero), zero);
  CHECK(lifted.tr_abs_h() == 0.0);
  CHECK(lifted.feasibility_residual() == 0.0);
}

TEST_CASE("three-fold lift enforces its hypotheses") {
  const TwoStateEnsemble pair = qdh::testing::product_pair_ensemble(2, 2, 0, 3);
  const BipartiteOperator lambda = weighted_difference(pair);

  // Feasible but fat certificate: add a large PT-antisymmetric part.
  SplitMix64 rng(50);
  BipartiteOperator noise = qdh::testing::random_hermitian(rng, 2, 2);
  noise = (noise - partial_transpose(noise)) * 5.0;
  const DualCertificate fat(lambda * 0.5 + noise, lambda);
  REQUIRE(fat.feasibility_residual() <= 1e-9);
  REQUIRE(fat.tr_abs_h() + fat.tr_abs_h_pt() > 1.0);
  CHECK_THROWS_AS(lift_threefold(fat, lambda), std::invalid_argument);

  // Infeasible certificate.
  const DualCertificate wrong(lambda, lambda);
  CHECK_THROWS_AS(lift_threefold(wrong, lambda), std::invalid_argument);

  // Base side above the materialization cap.
  const DualCertificate big = exampled_certificate(5);
  const BipartiteOperator lambda5 = weighted_difference(exampled_ensemble(5));
  CHECK_THROWS_AS(lift_threefold(big, lambda5), DimensionCapExceeded);
}

TEST_CASE("one-copy lift keeps the bound monotone") {
  const TwoStateEnsemble ex1 = example1_ensemble();
  const BipartiteOperator lambda = weighted_difference(ex1);
  const DualCertificate cert = example1_certificate();

  const DualCertificate lifted = lift_one_copy(cert, lambda, lambda, 100);
  CHECK(lifted.h().side() == 81);
  CHECK(lifted.feasibility_residual() <= 1e-9);
  CHECK(q_value(lifted) <= 11.0 / 12.0 + 1e-9);
  CHECK(lifted.tr_abs_h() <=
        cert.tr_abs_h() * trace_norm(lambda) + 1e-8);

  // Lifting half the difference reproduces the algebraic identity
  // H' = (Lambda (x) Lambda) / 2.
  const DualCertificate half(lambda * 0.5, lambda);
  const DualCertificate half_lift = lift_one_copy(half, lambda, lambda, 100);
  const Matrix expect = 0.5 * kron(lambda.matrix(), lambda.matrix());
  CHECK(max_abs(half_lift.h().matrix() - expect) <= 1e-12);
}
