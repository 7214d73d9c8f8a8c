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

#ifndef QDH_BOUNDS_HPP
#define QDH_BOUNDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qdh/discrimination.hpp"

namespace qdh {

/// Exact rational scalar for the bound pipeline when inputs are rational.
using Rational = boost::multiprecision::cpp_rational;

/// The contraction polynomial x^2 (3 - 2x) governing the three-fold
/// certificate lift. Fixed points at 0, 1/2 and 1; strictly increasing on
/// [0, 1]; below x on (0, 1/2).
double lift_contraction(double x);
Rational lift_contraction(const Rational& x);

/// m-fold composition of the contraction; m = 0 returns x.
double lift_contraction_iterate(double x, int m);
Rational lift_contraction_iterate(const Rational& x, int m);

/// Three-fold certificate lift: from H feasible for lambda with
/// Tr|H| + Tr|H^PT| <= 1, builds
///   H' = H(x)H(x)H + H^PT(x)H(x)H + H(x)H^PT(x)H + H(x)H(x)H^PT
/// feasible for lambda^(x)3, with Tr|H'| <= contraction(Tr|H|) and
/// Tr|H'| + Tr|H'^PT| <= 1. Materialization is limited to base side <=
/// base_side_cap so the folded eigendecompositions stay desk-scale.
DualCertificate lift_threefold(const DualCertificate& cert,
                               const BipartiteOperator& lambda,
                               int base_side_cap = 9);

/// One-copy lift: from H feasible for lambda_fold (the L-fold difference),
/// builds H' = (H(x)lambda + lambda(x)H)/2 feasible for the (L+1)-fold
/// grouping with q(H') <= q(H). Requires lambda PT-invariant.
DualCertificate lift_one_copy(const DualCertificate& cert,
                              const BipartiteOperator& lambda,
                              const BipartiteOperator& lambda_fold,
                              int side_cap = kDefaultSideCap);

/// Certificate checked against the two concealment hypotheses.
struct HidingCertificate {
  DualCertificate cert;
  bool feasible_ok = false;  // residual within tolerance
  bool sum_ok = false;       // Tr|H| + Tr|H^PT| <= 1
  bool half_ok = false;      // Tr|H| < 1/2

  bool all_ok() const { return feasible_ok && sum_ok && half_ok; }
};

HidingCertificate validate_hiding(const DualCertificate& cert,
                                  double feasibility_tol = 1e-9);

struct BoundRow {
  int m = 0;
  std::int64_t copies = 1;  // 3^m
  double f_m = 0.0;
  double bound = 0.5;      // 1/2 + f_m
  double envelope = 0.0;   // tr_h * (contraction(tr_h)/tr_h)^m
};

/// Concealment bound table along the 3^m subsequence. The bound column is
/// a certified ceiling on any LOCC (indeed any PPT) guessing probability
/// for the parity ensemble at L = 3^m copies.
struct BoundSeries {
  double tr_h = 0.0;
  std::vector<BoundRow> rows;

  /// Columns m,L,f_m,bound,envelope with '.' decimals, full precision.
  std::string to_csv() const;
};

/// Rows for m = 0..m_max. Requires a certificate passing all hiding
/// checks; m_max is capped at 39 so 3^m fits 64 bits.
BoundSeries bound_series(const HidingCertificate& hc, int m_max);

}  // namespace qdh

#endif  // QDH_BOUNDS_HPP
