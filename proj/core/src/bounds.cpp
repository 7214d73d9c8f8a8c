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

#include "qdh/bounds.hpp"

#include <cmath>
#include <cstdio>

namespace qdh {

namespace {

constexpr double kLiftFeasibilityTol = 1e-8;
constexpr double kHypothesisSlack = 1e-9;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double lift_contraction(double x) { return x * x * (3.0 - 2.0 * x); }

Rational lift_contraction(const Rational& x) {
  return x * x * (3 - 2 * x);
}

double lift_contraction_iterate(double x, int m) {
  if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
  for (int k = 0; k < m; ++k) x = lift_contraction(x);
  return x;
}

Rational lift_contraction_iterate(const Rational& x, int m) {
  if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
  Rational out = x;
  for (int k = 0; k < m; ++k) out = lift_contraction(out);
  return out;
}

DualCertificate lift_threefold(const DualCertificate& cert,
                               const BipartiteOperator& lambda,
                               int base_side_cap) {
  const BipartiteOperator& h = cert.h();
  if (h.side() > base_side_cap) {
    throw DimensionCapExceeded(
        "three-fold lift limited to base side " +
        std::to_string(base_side_cap) +
        "; the scalar bound series covers larger systems");
  }
  const DualCertificate checked(h, lambda);
  if (checked.feasibility_residual() > kLiftFeasibilityTol) {
    throw std::invalid_argument(
        "certificate is not feasible for the given difference operator");
  }
  if (checked.tr_abs_h() + checked.tr_abs_h_pt() > 1.0 + kHypothesisSlack) {
    throw std::invalid_argument(
        "lift hypothesis violated: Tr|H| + Tr|H^PT| must be <= 1");
  }

  const int folded_cap = h.side() * h.side() * h.side();
  const BipartiteOperator h_pt = partial_transpose(h);
  const BipartiteOperator lifted =
      kron(kron(h, h, folded_cap), h, folded_cap) +
      kron(kron(h_pt, h, folded_cap), h, folded_cap) +
      kron(kron(h, h_pt, folded_cap), h, folded_cap) +
      kron(kron(h, h, folded_cap), h_pt, folded_cap);
  const BipartiteOperator lambda_cubed =
      kron(kron(lambda, lambda, folded_cap), lambda, folded_cap);
  return DualCertificate(lifted, lambda_cubed);
}

DualCertificate lift_one_copy(const DualCertificate& cert,
                              const BipartiteOperator& lambda,
                              const BipartiteOperator& lambda_fold,
                              int side_cap) {
  if (max_abs(lambda.matrix() - partial_transpose(lambda).matrix()) >
      kHypothesisSlack) {
    throw std::invalid_argument(
        "one-copy lift requires a PT-invariant difference operator");
  }
  const DualCertificate checked(cert.h(), lambda_fold);
  if (checked.feasibility_residual() > kLiftFeasibilityTol) {
    throw std::invalid_argument(
        "certificate is not feasible for the folded difference operator");
  }
  const BipartiteOperator lifted =
      kron(cert.h(), lambda, side_cap) * 0.5 +
      kron(lambda, cert.h(), side_cap) * 0.5;
  return DualCertificate(lifted, kron(lambda_fold, lambda, side_cap));
}

HidingCertificate validate_hiding(const DualCertificate& cert,
                                  double feasibility_tol) {
  HidingCertificate out{cert};
  out.feasible_ok = cert.feasible(feasibility_tol);
  out.sum_ok = cert.tr_abs_h() + cert.tr_abs_h_pt() <= 1.0 + kHypothesisSlack;
  out.half_ok = cert.tr_abs_h() < 0.5;
  return out;
}

BoundSeries bound_series(const HidingCertificate& hc, int m_max) {
  if (!hc.all_ok()) {
    throw std::invalid_argument(
        "bound series requires a certificate passing the hiding checks "
        "(feasible, Tr|H| + Tr|H^PT| <= 1, Tr|H| < 1/2)");
  }
  if (m_max < 0 || m_max > 39) {
    throw std::invalid_argument("m_max must be in [0, 39]");
  }
  BoundSeries series;
  series.tr_h = hc.cert.tr_abs_h();
  const double ratio =
      series.tr_h > 0.0 ? lift_contraction(series.tr_h) / series.tr_h : 0.0;
  double f_m = series.tr_h;
  double envelope = series.tr_h;
  std::int64_t copies = 1;
  for (int m = 0; m <= m_max; ++m) {
    series.rows.push_back(BoundRow{m, copies, f_m, 0.5 + f_m, envelope});
    f_m = lift_contraction(f_m);
    envelope *= ratio;
    if (m < m_max) copies *= 3;
  }
  return series;
}

std::string BoundSeries::to_csv() const {
  std::string out = "m,L,f_m,bound,envelope\n";
  for (const auto& row : rows) {
    out += std::to_string(row.m) + "," + std::to_string(row.copies) + "," +
           format_double(row.f_m) + "," + format_double(row.bound) + "," +
           format_double(row.envelope) + "\n";
  }
  return out;
}

}  // namespace qdh
