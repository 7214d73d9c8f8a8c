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

#ifndef QDH_DISCRIMINATION_HPP
#define QDH_DISCRIMINATION_HPP

#include <cstdint>

#include "qdh/ensemble.hpp"

namespace qdh {

/// A Hermitian H checked against a target difference operator Lambda.
/// When the residual of H + H^PT = Lambda is small, 1/2 + Tr|H| is a
/// certified upper bound on the PPT-restricted success probability of the
/// ensemble behind Lambda.
class DualCertificate {
 public:
  /// Builds the certificate, computing both trace norms and the residual.
  DualCertificate(BipartiteOperator h, const BipartiteOperator& lambda);

  const BipartiteOperator& h() const { return h_; }
  double tr_abs_h() const { return tr_abs_h_; }
  double tr_abs_h_pt() const { return tr_abs_h_pt_; }
  double feasibility_residual() const { return feasibility_residual_; }
  bool feasible(double tol) const { return feasibility_residual_ <= tol; }

 private:
  BipartiteOperator h_;
  double tr_abs_h_ = 0.0;
  double tr_abs_h_pt_ = 0.0;
  double feasibility_residual_ = 0.0;
};

/// The certified bound value 1/2 + Tr|H|.
double q_value(const DualCertificate& cert);

struct TwoOutcomeMeasurement {
  BipartiteOperator m0;
  BipartiteOperator m1;
};

/// Solver knobs shared by the dual minimizer and the primal ascent.
struct SolveParams {
  int max_iters = 50'000;
  double tol_residual = 1e-9;
  double tol_objective = 1e-8;
  double step = 0.0;  // 0 = automatic (scaled by the operator norm of Lambda)
  std::uint64_t seed = 0;

  /// Documented defaults for the primal ascent (smaller outer cap).
  static SolveParams primal_defaults() {
    SolveParams p;
    p.max_iters = 5'000;
    return p;
  }

  void validate() const;
};

/// Optimal unrestricted success probability (1 + Tr|Lambda|) / 2.
double helstrom(const TwoStateEnsemble& e);

/// Success probability of always guessing the likelier state: the floor
/// achievable by trivial LOCC.
double locc_floor(const TwoStateEnsemble& e);

/// Certificate for an explicit H against the ensemble's weighted
/// difference. Never throws on an infeasible H; the residual is reported
/// for the caller to judge.
DualCertificate check_feasible(const BipartiteOperator& h,
                               const TwoStateEnsemble& e);

struct MinimizeResult {
  DualCertificate certificate;
  bool converged = false;
  int iterations = 0;
};

/// Minimizes Tr|H| over {H Hermitian : H + H^PT = Lambda} by
/// Douglas-Rachford splitting between the trace-norm proximal map
/// (eigenvalue soft-threshold) and the projection onto the affine feasible
/// set. Requires a PT-invariant ensemble; the feasible set is then the
/// affine space Lambda/2 + {K : K + K^PT = 0} and every reported iterate
/// is feasible to machine precision. The certified value q(H*) equals the
/// PPT-restricted optimum up to the objective tolerance.
MinimizeResult minimize_q(const TwoStateEnsemble& e,
                          const SolveParams& params = SolveParams{});

struct PrimalResult {
  TwoOutcomeMeasurement measurement;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Maximizes eta1 + Tr(Lambda M0) over measurement elements M0 with
/// 0 <= M0 <= 1 and 0 <= M0^PT <= 1 by Douglas-Rachford splitting between
/// the two spectral boxes (the supergradient push enters through the first
/// proximal map); a final Dykstra projection lands the reported point in
/// the intersection. The value is achieved by a feasible PPT measurement,
/// so it lower-bounds the PPT optimum; used to sandwich minimize_q.
PrimalResult primal_ppt_ascent(const TwoStateEnsemble& e,
                               const SolveParams& params =
                                   SolveParams::primal_defaults());

}  // namespace qdh

#endif  // QDH_DISCRIMINATION_HPP
