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

#ifndef QDH_CONSTRUCTIONS_HPP
#define QDH_CONSTRUCTIONS_HPP

#include <cstdint>

#include "qdh/discrimination.hpp"

namespace qdh {

/// Largest d accepted for ensemble assembly (2^(d-1) subset terms).
inline constexpr int kMaxOddDimension = 15;

/// The 3x3 orthogonal separable two-state ensemble built from the four
/// real sign-pattern vectors (state 0) and the six +/- cross projectors on
/// basis pairs (state 1). Equal priors; orthogonal; PT-invariant weighted
/// difference.
TwoStateEnsemble example1_ensemble();

/// The closed-form certificate for example1: trace norm 5/12, partially
/// transposed trace norm 7/12, exactly feasible.
DualCertificate example1_certificate();

/// Independent assembly of the partial transpose of the example1
/// certificate from its known spectral coefficients; used to cross-check
/// partial_transpose.
BipartiteOperator example1_certificate_pt_reference();

/// The d x d generalization for odd d >= 3: state 0 mixes the 2^(d-1)
/// sign-vector product projectors, state 1 the d(d-1) symmetric/
/// antisymmetric cross projectors.
TwoStateEnsemble exampled_ensemble(int d);

/// Diagonal/symmetric operator algebra on d x d: Pi (diagonal projector),
/// Phi (maximally entangled projector), Psi+/- (off-diagonal symmetric and
/// antisymmetric projectors).
struct DOperators {
  int d = 0;
  BipartiteOperator pi;
  BipartiteOperator phi;
  BipartiteOperator psi_plus;
  BipartiteOperator psi_minus;
};

DOperators d_operators(int d);

/// Certificate for exampled(d): trace norms (d+2)/(4d) and (3d-2)/(4d).
DualCertificate exampled_certificate(int d);

/// Independent assembly of the certificate's partial transpose from the
/// closed-form coefficients in the Pi/Phi/Psi algebra.
BipartiteOperator exampled_certificate_pt_reference(int d);

/// Residuals of the closed-form decomposition of the weighted states in
/// the Pi/Phi/Psi algebra against brute-force subset summation.
struct DecompositionReport {
  int d = 0;
  double residual_weighted0 = 0.0;
  double residual_weighted1 = 0.0;

  bool pass(double tol) const {
    return residual_weighted0 <= tol && residual_weighted1 <= tol;
  }
};

DecompositionReport verify_decomposition(int d);

/// Exact enumeration of the sign-vector sums over all admissible subsets:
/// the pair and quadruple correlators must vanish and the subset count
/// must equal 2^(d-1).
struct SignSumReport {
  int d = 0;
  std::int64_t subset_count = 0;
  std::int64_t expected_count = 0;
  std::int64_t max_abs_pair_sum = 0;
  std::int64_t max_abs_quad_sum = 0;

  bool pass() const {
    return subset_count == expected_count && max_abs_pair_sum == 0 &&
           max_abs_quad_sum == 0;
  }
};

SignSumReport verify_sign_sums(int d);

}  // namespace qdh

#endif  // QDH_CONSTRUCTIONS_HPP
