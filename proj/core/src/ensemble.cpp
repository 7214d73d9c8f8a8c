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

#include "qdh/ensemble.hpp"

#include <cmath>
#include <iostream>

namespace qdh {

namespace {

// Validates a density operator; clips small PSD violations (negative
// eigenvalues zeroed, trace renormalized) and rejects larger ones.
BipartiteOperator validate_density(BipartiteOperator rho, const char* name) {
  if (std::abs(rho.trace() - 1.0) > kDensityTol) {
    throw std::invalid_argument(std::string(name) + " trace " +
                                std::to_string(rho.trace()) + " is not 1");
  }
  const Spectrum spec = eig_hermitian(rho);
  const double scale = std::max(1.0, spec.max_abs_eigenvalue());
  const double min_eig = spec.eigenvalues(spec.eigenvalues.size() - 1);
  if (min_eig >= -kDensityTol * scale) {
    return rho;
  }
  if (min_eig < -kDensityClipTol) {
    throw std::invalid_argument(std::string(name) +
                                " is not positive semidefinite (min eig " +
                                std::to_string(min_eig) + ")");
  }
  std::cerr << "warning: clipping " << name << " to the PSD cone (min eig "
            << min_eig << ")\n";
  RealVector clipped = spec.eigenvalues.cwiseMax(0.0);
  clipped /= clipped.sum();
  Matrix fixed = spec.eigenvectors * clipped.asDiagonal() *
                 spec.eigenvectors.adjoint();
  return rho.with_entries(std::move(fixed));
}

}  // namespace

TwoStateEnsemble::TwoStateEnsemble(double eta0, double eta1,
                                   BipartiteOperator rho0,
                                   BipartiteOperator rho1)
    : eta0_(eta0),
      eta1_(eta1),
      rho0_(std::move(rho0)),
      rho1_(std::move(rho1)) {
  if (!(eta0_ >= 0.0) || !(eta1_ >= 0.0) ||
      std::abs(eta0_ + eta1_ - 1.0) > kPriorTol) {
    throw std::invalid_argument("priors must be nonnegative and sum to 1");
  }
  if (rho0_.factors() != rho1_.factors()) {
    throw std::invalid_argument("states must share subsystem dimensions");
  }
  rho0_ = validate_density(std::move(rho0_), "rho0");
  rho1_ = validate_density(std::move(rho1_), "rho1");
}

BipartiteOperator weighted_difference(const TwoStateEnsemble& e) {
  return e.rho0() * e.eta0() - e.rho1() * e.eta1();
}

BipartiteOperator weighted_sum(const TwoStateEnsemble& e) {
  return e.rho0() * e.eta0() + e.rho1() * e.eta1();
}

bool is_pt_invariant(const TwoStateEnsemble& e, double tol) {
  const BipartiteOperator lambda = weighted_difference(e);
  return max_abs(lambda.matrix() - partial_transpose(lambda).matrix()) <= tol;
}

bool are_orthogonal(const TwoStateEnsemble& e, double tol) {
  const double overlap =
      (e.rho0().matrix() * e.rho1().matrix()).trace().real();
  return overlap <= tol;
}

ParityEnsemble parity_ensemble(const TwoStateEnsemble& e, int copies,
                               bool materialize, int side_cap) {
  if (copies < 1) {
    throw std::invalid_argument("parity ensemble needs at least one copy");
  }
  ParityEnsemble out{copies, e};
  const double bias = std::pow(e.eta0() - e.eta1(), copies);
  out.eta0 = 0.5 * (1.0 + bias);
  out.eta1 = 0.5 * (1.0 - bias);
  if (!materialize) {
    return out;
  }
  double folded_side = std::pow(static_cast<double>(e.side()), copies);
  if (folded_side > static_cast<double>(side_cap)) {
    throw DimensionCapExceeded(
        "folded side " + std::to_string(e.side()) + "^" +
        std::to_string(copies) + " exceeds cap " + std::to_string(side_cap) +
        "; priors-only mode available (materialize = false)");
  }
  const BipartiteOperator sum_pow = kron_power(weighted_sum(e), copies, side_cap);
  const BipartiteOperator diff_pow =
      kron_power(weighted_difference(e), copies, side_cap);
  out.weighted0 = (sum_pow + diff_pow) * 0.5;
  out.weighted1 = (sum_pow - diff_pow) * 0.5;
  return out;
}

BipartiteOperator lambda_fold(const TwoStateEnsemble& e, int copies,
                              int side_cap) {
  if (copies < 1) {
    throw std::invalid_argument("fold needs at least one copy");
  }
  return kron_power(weighted_difference(e), copies, side_cap);
}

}  // namespace qdh
