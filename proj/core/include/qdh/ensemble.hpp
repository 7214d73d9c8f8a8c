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

#ifndef QDH_ENSEMBLE_HPP
#define QDH_ENSEMBLE_HPP

#include <optional>

#include "qdh/bipartite_operator.hpp"

namespace qdh {

/// Priors must sum to one within this tolerance.
inline constexpr double kPriorTol = 1e-12;
/// Density operators must be PSD and unit-trace within this tolerance.
inline constexpr double kDensityTol = 1e-10;
/// PSD violations up to this size are clipped with a warning; anything
/// worse is rejected.
inline constexpr double kDensityClipTol = 1e-8;

/// Two bipartite states with prior probabilities. Construction validates
/// priors and density operators; slightly non-PSD inputs (within
/// kDensityClipTol) are clipped to the PSD cone and renormalized with a
/// warning on stderr.
class TwoStateEnsemble {
 public:
  TwoStateEnsemble(double eta0, double eta1, BipartiteOperator rho0,
                   BipartiteOperator rho1);

  double eta0() const { return eta0_; }
  double eta1() const { return eta1_; }
  const BipartiteOperator& rho0() const { return rho0_; }
  const BipartiteOperator& rho1() const { return rho1_; }

  int dim_a() const { return rho0_.dim_a(); }
  int dim_b() const { return rho0_.dim_b(); }
  int side() const { return rho0_.side(); }

  /// Ensemble with the roles of the two states exchanged.
  TwoStateEnsemble swapped() const {
    return TwoStateEnsemble(eta1_, eta0_, rho1_, rho0_);
  }

 private:
  double eta0_;
  double eta1_;
  BipartiteOperator rho0_;
  BipartiteOperator rho1_;
};

/// The coarse-grained two-state ensemble obtained by grouping L-fold
/// product states by bit-string parity. Priors are always exact closed
/// forms; the weighted operators eta_i^(L) rho_i^(L) are materialized only
/// when the folded dimension fits the cap.
struct ParityEnsemble {
  int copies = 1;
  TwoStateEnsemble base;
  double eta0 = 0.5;
  double eta1 = 0.5;
  std::optional<BipartiteOperator> weighted0;
  std::optional<BipartiteOperator> weighted1;

  bool materialized() const { return weighted0.has_value(); }
};

/// The weighted difference eta0*rho0 - eta1*rho1 that governs two-state
/// discrimination. Hermitian with trace eta0 - eta1.
BipartiteOperator weighted_difference(const TwoStateEnsemble& e);

/// Average state eta0*rho0 + eta1*rho1.
BipartiteOperator weighted_sum(const TwoStateEnsemble& e);

/// True iff the weighted difference equals its partial transpose within
/// tol (max-abs).
bool is_pt_invariant(const TwoStateEnsemble& e, double tol);

/// True iff Tr(rho0 * rho1) <= tol.
bool are_orthogonal(const TwoStateEnsemble& e, double tol);

/// Parity coarse-graining of the L-fold ensemble. Priors come from the
/// closed form (1 +- (eta0-eta1)^L)/2. With materialize set, the weighted
/// operators are assembled from the two tensor powers; if the folded side
/// exceeds side_cap this throws DimensionCapExceeded (priors-only mode
/// remains available by passing materialize = false).
ParityEnsemble parity_ensemble(const TwoStateEnsemble& e, int copies,
                               bool materialize = true,
                               int side_cap = kDefaultSideCap);

/// L-fold tensor power of the weighted difference, with the copy structure
/// recorded so partial transposition keeps acting on every B factor.
BipartiteOperator lambda_fold(const TwoStateEnsemble& e, int copies,
                              int side_cap = kDefaultSideCap);

}  // namespace qdh

#endif  // QDH_ENSEMBLE_HPP
