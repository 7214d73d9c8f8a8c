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

#include "qdh/discrimination.hpp"

#include <algorithm>
#include <cmath>

namespace qdh {

namespace {

constexpr double kPtInvarianceTol = 1e-9;
constexpr double kDegenerateLambdaTol = 1e-14;

double trace_norm_of(const Matrix& hermitian) {
  return eig_hermitian(hermitian).eigenvalues.cwiseAbs().sum();
}

// Eigenvalue soft-threshold: the proximal map of t * trace-norm.
Matrix soft_threshold(const Matrix& hermitian, double t) {
  Spectrum spec = eig_hermitian(hermitian);
  RealVector shrunk(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double lam = spec.eigenvalues(k);
    shrunk(k) = std::copysign(std::max(std::abs(lam) - t, 0.0), lam);
  }
  return spec.eigenvectors * shrunk.asDiagonal() * spec.eigenvectors.adjoint();
}

// Eigenvalue clip to [lo, hi].
Matrix clip_spectrum(const Matrix& hermitian, double lo, double hi) {
  Spectrum spec = eig_hermitian(hermitian);
  RealVector clipped =
      spec.eigenvalues.cwiseMax(lo).cwiseMin(hi);
  return spec.eigenvectors * clipped.asDiagonal() *
         spec.eigenvectors.adjoint();
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

DualCertificate::DualCertificate(BipartiteOperator h,
                                 const BipartiteOperator& lambda)
    : h_(std::move(h)) {
  if (h_.factors() != lambda.factors()) {
    throw std::invalid_argument(
        "certificate and target operator shapes differ");
  }
  const BipartiteOperator h_pt = partial_transpose(h_);
  tr_abs_h_ = trace_norm(h_);
  tr_abs_h_pt_ = trace_norm(h_pt);
  feasibility_residual_ =
      max_abs(h_.matrix() + h_pt.matrix() - lambda.matrix());
}

double q_value(const DualCertificate& cert) {
  return 0.5 + cert.tr_abs_h();
}

void SolveParams::validate() const {
  if (max_iters < 1) {
    throw std::invalid_argument("max_iters must be at least 1");
  }
  if (!(tol_residual > 0.0) || !(tol_objective > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (step < 0.0) {
    throw std::invalid_argument("step must be nonnegative");
  }
}

double helstrom(const TwoStateEnsemble& e) {
  return 0.5 * (1.0 + trace_norm(weighted_difference(e)));
}

double locc_floor(const TwoStateEnsemble& e) {
  return std::max(e.eta0(), e.eta1());
}

DualCertificate check_feasible(const BipartiteOperator& h,
                               const TwoStateEnsemble& e) {
  return DualCertificate(h, weighted_difference(e));
}

MinimizeResult minimize_q(const TwoStateEnsemble& e,
                          const SolveParams& params) {
  params.validate();
  if (!is_pt_invariant(e, kPtInvarianceTol)) {
    throw std::invalid_argument(
        "minimize_q requires a PT-invariant weighted difference");
  }
  const BipartiteOperator lambda = weighted_difference(e);
  const int n = lambda.side();
  const PartialTransposer pt(lambda.factors(), n);

  if (max_abs(lambda.matrix()) <= kDegenerateLambdaTol) {
    return MinimizeResult{
        DualCertificate(BipartiteOperator::zero(e.dim_a(), e.dim_b()), lambda),
        true, 0};
  }

  const Matrix half_lambda = 0.5 * lambda.matrix();
  const double op_norm = eig_hermitian(lambda).max_abs_eigenvalue();
  // The soft-threshold amount tracks the operator norm of the data: a
  // threshold much larger than the solution's eigenvalue scale crushes
  // every prox step to zero and the splitting crawls.
  double step = params.step > 0.0 ? params.step : 0.5 * op_norm;

  // Projection onto the affine feasible set {Lambda/2 + K : K + K^PT = 0}.
  auto project_feasible = [&](const Matrix& x) {
    const Matrix k = x - half_lambda;
    return (half_lambda + 0.5 * (k - pt.apply(k))).eval();
  };

  const double scale = std::max(1.0, max_abs(lambda.matrix()));
  Matrix z = half_lambda;
  Matrix best_h = half_lambda;
  double best_obj = trace_norm_of(best_h);
  double prev_obj = best_obj;
  int stable_iters = 0;
  bool converged = false;
  int iters = 0;

  for (int k = 0; k < params.max_iters; ++k) {
    iters = k + 1;
    if (k > 0 && k % 100 == 0) step *= 0.999;
    const Matrix x = soft_threshold(z, step);
    const Matrix y = project_feasible(hermitize(2.0 * x - z));
    z += y - x;

    const double obj = trace_norm_of(y);
    if (obj < best_obj) {
      best_obj = obj;
      best_h = y;
    }
    const double change = std::abs(obj - prev_obj) / std::max(1.0, obj);
    prev_obj = obj;
    stable_iters = change < params.tol_objective ? stable_iters + 1 : 0;
    // Converged when the objective has settled and the unconstrained prox
    // point sits on the feasible set (the two splitting halves agree).
    if (stable_iters >= 25 &&
        max_abs(x - y) <= params.tol_residual * scale) {
      converged = true;
      break;
    }
  }

  DualCertificate cert(lambda.with_entries(hermitize(best_h)), lambda);
  converged = converged && cert.feasibility_residual() <= params.tol_residual;
  return MinimizeResult{std::move(cert), converged, iters};
}

namespace {

// Dykstra's alternating projection onto
//   {0 <= M <= 1}  intersect  {0 <= M^PT <= 1}.
// Both sets are spectral boxes, the second one in the partially transposed
// frame (partial transposition is a Frobenius isometry).
Matrix dykstra_project(const Matrix& g, const PartialTransposer& pt,
                       int max_cycles, double tol) {
  Matrix x = g;
  Matrix p = Matrix::Zero(g.rows(), g.cols());
  Matrix q = Matrix::Zero(g.rows(), g.cols());
  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    const Matrix x_prev = x;
    const Matrix y = clip_spectrum(hermitize(x + p), 0.0, 1.0);
    p = x + p - y;
    x = pt.apply(clip_spectrum(hermitize(pt.apply(y + q)), 0.0, 1.0));
    q = y + q - x;
    if (max_abs(x - x_prev) <= tol) break;
  }
  return hermitize(x);
}

}  // namespace

PrimalResult primal_ppt_ascent(const TwoStateEnsemble& e,
                               const SolveParams& params) {
  params.validate();
  const BipartiteOperator lambda = weighted_difference(e);
  const int n = lambda.side();
  const PartialTransposer pt(lambda.factors(), n);
  const Matrix identity = Matrix::Identity(n, n);

  auto make_result = [&](const Matrix& m0, double value, bool converged,
                         int iters) {
    return PrimalResult{
        TwoOutcomeMeasurement{lambda.with_entries(m0),
                              lambda.with_entries(identity - m0)},
        value, converged, iters};
  };

  if (max_abs(lambda.matrix()) <= kDegenerateLambdaTol) {
    return make_result(0.5 * identity, std::max(e.eta0(), e.eta1()), true, 0);
  }

  const double op_norm = eig_hermitian(lambda).max_abs_eigenvalue();
  const double step = params.step > 0.0 ? params.step : 1.0 / op_norm;
  const double scale = std::max(1.0, max_abs(lambda.matrix()));
  constexpr int kInnerCap = 500;
  const double inner_tol = 1e-13 * scale;

  auto objective = [&](const Matrix& m0) {
    return e.eta1() + (lambda.matrix() * m0).trace().real();
  };

  // Douglas-Rachford between the two spectral boxes, with the linear
  // objective folded into the first proximal map:
  //   prox_{t(-<Lambda,.> + box)}(Z) = clip(Z + t Lambda).
  // The supergradient push and the alternating projections are the same
  // primitives as plain projected ascent, but the reflected update is
  // what actually reaches the optimal face instead of stalling on it.
  Matrix z = 0.5 * identity;
  Matrix x = z;
  double prev_value = objective(z);
  int stable_iters = 0;
  bool converged = false;
  int iters = 0;

  for (int k = 0; k < params.max_iters; ++k) {
    iters = k + 1;
    x = clip_spectrum(hermitize(z + step * lambda.matrix()), 0.0, 1.0);
    const Matrix y =
        pt.apply(clip_spectrum(hermitize(pt.apply(2.0 * x - z)), 0.0, 1.0));
    z += y - x;

    const double value = objective(x);
    const double change =
        std::abs(value - prev_value) / std::max(1.0, std::abs(value));
    prev_value = value;
    stable_iters = change < params.tol_objective ? stable_iters + 1 : 0;
    if (stable_iters >= 25 && max_abs(x - y) <= params.tol_residual * scale) {
      converged = true;
      break;
    }
  }

  // Dykstra polish lands the reported point inside the intersection, so
  // the achieved value is certified by a measurement feasible to well
  // below the advertised 1e-9.
  const Matrix m0 = dykstra_project(x, pt, 4 * kInnerCap, 0.01 * inner_tol);
  return make_result(m0, objective(m0), converged, iters);
}

}  // namespace qdh
