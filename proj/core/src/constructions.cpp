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

#include "qdh/constructions.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace qdh {

namespace {

Matrix projector(const Vector& v) { return v * v.adjoint(); }

// Product projector |u><u| (x) |v><v| as a single-factor operator matrix.
Matrix product_projector(const Vector& u, const Vector& v) {
  return kron(projector(u), projector(v));
}

void require_odd_dimension(int d) {
  if (d < 3 || d % 2 == 0) {
    throw std::invalid_argument("dimension must be an odd integer >= 3");
  }
  if (d > kMaxOddDimension) {
    throw DimensionCapExceeded("dimension " + std::to_string(d) +
                               " exceeds the assembly cap " +
                               std::to_string(kMaxOddDimension));
  }
}

// Admissible subsets have |S| < d/2; masks enumerated in increasing order.
template <typename Fn>
void for_each_subset(int d, Fn&& fn) {
  const int limit = 1 << d;
  const int max_size = (d - 1) / 2;
  for (int mask = 0; mask < limit; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) <= max_size) {
      fn(mask);
    }
  }
}

// Sign vector entry: -1 on the subset, +1 elsewhere.
int subset_sign(int mask, int i) { return (mask >> i) & 1 ? -1 : 1; }

Vector sign_vector(int d, int mask) {
  Vector v(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    v(i) = Complex(scale * subset_sign(mask, i), 0.0);
  }
  return v;
}

Vector pair_vector(int d, int i, int j, double sign) {
  Vector v = Vector::Zero(d);
  const double scale = 1.0 / std::sqrt(2.0);
  v(i) = Complex(scale, 0.0);
  v(j) = Complex(sign * scale, 0.0);
  return v;
}

}  // namespace

TwoStateEnsemble example1_ensemble() {
  auto real3 = [](double x, double y, double z) {
    Vector v(3);
    v << Complex(x, 0), Complex(y, 0), Complex(z, 0);
    return (v / v.norm()).eval();
  };
  const Vector alpha[4] = {real3(1, 1, 1), real3(1, -1, -1), real3(1, -1, 1),
                           real3(1, 1, -1)};
  // Pair vectors in the cyclic order (0,1), (1,2), (2,0).
  const Vector beta_plus[3] = {real3(1, 1, 0), real3(0, 1, 1), real3(1, 0, 1)};
  const Vector beta_minus[3] = {real3(1, -1, 0), real3(0, 1, -1),
                                real3(-1, 0, 1)};

  Matrix rho0 = Matrix::Zero(9, 9);
  for (const Vector& a : alpha) {
    rho0 += product_projector(a, a);
  }
  rho0 /= 4.0;

  Matrix rho1 = Matrix::Zero(9, 9);
  for (int j = 0; j < 3; ++j) {
    rho1 += product_projector(beta_plus[j], beta_minus[j]);
    rho1 += product_projector(beta_minus[j], beta_plus[j]);
  }
  rho1 /= 6.0;

  return TwoStateEnsemble(0.5, 0.5, BipartiteOperator(3, 3, std::move(rho0)),
                          BipartiteOperator(3, 3, std::move(rho1)));
}

DualCertificate example1_certificate() {
  using std::numbers::pi;
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);

  auto diag_vector = [&](Complex c1, Complex c2) {
    Vector v = Vector::Zero(9);
    const double scale = 1.0 / std::sqrt(3.0);
    v(0) = scale;            // |00>
    v(4) = scale * c1;       // |11>
    v(8) = scale * c2;       // |22>
    return v;
  };
  auto cross_vector = [](int i, int j, double sign) {
    Vector v = Vector::Zero(9);
    const double scale = 1.0 / std::sqrt(2.0);
    v(3 * i + j) = scale;
    v(3 * j + i) = sign * scale;
    return v;
  };

  const Vector g0 = diag_vector(1.0, 1.0);
  const Vector g1 = diag_vector(w, w * w);
  const Vector g2 = diag_vector(w * w, w);
  const Vector g0p = cross_vector(1, 2, +1.0);
  const Vector g1p = cross_vector(2, 0, +1.0);
  const Vector g2p = cross_vector(0, 1, +1.0);

  Matrix h = (1.0 / 6.0) * projector(g0) -
             (5.0 / 48.0) * (projector(g1) + projector(g2)) +
             (1.0 / 72.0) * (projector(g0p) + projector(g1p) + projector(g2p));
  return DualCertificate(BipartiteOperator(3, 3, std::move(h)),
                         weighted_difference(example1_ensemble()));
}

BipartiteOperator example1_certificate_pt_reference() {
  using std::numbers::pi;
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);

  auto diag_vector = [&](Complex c1, Complex c2) {
    Vector v = Vector::Zero(9);
    const double scale = 1.0 / std::sqrt(3.0);
    v(0) = scale;
    v(4) = scale * c1;
    v(8) = scale * c2;
    return v;
  };
  auto cross_vector = [](int i, int j, double sign) {
    Vector v = Vector::Zero(9);
    const double scale = 1.0 / std::sqrt(2.0);
    v(3 * i + j) = scale;
    v(3 * j + i) = sign * scale;
    return v;
  };

  const Vector g1 = diag_vector(w, w * w);
  const Vector g2 = diag_vector(w * w, w);
  Matrix h_pt = -(1.0 / 48.0) * (projector(g1) + projector(g2));
  const int pairs[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (const auto& p : pairs) {
    h_pt += (7.0 / 72.0) * projector(cross_vector(p[0], p[1], +1.0));
    h_pt -= (1.0 / 12.0) * projector(cross_vector(p[0], p[1], -1.0));
  }
  return BipartiteOperator(3, 3, std::move(h_pt));
}

TwoStateEnsemble exampled_ensemble(int d) {
  require_odd_dimension(d);
  const int side = d * d;

  Matrix rho0 = Matrix::Zero(side, side);
  int subset_count = 0;
  for_each_subset(d, [&](int mask) {
    const Vector phi = sign_vector(d, mask);
    rho0 += product_projector(phi, phi);
    ++subset_count;
  });
  rho0 /= static_cast<double>(subset_count);

  Matrix rho1 = Matrix::Zero(side, side);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Vector plus = pair_vector(d, i, j, +1.0);
      const Vector minus = pair_vector(d, i, j, -1.0);
      rho1 += product_projector(plus, minus);
      rho1 += product_projector(minus, plus);
    }
  }
  rho1 /= static_cast<double>(d) * (d - 1);

  return TwoStateEnsemble(0.5, 0.5, BipartiteOperator(d, d, std::move(rho0)),
                          BipartiteOperator(d, d, std::move(rho1)));
}

DOperators d_operators(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  const int side = d * d;
  auto idx = [d](int i, int j) { return i * d + j; };

  Matrix pi_m = Matrix::Zero(side, side);
  Matrix phi_m = Matrix::Zero(side, side);
  for (int i = 0; i < d; ++i) {
    pi_m(idx(i, i), idx(i, i)) = 1.0;
    for (int j = 0; j < d; ++j) {
      phi_m(idx(i, i), idx(j, j)) = 1.0 / d;
    }
  }

  Matrix psi_plus = Matrix::Zero(side, side);
  Matrix psi_minus = Matrix::Zero(side, side);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Vector sym = Vector::Zero(side);
      Vector anti = Vector::Zero(side);
      const double scale = 1.0 / std::sqrt(2.0);
      sym(idx(i, j)) = scale;
      sym(idx(j, i)) = scale;
      anti(idx(i, j)) = scale;
      anti(idx(j, i)) = -scale;
      psi_plus += projector(sym);
      psi_minus += projector(anti);
    }
  }

  return DOperators{d, BipartiteOperator(d, d, std::move(pi_m)),
                    BipartiteOperator(d, d, std::move(phi_m)),
                    BipartiteOperator(d, d, std::move(psi_plus)),
                    BipartiteOperator(d, d, std::move(psi_minus))};
}

DualCertificate exampled_certificate(int d) {
  require_odd_dimension(d);
  const DOperators ops = d_operators(d);
  const double dd = d;
  const BipartiteOperator h =
      ops.phi * (1.0 / (2.0 * dd)) -
      (ops.pi - ops.phi) * ((dd + 2.0) / (8.0 * dd * (dd - 1.0))) +
      ops.psi_plus * ((dd - 2.0) / (4.0 * dd * dd * (dd - 1.0)));
  return DualCertificate(h, weighted_difference(exampled_ensemble(d)));
}

BipartiteOperator exampled_certificate_pt_reference(int d) {
  require_odd_dimension(d);
  const DOperators ops = d_operators(d);
  const double dd = d;
  return (ops.phi - ops.pi) * ((dd - 2.0) / (8.0 * dd * (dd - 1.0))) +
         ops.psi_plus * ((3.0 * dd - 2.0) / (4.0 * dd * dd * (dd - 1.0))) -
         ops.psi_minus * (1.0 / (2.0 * dd * (dd - 1.0)));
}

DecompositionReport verify_decomposition(int d) {
  require_odd_dimension(d);
  const TwoStateEnsemble e = exampled_ensemble(d);
  const DOperators ops = d_operators(d);
  const double dd = d;

  const Matrix closed0 =
      (ops.phi * (1.0 / (2.0 * dd)) + ops.psi_plus * (1.0 / (dd * dd)))
          .matrix();
  const Matrix closed1 =
      ((ops.pi - ops.phi) * (1.0 / (4.0 * (dd - 1.0))) +
       ops.psi_minus * (1.0 / (2.0 * dd * (dd - 1.0))))
          .matrix();

  DecompositionReport report{d};
  report.residual_weighted0 =
      max_abs(e.rho0().matrix() * e.eta0() - closed0);
  report.residual_weighted1 =
      max_abs(e.rho1().matrix() * e.eta1() - closed1);
  return report;
}

SignSumReport verify_sign_sums(int d) {
  require_odd_dimension(d);
  SignSumReport report{d};
  report.expected_count = std::int64_t{1} << (d - 1);

  std::vector<int> masks;
  for_each_subset(d, [&](int mask) { masks.push_back(mask); });
  report.subset_count = static_cast<std::int64_t>(masks.size());

  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      std::int64_t sum = 0;
      for (int mask : masks) {
        sum += subset_sign(mask, i) * subset_sign(mask, j);
      }
      report.max_abs_pair_sum =
          std::max(report.max_abs_pair_sum, std::abs(sum));
    }
  }

  // The quadruple correlator is symmetric in its four indices, so each
  // unordered quadruple is checked once.
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
          std::int64_t sum = 0;
          for (int mask : masks) {
            sum += subset_sign(mask, i) * subset_sign(mask, j) *
                   subset_sign(mask, k) * subset_sign(mask, l);
          }
          report.max_abs_quad_sum =
              std::max(report.max_abs_quad_sum, std::abs(sum));
        }
      }
    }
  }
  return report;
}

}  // namespace qdh
