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

#ifndef QDH_BIPARTITE_OPERATOR_HPP
#define QDH_BIPARTITE_OPERATOR_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdh {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Hermiticity residual admitted at construction.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues with |lambda| <= kSupportRelTol * max|lambda| count as zero
/// for rank/support decisions.
inline constexpr double kSupportRelTol = 1e-10;
/// Operations refuse matrices with side larger than this unless overridden.
inline constexpr int kDefaultSideCap = 4096;

/// Eigensolver failed to converge within its sweep cap.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested dense operator exceeds the configured side cap.
class DimensionCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One (d_A, d_B) tensor factor of a (possibly folded) bipartite space.
struct Subsystems {
  int a = 0;
  int b = 0;

  int dim() const { return a * b; }
  friend bool operator==(const Subsystems&, const Subsystems&) = default;
};

/// Dense Hermitian operator on a bipartite space, optionally folded over
/// several copies. The matrix is stored in the natural Kronecker order of
/// its factors; each factor uses the product-basis index i*d_B + j.
/// Partial transposition acts on every B subsystem, so the factor list is
/// the information needed to transpose a tensor power correctly. Values
/// are immutable after construction and safe to share across threads.
class BipartiteOperator {
 public:
  /// Single-factor operator. Validates the Hermiticity residual and then
  /// symmetrizes exactly, so stored entries satisfy m == m.adjoint().
  BipartiteOperator(int dim_a, int dim_b, Matrix entries);

  /// Folded operator over an explicit factor list (natural Kronecker order).
  BipartiteOperator(std::vector<Subsystems> factors, Matrix entries);

  static BipartiteOperator zero(int dim_a, int dim_b);
  static BipartiteOperator identity(int dim_a, int dim_b);

  int side() const { return static_cast<int>(entries_.rows()); }
  int dim_a() const;
  int dim_b() const;
  const std::vector<Subsystems>& factors() const { return factors_; }
  const Matrix& matrix() const { return entries_; }

  double trace() const { return entries_.trace().real(); }

  /// Same factor structure and entries equal within tol (max-abs).
  bool approx_equal(const BipartiteOperator& other, double tol) const;

  BipartiteOperator operator+(const BipartiteOperator& rhs) const;
  BipartiteOperator operator-(const BipartiteOperator& rhs) const;
  BipartiteOperator operator*(double scale) const;
  friend BipartiteOperator operator*(double scale, const BipartiteOperator& op) {
    return op * scale;
  }

  /// Replaces the entries while keeping the factor structure. The matrix is
  /// validated and symmetrized like at construction.
  BipartiteOperator with_entries(Matrix entries) const;

 private:
  std::vector<Subsystems> factors_;
  Matrix entries_;
};

/// Full spectral decomposition; eigenvalues sorted descending, eigenvector
/// columns in matching order.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;

  double max_abs_eigenvalue() const {
    return eigenvalues.size() == 0
               ? 0.0
               : std::max(std::abs(eigenvalues(0)),
                          std::abs(eigenvalues(eigenvalues.size() - 1)));
  }
};

/// Orthogonal positive/negative parts of a Hermitian operator:
/// plus - minus reconstructs the source, plus * minus ~ 0.
struct JordanPair {
  BipartiteOperator plus;
  BipartiteOperator minus;
};

/// Reusable entry permutation for repeated partial transposes over a fixed
/// factor structure; solvers apply it every iteration.
class PartialTransposer {
 public:
  PartialTransposer(const std::vector<Subsystems>& factors, int side);
  Matrix apply(const Matrix& m) const;

 private:
  std::vector<int> to_a_;
  std::vector<int> to_b_;
  std::vector<int> fuse_;
  int dim_b_ = 1;
  int side_ = 0;
};

/// Plain Kronecker product of dense matrices.
Matrix kron(const Matrix& a, const Matrix& b);

/// Kronecker product of bipartite operators; concatenates factor lists so
/// partial transposition keeps acting on every B subsystem of the fold.
BipartiteOperator kron(const BipartiteOperator& a, const BipartiteOperator& b,
                       int side_cap = kDefaultSideCap);

/// L-fold tensor power.
BipartiteOperator kron_power(const BipartiteOperator& a, int copies,
                             int side_cap = kDefaultSideCap);

/// Transposition of every B subsystem in the computational product basis:
/// entry[(i,j),(i',j')] -> entry[(i,j'),(i',j)] per factor. Exact entry
/// permutation: involutive and trace-preserving at the bit level.
BipartiteOperator partial_transpose(const BipartiteOperator& a);

Spectrum eig_hermitian(const BipartiteOperator& a);
Spectrum eig_hermitian(const Matrix& hermitian);

/// Sum of absolute eigenvalues (Schatten-1 norm of a Hermitian operator).
double trace_norm(const BipartiteOperator& a);

JordanPair jordan_decompose(const BipartiteOperator& a);

/// True iff min eigenvalue >= -tol * max(1, max|eigenvalue|).
bool is_psd(const BipartiteOperator& a, double tol);

/// True iff the partial transpose is positive semidefinite.
bool is_ppt(const BipartiteOperator& a, double tol);

/// Projector onto the span of eigenvectors with eigenvalue above the
/// numerical-zero threshold kSupportRelTol * max|lambda|.
BipartiteOperator support_projector(const BipartiteOperator& a);

/// Max-abs entry; the residual norm used throughout.
double max_abs(const Matrix& m);

}  // namespace qdh

#endif  // QDH_BIPARTITE_OPERATOR_HPP
