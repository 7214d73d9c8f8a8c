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

#include "qdh/bipartite_operator.hpp"

#include <algorithm>
#include <cstdint>

namespace qdh {

namespace {

void check_square(const Matrix& m, int expected_side) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("bipartite operator matrix must be square");
  }
  if (m.rows() != expected_side) {
    throw std::invalid_argument(
        "matrix side " + std::to_string(m.rows()) +
        " does not match subsystem dimensions (expected " +
        std::to_string(expected_side) + ")");
  }
}

void check_hermitian(const Matrix& m) {
  const double residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(residual <= kHermitianTol)) {
    throw std::invalid_argument("matrix is not Hermitian (residual " +
                                std::to_string(residual) + ")");
  }
}

int factors_side(const std::vector<Subsystems>& factors) {
  std::int64_t side = 1;
  for (const auto& f : factors) {
    if (f.a <= 0 || f.b <= 0) {
      throw std::invalid_argument("subsystem dimensions must be positive");
    }
    side *= f.dim();
    if (side > (std::int64_t{1} << 31)) {
      throw DimensionCapExceeded("folded operator side overflows");
    }
  }
  return static_cast<int>(side);
}

}  // namespace

PartialTransposer::PartialTransposer(const std::vector<Subsystems>& factors,
                                     int side)
    : side_(side) {
  for (const auto& f : factors) dim_b_ *= f.b;
  to_a_.resize(side);
  to_b_.resize(side);
  fuse_.resize(side);
  for (int g = 0; g < side; ++g) {
    // Factor digits come out most-significant-first in Kronecker order;
    // split each into its A and B components.
    int radix_rest = side;
    int rem = g;
    int a_part = 0;
    int b_part = 0;
    for (const auto& f : factors) {
      radix_rest /= f.dim();
      const int idx = rem / radix_rest;
      rem %= radix_rest;
      a_part = a_part * f.a + idx / f.b;
      b_part = b_part * f.b + idx % f.b;
    }
    to_a_[g] = a_part;
    to_b_[g] = b_part;
    fuse_[static_cast<std::size_t>(a_part) * dim_b_ + b_part] = g;
  }
}

Matrix PartialTransposer::apply(const Matrix& in) const {
  Matrix out(side_, side_);
  auto join = [this](int a_part, int b_part) {
    return fuse_[static_cast<std::size_t>(a_part) * dim_b_ + b_part];
  };
  for (int r = 0; r < side_; ++r) {
    for (int c = 0; c < side_; ++c) {
      // result[(iA,jB),(iA',jB')] = source[(iA,jB'),(iA',jB)]
      out(r, c) = in(join(to_a_[r], to_b_[c]), join(to_a_[c], to_b_[r]));
    }
  }
  return out;
}

BipartiteOperator::BipartiteOperator(int dim_a, int dim_b, Matrix entries)
    : BipartiteOperator(std::vector<Subsystems>{{dim_a, dim_b}},
                        std::move(entries)) {}

BipartiteOperator::BipartiteOperator(std::vector<Subsystems> factors,
                                     Matrix entries)
    : factors_(std::move(factors)), entries_(std::move(entries)) {
  if (factors_.empty()) {
    throw std::invalid_argument("factor list must be non-empty");
  }
  check_square(entries_, factors_side(factors_));
  check_hermitian(entries_);
  entries_ = ((entries_ + entries_.adjoint()) * 0.5).eval();
}

BipartiteOperator BipartiteOperator::zero(int dim_a, int dim_b) {
  return BipartiteOperator(dim_a, dim_b,
                           Matrix::Zero(dim_a * dim_b, dim_a * dim_b));
}

BipartiteOperator BipartiteOperator::identity(int dim_a, int dim_b) {
  return BipartiteOperator(dim_a, dim_b,
                           Matrix::Identity(dim_a * dim_b, dim_a * dim_b));
}

int BipartiteOperator::dim_a() const {
  int d = 1;
  for (const auto& f : factors_) d *= f.a;
  return d;
}

int BipartiteOperator::dim_b() const {
  int d = 1;
  for (const auto& f : factors_) d *= f.b;
  return d;
}

bool BipartiteOperator::approx_equal(const BipartiteOperator& other,
                                     double tol) const {
  return factors_ == other.factors_ &&
         max_abs(entries_ - other.entries_) <= tol;
}

BipartiteOperator BipartiteOperator::operator+(
    const BipartiteOperator& rhs) const {
  if (factors_ != rhs.factors_) {
    throw std::invalid_argument("operator shapes differ");
  }
  return BipartiteOperator(factors_, entries_ + rhs.entries_);
}

BipartiteOperator BipartiteOperator::operator-(
    const BipartiteOperator& rhs) const {
  if (factors_ != rhs.factors_) {
    throw std::invalid_argument("operator shapes differ");
  }
  return BipartiteOperator(factors_, entries_ - rhs.entries_);
}

BipartiteOperator BipartiteOperator::operator*(double scale) const {
  return BipartiteOperator(factors_, entries_ * scale);
}

BipartiteOperator BipartiteOperator::with_entries(Matrix entries) const {
  return BipartiteOperator(factors_, std::move(entries));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

BipartiteOperator kron(const BipartiteOperator& a, const BipartiteOperator& b,
                       int side_cap) {
  const std::int64_t side =
      std::int64_t{a.side()} * static_cast<std::int64_t>(b.side());
  if (side > side_cap) {
    throw DimensionCapExceeded("kron result side " + std::to_string(side) +
                               " exceeds cap " + std::to_string(side_cap));
  }
  std::vector<Subsystems> factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return BipartiteOperator(std::move(factors), kron(a.matrix(), b.matrix()));
}

BipartiteOperator kron_power(const BipartiteOperator& a, int copies,
                             int side_cap) {
  if (copies < 1) {
    throw std::invalid_argument("kron_power needs at least one copy");
  }
  BipartiteOperator out = a;
  for (int l = 1; l < copies; ++l) {
    out = kron(out, a, side_cap);
  }
  return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator& a) {
  const PartialTransposer pt(a.factors(), a.side());
  return BipartiteOperator(a.factors(), pt.apply(a.matrix()));
}

Spectrum eig_hermitian(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = hermitian.rows();
  Spectrum spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    spec.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    spec.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return spec;
}

Spectrum eig_hermitian(const BipartiteOperator& a) {
  return eig_hermitian(a.matrix());
}

double trace_norm(const BipartiteOperator& a) {
  return eig_hermitian(a).eigenvalues.cwiseAbs().sum();
}

JordanPair jordan_decompose(const BipartiteOperator& a) {
  const Spectrum spec = eig_hermitian(a);
  const Eigen::Index n = spec.eigenvalues.size();
  RealVector pos(n), neg(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    pos(k) = std::max(spec.eigenvalues(k), 0.0);
    neg(k) = std::max(-spec.eigenvalues(k), 0.0);
  }
  const Matrix& v = spec.eigenvectors;
  Matrix plus = v * pos.asDiagonal() * v.adjoint();
  Matrix minus = v * neg.asDiagonal() * v.adjoint();
  return JordanPair{a.with_entries(std::move(plus)),
                    a.with_entries(std::move(minus))};
}

bool is_psd(const BipartiteOperator& a, double tol) {
  const Spectrum spec = eig_hermitian(a);
  const double scale = std::max(1.0, spec.max_abs_eigenvalue());
  return spec.eigenvalues(spec.eigenvalues.size() - 1) >= -tol * scale;
}

bool is_ppt(const BipartiteOperator& a, double tol) {
  return is_psd(partial_transpose(a), tol);
}

BipartiteOperator support_projector(const BipartiteOperator& a) {
  const Spectrum spec = eig_hermitian(a);
  const double cutoff = kSupportRelTol * spec.max_abs_eigenvalue();
  const Eigen::Index n = spec.eigenvalues.size();
  Matrix proj = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (spec.eigenvalues(k) > cutoff) {
      proj += spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint();
    }
  }
  return a.with_entries(std::move(proj));
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace qdh
