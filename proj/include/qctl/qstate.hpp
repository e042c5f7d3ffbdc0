// Copyright 2026 The qctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex-matrix foundation: composite systems, partial trace,
// Hermitian eigendecomposition and the validated state/operator types.
//
// Tensor ordering: the leftmost factor of a DimensionSignature is the most
// significant digit of the composite index, i.e. |a,b> has index a*d_b + b.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qctl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered subsystem dimensions of a composite Hilbert space.
class DimensionSignature {
 public:
  /// Throws SignatureError if empty, if any dimension is zero, or if the
  /// product exceeds tol::kMaxJointDimension.
  explicit DimensionSignature(std::vector<std::size_t> dims);
  DimensionSignature(std::initializer_list<std::size_t> dims);

  static DimensionSignature single(std::size_t dim);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  std::size_t total_dimension() const noexcept { return total_; }

  DimensionSignature concat(const DimensionSignature& other) const;
  /// Keeps the listed positions (must be sorted, unique, in range).
  DimensionSignature restrict_to(std::span<const std::size_t> keep) const;

  bool operator==(const DimensionSignature& other) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

/// Hermitian, positive semidefinite, unit-trace matrix with a signature.
/// The spectrum (descending, negatives within the floor clamped to zero) is
/// computed once at construction.
class DensityMatrix {
 public:
  /// Validates every invariant; see validate_density.
  DensityMatrix(ComplexMatrix matrix, DimensionSignature signature);

  /// Normalizes a positive operator produced by a completely positive map.
  /// Negativity is judged relative to the operator's trace, since these
  /// operators can have very small norm before normalization.
  static DensityMatrix from_positive_operator(const ComplexMatrix& op,
                                              DimensionSignature signature);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const DimensionSignature& signature() const noexcept { return signature_; }
  std::size_t dim() const noexcept { return signature_.total_dimension(); }
  const RealVector& spectrum() const noexcept { return spectrum_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

 private:
  friend DensityMatrix validate_density(const ComplexMatrix& m, const DimensionSignature& signature);

  struct Trusted {};
  DensityMatrix(Trusted, ComplexMatrix matrix, RealVector spectrum,
                DimensionSignature signature);

  ComplexMatrix matrix_;
  RealVector spectrum_;
  DimensionSignature signature_;
};

/// Square matrix with U U^dagger = I within tol::kUnitarity.
class UnitaryOperator {
 public:
  UnitaryOperator(ComplexMatrix matrix, DimensionSignature signature);
  static UnitaryOperator identity(DimensionSignature signature);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const DimensionSignature& signature() const noexcept { return signature_; }
  std::size_t dim() const noexcept { return signature_.total_dimension(); }
  UnitaryOperator adjoint() const;

 private:
  ComplexMatrix matrix_;
  DimensionSignature signature_;
};

/// Unit-norm state vector.
class PureState {
 public:
  PureState(ComplexVector amplitudes, DimensionSignature signature);
  /// Computational basis ket |index>.
  static PureState basis(DimensionSignature signature, std::size_t index);

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  const DimensionSignature& signature() const noexcept { return signature_; }
  std::size_t dim() const noexcept { return signature_.total_dimension(); }
  DensityMatrix to_density() const;

 private:
  ComplexVector amplitudes_;
  DimensionSignature signature_;
};

struct Eigensystem {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns are eigenvectors, in the order of values
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b);
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out every subsystem not listed in `keep`. `keep` may be in any order
/// but the result keeps the original subsystem order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// Same on a raw operator, without any state validation.
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const DimensionSignature& signature,
                                   std::span<const std::size_t> keep);

/// Throws ValidationError(kHermiticity) if `m` is not Hermitian within tolerance.
Eigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// Eigenvalues only (descending); the input is assumed Hermitian.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

DensityMatrix validate_density(const ComplexMatrix& m, const DimensionSignature& signature);
UnitaryOperator validate_unitary(const ComplexMatrix& m, const DimensionSignature& signature);

/// Lifts `op` acting on subsystem `target` to the whole space of `signature`.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::size_t target,
                             const DimensionSignature& signature);

/// U rho U^dagger.
DensityMatrix conjugate(const UnitaryOperator& u, const DensityMatrix& rho);

double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_deviation(const ComplexMatrix& m);

/// Projector |i><i| on a d-dimensional space.
ComplexMatrix basis_projector(std::size_t dim, std::size_t index);

namespace pauli {
ComplexMatrix i();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qctl
