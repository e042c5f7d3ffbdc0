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

#include "qctl/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "qctl/errors.hpp"
#include "qctl/tolerances.hpp"

namespace qctl {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void require_square(const ComplexMatrix& m, const DimensionSignature& sig, const char* what) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != sig.total_dimension()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols() << " but signature dimension is "
       << sig.total_dimension();
    throw SignatureError(os.str());
  }
}

// Row-major strides of a signature: stride[k] = prod(dims[k+1..]).
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

// Composite-index offsets contributed by every joint value of the listed
// subsystems, enumerated with the first listed subsystem most significant.
std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& positions,
                                    const std::vector<std::size_t>& dims,
                                    const std::vector<std::size_t>& strides) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t pos : positions) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[pos]);
    for (std::size_t base : offsets)
      for (std::size_t v = 0; v < dims[pos]; ++v) next.push_back(base + v * strides[pos]);
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<std::size_t> normalized_keep(std::span<const std::size_t> keep, std::size_t n) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw SignatureError("partial_trace: duplicate subsystem index");
  if (sorted.empty()) throw SignatureError("partial_trace: keep set is empty");
  if (sorted.back() >= n) {
    std::ostringstream os;
    os << "partial_trace: subsystem index " << sorted.back() << " out of range for " << n
       << " subsystems";
    throw SignatureError(os.str());
  }
  return sorted;
}

}  // namespace

const char* to_string(Invariant inv) noexcept {
  switch (inv) {
    case Invariant::kHermiticity: return "hermiticity";
    case Invariant::kPositivity: return "positivity";
    case Invariant::kTrace: return "trace";
    case Invariant::kUnitarity: return "unitarity";
    case Invariant::kNorm: return "norm";
    case Invariant::kCompleteness: return "completeness";
    case Invariant::kProbability: return "probability";
    case Invariant::kNonNegativeEntropy: return "non-negative entropy";
    case Invariant::kCodeSpace: return "code space";
    case Invariant::kPurity: return "purity";
  }
  return "unknown";
}

ValidationError::ValidationError(Invariant inv, double magnitude, const std::string& context)
    : Error([&] {
        std::ostringstream os;
        os << context << ": " << to_string(inv) << " violated (magnitude " << magnitude << ")";
        return os.str();
      }()),
      invariant_(inv),
      magnitude_(magnitude) {}

// ---------------------------------------------------------------------------
// DimensionSignature

DimensionSignature::DimensionSignature(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw SignatureError("signature has no subsystems");
  for (std::size_t d : dims_) {
    if (d == 0) throw SignatureError("signature has a zero-dimensional subsystem");
    total_ *= d;
    if (total_ > tol::kMaxJointDimension) {
      std::ostringstream os;
      os << "joint dimension exceeds the supported maximum of " << tol::kMaxJointDimension;
      throw SignatureError(os.str());
    }
  }
}

DimensionSignature::DimensionSignature(std::initializer_list<std::size_t> dims)
    : DimensionSignature(std::vector<std::size_t>(dims)) {}

DimensionSignature DimensionSignature::single(std::size_t dim) {
  return DimensionSignature(std::vector<std::size_t>{dim});
}

DimensionSignature DimensionSignature::concat(const DimensionSignature& other) const {
  std::vector<std::size_t> all = dims_;
  all.insert(all.end(), other.dims_.begin(), other.dims_.end());
  return DimensionSignature(std::move(all));
}

DimensionSignature DimensionSignature::restrict_to(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> out;
  out.reserve(keep.size());
  for (std::size_t k : keep) {
    if (k >= dims_.size()) throw SignatureError("subsystem index out of range");
    out.push_back(dims_[k]);
  }
  return DimensionSignature(std::move(out));
}

// ---------------------------------------------------------------------------
// Small helpers

double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw SignatureError("max_abs_deviation: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const ComplexMatrix& m) {
  return max_abs_deviation(m, m.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix basis_projector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw SignatureError("basis_projector: index out of range");
  ComplexMatrix p = ComplexMatrix::Zero(idx(dim), idx(dim));
  p(idx(index), idx(index)) = 1.0;
  return p;
}

namespace pauli {
ComplexMatrix i() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

// ---------------------------------------------------------------------------
// Eigensystems

Eigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw SignatureError("hermitian_eigensystem: matrix is not square");
  const double dev = hermiticity_deviation(m);
  if (dev > tol::kHermiticity)
    throw ValidationError(Invariant::kHermiticity, dev, "hermitian_eigensystem");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
  Eigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Trusted, ComplexMatrix matrix, RealVector spectrum,
                             DimensionSignature signature)
    : matrix_(std::move(matrix)), spectrum_(std::move(spectrum)), signature_(std::move(signature)) {}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, DimensionSignature signature)
    : DensityMatrix(validate_density(matrix, signature)) {}

DensityMatrix validate_density(const ComplexMatrix& m, const DimensionSignature& signature) {
  require_square(m, signature, "validate_density");
  const double herm = hermiticity_deviation(m);
  if (herm > tol::kHermiticity) throw ValidationError(Invariant::kHermiticity, herm, "density matrix");
  const Complex tr = m.trace();
  const double trace_dev = std::abs(tr - Complex(1.0, 0.0));
  if (trace_dev > tol::kTrace) throw ValidationError(Invariant::kTrace, trace_dev, "density matrix");

  ComplexMatrix sym = 0.5 * (m + m.adjoint());
  RealVector spectrum = hermitian_eigenvalues(sym);
  const double lowest = spectrum.size() ? spectrum.minCoeff() : 0.0;
  if (lowest < -tol::kEigenvalueFloor)
    throw ValidationError(Invariant::kPositivity, lowest, "density matrix");
  spectrum = spectrum.cwiseMax(0.0);
  return DensityMatrix(DensityMatrix::Trusted{}, std::move(sym), std::move(spectrum), signature);
}

DensityMatrix DensityMatrix::from_positive_operator(const ComplexMatrix& op,
                                                    DimensionSignature signature) {
  require_square(op, signature, "from_positive_operator");
  const double tr = op.trace().real();
  if (!(tr > 0.0)) throw ValidationError(Invariant::kTrace, tr, "positive operator has no weight");
  ComplexMatrix m = (0.5 / tr) * (op + op.adjoint());
  RealVector spectrum = hermitian_eigenvalues(m);
  // Rounding in `op` is amplified by 1/tr after normalization.
  const double scale = op.size() ? op.cwiseAbs().maxCoeff() * static_cast<double>(op.rows()) : 0.0;
  const double floor = tol::kEigenvalueFloor + 1e-13 * scale / tr;
  const double lowest = spectrum.size() ? spectrum.minCoeff() : 0.0;
  if (lowest < -floor) throw ValidationError(Invariant::kPositivity, lowest, "positive operator");
  spectrum = spectrum.cwiseMax(0.0);
  return DensityMatrix(Trusted{}, std::move(m), std::move(spectrum), std::move(signature));
}

// ---------------------------------------------------------------------------
// UnitaryOperator / PureState

UnitaryOperator::UnitaryOperator(ComplexMatrix matrix, DimensionSignature signature)
    : matrix_(std::move(matrix)), signature_(std::move(signature)) {
  require_square(matrix_, signature_, "unitary operator");
  const auto n = matrix_.rows();
  const double dev = max_abs_deviation(matrix_ * matrix_.adjoint(), ComplexMatrix::Identity(n, n));
  if (dev > tol::kUnitarity) throw ValidationError(Invariant::kUnitarity, dev, "unitary operator");
}

UnitaryOperator UnitaryOperator::identity(DimensionSignature signature) {
  const auto n = idx(signature.total_dimension());
  return UnitaryOperator(ComplexMatrix::Identity(n, n), std::move(signature));
}

UnitaryOperator UnitaryOperator::adjoint() const {
  return UnitaryOperator(matrix_.adjoint(), signature_);
}

UnitaryOperator validate_unitary(const ComplexMatrix& m, const DimensionSignature& signature) {
  return UnitaryOperator(m, signature);
}

PureState::PureState(ComplexVector amplitudes, DimensionSignature signature)
    : amplitudes_(std::move(amplitudes)), signature_(std::move(signature)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != signature_.total_dimension())
    throw SignatureError("pure state: amplitude count does not match signature");
  const double dev = std::abs(amplitudes_.norm() - 1.0);
  if (dev > tol::kNorm) throw ValidationError(Invariant::kNorm, dev, "pure state");
}

PureState PureState::basis(DimensionSignature signature, std::size_t index) {
  const auto n = idx(signature.total_dimension());
  if (idx(index) >= n) throw SignatureError("basis state index out of range");
  ComplexVector v = ComplexVector::Zero(n);
  v(idx(index)) = 1.0;
  return PureState(std::move(v), std::move(signature));
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix::from_positive_operator(amplitudes_ * amplitudes_.adjoint(), signature_);
}

// ---------------------------------------------------------------------------
// Composite systems

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) { return kron(a, b); }

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_positive_operator(kron(a.matrix(), b.matrix()),
                                               a.signature().concat(b.signature()));
}

UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b) {
  return UnitaryOperator(kron(a.matrix(), b.matrix()), a.signature().concat(b.signature()));
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const DimensionSignature& signature,
                                   std::span<const std::size_t> keep) {
  require_square(m, signature, "partial_trace");
  const std::vector<std::size_t> kept = normalized_keep(keep, signature.size());
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < signature.size(); ++k)
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);

  const auto strides = strides_of(signature.dims());
  const auto kept_off = offsets_of(kept, signature.dims(), strides);
  const auto traced_off = offsets_of(traced, signature.dims(), strides);

  const auto n = idx(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      Complex sum = 0.0;
      for (std::size_t t : traced_off)
        sum += m(idx(kept_off[static_cast<std::size_t>(a)] + t),
                 idx(kept_off[static_cast<std::size_t>(b)] + t));
      out(a, b) = sum;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const std::vector<std::size_t> kept = normalized_keep(keep, rho.signature().size());
  if (kept.size() == rho.signature().size()) return rho;
  return DensityMatrix::from_positive_operator(
      partial_trace_matrix(rho.matrix(), rho.signature(), kept), rho.signature().restrict_to(kept));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

ComplexMatrix embed_operator(const ComplexMatrix& op, std::size_t target,
                             const DimensionSignature& signature) {
  if (target >= signature.size()) throw SignatureError("embed_operator: target out of range");
  const std::size_t d = signature[target];
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != d) {
    std::ostringstream os;
    os << "embed_operator: operator is " << op.rows() << "x" << op.cols() << " but subsystem "
       << target << " has dimension " << d;
    throw SignatureError(os.str());
  }
  std::size_t before = 1, after = 1;
  for (std::size_t k = 0; k < target; ++k) before *= signature[k];
  for (std::size_t k = target + 1; k < signature.size(); ++k) after *= signature[k];
  return kron(kron(ComplexMatrix::Identity(idx(before), idx(before)), op),
              ComplexMatrix::Identity(idx(after), idx(after)));
}

DensityMatrix conjugate(const UnitaryOperator& u, const DensityMatrix& rho) {
  if (u.dim() != rho.dim()) throw SignatureError("conjugate: dimension mismatch");
  return DensityMatrix::from_positive_operator(u.matrix() * rho.matrix() * u.matrix().adjoint(),
                                               rho.signature());
}

}  // namespace qctl
