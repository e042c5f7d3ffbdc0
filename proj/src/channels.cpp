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

#include "qctl/channels.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "qctl/errors.hpp"
#include "qctl/tolerances.hpp"

namespace qctl {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

std::size_t common_dimension(const std::vector<ComplexMatrix>& ops, const char* what) {
  if (ops.empty()) throw PreconditionError(std::string(what) + ": needs at least one operator");
  const Index d = ops.front().rows();
  for (const auto& op : ops)
    if (op.rows() != d || op.cols() != d)
      throw SignatureError(std::string(what) + ": operators must be square with a common dimension");
  return static_cast<std::size_t>(d);
}

void require_complete(const std::vector<ComplexMatrix>& ops, const char* what) {
  const double residual = completeness_residual(ops);
  if (residual > tol::kCompleteness) throw ValidationError(Invariant::kCompleteness, residual, what);
}

}  // namespace

double completeness_residual(const std::vector<ComplexMatrix>& operators) {
  if (operators.empty()) return 1.0;
  const Index d = operators.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : operators) sum.noalias() += e.adjoint() * e;
  return max_abs_deviation(sum, ComplexMatrix::Identity(d, d));
}

// ---------------------------------------------------------------------------
// KrausChannel / Instrument

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators)
    : operators_(std::move(operators)), dim_(common_dimension(operators_, "Kraus channel")) {
  require_complete(operators_, "Kraus channel");
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  return KrausChannel({ComplexMatrix::Identity(idx(dim), idx(dim))});
}

KrausChannel KrausChannel::unitary(const UnitaryOperator& u) { return KrausChannel({u.matrix()}); }

Instrument::Instrument(std::vector<ComplexMatrix> operators, std::vector<std::string> labels)
    : operators_(std::move(operators)),
      labels_(std::move(labels)),
      dim_(common_dimension(operators_, "instrument")) {
  if (labels_.empty())
    for (std::size_t i = 0; i < operators_.size(); ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != operators_.size())
    throw PreconditionError("instrument: label count does not match operator count");
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size())
    throw PreconditionError("instrument: outcome labels must be distinct");
  require_complete(operators_, "instrument");
}

Instrument Instrument::computational_basis(std::size_t dim) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < dim; ++i) ops.push_back(basis_projector(dim, i));
  return Instrument(std::move(ops));
}

KrausChannel Instrument::as_channel() const { return KrausChannel(operators_); }

// ---------------------------------------------------------------------------
// Application

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) {
    std::ostringstream os;
    os << "apply_channel: channel dimension " << channel.dim() << " does not match state dimension "
       << rho.dim();
    throw SignatureError(os.str());
  }
  const auto d = idx(rho.dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& e : channel.operators()) out.noalias() += e * rho.matrix() * e.adjoint();
  return DensityMatrix::from_positive_operator(out, rho.signature());
}

OutcomeEnsemble apply_instrument(const Instrument& instrument, const DensityMatrix& rho) {
  if (instrument.dim() != rho.dim()) throw SignatureError("apply_instrument: dimension mismatch");
  OutcomeEnsemble ens{instrument.size(), {}};
  for (std::size_t i = 0; i < instrument.size(); ++i) {
    const auto& p = instrument.operators()[i];
    ComplexMatrix branch = p * rho.matrix() * p.adjoint();
    const double r = branch.trace().real();
    if (r < tol::kOutcomeDrop) continue;
    ens.entries.push_back(OutcomeEntry{instrument.labels()[i], i, r,
                                       DensityMatrix::from_positive_operator(branch, rho.signature())});
  }
  return ens;
}

std::vector<double> OutcomeEnsemble::probabilities() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.probability);
  return out;
}

DensityMatrix OutcomeEnsemble::average() const {
  if (entries.empty()) throw PreconditionError("ensemble is empty");
  ComplexMatrix sum = ComplexMatrix::Zero(idx(entries.front().state.dim()),
                                          idx(entries.front().state.dim()));
  for (const auto& e : entries) sum += e.probability * e.state.matrix();
  return DensityMatrix::from_positive_operator(sum, entries.front().state.signature());
}

// ---------------------------------------------------------------------------
// Environment

EnvironmentModel::EnvironmentModel(DensityMatrix env_state, UnitaryOperator joint_unitary,
                                   std::size_t system_dim)
    : env_state_(std::move(env_state)), joint_unitary_(std::move(joint_unitary)), system_dim_(system_dim) {
  if (joint_unitary_.dim() != system_dim_ * env_state_.dim()) {
    std::ostringstream os;
    os << "environment model: joint unitary dimension " << joint_unitary_.dim() << " != "
       << system_dim_ << " x " << env_state_.dim();
    throw SignatureError(os.str());
  }
}

EnvironmentEvolution channel_from_environment(const EnvironmentModel& env, const DensityMatrix& rho0) {
  if (rho0.dim() != env.system_dim())
    throw SignatureError("channel_from_environment: system dimension mismatch");
  const DimensionSignature sig{env.system_dim(), env.env_dim()};
  const ComplexMatrix& u = env.joint_unitary().matrix();
  const ComplexMatrix joint = u * kron(rho0.matrix(), env.env_state().matrix()) * u.adjoint();
  const std::size_t keep_system[] = {0};
  ComplexMatrix marginal = partial_trace_matrix(joint, sig, keep_system);
  return EnvironmentEvolution{
      DensityMatrix::from_positive_operator(joint, sig),
      DensityMatrix::from_positive_operator(marginal, DimensionSignature::single(env.system_dim()))};
}

KrausChannel extract_kraus(const EnvironmentModel& env) {
  const Eigensystem es = hermitian_eigensystem(env.env_state().matrix());
  const double impurity = 1.0 - es.values(0);
  if (impurity > tol::kCompleteness)
    throw ValidationError(Invariant::kPurity, impurity, "extract_kraus: environment state is mixed");
  const ComplexVector e0 = es.vectors.col(0);

  const auto d = idx(env.system_dim());
  const auto de = idx(env.env_dim());
  const ComplexMatrix& u = env.joint_unitary().matrix();
  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < de; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(d, d);
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        Complex sum = 0.0;
        for (Index f = 0; f < de; ++f) sum += u(a * de + i, b * de + f) * e0(f);
        k(a, b) = sum;
      }
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

// ---------------------------------------------------------------------------
// Standard noise

KrausChannel standard_channel(NoiseKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "standard_channel: probability " << p << " outside [0, 1]";
    throw PreconditionError(os.str());
  }
  std::vector<std::pair<double, ComplexMatrix>> terms;
  switch (kind) {
    case NoiseKind::kBitFlip:
      terms = {{1.0 - p, pauli::i()}, {p, pauli::x()}};
      break;
    case NoiseKind::kPhaseFlip:
      terms = {{1.0 - p, pauli::i()}, {p, pauli::z()}};
      break;
    case NoiseKind::kDepolarizing:
      terms = {{1.0 - 0.75 * p, pauli::i()},
               {0.25 * p, pauli::x()},
               {0.25 * p, pauli::y()},
               {0.25 * p, pauli::z()}};
      break;
  }
  std::vector<ComplexMatrix> ops;
  for (auto& [weight, op] : terms)
    if (weight > 0.0) ops.push_back(std::sqrt(weight) * op);
  return KrausChannel(std::move(ops));
}

// ---------------------------------------------------------------------------
// Random generators

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(idx(rows), idx(cols));
  // Fill in row-major order so the stream layout does not depend on Eigen's storage order.
  for (Index r = 0; r < g.rows(); ++r)
    for (Index c = 0; c < g.cols(); ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (cols == 0 || rows < cols) throw PreconditionError("haar_isometry: need rows >= cols >= 1");
  const ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(idx(rows), idx(cols));
  const ComplexMatrix& r = qr.matrixQR();
  for (Index k = 0; k < idx(cols); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

DensityMatrix random_state(std::size_t dim, Rng& rng, std::size_t rank) {
  if (dim == 0) throw PreconditionError("random_state: dimension must be positive");
  if (rank == 0 || rank > dim) rank = dim;
  const ComplexMatrix g = ginibre(dim, rank, rng);
  return DensityMatrix::from_positive_operator(g * g.adjoint(), DimensionSignature::single(dim));
}

DensityMatrix random_state(std::size_t dim, std::uint64_t seed, std::size_t rank) {
  Rng rng(seed);
  return random_state(dim, rng, rank);
}

PureState random_pure_state(std::size_t dim, Rng& rng) {
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  v.normalize();
  return PureState(std::move(v), DimensionSignature::single(dim));
}

UnitaryOperator random_unitary(std::size_t dim, Rng& rng) {
  return UnitaryOperator(haar_isometry(dim, dim, rng), DimensionSignature::single(dim));
}

UnitaryOperator random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

namespace {
std::vector<ComplexMatrix> isometry_blocks(std::size_t dim, std::size_t terms, Rng& rng) {
  if (dim == 0 || terms == 0) throw PreconditionError("random channel: need dim >= 1 and k >= 1");
  const ComplexMatrix v = haar_isometry(dim * terms, dim, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < terms; ++k) ops.push_back(v.block(idx(k * dim), 0, idx(dim), idx(dim)));
  return ops;
}
}  // namespace

KrausChannel random_channel(std::size_t dim, std::size_t terms, Rng& rng) {
  return KrausChannel(isometry_blocks(dim, terms, rng));
}

KrausChannel random_channel(std::size_t dim, std::size_t terms, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(dim, terms, rng);
}

Instrument random_instrument(std::size_t dim, std::size_t outcomes, Rng& rng) {
  return Instrument(isometry_blocks(dim, outcomes, rng));
}

Instrument random_instrument(std::size_t dim, std::size_t outcomes, std::uint64_t seed) {
  Rng rng(seed);
  return random_instrument(dim, outcomes, rng);
}

Instrument random_projective_instrument(std::size_t dim, std::size_t outcomes, Rng& rng) {
  if (outcomes == 0 || outcomes > dim)
    throw PreconditionError("random_projective_instrument: need 1 <= outcomes <= dim");
  const ComplexMatrix basis = haar_isometry(dim, dim, rng);
  std::vector<ComplexMatrix> ops(outcomes, ComplexMatrix::Zero(idx(dim), idx(dim)));
  for (std::size_t k = 0; k < dim; ++k)
    ops[k % outcomes] += basis.col(idx(k)) * basis.col(idx(k)).adjoint();
  return Instrument(std::move(ops));
}

}  // namespace qctl
