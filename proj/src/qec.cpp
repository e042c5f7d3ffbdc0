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

#include "qctl/qec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qctl/errors.hpp"
#include "qctl/tolerances.hpp"

namespace qctl {

namespace {

using Index = Eigen::Index;

ComplexMatrix cyclic_shift(std::size_t n, std::size_t power) {
  const auto d = static_cast<Index>(n);
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (std::size_t m = 0; m < n; ++m) s(static_cast<Index>((m + power) % n), static_cast<Index>(m)) = 1.0;
  return s;
}

DimensionSignature qubits(std::size_t n) { return DimensionSignature(std::vector<std::size_t>(n, 2)); }

}  // namespace

// ---------------------------------------------------------------------------
// Types

ErrorModel::ErrorModel(std::vector<UnitaryOperator> errors, ProbabilityVector probs)
    : errors_(std::move(errors)), probs_(std::move(probs)) {
  if (errors_.empty() || errors_.size() != probs_.size())
    throw PreconditionError("error model: need one probability per error operator");
  for (const auto& e : errors_)
    if (e.dim() != errors_.front().dim()) throw SignatureError("error model: mixed dimensions");
}

CodeSpec::CodeSpec(std::size_t n_physical, PureState logical_zero, PureState logical_one,
                   Instrument syndrome, FeedbackPolicy recovery)
    : n_physical_(n_physical),
      logical_zero_(std::move(logical_zero)),
      logical_one_(std::move(logical_one)),
      syndrome_(std::move(syndrome)),
      recovery_(std::move(recovery)) {
  if (logical_one_.dim() != logical_zero_.dim() || syndrome_.dim() != logical_zero_.dim())
    throw SignatureError("code: logical basis and syndrome dimensions differ");
  const double overlap = std::abs(logical_zero_.amplitudes().dot(logical_one_.amplitudes()));
  if (overlap > tol::kNorm)
    throw ValidationError(Invariant::kNorm, overlap, "code: logical basis is not orthogonal");
  for (const auto& label : syndrome_.labels()) {
    const UnitaryOperator& r = recovery_.at(label);
    if (r.dim() != dim()) throw SignatureError("code: recovery operator has the wrong dimension");
  }
}

ComplexMatrix CodeSpec::logical_basis() const {
  ComplexMatrix l(static_cast<Index>(dim()), 2);
  l.col(0) = logical_zero_.amplitudes();
  l.col(1) = logical_one_.amplitudes();
  return l;
}

PureState CodeSpec::encode(Complex alpha, Complex beta) const {
  return PureState(alpha * logical_zero_.amplitudes() + beta * logical_one_.amplitudes(),
                   logical_zero_.signature());
}

double QecReport::max_residual() const {
  double worst = 0.0;
  for (const auto& [name, value] : residuals) worst = std::max(worst, std::abs(value));
  return worst;
}

// ---------------------------------------------------------------------------
// The bit-flip code

ComplexMatrix pauli_on(char which, std::size_t qubit, std::size_t n_qubits) {
  ComplexMatrix p;
  switch (which) {
    case 'I': p = pauli::i(); break;
    case 'X': p = pauli::x(); break;
    case 'Y': p = pauli::y(); break;
    case 'Z': p = pauli::z(); break;
    default: throw PreconditionError(std::string("pauli_on: unknown Pauli '") + which + "'");
  }
  return embed_operator(p, qubit, qubits(n_qubits));
}

CodeSpec bit_flip_code() {
  constexpr std::size_t n = 3;
  const DimensionSignature sig = qubits(n);
  const PureState zero_l = PureState::basis(sig, 0b000);
  const PureState one_l = PureState::basis(sig, 0b111);

  const ComplexMatrix code_projector = basis_projector(8, 0b000) + basis_projector(8, 0b111);
  std::vector<ComplexMatrix> projectors{code_projector};
  std::vector<std::string> labels{"none"};
  std::map<std::string, UnitaryOperator> recovery{{"none", UnitaryOperator::identity(sig)}};
  for (std::size_t q = 0; q < n; ++q) {
    const ComplexMatrix x = pauli_on('X', q, n);
    const std::string label = "x" + std::to_string(q + 1);
    projectors.push_back(x * code_projector * x);
    labels.push_back(label);
    recovery.emplace(label, UnitaryOperator(x, sig));
  }
  return CodeSpec(n, zero_l, one_l, Instrument(std::move(projectors), std::move(labels)),
                  FeedbackPolicy(std::move(recovery)));
}

ErrorModel single_bit_flip_errors(const ProbabilityVector& probs) {
  const DimensionSignature sig = qubits(3);
  std::vector<UnitaryOperator> errors{UnitaryOperator::identity(sig)};
  for (std::size_t q = 0; q < 3; ++q) errors.emplace_back(pauli_on('X', q, 3), sig);
  return ErrorModel(std::move(errors), probs);
}

// ---------------------------------------------------------------------------
// Degeneracy and the correction run

DegeneracyResult degeneracy_check(const CodeSpec& code, const ErrorModel& noise) {
  const ComplexMatrix l = code.logical_basis();
  std::vector<ComplexMatrix> sectors;
  for (const auto& e : noise.errors()) {
    if (e.dim() != code.dim()) throw SignatureError("degeneracy_check: error dimension mismatch");
    sectors.push_back(e.matrix() * l);
  }
  DegeneracyResult result;
  for (std::size_t i = 0; i < sectors.size(); ++i)
    for (std::size_t j = i + 1; j < sectors.size(); ++j) {
      const double overlap = (sectors[i].adjoint() * sectors[j]).cwiseAbs().maxCoeff();
      if (overlap > tol::kSectorOverlap) {
        return DegeneracyResult{false, std::make_pair(i, j), overlap};
      }
      result.overlap = std::max(result.overlap, overlap);
    }
  return result;
}

QecReport run_qec(const CodeSpec& code, const ErrorModel& noise, const PureState& psi) {
  if (psi.dim() != code.dim()) throw SignatureError("run_qec: state dimension does not match the code");
  const ComplexMatrix l = code.logical_basis();
  const ComplexVector& amp = psi.amplitudes();
  const double outside = (amp - l * (l.adjoint() * amp)).norm();
  if (outside >= tol::kCompleteness)
    throw ValidationError(Invariant::kCodeSpace, outside, "run_qec: input is not in the code space");

  const DegeneracyResult deg = degeneracy_check(code, noise);
  if (!deg.non_degenerate) {
    std::ostringstream os;
    os << "run_qec: degenerate error set, errors " << deg.witness->first << " and "
       << deg.witness->second << " overlap by " << deg.overlap;
    throw PreconditionError(os.str());
  }

  const Instrument& syndrome = code.syndrome();
  const std::size_t dq = code.dim();
  const std::size_t n_syn = syndrome.size();
  const DimensionSignature sig{dq, n_syn};
  const auto n = static_cast<Index>(dq * n_syn);
  const ComplexMatrix psi_proj = amp * amp.adjoint();

  // (a) error
  const ComplexMatrix rho0 = kron(psi_proj, basis_projector(n_syn, 0));
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  ComplexMatrix ensemble_q = ComplexMatrix::Zero(static_cast<Index>(dq), static_cast<Index>(dq));
  for (std::size_t i = 0; i < noise.size(); ++i) {
    const ComplexMatrix e = embed_operator(noise.errors()[i].matrix(), 0, sig);
    rho += noise.probs()[i] * (e * rho0 * e.adjoint());
    const ComplexMatrix& eq = noise.errors()[i].matrix();
    ensemble_q += noise.probs()[i] * (eq * psi_proj * eq.adjoint());
  }

  // (b) syndrome measurement, outcome copied into the register
  ComplexMatrix rho_prime = ComplexMatrix::Zero(n, n);
  for (std::size_t s = 0; s < n_syn; ++s) {
    const ComplexMatrix k = kron(syndrome.operators()[s], cyclic_shift(n_syn, s));
    rho_prime += k * rho * k.adjoint();
  }

  // (c) recovery controlled by the register
  const UnitaryOperator r = controlled_correction_unitary(syndrome, code.recovery());
  const ComplexMatrix rho_out = r.matrix() * rho_prime * r.matrix().adjoint();

  const DensityMatrix joint_error = DensityMatrix::from_positive_operator(rho, sig);
  const DensityMatrix joint_syndrome = DensityMatrix::from_positive_operator(rho_prime, sig);
  const DensityMatrix joint_out = DensityMatrix::from_positive_operator(rho_out, sig);
  const DensityMatrix rho_q = partial_trace(joint_error, {0});
  const DensityMatrix rho_q_out = partial_trace(joint_out, {0});

  const double s_q = von_neumann_entropy(rho_q);
  const double s_q_out = von_neumann_entropy(rho_q_out);
  const double delta_s = s_q - s_q_out;
  const double h_p = shannon_entropy(noise.probs());
  const double mi = mutual_information(joint_syndrome);
  const double fidelity = (amp.adjoint() * rho_q_out.matrix() * amp)(0, 0).real();

  QecReport report{.delta_s = delta_s,
                   .h_p = h_p,
                   .mi_qc = mi,
                   .fidelity = fidelity,
                   .s_q = s_q,
                   .s_q_out = s_q_out,
                   .residuals = {},
                   .rho_q = rho_q,
                   .rho_q_out = rho_q_out};
  report.residuals = {{"delta_s-h_p", delta_s - h_p},
                      {"h_p-mi", h_p - mi},
                      {"delta_s-mi", delta_s - mi},
                      {"rho_q-error_ensemble", max_abs_deviation(rho_q.matrix(), ensemble_q)},
                      {"rho_q_out-psi", max_abs_deviation(rho_q_out.matrix(), psi_proj)},
                      {"1-fidelity", 1.0 - fidelity}};
  return report;
}

}  // namespace qctl
