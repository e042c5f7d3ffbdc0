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

// Error correction run as a feedback loop on the joint space Q (x) M, where M
// is a syndrome register with one level per syndrome:
//
//   (a) error       rho   = sum_i p_i e_i|psi><psi|e_i^dagger (x) |0><0|
//   (b) syndrome    rho'  = sum_s (P_s (x) X_M^s) rho (P_s (x) X_M^s)^dagger
//   (c) recovery    rho_out = (sum_s R_s (x) |s><s|) rho' (...)^dagger
//
// For a non-degenerate code the entropy removed from Q equals both H(p) and
// the mutual information I(Q':M') of the post-syndrome state.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qctl/channels.hpp"
#include "qctl/control.hpp"
#include "qctl/entropy.hpp"
#include "qctl/qstate.hpp"

namespace qctl {

class ErrorModel {
 public:
  ErrorModel(std::vector<UnitaryOperator> errors, ProbabilityVector probs);

  const std::vector<UnitaryOperator>& errors() const noexcept { return errors_; }
  const ProbabilityVector& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return errors_.size(); }

 private:
  std::vector<UnitaryOperator> errors_;
  ProbabilityVector probs_;
};

class CodeSpec {
 public:
  CodeSpec(std::size_t n_physical, PureState logical_zero, PureState logical_one,
           Instrument syndrome, FeedbackPolicy recovery);

  std::size_t n_physical() const noexcept { return n_physical_; }
  const PureState& logical_zero() const noexcept { return logical_zero_; }
  const PureState& logical_one() const noexcept { return logical_one_; }
  const Instrument& syndrome() const noexcept { return syndrome_; }
  const FeedbackPolicy& recovery() const noexcept { return recovery_; }
  std::size_t dim() const noexcept { return logical_zero_.dim(); }

  /// Columns |0_L>, |1_L>.
  ComplexMatrix logical_basis() const;
  /// alpha |0_L> + beta |1_L>; throws if |alpha|^2 + |beta|^2 != 1.
  PureState encode(Complex alpha, Complex beta) const;

 private:
  std::size_t n_physical_;
  PureState logical_zero_;
  PureState logical_one_;
  Instrument syndrome_;
  FeedbackPolicy recovery_;
};

struct DegeneracyResult {
  bool non_degenerate = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  double overlap = 0.0;  // largest pairwise sector overlap found
};

struct QecReport {
  double delta_s = 0.0;  // S(Q) - S(Q_out)
  double h_p = 0.0;      // H(p)
  double mi_qc = 0.0;    // I(Q':M') after the syndrome step
  double fidelity = 0.0; // <psi|rho_out|psi>
  double s_q = 0.0;
  double s_q_out = 0.0;
  std::map<std::string, double> residuals;
  DensityMatrix rho_q;      // after the error step, register traced out
  DensityMatrix rho_q_out;  // after recovery, register traced out

  double max_residual() const;
};

/// Qubit Pauli X/Y/Z acting on qubit `qubit` (0-based, leftmost first) of n.
ComplexMatrix pauli_on(char which, std::size_t qubit, std::size_t n_qubits);

/// Three-qubit repetition code |000>, |111> with syndromes
/// {"none", "x1", "x2", "x3"} and recovery {I, X1, X2, X3}.
CodeSpec bit_flip_code();

/// Error set {I, X1, X2, X3} with the given probabilities.
ErrorModel single_bit_flip_errors(const ProbabilityVector& probs);

DegeneracyResult degeneracy_check(const CodeSpec& code, const ErrorModel& noise);

/// Throws PreconditionError on a degenerate error set and
/// ValidationError(kCodeSpace) if psi is not in the code space.
QecReport run_qec(const CodeSpec& code, const ErrorModel& noise, const PureState& psi);

}  // namespace qctl
