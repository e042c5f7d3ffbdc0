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

// Entropy-reduction accounting for four control topologies:
//
//   open_loop_global  controller C joins Q in one unitary; bound S(C_out) - S(C)
//   open_loop_locc    unitaries U_i chosen with probability p_i; bound 0
//   feedback_locc     measure {P_i}, correct with U_i; bound H(r)
//   feedback_global   measurement record in C, joint unitary on QC;
//                     bound max_U dS_open + I(Q':C')
//
// Reports carry slacks rather than pass/fail flags. A negative slack beyond
// tol::kBound is a violation of the corresponding inequality.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qctl/channels.hpp"
#include "qctl/entropy.hpp"
#include "qctl/qstate.hpp"

namespace qctl {

class OpenLoopLoccPlan {
 public:
  OpenLoopLoccPlan(ProbabilityVector weights, std::vector<UnitaryOperator> unitaries);

  const ProbabilityVector& weights() const noexcept { return weights_; }
  const std::vector<UnitaryOperator>& unitaries() const noexcept { return unitaries_; }
  std::size_t dim() const noexcept { return unitaries_.front().dim(); }

 private:
  ProbabilityVector weights_;
  std::vector<UnitaryOperator> unitaries_;
};

/// Correction unitary per outcome label.
class FeedbackPolicy {
 public:
  FeedbackPolicy() = default;
  explicit FeedbackPolicy(std::map<std::string, UnitaryOperator> corrections);

  /// Maps label i of the instrument to corrections[i].
  static FeedbackPolicy for_instrument(const Instrument& instrument,
                                       const std::vector<UnitaryOperator>& corrections);

  const std::map<std::string, UnitaryOperator>& corrections() const noexcept { return corrections_; }
  /// Throws PreconditionError naming the label if it has no correction.
  const UnitaryOperator& at(const std::string& label) const;

 private:
  std::map<std::string, UnitaryOperator> corrections_;
};

/// One inequality evaluated on an instance: slack = rhs - lhs.
struct BoundCheck {
  std::string name;
  double slack = 0.0;
  /// False when the inequality's premise does not hold for this instance; the
  /// slack is still recorded but is not a violation.
  bool applicable = true;
};

struct ControlReport {
  double s_in = 0.0;     // S(Q)
  double s_out = 0.0;    // S(Q_out)
  double delta_s = 0.0;  // S(Q) - S(Q_out)
  double bound = 0.0;
  std::string bound_name;
  double slack = 0.0;    // bound - delta_s
  std::map<std::string, double> auxiliaries;
  std::vector<BoundCheck> checks;
  /// For measurement-based topologies: whether S(Q') >= S(Q) holds.
  std::optional<bool> premise_holds;
  DensityMatrix output_state;  // rho^{Q_out}

  /// Most negative slack among applicable checks.
  double worst_slack() const;
  bool satisfied(double tolerance) const { return worst_slack() >= -tolerance; }
};

struct FeedbackGlobalOptions {
  std::size_t budget = 5000;
  std::uint64_t seed = 0;
};

ControlReport open_loop_global(const DensityMatrix& rho_q, const DensityMatrix& rho_c,
                               const UnitaryOperator& u);

ControlReport open_loop_locc(const DensityMatrix& rho_q, const OpenLoopLoccPlan& plan);

ControlReport feedback_locc(const DensityMatrix& rho_q, const Instrument& instrument,
                            const FeedbackPolicy& policy);

/// `u` acts on Q (x) C where C has one level per instrument outcome.
ControlReport feedback_global(const DensityMatrix& rho_q, const Instrument& instrument,
                              const UnitaryOperator& u, const FeedbackGlobalOptions& options = {});

/// sum_i r_i rho_i (x) |i><i| with signature (d_Q, outcome_count).
DensityMatrix build_cq_state(const OutcomeEnsemble& ensemble);

/// sum_i U_i (x) |i><i| with signature (d_Q, outcome count).
UnitaryOperator controlled_correction_unitary(const Instrument& instrument,
                                              const FeedbackPolicy& policy);

/// The composite operation C(rho) = sum_i U_i P_i rho P_i^dagger U_i^dagger.
KrausChannel feedback_channel(const Instrument& instrument, const FeedbackPolicy& policy);

}  // namespace qctl
