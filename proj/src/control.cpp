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

#include "qctl/control.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "qctl/errors.hpp"
#include "qctl/optimize.hpp"
#include "qctl/tolerances.hpp"

namespace qctl {

namespace {

using Index = Eigen::Index;

ControlReport make_report(double s_in, DensityMatrix output, double bound, std::string bound_name) {
  const double s_out = von_neumann_entropy(output);
  ControlReport r{.s_in = s_in,
                  .s_out = s_out,
                  .delta_s = s_in - s_out,
                  .bound = bound,
                  .bound_name = std::move(bound_name),
                  .slack = 0.0,
                  .auxiliaries = {},
                  .checks = {},
                  .premise_holds = std::nullopt,
                  .output_state = std::move(output)};
  r.slack = r.bound - r.delta_s;
  return r;
}

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": dimension " << got << " does not match " << want;
    throw SignatureError(os.str());
  }
}

DensityMatrix as_single(const DensityMatrix& rho) {
  if (rho.signature().size() == 1) return rho;
  return DensityMatrix::from_positive_operator(rho.matrix(), DimensionSignature::single(rho.dim()));
}

}  // namespace

double ControlReport::worst_slack() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& c : checks)
    if (c.applicable) worst = std::min(worst, c.slack);
  return worst;
}

// ---------------------------------------------------------------------------
// Plans and policies

OpenLoopLoccPlan::OpenLoopLoccPlan(ProbabilityVector weights, std::vector<UnitaryOperator> unitaries)
    : weights_(std::move(weights)), unitaries_(std::move(unitaries)) {
  if (unitaries_.empty() || unitaries_.size() != weights_.size())
    throw PreconditionError("open-loop plan: need one unitary per weight");
  for (const auto& u : unitaries_)
    require_dim(u.dim(), unitaries_.front().dim(), "open-loop plan");
}

FeedbackPolicy::FeedbackPolicy(std::map<std::string, UnitaryOperator> corrections)
    : corrections_(std::move(corrections)) {}

FeedbackPolicy FeedbackPolicy::for_instrument(const Instrument& instrument,
                                              const std::vector<UnitaryOperator>& corrections) {
  if (corrections.size() != instrument.size())
    throw PreconditionError("feedback policy: need one correction per outcome");
  std::map<std::string, UnitaryOperator> map;
  for (std::size_t i = 0; i < corrections.size(); ++i)
    map.emplace(instrument.labels()[i], corrections[i]);
  return FeedbackPolicy(std::move(map));
}

const UnitaryOperator& FeedbackPolicy::at(const std::string& label) const {
  auto it = corrections_.find(label);
  if (it == corrections_.end())
    throw PreconditionError("feedback policy: no correction for outcome '" + label + "'");
  return it->second;
}

KrausChannel feedback_channel(const Instrument& instrument, const FeedbackPolicy& policy) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < instrument.size(); ++i) {
    const UnitaryOperator& u = policy.at(instrument.labels()[i]);
    require_dim(u.dim(), instrument.dim(), "feedback correction");
    ops.push_back(u.matrix() * instrument.operators()[i]);
  }
  return KrausChannel(std::move(ops));
}

DensityMatrix build_cq_state(const OutcomeEnsemble& ensemble) {
  if (ensemble.entries.empty()) throw PreconditionError("build_cq_state: empty ensemble");
  const std::size_t dq = ensemble.entries.front().state.dim();
  const std::size_t n = ensemble.outcome_count;
  const DimensionSignature sig{dq, n};
  ComplexMatrix cq = ComplexMatrix::Zero(static_cast<Index>(dq * n), static_cast<Index>(dq * n));
  for (const auto& e : ensemble.entries)
    cq += e.probability * kron(e.state.matrix(), basis_projector(n, e.index));
  return DensityMatrix::from_positive_operator(cq, sig);
}

UnitaryOperator controlled_correction_unitary(const Instrument& instrument,
                                              const FeedbackPolicy& policy) {
  const std::size_t dq = instrument.dim();
  const std::size_t n = instrument.size();
  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Index>(dq * n), static_cast<Index>(dq * n));
  for (std::size_t i = 0; i < n; ++i) {
    const UnitaryOperator& c = policy.at(instrument.labels()[i]);
    require_dim(c.dim(), dq, "feedback correction");
    u += kron(c.matrix(), basis_projector(n, i));
  }
  return UnitaryOperator(std::move(u), DimensionSignature{dq, n});
}

// ---------------------------------------------------------------------------
// Open loop

ControlReport open_loop_global(const DensityMatrix& rho_q, const DensityMatrix& rho_c,
                               const UnitaryOperator& u) {
  require_dim(u.dim(), rho_q.dim() * rho_c.dim(), "open_loop_global");
  const DimensionSignature sig{rho_q.dim(), rho_c.dim()};
  const ComplexMatrix joint = u.matrix() * kron(rho_q.matrix(), rho_c.matrix()) * u.matrix().adjoint();
  const DensityMatrix out = DensityMatrix::from_positive_operator(joint, sig);

  const double s_c = von_neumann_entropy(rho_c);
  const double s_c_out = von_neumann_entropy(partial_trace(out, {1}));
  ControlReport r = make_report(von_neumann_entropy(rho_q), as_single(partial_trace(out, {0})),
                                s_c_out - s_c, "S(C_out)-S(C)");
  r.auxiliaries = {{"S(C)", s_c},
                   {"S(C_out)", s_c_out},
                   {"S(Q_out,C_out)", von_neumann_entropy(out)},
                   {"I(Q_out:C_out)", mutual_information(out)}};
  r.checks.push_back({"open_global", r.slack, true});
  return r;
}

ControlReport open_loop_locc(const DensityMatrix& rho_q, const OpenLoopLoccPlan& plan) {
  require_dim(plan.dim(), rho_q.dim(), "open_loop_locc");
  const auto d = static_cast<Index>(rho_q.dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < plan.unitaries().size(); ++i) {
    const ComplexMatrix& u = plan.unitaries()[i].matrix();
    out += plan.weights()[i] * (u * rho_q.matrix() * u.adjoint());
  }
  ControlReport r = make_report(von_neumann_entropy(rho_q),
                                DensityMatrix::from_positive_operator(out, rho_q.signature()), 0.0,
                                "zero");
  r.auxiliaries = {{"H(p)", shannon_entropy(plan.weights())}};
  r.checks.push_back({"open_locc", r.slack, true});
  return r;
}

// ---------------------------------------------------------------------------
// Feedback

ControlReport feedback_locc(const DensityMatrix& rho_q, const Instrument& instrument,
                            const FeedbackPolicy& policy) {
  require_dim(instrument.dim(), rho_q.dim(), "feedback_locc");
  const KrausChannel composite = feedback_channel(instrument, policy);
  const OutcomeEnsemble ens = apply_instrument(instrument, rho_q);

  const double s_q = von_neumann_entropy(rho_q);
  const double s_q_prime = von_neumann_entropy(ens.average());
  const double h_r = shannon_entropy(ProbabilityVector(ens.probabilities()));
  const double mi = mutual_information(build_cq_state(ens));
  const double s_e = entropy_exchange(rho_q, composite);

  ControlReport r = make_report(s_q, apply_channel(composite, rho_q), h_r, "H(r)");
  r.premise_holds = s_q_prime >= s_q - tol::kBound;
  r.auxiliaries = {{"S(Q')", s_q_prime}, {"H(r)", h_r}, {"I(Q':C')", mi}, {"S_e", s_e}};
  r.checks.push_back({"feedback_shannon", h_r - r.delta_s, true});
  r.checks.push_back({"feedback_exchange", s_e - r.delta_s, true});
  r.checks.push_back({"exchange_le_shannon", h_r - s_e, true});
  r.checks.push_back({"mi_le_shannon", h_r - mi, true});
  return r;
}

ControlReport feedback_global(const DensityMatrix& rho_q, const Instrument& instrument,
                              const UnitaryOperator& u, const FeedbackGlobalOptions& options) {
  require_dim(instrument.dim(), rho_q.dim(), "feedback_global");
  const std::size_t n = instrument.size();
  require_dim(u.dim(), rho_q.dim() * n, "feedback_global unitary");

  const OutcomeEnsemble ens = apply_instrument(instrument, rho_q);
  const DensityMatrix cq = build_cq_state(ens);
  const DensityMatrix out = DensityMatrix::from_positive_operator(
      u.matrix() * cq.matrix() * u.matrix().adjoint(), cq.signature());

  const DensityMatrix q_prime = as_single(partial_trace(cq, {0}));
  const DensityMatrix c_prime = as_single(partial_trace(cq, {1}));
  const double s_q = von_neumann_entropy(rho_q);
  const double s_q_prime = von_neumann_entropy(q_prime);
  const double mi = mutual_information(cq);

  const OptimizationResult best = max_open_loop_reduction(
      q_prime, c_prime, OptimizerOptions{.budget = options.budget, .seed = options.seed});

  ControlReport r = make_report(s_q, as_single(partial_trace(out, {0})), best.best_delta_s + mi,
                                "max_open+I(Q':C')");
  r.premise_holds = s_q_prime >= s_q - tol::kBound;
  r.auxiliaries = {{"S(Q')", s_q_prime},
                   {"S(C')", von_neumann_entropy(c_prime)},
                   {"I(Q':C')", mi},
                   {"max_open", best.best_delta_s},
                   {"max_open_certified", best.certified_upper_bound},
                   {"optimizer_gap", best.gap}};
  // Sound only under the no-decrease premise S(Q') >= S(Q).
  r.checks.push_back({"feedback_global", r.slack + best.gap, *r.premise_holds});
  return r;
}

}  // namespace qctl
