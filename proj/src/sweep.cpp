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

#include "qctl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "qctl/channels.hpp"
#include "qctl/control.hpp"
#include "qctl/entropy.hpp"
#include "qctl/errors.hpp"
#include "qctl/qstate.hpp"
#include "qctl/tolerances.hpp"

namespace qctl {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Rank uniformly in [1, d] so pure and rank-deficient states are covered.
DensityMatrix any_rank_state(std::size_t dim, Rng& rng) {
  const std::size_t rank = uniform_int(rng, 1, dim);
  return random_state(dim, rng, rank);
}

ProbabilityVector random_weights(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) sum += (v = expo(rng));
  for (double& v : w) v /= sum;
  return ProbabilityVector(std::move(w));
}

DensityMatrix with_signature(const DensityMatrix& rho, DimensionSignature sig) {
  return DensityMatrix::from_positive_operator(rho.matrix(), std::move(sig));
}

InstanceResult plain(double slack) {
  InstanceResult r;
  r.slack = slack;
  return r;
}

struct FeedbackInstance {
  DensityMatrix rho;
  Instrument instrument;
  FeedbackPolicy policy;
};

FeedbackInstance random_feedback_instance(std::size_t dim, Rng& rng) {
  DensityMatrix rho = any_rank_state(dim, rng);
  const std::size_t outcomes = uniform_int(rng, 1, 4);
  const bool projective = uniform_int(rng, 0, 1) == 1;
  Instrument ins = projective ? random_projective_instrument(dim, std::min(outcomes, dim), rng)
                              : random_instrument(dim, outcomes, rng);
  std::vector<UnitaryOperator> corrections;
  for (std::size_t i = 0; i < ins.size(); ++i) corrections.push_back(random_unitary(dim, rng));
  FeedbackPolicy policy = FeedbackPolicy::for_instrument(ins, corrections);
  return {std::move(rho), std::move(ins), std::move(policy)};
}

InstanceResult subadditivity(std::size_t dim, Rng& rng) {
  const DensityMatrix rho = with_signature(any_rank_state(2 * dim, rng), DimensionSignature{dim, 2});
  const double s_a = von_neumann_entropy(partial_trace(rho, {0}));
  const double s_b = von_neumann_entropy(partial_trace(rho, {1}));
  return plain(s_a + s_b - von_neumann_entropy(rho));
}

InstanceResult open_global(std::size_t dim, Rng& rng) {
  const DensityMatrix rho_q = any_rank_state(dim, rng);
  const DensityMatrix rho_c = any_rank_state(2, rng);
  const UnitaryOperator u(random_unitary(2 * dim, rng).matrix(), DimensionSignature{dim, 2});
  return plain(open_loop_global(rho_q, rho_c, u).worst_slack());
}

InstanceResult concavity(std::size_t dim, Rng& rng) {
  const std::size_t members = uniform_int(rng, 1, 8);
  const ProbabilityVector w = random_weights(members, rng);
  std::vector<DensityMatrix> states;
  double average = 0.0;
  for (std::size_t i = 0; i < members; ++i) {
    states.push_back(any_rank_state(dim, rng));
    average += w[i] * von_neumann_entropy(states.back());
  }
  return plain(von_neumann_entropy(mixture(w, states)) - average);
}

double locc_slack(std::size_t dim, std::size_t branches, Rng& rng) {
  const DensityMatrix rho = any_rank_state(dim, rng);
  ProbabilityVector w = random_weights(branches, rng);
  std::vector<UnitaryOperator> us;
  for (std::size_t i = 0; i < branches; ++i) us.push_back(random_unitary(dim, rng));
  return open_loop_locc(rho, OpenLoopLoccPlan(std::move(w), std::move(us))).worst_slack();
}

InstanceResult open_locc(std::size_t dim, Rng& rng) {
  const std::size_t branches = uniform_int(rng, 1, 4);
  return plain(locc_slack(dim, branches, rng));
}

InstanceResult exchange_inequality(std::size_t dim, Rng& rng) {
  const DensityMatrix rho = any_rank_state(dim, rng);
  const KrausChannel ch = random_channel(dim, uniform_int(rng, 1, 4), rng);
  return plain(entropy_exchange_inequality_slack(rho, ch));
}

InstanceResult exchange_vs_shannon(std::size_t dim, Rng& rng) {
  const FeedbackInstance inst = random_feedback_instance(dim, rng);
  const KrausChannel composite = feedback_channel(inst.instrument, inst.policy);
  std::vector<double> r;
  for (const auto& e : composite.operators())
    r.push_back((e * inst.rho.matrix() * e.adjoint()).trace().real());
  const double h_r = shannon_entropy(ProbabilityVector(std::move(r)));
  return plain(h_r - entropy_exchange(inst.rho, composite));
}

InstanceResult feedback(std::size_t dim, Rng& rng) {
  const FeedbackInstance inst = random_feedback_instance(dim, rng);
  const ControlReport rep = feedback_locc(inst.rho, inst.instrument, inst.policy);
  const double gap = rep.auxiliaries.at("H(r)") - rep.auxiliaries.at("I(Q':C')");
  return {rep.worst_slack(), gap, std::abs(gap) <= tol::kNearSaturation};
}

}  // namespace

const std::vector<Predicate>& all_predicates() {
  static const std::vector<Predicate> all{Predicate::kSubadditivity, Predicate::kEq7,
                                          Predicate::kConcavity,     Predicate::kEq12,
                                          Predicate::kEq17,          Predicate::kEq20,
                                          Predicate::kEq22};
  return all;
}

const char* predicate_name(Predicate p) noexcept {
  switch (p) {
    case Predicate::kSubadditivity: return "subadditivity";
    case Predicate::kEq7: return "eq7";
    case Predicate::kConcavity: return "concavity";
    case Predicate::kEq12: return "eq12";
    case Predicate::kEq17: return "eq17";
    case Predicate::kEq20: return "eq20";
    case Predicate::kEq22: return "eq22";
  }
  return "unknown";
}

std::optional<Predicate> parse_predicate(std::string_view name) {
  for (Predicate p : all_predicates())
    if (name == predicate_name(p)) return p;
  // Numeric aliases of the two named properties.
  if (name == "eq6") return Predicate::kSubadditivity;
  if (name == "eq11") return Predicate::kConcavity;
  return std::nullopt;
}

std::optional<ReportFormat> parse_format(std::string_view name) {
  if (name == "human") return ReportFormat::kHuman;
  if (name == "json-lines") return ReportFormat::kJsonLines;
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (cases < 1) throw PreconditionError("cases must be >= 1");
  if (!(tolerance > 0.0)) throw PreconditionError("tolerance must be > 0");
  if (dims.empty()) throw PreconditionError("dims must not be empty");
  for (std::size_t d : dims)
    if (d < 1 || d > kMaxSweepDimension) {
      std::ostringstream os;
      os << "dimension " << d << " outside the supported range [1, " << kMaxSweepDimension << "]";
      throw PreconditionError(os.str());
    }
  if (predicates.empty()) throw PreconditionError("no predicates selected");
}

std::uint64_t instance_seed(std::uint64_t seed, Predicate p, std::size_t dim, std::size_t case_index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(p));
  h = splitmix64(h ^ static_cast<std::uint64_t>(dim));
  return splitmix64(h ^ static_cast<std::uint64_t>(case_index));
}

InstanceResult evaluate_instance(Predicate p, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  switch (p) {
    case Predicate::kSubadditivity: return subadditivity(dim, rng);
    case Predicate::kEq7: return open_global(dim, rng);
    case Predicate::kConcavity: return concavity(dim, rng);
    case Predicate::kEq12: return open_locc(dim, rng);
    case Predicate::kEq17: return exchange_inequality(dim, rng);
    case Predicate::kEq20: return exchange_vs_shannon(dim, rng);
    case Predicate::kEq22: return feedback(dim, rng);
  }
  throw PreconditionError("unknown predicate");
}

double locc_instance_slack(std::size_t dim, std::size_t branches, std::uint64_t seed) {
  Rng rng(seed);
  return locc_slack(dim, branches, rng);
}

std::size_t RunReport::total_violations() const {
  std::size_t n = 0;
  for (const auto& s : summaries) n += s.violations;
  return n;
}

RunReport run_verify(const SweepConfig& config) {
  config.validate();
  RunReport report;
  report.seed = config.seed;
  report.cases = config.cases;
  report.dims = config.dims;
  report.tolerance = config.tolerance;

  for (Predicate p : config.predicates) {
    PredicateSummary s;
    s.predicate = p;
    s.min_slack = std::numeric_limits<double>::infinity();
    double slack_sum = 0.0;
    std::size_t equalities = 0;
    // Cases are evaluated in (dim, case index) order; the first minimum wins.
    for (std::size_t dim : config.dims)
      for (std::size_t c = 0; c < config.cases; ++c) {
        const std::uint64_t seed = instance_seed(config.seed, p, dim, c);
        const InstanceResult r = evaluate_instance(p, dim, seed);
        ++s.cases;
        slack_sum += r.slack;
        if (r.slack < -config.tolerance) ++s.violations;
        if (std::abs(r.slack) < tol::kNearSaturation) ++s.near_saturations;
        if (r.slack < s.min_slack) {
          s.min_slack = r.slack;
          s.tightest = {dim, c, seed};
        }
        if (r.mi_equals_shannon.value_or(false)) ++equalities;
      }
    s.mean_slack = slack_sum / static_cast<double>(s.cases);
    if (p == Predicate::kEq22)
      s.equality_fraction = static_cast<double>(equalities) / static_cast<double>(s.cases);
    report.summaries.push_back(s);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report writers

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double round_to_report_precision(double value) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_number(value));
}

void write_report(const RunReport& report, ReportFormat format, std::ostream& out) {
  using nlohmann::ordered_json;
  const auto num = round_to_report_precision;
  if (format == ReportFormat::kJsonLines) {
    ordered_json env{{"type", "environment"},
                     {"tool_version", report.tool_version},
                     {"seed", report.seed},
                     {"timestamp", report.timestamp},
                     {"cases", report.cases},
                     {"dims", report.dims},
                     {"tolerance", num(report.tolerance)}};
    out << env.dump() << '\n';
    for (const auto& s : report.summaries) {
      ordered_json line{{"type", "predicate"},
                        {"name", predicate_name(s.predicate)},
                        {"cases", s.cases},
                        {"violations", s.violations},
                        {"min_slack", num(s.min_slack)},
                        {"mean_slack", num(s.mean_slack)},
                        {"near_saturations", s.near_saturations},
                        {"tightest", {{"dim", s.tightest.dim},
                                      {"case", s.tightest.case_index},
                                      {"seed", s.tightest.seed}}}};
      if (s.equality_fraction) line["mi_equals_shannon_fraction"] = num(*s.equality_fraction);
      out << line.dump() << '\n';
    }
    ordered_json summary{{"type", "summary"},
                         {"violations", report.total_violations()},
                         {"status", report.total_violations() == 0 ? "pass" : "fail"}};
    out << summary.dump() << '\n';
    return;
  }

  out << "# qctl " << report.tool_version << " verify seed=" << report.seed
      << " cases=" << report.cases << " tolerance=" << format_number(report.tolerance)
      << " timestamp=" << report.timestamp << '\n';
  for (const auto& s : report.summaries) {
    out << predicate_name(s.predicate) << " cases=" << s.cases << " violations=" << s.violations
        << " min_slack=" << format_number(s.min_slack) << " mean_slack=" << format_number(s.mean_slack)
        << " near_saturations=" << s.near_saturations << " tightest=d" << s.tightest.dim << "/case"
        << s.tightest.case_index << "/seed" << s.tightest.seed;
    if (s.equality_fraction)
      out << " mi_equals_shannon_fraction=" << format_number(*s.equality_fraction);
    out << (s.violations == 0 ? " PASS" : " FAIL") << '\n';
  }
}

}  // namespace qctl
