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

// Seeded randomized sweeps over the entropy inequalities. Every instance is
// generated from instance_seed(seed, predicate, dim, case), so any reported
// instance can be regenerated in isolation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qctl {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Predicate {
  kSubadditivity,  // S(AB) <= S(A) + S(B)
  kEq7,            // open-loop global: dS <= S(C_out) - S(C)
  kConcavity,      // S(sum p rho) >= sum p S(rho)
  kEq12,           // open-loop LOCC: dS <= 0
  kEq17,           // S(E(rho)) - S(rho) + S_e >= 0
  kEq20,           // S_e(rho, C) <= H(r)
  kEq22,           // feedback LOCC: dS <= H(r), dS <= S_e, I(Q':C') <= H(r)
};

const std::vector<Predicate>& all_predicates();
const char* predicate_name(Predicate p) noexcept;
std::optional<Predicate> parse_predicate(std::string_view name);

struct SweepConfig {
  std::uint64_t seed = 42;
  std::size_t cases = 1000;
  std::vector<std::size_t> dims{2, 4, 8};
  double tolerance = 1e-9;
  std::vector<Predicate> predicates = all_predicates();

  /// Throws PreconditionError describing the first invalid field.
  void validate() const;
};

/// Largest d_Q accepted by the sweeps (composites reach 4 d_Q).
inline constexpr std::size_t kMaxSweepDimension = 16;

struct InstanceResult {
  double slack = 0.0;  // minimum over the predicate's applicable checks
  /// eq22 only: H(r) - I(Q':C'), and whether it is within tol::kNearSaturation.
  std::optional<double> shannon_minus_mi;
  std::optional<bool> mi_equals_shannon;
};

std::uint64_t instance_seed(std::uint64_t seed, Predicate p, std::size_t dim, std::size_t case_index);

InstanceResult evaluate_instance(Predicate p, std::size_t dim, std::uint64_t instance_seed);

/// Open-loop LOCC instance with a fixed number of branches.
double locc_instance_slack(std::size_t dim, std::size_t branches, std::uint64_t instance_seed);

struct TightestInstance {
  std::size_t dim = 0;
  std::size_t case_index = 0;
  std::uint64_t seed = 0;
};

struct PredicateSummary {
  Predicate predicate = Predicate::kSubadditivity;
  std::size_t cases = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
  double mean_slack = 0.0;
  std::size_t near_saturations = 0;
  TightestInstance tightest;
  std::optional<double> equality_fraction;  // eq22 only
};

struct RunReport {
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::size_t cases = 0;
  std::vector<std::size_t> dims;
  double tolerance = 0.0;
  std::vector<PredicateSummary> summaries;

  std::size_t total_violations() const;
};

RunReport run_verify(const SweepConfig& config);

enum class ReportFormat { kHuman, kJsonLines };

std::optional<ReportFormat> parse_format(std::string_view name);

/// Numbers are printed with 12 significant digits.
void write_report(const RunReport& report, ReportFormat format, std::ostream& out);

/// 12-significant-digit rendering shared by every report writer.
std::string format_number(double value);
double round_to_report_precision(double value);

}  // namespace qctl
