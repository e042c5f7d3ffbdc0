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

#include "qctl/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "qctl/channels.hpp"
#include "qctl/control.hpp"
#include "qctl/entropy.hpp"
#include "qctl/errors.hpp"
#include "qctl/optimize.hpp"
#include "qctl/qec.hpp"
#include "qctl/qstate.hpp"
#include "qctl/sweep.hpp"
#include "qctl/tolerances.hpp"

namespace qctl::cli {

namespace {

using nlohmann::ordered_json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Ordered (key, value) lines emitted either as `key=value` or one JSON object.
class Record {
 public:
  explicit Record(std::string type) : json_{{"type", std::move(type)}} {}

  Record& add(const std::string& key, double v) {
    json_[key] = round_to_report_precision(v);
    return *this;
  }
  Record& add(const std::string& key, const std::string& v) {
    json_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, const char* v) { return add(key, std::string(v)); }
  Record& add(const std::string& key, std::size_t v) {
    json_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, bool v) {
    json_[key] = v;
    return *this;
  }

  void write(ReportFormat format, std::ostream& out) const {
    if (format == ReportFormat::kJsonLines) {
      out << json_.dump() << '\n';
      return;
    }
    bool first = true;
    for (const auto& [key, value] : json_.items()) {
      if (!first) out << ' ';
      first = false;
      if (key == "type") {
        out << '[' << value.get<std::string>() << ']';
        continue;
      }
      out << key << '=';
      if (value.is_number_float())
        out << format_number(value.get<double>());
      else if (value.is_string())
        out << value.get<std::string>();
      else
        out << value.dump();
    }
    out << '\n';
  }

 private:
  ordered_json json_;
};

Record environment(const std::string& command, std::uint64_t seed, const std::string& timestamp) {
  Record r("environment");
  r.add("command", command).add("tool_version", kToolVersion);
  r.add("seed", static_cast<std::size_t>(seed)).add("timestamp", timestamp);
  return r;
}

Record control_record(const std::string& name, const ControlReport& rep) {
  Record r(name);
  r.add("s_in", rep.s_in).add("s_out", rep.s_out).add("delta_s", rep.delta_s);
  r.add("bound_name", rep.bound_name).add("bound", rep.bound).add("slack", rep.slack);
  for (const auto& [key, value] : rep.auxiliaries) r.add(key, value);
  if (rep.premise_holds) r.add("premise_holds", *rep.premise_holds);
  r.add("satisfied", rep.satisfied(tol::kBound));
  return r;
}

struct CommonOptions {
  std::string format = "human";
  ReportFormat parsed = ReportFormat::kHuman;
};

void add_format(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--format", common.format, "Report format: human | json-lines")
      ->check(CLI::IsMember({"human", "json-lines"}));
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t cases = 1000;
  std::vector<std::size_t> dims{2, 4, 8};
  double tolerance = 1e-9;
  std::vector<std::string> predicates;
};

int cmd_verify(const VerifyOptions& opt, ReportFormat format, const std::string& timestamp,
               std::ostream& out) {
  SweepConfig config;
  config.seed = opt.seed;
  config.cases = opt.cases;
  config.dims = opt.dims;
  config.tolerance = opt.tolerance;
  if (!opt.predicates.empty()) {
    config.predicates.clear();
    for (const auto& name : opt.predicates) {
      const auto p = parse_predicate(name);
      if (!p) throw PreconditionError("unknown predicate '" + name + "'");
      config.predicates.push_back(*p);
    }
  }
  RunReport report = run_verify(config);
  report.timestamp = timestamp;
  write_report(report, format, out);
  return report.total_violations() == 0 ? kPass : kViolation;
}

// ---------------------------------------------------------------------------
// qec

struct QecOptions {
  std::vector<double> p{0.85, 0.05, 0.05, 0.05};
  std::string psi = "plus";
  std::vector<double> amplitudes;
};

PureState preset_logical_state(const CodeSpec& code, const QecOptions& opt) {
  if (!opt.amplitudes.empty()) {
    if (opt.amplitudes.size() != 4)
      throw PreconditionError("--amplitudes takes four numbers: re0,im0,re1,im1");
    return code.encode(Complex(opt.amplitudes[0], opt.amplitudes[1]),
                       Complex(opt.amplitudes[2], opt.amplitudes[3]));
  }
  const double h = 1.0 / std::sqrt(2.0);
  if (opt.psi == "zero") return code.encode(1.0, 0.0);
  if (opt.psi == "one") return code.encode(0.0, 1.0);
  if (opt.psi == "plus") return code.encode(h, h);
  if (opt.psi == "minus") return code.encode(h, -h);
  if (opt.psi == "plus_i") return code.encode(h, Complex(0.0, h));
  throw PreconditionError("unknown --psi preset '" + opt.psi + "'");
}

int cmd_qec(const QecOptions& opt, ReportFormat format, const std::string& timestamp, std::ostream& out) {
  if (opt.p.size() != 4) throw PreconditionError("--p takes exactly four probabilities");
  const ProbabilityVector probs(opt.p);
  const CodeSpec code = bit_flip_code();
  const PureState psi = preset_logical_state(code, opt);
  const QecReport rep = run_qec(code, single_bit_flip_errors(probs), psi);

  environment("qec", 0, timestamp).write(format, out);
  Record r("qec");
  r.add("delta_s", rep.delta_s).add("h_p", rep.h_p).add("mi_qc", rep.mi_qc).add("fidelity", rep.fidelity);
  r.add("s_q", rep.s_q).add("s_q_out", rep.s_q_out);
  for (const auto& [key, value] : rep.residuals) r.add("residual:" + key, value);
  const bool pass = rep.max_residual() < tol::kBound;
  r.add("status", pass ? "pass" : "fail");
  r.write(format, out);
  return pass ? kPass : kViolation;
}

// ---------------------------------------------------------------------------
// optimize

struct OptimizeOptions {
  std::size_t dq = 2;
  std::size_t dc = 2;
  std::string q_state = "mixed";
  std::string c_state = "pure";
  std::uint64_t seed = 42;
  std::size_t budget = 5000;
};

DensityMatrix preset_state(const std::string& preset, std::size_t dim, std::uint64_t seed) {
  const auto sig = DimensionSignature::single(dim);
  if (preset == "pure") return PureState::basis(sig, 0).to_density();
  if (preset == "mixed") {
    const auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(dim), sig);
  }
  if (preset == "random") return random_state(dim, seed);
  throw PreconditionError("unknown state preset '" + preset + "'");
}

int cmd_optimize(const OptimizeOptions& opt, ReportFormat format, const std::string& timestamp,
                 std::ostream& out) {
  if (opt.dq < 1 || opt.dc < 1 || opt.dq * opt.dc > tol::kMaxJointDimension) {
    std::ostringstream os;
    os << "dq * dc must be between 1 and " << tol::kMaxJointDimension;
    throw PreconditionError(os.str());
  }
  if (opt.budget < 1) throw PreconditionError("--budget must be >= 1");
  const DensityMatrix rho_q = preset_state(opt.q_state, opt.dq, opt.seed);
  const DensityMatrix rho_c = preset_state(opt.c_state, opt.dc, opt.seed + 1);
  const OptimizationResult res = max_open_loop_reduction(rho_q, rho_c, opt.budget, opt.seed);

  environment("optimize", opt.seed, timestamp).write(format, out);
  Record r("optimize");
  r.add("dq", opt.dq).add("dc", opt.dc).add("q_state", opt.q_state).add("c_state", opt.c_state);
  r.add("best_delta_s", res.best_delta_s).add("certified_upper_bound", res.certified_upper_bound);
  r.add("gap", res.gap).add("evaluations", res.evaluations);
  const bool sound = res.best_delta_s <= res.certified_upper_bound + tol::kBound;
  r.add("status", sound ? "pass" : "fail");
  r.write(format, out);
  return sound ? kPass : kViolation;
}

// ---------------------------------------------------------------------------
// demo

int cmd_demo(std::uint64_t seed, ReportFormat format, const std::string& timestamp, std::ostream& out) {
  environment("demo", seed, timestamp).write(format, out);
  const auto q1 = DimensionSignature::single(2);
  const DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0, q1);
  const DensityMatrix zero = PureState::basis(q1, 0).to_density();
  const UnitaryOperator x(pauli::x(), q1);
  const UnitaryOperator id = UnitaryOperator::identity(q1);

  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;

  bool ok = true;
  auto emit = [&](const std::string& name, const ControlReport& rep) {
    ok = ok && rep.satisfied(tol::kBound);
    control_record(name, rep).write(format, out);
  };

  emit("open_loop_global", open_loop_global(mixed, zero, UnitaryOperator(swap, DimensionSignature{2, 2})));
  emit("open_loop_locc",
       open_loop_locc(zero, OpenLoopLoccPlan(ProbabilityVector({0.5, 0.5}), {id, x})));
  const Instrument z_measure = Instrument::computational_basis(2);
  const FeedbackPolicy flip_back = FeedbackPolicy::for_instrument(z_measure, {id, x});
  emit("feedback_global",
       feedback_global(mixed, z_measure, controlled_correction_unitary(z_measure, flip_back),
                       FeedbackGlobalOptions{.budget = 5000, .seed = seed}));
  emit("feedback_locc", feedback_locc(mixed, z_measure, flip_back));

  const CodeSpec code = bit_flip_code();
  const QecReport qec = run_qec(code, single_bit_flip_errors(ProbabilityVector::uniform(4)),
                                code.encode(1.0, 0.0));
  Record r("qec");
  r.add("delta_s", qec.delta_s).add("h_p", qec.h_p).add("mi_qc", qec.mi_qc).add("fidelity", qec.fidelity);
  r.write(format, out);
  ok = ok && qec.max_residual() < tol::kBound;
  return ok ? kPass : kViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::string& timestamp) {
  CLI::App app{"Entropy-reduction limits of quantum control: sweeps, error correction, optimizer"};
  app.name("qctl");
  app.require_subcommand(1);

  CommonOptions common;

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Randomized sweeps over the entropy inequalities");
  verify_cmd->add_option("--seed", verify.seed, "Master seed");
  verify_cmd->add_option("--cases", verify.cases, "Cases per predicate and dimension");
  verify_cmd->add_option("--dims", verify.dims, "Comma-separated system dimensions")->delimiter(',');
  verify_cmd->add_option("--tolerance", verify.tolerance, "Violation threshold on the slack");
  verify_cmd->add_option("--predicates", verify.predicates,
                         "Comma-separated subset of eq7,eq12,eq17,eq20,eq22,concavity,subadditivity")
      ->delimiter(',');
  add_format(verify_cmd, common);

  QecOptions qec;
  CLI::App* qec_cmd = app.add_subcommand("qec", "Bit-flip code run with entropy accounting");
  qec_cmd->add_option("--p", qec.p, "Four error probabilities for I,X1,X2,X3")->delimiter(',');
  qec_cmd->add_option("--psi", qec.psi, "Logical input preset: zero|one|plus|minus|plus_i");
  qec_cmd->add_option("--amplitudes", qec.amplitudes, "Logical amplitudes re0,im0,re1,im1")
      ->delimiter(',');
  add_format(qec_cmd, common);

  OptimizeOptions optimize;
  CLI::App* opt_cmd = app.add_subcommand("optimize", "Search for the best open-loop unitary");
  opt_cmd->add_option("--dq", optimize.dq, "System dimension");
  opt_cmd->add_option("--dc", optimize.dc, "Controller dimension");
  opt_cmd->add_option("--q-state", optimize.q_state, "System state: mixed|pure|random");
  opt_cmd->add_option("--c-state", optimize.c_state, "Controller state: pure|mixed|random");
  opt_cmd->add_option("--seed", optimize.seed, "Seed for random states and the search");
  opt_cmd->add_option("--budget", optimize.budget, "Objective evaluations");
  add_format(opt_cmd, common);

  std::uint64_t demo_seed = 42;
  CLI::App* demo_cmd = app.add_subcommand("demo", "Walk through the four control topologies on qubits");
  demo_cmd->add_option("--seed", demo_seed, "Seed for the optimizer used by the global feedback bound");
  add_format(demo_cmd, common);

  std::vector<const char*> argv{"qctl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  common.parsed = *parse_format(common.format);
  const std::string stamp = timestamp.empty() ? utc_now() : timestamp;
  try {
    if (*verify_cmd) return cmd_verify(verify, common.parsed, stamp, out);
    if (*qec_cmd) return cmd_qec(qec, common.parsed, stamp, out);
    if (*opt_cmd) return cmd_optimize(optimize, common.parsed, stamp, out);
    if (*demo_cmd) return cmd_demo(demo_seed, common.parsed, stamp, out);
  } catch (const PreconditionError& e) {
    err << "qctl: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "qctl: " << e.what() << '\n';
    return kUsage;
  } catch (const SignatureError& e) {
    err << "qctl: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace qctl::cli
