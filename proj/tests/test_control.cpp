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

#include <cmath>

#include "doctest.h"
#include "qctl/channels.hpp"
#include "qctl/control.hpp"
#include "qctl/entropy.hpp"
#include "qctl/errors.hpp"
#include "qctl/qec.hpp"

using namespace qctl;

namespace {

const DimensionSignature kQubit = DimensionSignature::single(2);

DensityMatrix mixed_qubit() { return DensityMatrix(ComplexMatrix::Identity(2, 2) / 2.0, kQubit); }
DensityMatrix ket0() { return PureState::basis(kQubit, 0).to_density(); }

UnitaryOperator swap_gate() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return UnitaryOperator(s, {2, 2});
}

FeedbackPolicy flip_on_one(const Instrument& z) {
  return FeedbackPolicy::for_instrument(z, {UnitaryOperator::identity(kQubit), UnitaryOperator(pauli::x(), kQubit)});
}

const BoundCheck& check_named(const ControlReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  FAIL("no check named " << name);
  return r.checks.front();
}

}  // namespace

TEST_SUITE("control") {

TEST_CASE("open loop, identity unitary") {
  Rng rng(1);
  const ControlReport r = open_loop_global(random_state(2, rng), random_state(3, rng), UnitaryOperator::identity({2, 3}));
  CHECK(r.delta_s == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.bound == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("open loop, swap with a pure controller saturates") {
  const ControlReport r = open_loop_global(mixed_qubit(), ket0(), swap_gate());
  CHECK(r.delta_s == doctest::Approx(1.0));
  CHECK(r.bound == doctest::Approx(1.0));
  CHECK(std::abs(r.slack) <= 1e-9);
  CHECK(r.auxiliaries.at("I(Q_out:C_out)") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("report bookkeeping") {
  Rng rng(2);
  const ControlReport r = open_loop_global(random_state(2, rng), random_state(2, rng), random_unitary(4, rng));
  CHECK(std::abs(r.delta_s - (r.s_in - r.s_out)) <= 1e-12);
  CHECK(std::abs(r.slack - (r.bound - r.delta_s)) <= 1e-12);
  CHECK_THROWS_AS(open_loop_global(random_state(2, rng), random_state(2, rng), random_unitary(6, rng)), SignatureError);
}

TEST_CASE("property: open loop bound over random qubit pairs") {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const ControlReport r = open_loop_global(random_state(2, rng), random_state(2, rng), random_unitary(4, rng));
    CHECK(r.slack >= -1e-9);
  }
}

TEST_CASE("open loop LOCC examples") {
  const auto id = UnitaryOperator::identity(kQubit);
  const ControlReport trivial = open_loop_locc(mixed_qubit(), OpenLoopLoccPlan(ProbabilityVector({0.3, 0.7}), {id, id}));
  CHECK(trivial.delta_s == doctest::Approx(0.0).epsilon(1e-12));

  const ControlReport r = open_loop_locc(ket0(), OpenLoopLoccPlan(ProbabilityVector({0.5, 0.5}), {id, UnitaryOperator(pauli::x(), kQubit)}));
  CHECK(r.s_out == doctest::Approx(1.0));
  CHECK(r.delta_s == doctest::Approx(-1.0));
  CHECK(r.bound == 0.0);
  CHECK(max_abs_deviation(r.output_state.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("LOCC plan validation") {
  const auto id = UnitaryOperator::identity(kQubit);
  CHECK_THROWS(OpenLoopLoccPlan(ProbabilityVector({1.0}), {id, id}));
  CHECK_THROWS_AS(OpenLoopLoccPlan(ProbabilityVector({0.5, 0.5}), {id, UnitaryOperator::identity(DimensionSignature::single(3))}),
                  SignatureError);
}

TEST_CASE("property: open loop LOCC never lowers entropy") {
  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2u << (t % 3);
    const std::size_t k = 1 + static_cast<std::size_t>(t % 4);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = std::uniform_real_distribution<double>(0.01, 1.0)(rng));
    for (auto& x : w) x /= total;
    std::vector<UnitaryOperator> us;
    for (std::size_t i = 0; i < k; ++i) us.push_back(random_unitary(d, rng));
    CHECK(open_loop_locc(random_state(d, rng), OpenLoopLoccPlan(ProbabilityVector(w), us)).delta_s <= 1e-9);
  }
}

TEST_CASE("feedback LOCC saturates on the Z-measurement instance") {
  const Instrument z = Instrument::computational_basis(2);
  const ControlReport r = feedback_locc(mixed_qubit(), z, flip_on_one(z));
  CHECK(max_abs_deviation(r.output_state.matrix(), ket0().matrix()) < 1e-15);
  CHECK(std::abs(r.delta_s - 1.0) <= 1e-9);
  CHECK(std::abs(r.auxiliaries.at("H(r)") - 1.0) <= 1e-9);
  CHECK(std::abs(r.auxiliaries.at("I(Q':C')") - 1.0) <= 1e-9);
  CHECK(std::abs(r.slack) <= 1e-9);
  CHECK(r.premise_holds == true);
}

TEST_CASE("feedback LOCC with trivial corrections on an eigenstate") {
  const Instrument z = Instrument::computational_basis(2);
  const auto id = UnitaryOperator::identity(kQubit);
  const ControlReport r = feedback_locc(ket0(), z, FeedbackPolicy::for_instrument(z, {id, id}));
  CHECK(r.delta_s == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.auxiliaries.at("H(r)") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("missing correction label") {
  const Instrument z = Instrument::computational_basis(2);
  const FeedbackPolicy partial({{"0", UnitaryOperator::identity(kQubit)}});
  CHECK_THROWS_AS(feedback_locc(mixed_qubit(), z, partial), PreconditionError);
}

TEST_CASE("property: feedback LOCC bounds over random instruments") {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2u << (t % 3);
    const std::size_t k = 1 + static_cast<std::size_t>(t % 4);
    const Instrument ins = random_instrument(d, k, rng);
    std::vector<UnitaryOperator> us;
    for (std::size_t i = 0; i < k; ++i) us.push_back(random_unitary(d, rng));
    const ControlReport r = feedback_locc(random_state(d, rng), ins, FeedbackPolicy::for_instrument(ins, us));
    const double h = r.auxiliaries.at("H(r)");
    CHECK(r.delta_s <= std::min(h, r.auxiliaries.at("S_e")) + 1e-9);
    CHECK(r.auxiliaries.at("I(Q':C')") <= h + 1e-9);
  }
}

TEST_CASE("feedback global with the identity does not lower entropy") {
  const Instrument z = Instrument::computational_basis(2);
  Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    const DensityMatrix rho = random_state(2, rng);
    const ControlReport r = feedback_global(rho, z, UnitaryOperator::identity({2, 2}), {.budget = 200, .seed = 1});
    REQUIRE(r.premise_holds.has_value());
    CHECK(*r.premise_holds);
    CHECK(r.delta_s <= 1e-9);
  }
}

TEST_CASE("feedback global with the controlled correction reproduces feedback LOCC") {
  const Instrument z = Instrument::computational_basis(2);
  const FeedbackPolicy policy = flip_on_one(z);
  const UnitaryOperator u = controlled_correction_unitary(z, policy);
  CHECK(u.signature() == DimensionSignature{2, 2});
  const ControlReport g = feedback_global(mixed_qubit(), z, u, {.budget = 2000, .seed = 3});
  const ControlReport l = feedback_locc(mixed_qubit(), z, policy);
  CHECK(max_abs_deviation(g.output_state.matrix(), l.output_state.matrix()) <= 1e-10);
  CHECK(g.delta_s == doctest::Approx(1.0));
  CHECK(check_named(g, "feedback_global").slack >= -1e-9);
}

TEST_CASE("property: feedback global bound over random joint unitaries") {
  Rng rng(7);
  const Instrument z = Instrument::computational_basis(2);
  const DensityMatrix rho = random_state(2, rng);
  for (int t = 0; t < 20; ++t) {
    const ControlReport r = feedback_global(rho, z, random_unitary(4, rng), {.budget = 1000, .seed = 5});
    const BoundCheck& c = check_named(r, "feedback_global");
    if (c.applicable) CHECK(c.slack >= -1e-9);
    CHECK(r.auxiliaries.at("max_open") <= r.auxiliaries.at("max_open_certified") + 1e-9);
    CHECK(r.auxiliaries.at("optimizer_gap") >= 0.0);
  }
}

TEST_CASE("cq-state examples") {
  Rng rng(8);
  const DensityMatrix rho = random_state(3, rng);
  const OutcomeEnsemble one = apply_instrument(Instrument({ComplexMatrix::Identity(3, 3)}), rho);
  const DensityMatrix cq1 = build_cq_state(one);
  CHECK(cq1.signature() == DimensionSignature{3, 1});
  CHECK(max_abs_deviation(cq1.matrix(), rho.matrix()) < 1e-15);

  const OutcomeEnsemble two = apply_instrument(Instrument::computational_basis(2), mixed_qubit());
  CHECK(mutual_information(build_cq_state(two)) == doctest::Approx(1.0));
}

TEST_CASE("cq-state of the code syndrome ensemble carries H(p)") {
  const CodeSpec code = bit_flip_code();
  const std::vector<double> p{0.85, 0.05, 0.05, 0.05};
  const ErrorModel noise = single_bit_flip_errors(ProbabilityVector(p));
  const PureState psi = code.encode(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    const ComplexMatrix& e = noise.errors()[i].matrix();
    rho += p[i] * e * psi.amplitudes() * psi.amplitudes().adjoint() * e.adjoint();
  }
  const DensityMatrix cq = build_cq_state(apply_instrument(code.syndrome(), DensityMatrix(rho, {2, 2, 2})));
  CHECK(std::abs(mutual_information(cq) - 0.8475846798245739) <= 1e-9);
}

}  // TEST_SUITE
