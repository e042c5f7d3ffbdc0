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
#include "oracles.hpp"
#include "qctl/channels.hpp"
#include "qctl/errors.hpp"
#include "qctl/qec.hpp"

using namespace qctl;

namespace {

const DimensionSignature kQubit = DimensionSignature::single(2);

DensityMatrix ket_density(std::size_t i) { return PureState::basis(kQubit, i).to_density(); }

UnitaryOperator swap_gate() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return UnitaryOperator(s, {2, 2});
}

UnitaryOperator cnot() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(1, 1) = s(2, 3) = s(3, 2) = 1.0;
  return UnitaryOperator(s, {2, 2});
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("identity channel leaves the state alone") {
  Rng rng(1);
  const DensityMatrix rho = random_state(5, rng);
  CHECK(max_abs_deviation(apply_channel(KrausChannel::identity(5), rho).matrix(), rho.matrix()) < 1e-15);
}

TEST_CASE("bit flip 0.25 on |0><0| against the two-term sum") {
  const DensityMatrix out = apply_channel(standard_channel(NoiseKind::kBitFlip, 0.25), ket_density(0));
  const oracle::Mat r = oracle::from_eigen(ket_density(0).matrix());
  const oracle::Mat x = oracle::from_eigen(pauli::x());
  oracle::Mat expect = oracle::mul(oracle::mul(x, r), x);
  for (auto& v : expect.a) v *= 0.25;
  for (std::size_t i = 0; i < 4; ++i) expect.a[i] += 0.75 * r.a[i];
  CHECK(oracle::max_diff(expect, out.matrix()) < 1e-15);
  CHECK(out(0, 0).real() == doctest::Approx(0.75));
  CHECK(out(1, 1).real() == doctest::Approx(0.25));
}

TEST_CASE("full depolarizing sends every qubit state to I/2") {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix out = apply_channel(standard_channel(NoiseKind::kDepolarizing, 1.0), random_state(2, rng));
    CHECK(max_abs_deviation(out.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  }
}

TEST_CASE("standard channel edge cases") {
  const KrausChannel none = standard_channel(NoiseKind::kBitFlip, 0.0);
  CHECK(none.size() == 1);
  CHECK(max_abs_deviation(none.operators()[0], pauli::i()) == 0.0);
  const KrausChannel z = standard_channel(NoiseKind::kPhaseFlip, 1.0);
  CHECK(z.size() == 1);
  CHECK(max_abs_deviation(z.operators()[0], pauli::z()) == 0.0);
  CHECK(completeness_residual(standard_channel(NoiseKind::kDepolarizing, 0.5).operators()) <= 1e-12);
  CHECK_THROWS_AS(standard_channel(NoiseKind::kBitFlip, 1.5), PreconditionError);
  CHECK_THROWS_AS(standard_channel(NoiseKind::kDepolarizing, -0.1), PreconditionError);
}

TEST_CASE("channel construction errors") {
  CHECK_THROWS_AS(KrausChannel(std::vector<ComplexMatrix>{}), PreconditionError);
  CHECK_THROWS_AS(KrausChannel({pauli::i(), ComplexMatrix::Identity(3, 3)}), SignatureError);
  CHECK_THROWS_AS(apply_channel(KrausChannel::identity(3), ket_density(0)), SignatureError);
}

TEST_CASE("environment: identity unitary leaves the system alone") {
  Rng rng(3);
  const DensityMatrix rho0 = random_state(2, rng);
  const EnvironmentModel env(ket_density(0), UnitaryOperator::identity({2, 2}), 2);
  CHECK(max_abs_deviation(channel_from_environment(env, rho0).marginal.matrix(), rho0.matrix()) < 1e-14);
}

TEST_CASE("environment: swap hands over the environment state") {
  Rng rng(4);
  const EnvironmentModel env(ket_density(0), swap_gate(), 2);
  for (int t = 0; t < 5; ++t)
    CHECK(max_abs_deviation(channel_from_environment(env, random_state(2, rng)).marginal.matrix(),
                            ket_density(0).matrix()) < 1e-14);
}

TEST_CASE("environment: CNOT decoheres |+>") {
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DensityMatrix rho0 = PureState(plus, kQubit).to_density();
  const EnvironmentModel env(ket_density(0), cnot(), 2);
  const EnvironmentEvolution ev = channel_from_environment(env, rho0);

  const oracle::Mat j = oracle::kron(oracle::from_eigen(rho0.matrix()), oracle::from_eigen(ket_density(0).matrix()));
  const oracle::Mat u = oracle::from_eigen(cnot().matrix());
  const oracle::Mat out = oracle::mul(oracle::mul(u, j), oracle::dagger(u));
  CHECK(oracle::max_diff(oracle::trace_second(out, 2, 2), ev.marginal.matrix()) < 1e-15);
  CHECK(max_abs_deviation(ev.marginal.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("property: extracted Kraus operators reproduce the environment marginal") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dq = 2 + static_cast<std::size_t>(t % 3), de = 2 + static_cast<std::size_t>(t % 2);
    const EnvironmentModel env(random_pure_state(de, rng).to_density(),
                               UnitaryOperator(random_unitary(dq * de, rng).matrix(), {dq, de}), dq);
    const DensityMatrix rho0 = random_state(dq, rng);
    const KrausChannel k = extract_kraus(env);
    CHECK(max_abs_deviation(apply_channel(k, rho0).matrix(), channel_from_environment(env, rho0).marginal.matrix()) <= 1e-9);
  }
}

TEST_CASE("Kraus extraction needs a pure environment") {
  const EnvironmentModel env(DensityMatrix(ComplexMatrix::Identity(2, 2) / 2.0, kQubit), swap_gate(), 2);
  try {
    extract_kraus(env);
    FAIL("expected a purity error");
  } catch (const ValidationError& e) {
    CHECK(e.invariant() == Invariant::kPurity);
  }
}

TEST_CASE("computational measurement of I/2") {
  const OutcomeEnsemble ens = apply_instrument(Instrument::computational_basis(2),
                                               DensityMatrix(ComplexMatrix::Identity(2, 2) / 2.0, kQubit));
  REQUIRE(ens.entries.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(ens.entries[i].probability == doctest::Approx(0.5));
    CHECK(max_abs_deviation(ens.entries[i].state.matrix(), ket_density(i).matrix()) < 1e-15);
  }
}

TEST_CASE("measuring an eigenstate leaves one outcome") {
  const OutcomeEnsemble ens = apply_instrument(Instrument::computational_basis(3),
                                               PureState::basis(DimensionSignature::single(3), 2).to_density());
  REQUIRE(ens.entries.size() == 1);
  CHECK(ens.outcome_count == 3);
  CHECK(ens.entries[0].label == "2");
  CHECK(ens.entries[0].probability == doctest::Approx(1.0));
}

TEST_CASE("syndrome measurement after bit-flip noise") {
  const CodeSpec code = bit_flip_code();
  const std::vector<double> p{0.85, 0.05, 0.05, 0.05};
  const ErrorModel noise = single_bit_flip_errors(ProbabilityVector(p));
  const PureState psi = code.encode(0.6, Complex(0.0, 0.8));
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    const ComplexMatrix& e = noise.errors()[i].matrix();
    rho += p[i] * e * psi.amplitudes() * psi.amplitudes().adjoint() * e.adjoint();
  }
  const OutcomeEnsemble ens = apply_instrument(code.syndrome(), DensityMatrix(rho, {2, 2, 2}));
  REQUIRE(ens.entries.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(ens.entries[i].probability - p[i]) < 1e-12);
    const ComplexVector ket = noise.errors()[i].matrix() * psi.amplitudes();
    CHECK(max_abs_deviation(ens.entries[i].state.matrix(), ket * ket.adjoint()) < 1e-12);
  }
}

TEST_CASE("instrument validation") {
  CHECK_THROWS_AS(Instrument({basis_projector(2, 0)}), ValidationError);
  CHECK_THROWS_AS(Instrument({basis_projector(2, 0), basis_projector(2, 1)}, {"a", "a"}), PreconditionError);
  CHECK_THROWS_AS(apply_instrument(Instrument::computational_basis(3), ket_density(0)), SignatureError);
}

TEST_CASE("property: channels preserve trace and positivity") {
  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 16);
    const KrausChannel ch = random_channel(d, 1 + static_cast<std::size_t>(t % 4), rng);
    CHECK(completeness_residual(ch.operators()) <= 1e-9);
    const DensityMatrix out = apply_channel(ch, random_state(d, rng));
    CHECK(std::abs(out.matrix().trace() - 1.0) <= 1e-9);
    CHECK(hermitian_eigenvalues(out.matrix()).minCoeff() >= -1e-9);
  }
}

TEST_CASE("property: ensemble average equals the non-selective channel") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2u << (t % 3);
    const Instrument ins = random_instrument(d, 1 + static_cast<std::size_t>(t % 4), rng);
    const DensityMatrix rho = random_state(d, rng);
    CHECK(max_abs_deviation(apply_instrument(ins, rho).average().matrix(),
                            apply_channel(ins.as_channel(), rho).matrix()) <= 1e-10);
  }
}

TEST_CASE("random generators") {
  Rng rng(8);
  for (std::size_t d : {1u, 2u, 7u, 16u}) {
    CHECK_NOTHROW(validate_density(random_state(d, rng).matrix(), DimensionSignature::single(d)));
    CHECK_NOTHROW(validate_unitary(random_unitary(d, rng).matrix(), DimensionSignature::single(d)));
  }
  const DensityMatrix low = random_state(6, rng, 2);
  CHECK(low.spectrum()(2) < 1e-12);
  CHECK(low.spectrum()(1) > 1e-6);
}

TEST_CASE("fixed seeds reproduce identical matrices") {
  CHECK(random_state(8, 99).matrix() == random_state(8, 99).matrix());
  CHECK(random_unitary(8, 99).matrix() == random_unitary(8, 99).matrix());
  const KrausChannel a = random_channel(4, 3, 99), b = random_channel(4, 3, 99);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.operators()[i] == b.operators()[i]);
  const Instrument x = random_instrument(4, 3, 99), y = random_instrument(4, 3, 99);
  for (std::size_t i = 0; i < 3; ++i) CHECK(x.operators()[i] == y.operators()[i]);
  CHECK(random_state(8, 99).matrix() != random_state(8, 100).matrix());
}

}  // TEST_SUITE
