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
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qctl/channels.hpp"
#include "qctl/control.hpp"
#include "qctl/entropy.hpp"
#include "qctl/errors.hpp"

using namespace qctl;

namespace {

// -sum p log2 p for (0.85, 0.05, 0.05, 0.05), evaluated offline.
constexpr double kSkewedEntropy = 0.8475846798245739;

DensityMatrix diag_state(const std::vector<double>& p) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return DensityMatrix(m, DimensionSignature::single(p.size()));
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("probability vectors") {
  CHECK_NOTHROW(ProbabilityVector({0.5, 0.5}));
  CHECK(ProbabilityVector({1.0 + 5e-13, -5e-13})[1] == 0.0);
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(ProbabilityVector({1.1, -0.1}), ValidationError);
  CHECK_THROWS_AS(ProbabilityVector(std::vector<double>{}), ValidationError);
}

TEST_CASE("entropy values clamp float noise only") {
  CHECK(EntropyValue::from_bits(-5e-10).bits == 0.0);
  CHECK_THROWS_AS(EntropyValue::from_bits(-1e-6), ValidationError);
}

TEST_CASE("pure states have zero entropy") {
  Rng rng(1);
  for (std::size_t d : {2u, 5u, 16u}) CHECK(von_neumann_entropy(random_pure_state(d, rng).to_density()) == doctest::Approx(0.0));
}

TEST_CASE("maximally mixed states have log2 d bits") {
  for (std::size_t d : {2u, 3u, 8u, 64u})
    CHECK(von_neumann_entropy(diag_state(std::vector<double>(d, 1.0 / static_cast<double>(d)))) ==
          doctest::Approx(std::log2(static_cast<double>(d))));
}

TEST_CASE("diag(0.85, 0.05, 0.05, 0.05)") {
  CHECK(std::abs(von_neumann_entropy(diag_state({0.85, 0.05, 0.05, 0.05})) - kSkewedEntropy) < 1e-12);
}

TEST_CASE("entropy of an off-diagonal qubit state matches the closed form") {
  ComplexMatrix m(2, 2);
  m << 0.6, Complex(0.2, -0.1), Complex(0.2, 0.1), 0.4;
  const double s = von_neumann_entropy(DensityMatrix(m, DimensionSignature::single(2)));
  CHECK(std::abs(s - oracle::qubit_entropy(oracle::from_eigen(m))) < 1e-12);
  CHECK(std::abs(s - 0.8191860936289241) < 1e-12);
}

TEST_CASE("shannon entropy examples") {
  CHECK(shannon_entropy(ProbabilityVector({1.0, 0.0})) == 0.0);
  CHECK(shannon_entropy(ProbabilityVector({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(std::abs(shannon_entropy(ProbabilityVector({0.85, 0.05, 0.05, 0.05})) - kSkewedEntropy) < 1e-12);
}

TEST_CASE("mutual information examples") {
  Rng rng(4);
  CHECK(mutual_information(tensor_product(random_state(2, rng), random_state(3, rng))) == doctest::Approx(0.0).epsilon(1e-10));

  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  CHECK(mutual_information(PureState(v, {2, 2}).to_density()) == doctest::Approx(2.0));

  ComplexMatrix cc = (basis_projector(4, 0) + basis_projector(4, 3)) / 2.0;
  CHECK(mutual_information(DensityMatrix(cc, {2, 2})) == doctest::Approx(1.0));
}

TEST_CASE("mutual information rejects cuts that do not partition") {
  Rng rng(4);
  const DensityMatrix rho(random_state(8, rng).matrix(), {2, 2, 2});
  CHECK_THROWS_AS(mutual_information(rho, Bipartition{{0}, {1}}), SignatureError);
  CHECK_THROWS_AS(mutual_information(rho, Bipartition{{0, 1}, {1, 2}}), SignatureError);
  CHECK_THROWS_AS(mutual_information(rho, Bipartition{{}, {0, 1, 2}}), SignatureError);
  CHECK_NOTHROW(mutual_information(rho, Bipartition{{0, 2}, {1}}));
}

TEST_CASE("unitary channels have zero entropy exchange") {
  Rng rng(9);
  const DensityMatrix rho = random_state(4, rng);
  CHECK(entropy_exchange(rho, KrausChannel::unitary(random_unitary(4, rng))) == doctest::Approx(0.0));
  CHECK(entropy_exchange_inequality_slack(rho, KrausChannel::unitary(random_unitary(4, rng))) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("half bit flip on |0><0|") {
  const DensityMatrix zero = PureState::basis(DimensionSignature::single(2), 0).to_density();
  const KrausChannel flip = standard_channel(NoiseKind::kBitFlip, 0.5);
  const ComplexMatrix w = exchange_matrix(zero, flip);
  CHECK(std::abs(w(0, 1)) < 1e-15);
  CHECK(entropy_exchange(zero, flip) == doctest::Approx(1.0));
  CHECK(entropy_exchange_inequality_slack(zero, flip) == doctest::Approx(2.0));
}

TEST_CASE("amplitude damping exchange entropy matches an explicit W matrix") {
  const double g = 0.3;
  ComplexMatrix e0 = ComplexMatrix::Zero(2, 2), e1 = ComplexMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - g);
  e1(0, 1) = std::sqrt(g);
  ComplexMatrix m(2, 2);
  m << 0.6, Complex(0.2, -0.1), Complex(0.2, 0.1), 0.4;
  const DensityMatrix rho(m, DimensionSignature::single(2));
  const KrausChannel ch({e0, e1});

  oracle::Mat w(2);
  const oracle::Mat r = oracle::from_eigen(m);
  const oracle::Mat k[] = {oracle::from_eigen(e0), oracle::from_eigen(e1)};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const oracle::Mat t = oracle::mul(oracle::mul(k[a], r), oracle::dagger(k[b]));
      w(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = t(0, 0) + t(1, 1);
    }
  CHECK(std::abs(entropy_exchange(rho, ch) - oracle::qubit_entropy(w)) < 1e-12);
  CHECK(std::abs(entropy_exchange(rho, ch) - 0.47137076349655066) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(apply_channel(ch, rho)) - 0.7437881479372883) < 1e-12);
}

TEST_CASE("entropy exchange requires a trace-preserving channel") {
  const DensityMatrix rho = PureState::basis(DimensionSignature::single(2), 0).to_density();
  CHECK_THROWS_AS(KrausChannel({0.5 * pauli::i()}), ValidationError);
  CHECK_THROWS_AS(entropy_exchange(rho, KrausChannel::identity(3)), SignatureError);
}

TEST_CASE("property: exchange entropy and Shannon entropy of W's diagonal") {
  Rng rng(71);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2u << (t % 3);
    const DensityMatrix rho = random_state(d, rng);
    const KrausChannel ch = random_channel(d, 1 + static_cast<std::size_t>(t % 4), rng);
    const ComplexMatrix w = exchange_matrix(rho, ch);
    std::vector<double> diag;
    for (Eigen::Index i = 0; i < w.rows(); ++i) diag.push_back(w(i, i).real());
    CHECK(entropy_exchange(rho, ch) <= oracle::h(diag) + 1e-9);
    CHECK(entropy_exchange_inequality_slack(rho, ch) >= -1e-9);
  }
}

TEST_CASE("property: unitary invariance") {
  Rng rng(72);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 16);
    const DensityMatrix rho = random_state(d, rng);
    const UnitaryOperator u = random_unitary(d, rng);
    CHECK(std::abs(von_neumann_entropy(conjugate(u, rho)) - von_neumann_entropy(rho)) <= 1e-9);
  }
}

TEST_CASE("property: subadditivity and symmetry of mutual information") {
  Rng rng(73);
  const std::size_t shapes[][2] = {{2, 2}, {2, 4}, {4, 2}, {4, 4}, {2, 8}, {3, 5}};
  for (const auto& s : shapes)
    for (int t = 0; t < 20; ++t) {
      const DensityMatrix rho(random_state(s[0] * s[1], rng, 1 + static_cast<std::size_t>(t)).matrix(), {s[0], s[1]});
      const double sab = von_neumann_entropy(rho);
      const double sa = von_neumann_entropy(partial_trace(rho, {0}));
      const double sb = von_neumann_entropy(partial_trace(rho, {1}));
      CHECK(sab <= sa + sb + 1e-9);
      CHECK(std::abs(mutual_information(rho, {{0}, {1}}) - mutual_information(rho, {{1}, {0}})) <= 1e-12);
    }
}

TEST_CASE("property: concavity") {
  Rng rng(74);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2u << (t % 3);
    const std::size_t members = 1 + static_cast<std::size_t>(t % 8);
    std::vector<DensityMatrix> states;
    std::vector<double> w(members);
    double avg = 0.0, total = 0.0;
    for (auto& x : w) total += (x = std::uniform_real_distribution<double>(0.01, 1.0)(rng));
    for (std::size_t i = 0; i < members; ++i) {
      w[i] /= total;
      states.push_back(random_state(d, rng, 1 + i % d));
      avg += w[i] * von_neumann_entropy(states.back());
    }
    CHECK(von_neumann_entropy(mixture(ProbabilityVector(w), states)) >= avg - 1e-9);
  }
}

TEST_CASE("property: exchange entropy of a corrected instrument is at most H(r)") {
  Rng rng(75);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2u << (t % 3);
    const std::size_t k = 1 + static_cast<std::size_t>(t % 4);
    const DensityMatrix rho = random_state(d, rng);
    const Instrument ins = random_instrument(d, k, rng);
    std::vector<UnitaryOperator> us;
    for (std::size_t i = 0; i < k; ++i) us.push_back(random_unitary(d, rng));
    const KrausChannel c = feedback_channel(ins, FeedbackPolicy::for_instrument(ins, us));
    std::vector<double> r;
    for (const auto& e : c.operators()) r.push_back((e * rho.matrix() * e.adjoint()).trace().real());
    CHECK(entropy_exchange(rho, c) <= oracle::h(r) + 1e-9);
  }
}

}  // TEST_SUITE
