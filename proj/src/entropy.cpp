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

#include "qctl/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qctl/errors.hpp"
#include "qctl/tolerances.hpp"

namespace qctl {

namespace {
using Index = Eigen::Index;

double plogp_sum(auto first, auto last) {
  double s = 0.0;
  for (; first != last; ++first) {
    const double p = *first;
    if (p > tol::kEntropyCutoff) s -= p * std::log2(p);
  }
  return s;
}
}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError(Invariant::kProbability, 1.0, "probability vector is empty");
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -tol::kProbabilityFloor)
      throw ValidationError(Invariant::kProbability, p, "probability vector has a negative entry");
    if (p < 0.0) p = 0.0;
  }
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(sum - 1.0) > tol::kProbabilitySum)
    throw ValidationError(Invariant::kProbability, sum - 1.0, "probability vector does not sum to 1");
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

EntropyValue EntropyValue::from_bits(double raw, const char* context) {
  if (raw < -tol::kEntropyNoise) throw ValidationError(Invariant::kNonNegativeEntropy, raw, context);
  return EntropyValue{std::max(raw, 0.0)};
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  return plogp_sum(eigenvalues.begin(), eigenvalues.end());
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  return EntropyValue::from_bits(entropy_of_spectrum(rho.spectrum()), "von Neumann entropy");
}

EntropyValue shannon_entropy(const ProbabilityVector& p) {
  return EntropyValue::from_bits(plogp_sum(p.values().begin(), p.values().end()), "Shannon entropy");
}

EntropyValue mutual_information(const DensityMatrix& rho_ab, const Bipartition& cut) {
  const std::size_t n = rho_ab.signature().size();
  if (cut.a.empty() || cut.b.empty()) throw SignatureError("mutual_information: empty side of the cut");
  std::vector<std::size_t> all = cut.a;
  all.insert(all.end(), cut.b.begin(), cut.b.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(n);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  if (all != expected)
    throw SignatureError("mutual_information: cut must partition the subsystems exactly");

  const double s_a = von_neumann_entropy(partial_trace(rho_ab, cut.a));
  const double s_b = von_neumann_entropy(partial_trace(rho_ab, cut.b));
  const double s_ab = von_neumann_entropy(rho_ab);
  return EntropyValue::from_bits(s_a + s_b - s_ab, "mutual information");
}

EntropyValue mutual_information(const DensityMatrix& rho_ab) {
  if (rho_ab.signature().size() != 2)
    throw SignatureError("mutual_information: default cut needs exactly two subsystems");
  return mutual_information(rho_ab, Bipartition::first_second());
}

ComplexMatrix exchange_matrix(const DensityMatrix& rho, const KrausChannel& channel) {
  if (channel.dim() != rho.dim()) throw SignatureError("entropy_exchange: dimension mismatch");
  const auto& ops = channel.operators();
  const auto k = static_cast<Index>(ops.size());
  // Tr(E_j rho E_k^dagger) = sum over entries of (E_j rho) .* conj(E_k).
  std::vector<ComplexMatrix> left;
  left.reserve(ops.size());
  for (const auto& e : ops) left.push_back(e * rho.matrix());
  ComplexMatrix w(k, k);
  for (Index j = 0; j < k; ++j)
    for (Index l = j; l < k; ++l) {
      const Complex v = left[static_cast<std::size_t>(j)]
                            .cwiseProduct(ops[static_cast<std::size_t>(l)].conjugate())
                            .sum();
      w(j, l) = v;
      w(l, j) = std::conj(v);
    }
  return w;
}

EntropyValue entropy_exchange(const DensityMatrix& rho, const KrausChannel& channel) {
  ComplexMatrix w = exchange_matrix(rho, channel);
  const double tr = w.trace().real();
  const double dev = std::abs(tr - 1.0);
  if (dev >= tol::kCompleteness)
    throw ValidationError(Invariant::kTrace, dev, "entropy_exchange: channel is not trace preserving");
  w /= tr;
  return EntropyValue::from_bits(entropy_of_spectrum(hermitian_eigenvalues(w)), "entropy exchange");
}

double entropy_exchange_inequality_slack(const DensityMatrix& rho, const KrausChannel& channel) {
  const double s_out = von_neumann_entropy(apply_channel(channel, rho));
  const double s_in = von_neumann_entropy(rho);
  return s_out - s_in + entropy_exchange(rho, channel);
}

DensityMatrix mixture(const ProbabilityVector& weights, std::span<const DensityMatrix> states) {
  if (states.empty() || weights.size() != states.size())
    throw PreconditionError("mixture: weights and states must have the same nonzero length");
  const auto d = static_cast<Index>(states.front().dim());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(states[i].signature() == states.front().signature()))
      throw SignatureError("mixture: states have different signatures");
    sum += weights[i] * states[i].matrix();
  }
  return DensityMatrix::from_positive_operator(sum, states.front().signature());
}

}  // namespace qctl
