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

// Entropy functionals. All logarithms are base 2; every value is in bits.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qctl/channels.hpp"
#include "qctl/qstate.hpp"

namespace qctl {

/// Probabilities summing to one within tol::kProbabilitySum. Entries in
/// [-tol::kProbabilityFloor, 0) are clamped to zero; the vector is never
/// renormalized.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs);

  static ProbabilityVector uniform(std::size_t n);

  const std::vector<double>& values() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_.at(i); }

 private:
  std::vector<double> probs_;
};

/// A non-negative entropy in bits.
struct EntropyValue {
  double bits = 0.0;

  /// Values in [-tol::kEntropyNoise, 0) become 0; anything more negative
  /// throws ValidationError(kNonNegativeEntropy).
  static EntropyValue from_bits(double raw, const char* context = "entropy");

  operator double() const noexcept { return bits; }
};

/// Two disjoint nonempty groups of subsystem positions covering a signature.
struct Bipartition {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;

  /// {0} | {1} for a two-party signature.
  static Bipartition first_second() { return {{0}, {1}}; }
};

/// -sum lambda log2 lambda over a spectrum; values below
/// tol::kEntropyCutoff contribute nothing.
double entropy_of_spectrum(const RealVector& eigenvalues);

EntropyValue von_neumann_entropy(const DensityMatrix& rho);
EntropyValue shannon_entropy(const ProbabilityVector& p);

/// I(A:B) = S(A) + S(B) - S(A,B).
EntropyValue mutual_information(const DensityMatrix& rho_ab, const Bipartition& cut);
EntropyValue mutual_information(const DensityMatrix& rho_ab);

/// W_jk = Tr(E_j rho E_k^dagger).
ComplexMatrix exchange_matrix(const DensityMatrix& rho, const KrausChannel& channel);

/// Entropy of the exchange matrix W.
EntropyValue entropy_exchange(const DensityMatrix& rho, const KrausChannel& channel);

/// S(E(rho)) - S(rho) + S_e(rho, E); non-negative for every channel.
double entropy_exchange_inequality_slack(const DensityMatrix& rho, const KrausChannel& channel);

/// The mixture sum_i p_i rho_i.
DensityMatrix mixture(const ProbabilityVector& weights, std::span<const DensityMatrix> states);

}  // namespace qctl
