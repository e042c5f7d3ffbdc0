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

// Quantum operations in operator-sum form, measurement instruments, and the
// environment model rho -> Tr_E[U (rho (x) rho_E) U^dagger].

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qctl/qstate.hpp"

namespace qctl {

/// Trace-preserving operation rho -> sum_i E_i rho E_i^dagger.
class KrausChannel {
 public:
  /// Throws if `operators` is empty, the operators are not square of a common
  /// dimension, or sum_i E_i^dagger E_i deviates from I by more than
  /// tol::kCompleteness.
  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  static KrausChannel identity(std::size_t dim);
  static KrausChannel unitary(const UnitaryOperator& u);

  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return operators_.size(); }

 private:
  std::vector<ComplexMatrix> operators_;
  std::size_t dim_;
};

/// Measurement with operators P_i and distinct outcome labels.
class Instrument {
 public:
  /// Labels default to "0", "1", ... when omitted.
  explicit Instrument(std::vector<ComplexMatrix> operators, std::vector<std::string> labels = {});

  /// Projective measurement in the computational basis of a d-level system.
  static Instrument computational_basis(std::size_t dim);

  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return operators_.size(); }

  /// The non-selective operation rho -> sum_i P_i rho P_i^dagger.
  KrausChannel as_channel() const;

 private:
  std::vector<ComplexMatrix> operators_;
  std::vector<std::string> labels_;
  std::size_t dim_;
};

struct OutcomeEntry {
  std::string label;
  std::size_t index;    // position of the outcome in the instrument
  double probability;   // r_i
  DensityMatrix state;  // normalized post-measurement state
};

/// Outcomes with probability below tol::kOutcomeDrop are omitted.
struct OutcomeEnsemble {
  std::size_t outcome_count;  // outcomes of the instrument, including dropped ones
  std::vector<OutcomeEntry> entries;

  std::vector<double> probabilities() const;
  /// sum_i r_i rho_i.
  DensityMatrix average() const;
};

/// rho^E with joint unitary U_QE on (system (x) environment).
class EnvironmentModel {
 public:
  EnvironmentModel(DensityMatrix env_state, UnitaryOperator joint_unitary, std::size_t system_dim);

  const DensityMatrix& env_state() const noexcept { return env_state_; }
  const UnitaryOperator& joint_unitary() const noexcept { return joint_unitary_; }
  std::size_t system_dim() const noexcept { return system_dim_; }
  std::size_t env_dim() const noexcept { return env_state_.dim(); }

 private:
  DensityMatrix env_state_;
  UnitaryOperator joint_unitary_;
  std::size_t system_dim_;
};

struct EnvironmentEvolution {
  DensityMatrix joint;     // U (rho_0 (x) rho_E) U^dagger, signature (d_Q, d_E)
  DensityMatrix marginal;  // trace over the environment
};

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

/// Completeness residual max|sum_i E_i^dagger E_i - I|.
double completeness_residual(const std::vector<ComplexMatrix>& operators);

EnvironmentEvolution channel_from_environment(const EnvironmentModel& env, const DensityMatrix& rho0);

/// Kraus operators E_i = (I (x) <i|) U (I (x) |e>) of the induced channel.
/// Requires a pure environment state |e><e|.
KrausChannel extract_kraus(const EnvironmentModel& env);

OutcomeEnsemble apply_instrument(const Instrument& instrument, const DensityMatrix& rho);

enum class NoiseKind { kBitFlip, kPhaseFlip, kDepolarizing };

/// Single-qubit noise with error probability p. Depolarizing maps rho to
/// (1 - p) rho + p I/2. Zero-weight Kraus terms are omitted.
KrausChannel standard_channel(NoiseKind kind, double p);

// ---------------------------------------------------------------------------
// Seeded random generators. Each seed overload constructs its own engine.

using Rng = std::mt19937_64;

/// Complex Ginibre matrix with i.i.d. standard complex normal entries.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-random isometry (rows >= cols): QR of a Ginibre matrix with the
/// phases of R's diagonal absorbed into Q.
ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);

/// Hilbert-Schmidt state G G^dagger / Tr(G G^dagger) with G of size d x rank.
/// rank == 0 means full rank.
DensityMatrix random_state(std::size_t dim, Rng& rng, std::size_t rank = 0);
DensityMatrix random_state(std::size_t dim, std::uint64_t seed, std::size_t rank = 0);

PureState random_pure_state(std::size_t dim, Rng& rng);

UnitaryOperator random_unitary(std::size_t dim, Rng& rng);
UnitaryOperator random_unitary(std::size_t dim, std::uint64_t seed);

/// The k d x d blocks of a Haar isometry from d to d*k.
KrausChannel random_channel(std::size_t dim, std::size_t terms, Rng& rng);
KrausChannel random_channel(std::size_t dim, std::size_t terms, std::uint64_t seed);

Instrument random_instrument(std::size_t dim, std::size_t outcomes, Rng& rng);
Instrument random_instrument(std::size_t dim, std::size_t outcomes, std::uint64_t seed);

/// Projective measurement onto `outcomes` groups of a Haar-random basis; the
/// basis vectors are dealt round-robin so every group is nonempty.
Instrument random_projective_instrument(std::size_t dim, std::size_t outcomes, Rng& rng);

}  // namespace qctl
