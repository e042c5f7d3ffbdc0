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

// Search over the unitary group for the largest open-loop entropy reduction
// S(Q) - S(Q_out) achievable by a joint unitary on Q (x) C.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qctl/qstate.hpp"

namespace qctl {

/// Real coordinates of a Hermitian d x d matrix H: params[k*d+k] is H_kk;
/// for j < k, params[j*d+k] and params[k*d+j] are Re H_jk and Im H_jk.
class UnitaryParameterization {
 public:
  UnitaryParameterization(std::vector<double> params, std::size_t dim);
  static UnitaryParameterization zero(std::size_t dim);

  const std::vector<double>& params() const noexcept { return params_; }
  std::size_t dim() const noexcept { return dim_; }
  ComplexMatrix hermitian() const;

 private:
  std::vector<double> params_;
  std::size_t dim_;
};

/// U = exp(iH), evaluated through the eigendecomposition of H.
ComplexMatrix exponential_map_matrix(const UnitaryParameterization& params);
UnitaryOperator exponential_map(const UnitaryParameterization& params, const DimensionSignature& signature);
UnitaryOperator exponential_map(const UnitaryParameterization& params);

struct OptimizerOptions {
  std::size_t budget = 5000;     // objective evaluations, >= 1
  std::size_t restarts = 8;
  double initial_step = 0.5;
  double grow = 1.5;
  double shrink = 0.9036020036098448;  // 1.5^(-1/4): one success per four failures is neutral
  double min_step = 1e-7;
  std::uint64_t seed = 0;
};

struct OptimizationResult {
  UnitaryOperator best_unitary;
  double best_delta_s = 0.0;
  double certified_upper_bound = 0.0;  // min(S(Q), log2 d_C - S(C))
  double gap = 0.0;                    // certified_upper_bound - best_delta_s
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  std::vector<double> restart_best;    // best value per restart
  std::vector<double> running_best;    // running max after each restart
};

/// Analytic ceiling min(S(Q), log2 d_C - S(C)) on any open-loop reduction.
double open_loop_ceiling(const DensityMatrix& rho_q, const DensityMatrix& rho_c);

/// Random-restart hill climbing with an adaptive step. Each local move is a
/// left multiplication by exp(iH) with H drawn in Hermitian-parameter space.
/// Restart 0 starts at the identity. Deterministic for a given seed.
OptimizationResult max_open_loop_reduction(const DensityMatrix& rho_q, const DensityMatrix& rho_c,
                                           const OptimizerOptions& options);
OptimizationResult max_open_loop_reduction(const DensityMatrix& rho_q, const DensityMatrix& rho_c,
                                           std::size_t budget, std::uint64_t seed);

}  // namespace qctl
