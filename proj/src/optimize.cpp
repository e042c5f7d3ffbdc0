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

#include "qctl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "qctl/channels.hpp"
#include "qctl/entropy.hpp"
#include "qctl/errors.hpp"

namespace qctl {

namespace {

using Index = Eigen::Index;

// Mixes a restart index into the user seed so restarts draw independent streams.
std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(restart) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class OpenLoopObjective {
 public:
  OpenLoopObjective(const DensityMatrix& rho_q, const DensityMatrix& rho_c)
      : joint_(kron(rho_q.matrix(), rho_c.matrix())),
        signature_{rho_q.dim(), rho_c.dim()},
        s_in_(von_neumann_entropy(rho_q)) {}

  double operator()(const ComplexMatrix& u) const {
    const ComplexMatrix out = u * joint_ * u.adjoint();
    const std::size_t keep[] = {0};
    return s_in_ - entropy_of_spectrum(hermitian_eigenvalues(partial_trace_matrix(out, signature_, keep)));
  }

  std::size_t dim() const { return signature_.total_dimension(); }

 private:
  ComplexMatrix joint_;
  DimensionSignature signature_;
  double s_in_;
};

}  // namespace

UnitaryParameterization::UnitaryParameterization(std::vector<double> params, std::size_t dim)
    : params_(std::move(params)), dim_(dim) {
  if (dim_ == 0 || params_.size() != dim_ * dim_)
    throw PreconditionError("unitary parameterization: need d^2 parameters");
}

UnitaryParameterization UnitaryParameterization::zero(std::size_t dim) {
  return UnitaryParameterization(std::vector<double>(dim * dim, 0.0), dim);
}

ComplexMatrix UnitaryParameterization::hermitian() const {
  const auto d = static_cast<Index>(dim_);
  ComplexMatrix h(d, d);
  for (Index j = 0; j < d; ++j) {
    h(j, j) = params_[static_cast<std::size_t>(j * d + j)];
    for (Index k = j + 1; k < d; ++k) {
      const Complex v(params_[static_cast<std::size_t>(j * d + k)],
                      params_[static_cast<std::size_t>(k * d + j)]);
      h(j, k) = v;
      h(k, j) = std::conj(v);
    }
  }
  return h;
}

ComplexMatrix exponential_map_matrix(const UnitaryParameterization& params) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(params.hermitian(), Eigen::ComputeEigenvectors);
  const auto& v = solver.eigenvectors();
  ComplexVector phases = solver.eigenvalues().unaryExpr([](double x) { return std::polar(1.0, x); });
  return v * phases.asDiagonal() * v.adjoint();
}

UnitaryOperator exponential_map(const UnitaryParameterization& params,
                                const DimensionSignature& signature) {
  return UnitaryOperator(exponential_map_matrix(params), signature);
}

UnitaryOperator exponential_map(const UnitaryParameterization& params) {
  return exponential_map(params, DimensionSignature::single(params.dim()));
}

double open_loop_ceiling(const DensityMatrix& rho_q, const DensityMatrix& rho_c) {
  const double s_q = von_neumann_entropy(rho_q);
  const double room = std::log2(static_cast<double>(rho_c.dim())) - von_neumann_entropy(rho_c);
  return std::max(0.0, std::min(s_q, room));
}

OptimizationResult max_open_loop_reduction(const DensityMatrix& rho_q, const DensityMatrix& rho_c,
                                           const OptimizerOptions& options) {
  if (options.budget < 1) throw PreconditionError("max_open_loop_reduction: budget must be >= 1");
  if (options.restarts < 1) throw PreconditionError("max_open_loop_reduction: need >= 1 restart");

  const OpenLoopObjective objective(rho_q, rho_c);
  const std::size_t d = objective.dim();
  const std::size_t n_params = d * d;
  const std::size_t restarts = std::min(options.restarts, options.budget);

  ComplexMatrix best_u = ComplexMatrix::Identity(static_cast<Index>(d), static_cast<Index>(d));
  double best_value = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  std::vector<double> restart_best, running_best;

  auto evaluate = [&](const ComplexMatrix& u) {
    ++evaluations;
    return objective(u);
  };

  for (std::size_t r = 0; r < restarts; ++r) {
    // Split the budget evenly; earlier restarts absorb the remainder.
    const std::size_t slice = options.budget / restarts + (r < options.budget % restarts ? 1 : 0);
    Rng rng(restart_seed(options.seed, r));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(-M_PI, M_PI);

    auto sample = [&](auto& dist, double scale) {
      std::vector<double> x(n_params);
      for (double& v : x) v = scale * dist(rng);
      return exponential_map_matrix(UnitaryParameterization(std::move(x), d));
    };

    ComplexMatrix u = r == 0 ? best_u : sample(uniform, 1.0);
    double fu = evaluate(u);
    double step = options.initial_step;
    ComplexMatrix slice_best_u = u;
    double slice_best = fu;

    for (std::size_t used = 1; used < slice; ++used) {
      if (step < options.min_step) {
        u = sample(uniform, 1.0);
        fu = evaluate(u);
        step = options.initial_step;
      } else {
        // Local move around the current point: U' = exp(i step H) U.
        ComplexMatrix v = sample(normal, step) * u;
        const double fv = evaluate(v);
        if (fv > fu) {
          u = std::move(v);
          fu = fv;
          step *= options.grow;
        } else {
          step *= options.shrink;
        }
      }
      if (fu > slice_best) {
        slice_best = fu;
        slice_best_u = u;
      }
    }

    restart_best.push_back(slice_best);
    // Ties keep the lower restart index.
    if (slice_best > best_value) {
      best_value = slice_best;
      best_u = slice_best_u;
    }
    running_best.push_back(best_value);
  }

  const double ceiling = open_loop_ceiling(rho_q, rho_c);
  // Products of many local moves drift off the group by rounding; snap back.
  Eigen::JacobiSVD<ComplexMatrix> svd(best_u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  UnitaryOperator best(svd.matrixU() * svd.matrixV().adjoint(), DimensionSignature{rho_q.dim(), rho_c.dim()});
  return OptimizationResult{.best_unitary = std::move(best),
                            .best_delta_s = best_value,
                            .certified_upper_bound = ceiling,
                            .gap = std::max(0.0, ceiling - best_value),
                            .evaluations = evaluations,
                            .seed = options.seed,
                            .restart_best = std::move(restart_best),
                            .running_best = std::move(running_best)};
}

OptimizationResult max_open_loop_reduction(const DensityMatrix& rho_q, const DensityMatrix& rho_c,
                                           std::size_t budget, std::uint64_t seed) {
  return max_open_loop_reduction(rho_q, rho_c, OptimizerOptions{.budget = budget, .seed = seed});
}

}  // namespace qctl
