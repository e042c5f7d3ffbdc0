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

#pragma once

#include <cstddef>

namespace qctl::tol {

// State and operator validation (max entrywise deviations).
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kEigenvalueFloor = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kNorm = 1e-10;

// Channels and instruments.
inline constexpr double kCompleteness = 1e-9;
inline constexpr double kOutcomeDrop = 1e-12;

// Probability vectors.
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kProbabilitySum = 1e-9;

// Entropies: eigenvalues below kEntropyCutoff contribute nothing; computed
// entropies in [-kEntropyNoise, 0) are reported as zero.
inline constexpr double kEntropyCutoff = 1e-12;
inline constexpr double kEntropyNoise = 1e-9;

// Bounds are checked at this slack; |slack| below kNearSaturation is flagged.
inline constexpr double kBound = 1e-9;
inline constexpr double kNearSaturation = 1e-6;

// Code sectors overlapping by more than this make a code degenerate.
inline constexpr double kSectorOverlap = 1e-9;

inline constexpr std::size_t kMaxJointDimension = 64;

}  // namespace qctl::tol
