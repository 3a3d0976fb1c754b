// Copyright 2026 The ltapod Authors
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

#ifndef LTAPOD__SCENARIO_MODEL_HPP_
#define LTAPOD__SCENARIO_MODEL_HPP_

#include "ltapod/conflict.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ltapod
{

enum class SamplingMode { JointResample, IndependentKde };

std::string_view to_string(SamplingMode mode);
/// "resample" or "kde".
SamplingMode parse_sampling_mode(std::string_view text);

/// Column order of the source matrix and the bandwidth vector.
enum ScenarioColumn : Eigen::Index { kTcpColumn = 0, kVsdvColumn = 1, kVtvColumn = 2 };

/// Stochastic conflict model over (t_cp, v_sdv, v_tv). Immutable once fitted.
struct ScenarioModel
{
  SamplingMode mode{SamplingMode::JointResample};
  Eigen::MatrixX3d source;                        // one row per record
  Eigen::Vector3d bandwidths{Eigen::Vector3d::Zero()};  // KDE mode only
  std::size_t excluded{0};  // records dropped for a non-positive value
};

struct ScenarioSample
{
  double t_cp{0.0};
  double v_sdv{0.0};
  double v_tv{0.0};
  double d_cp{0.0};  // t_cp * v_sdv
  std::uint64_t seed{0};

  bool operator==(const ScenarioSample &) const = default;
};

/// Silverman's rule of thumb, 0.9 * min(sd, IQR / 1.34) * n^(-1/5). Never zero.
double silverman_bandwidth(const Eigen::Ref<const Eigen::VectorXd> & x);

/// Throws InsufficientData with fewer than two usable records.
ScenarioModel fit_model(std::span<const ConflictRecord> records, SamplingMode mode);

/// CDF of the zero-truncated Gaussian KDE of one column.
double kde_cdf(const ScenarioModel & model, Eigen::Index column, double x);

/// Deterministic in `seed`. Sample k is drawn from its own generator seeded with the stored
/// per-sample seed, so any row can be reproduced on its own.
std::vector<ScenarioSample> sample_scenarios(const ScenarioModel & model, std::size_t n, std::uint64_t seed);

/// Mixes a base seed and a stream index into an independent 64-bit seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace ltapod

#endif  // LTAPOD__SCENARIO_MODEL_HPP_
