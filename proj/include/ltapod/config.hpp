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

#ifndef LTAPOD__CONFIG_HPP_
#define LTAPOD__CONFIG_HPP_

#include "ltapod/association.hpp"
#include "ltapod/scenario_model.hpp"
#include "ltapod/screening.hpp"
#include "ltapod/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ltapod
{

struct PipelineConfig
{
  AssociationConfig association;
  ScreeningConfig screening;  // platform is the default for trips without one
  std::vector<Variable> variables{kConflictVariables.begin(), kConflictVariables.end()};
  std::size_t histogram_bins{30};
  std::optional<std::pair<std::string, std::string>> compare_labels;
  SamplingMode model_mode{SamplingMode::JointResample};
  std::size_t scenario_samples{0};  // 0 disables scenario output
  std::filesystem::path input;
  std::filesystem::path output;
  std::size_t jobs{1};  // 0 means one per hardware thread
  std::uint64_t seed{0};

  /// Nested configs valid, at least one variable and one histogram bin.
  void validate() const;
};

/// Sets one namespaced key, e.g. "association.time_window". Throws InvalidInput for unknown
/// keys or malformed values.
void apply_setting(PipelineConfig & cfg, std::string_view key, std::string_view value);

/// key = value lines; '#' starts a comment. Later keys override earlier ones.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path & file, PipelineConfig base = {});

/// Every key with its current value, in a form parse_config reads back.
std::string to_config_text(const PipelineConfig & cfg);

}  // namespace ltapod

#endif  // LTAPOD__CONFIG_HPP_
