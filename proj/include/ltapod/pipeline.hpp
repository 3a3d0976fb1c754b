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

#ifndef LTAPOD__PIPELINE_HPP_
#define LTAPOD__PIPELINE_HPP_

#include "ltapod/association.hpp"
#include "ltapod/config.hpp"
#include "ltapod/conflict.hpp"
#include "ltapod/io.hpp"
#include "ltapod/scenario_model.hpp"
#include "ltapod/screening.hpp"
#include "ltapod/stats.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltapod
{

/// Stage counts. trips_in = trips_processed + trips_rejected and
/// candidates = accepted + sum(rejected_by).
struct Funnel
{
  std::size_t trips_in{0};
  std::size_t trips_processed{0};
  std::size_t trips_rejected{0};  // dropped at ingestion or failed as a whole
  std::size_t candidates{0};
  std::size_t accepted{0};
  std::size_t metrics_failed{0};  // accepted, but reconstruction or metrics threw
  std::array<std::size_t, kRejectReasons.size()> rejected_by{};

  std::size_t rejected(RejectReason reason) const { return rejected_by[static_cast<std::size_t>(reason)]; }
  bool operator==(const Funnel &) const = default;
};

struct CandidateOutcome
{
  int track_id{0};
  double start_time{0.0};
  double end_time{0.0};
  std::size_t points{0};
  std::optional<RejectReason> reason;
  std::optional<ConflictRecord> record;
  std::optional<ReconstructedEvent> reconstruction;  // kept on request
  std::string error;  // metrics failure
};

struct TripOutcome
{
  std::string trip_id;
  bool failed{false};
  std::string error;
  std::vector<CandidateOutcome> candidates;
};

/// Heavy-truck trips go through association; light-vehicle trips are grouped by their
/// non-negative target ids, keeping the first row of any repeated timestamp.
std::vector<TargetTrack> candidate_tracks(const TripRecord & trip, const AssociationConfig & cfg);

/// Associate, screen, reconstruct and measure one trip. Per-candidate failures are recorded in
/// the outcome; only trip-level problems throw.
TripOutcome process_trip(
  const TripRecord & trip, const PipelineConfig & cfg, bool keep_reconstruction = false);

enum class RunStatus { Success, Partial, Failed };

std::string_view to_string(RunStatus status);
/// 0 success, 2 partial, 1 failed.
int exit_code(RunStatus status);

struct VariableSummary
{
  std::string population;  // "all" or a label
  Variable variable{Variable::DcpInv};
  std::optional<Summary> summary;  // empty when no record is usable
  std::size_t excluded{0};
};

struct Comparison
{
  Variable variable{Variable::DcpInv};
  std::string label_a;
  std::string label_b;
  std::size_t n_a{0};
  std::size_t n_b{0};
  MwwResult result;
};

struct RunReport
{
  RunStatus status{RunStatus::Success};
  Funnel funnel;
  std::vector<TripOutcome> trips;
  std::vector<ConflictRecord> records;  // trip order, then track order
  std::vector<VariableSummary> summaries;
  std::vector<Comparison> comparisons;
  std::vector<ScenarioSample> scenarios;
  std::vector<std::string> diagnostics;
};

/// Per-trip stages in parallel, then statistics and the scenario model after all trips finish.
RunReport analyze(
  std::span<const TripRecord> trips, const PipelineConfig & cfg, bool keep_reconstruction = false);

/// Ingests cfg.input, analyzes, and writes the report files to cfg.output when it is set.
RunReport run_pipeline(const PipelineConfig & cfg);

/// Records, summaries and comparisons; free of timestamps so identical runs give identical text.
std::string summary_json(const RunReport & report, const PipelineConfig & cfg);

/// conflict_records.csv, summary.json and, when sampled, scenarios.csv.
void write_report(
  const RunReport & report, const PipelineConfig & cfg, const std::filesystem::path & dir);

}  // namespace ltapod

#endif  // LTAPOD__PIPELINE_HPP_
