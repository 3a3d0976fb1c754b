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

#ifndef LTAPOD__IO_HPP_
#define LTAPOD__IO_HPP_

#include "ltapod/conflict.hpp"
#include "ltapod/geo.hpp"
#include "ltapod/scenario_model.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltapod
{

// Channel files inside a trip directory.
inline constexpr std::string_view kHostFile = "host.csv";
inline constexpr std::string_view kRadarFile = "radar.csv";
inline constexpr std::string_view kTripsFile = "trips.csv";  // optional: trip_id,platform,label

struct HostRow
{
  HostState state;
  bool at_intersection{true};

  bool operator==(const HostRow & o) const;
};

struct RadarRow
{
  RadarPoint point;
  int target_id{-1};  // pre-tracked id (LV), -1 when unassociated

  bool operator==(const RadarRow &) const = default;
};

struct TripRecord
{
  std::string trip_id;
  Platform platform{Platform::HeavyTruck};
  std::string label;
  std::vector<HostRow> host;    // strictly increasing t
  std::vector<RadarRow> radar;  // non-decreasing t

  std::vector<HostState> host_states() const;
  std::vector<RadarPoint> radar_points() const;

  bool operator==(const TripRecord &) const = default;
};

struct Diagnostic
{
  std::string file;
  std::size_t row{0};  // 1-based line number, header is line 1; 0 for trip-level messages
  std::string trip_id;
  std::string message;

  std::string to_string() const;
};

struct IngestResult
{
  std::vector<TripRecord> trips;
  std::vector<Diagnostic> diagnostics;
  std::size_t trips_seen{0};
  std::size_t trips_dropped{0};
};

/// Reads host.csv, radar.csv and the optional trips.csv from `dir`. Missing channel files mean
/// no trips. Malformed rows are reported with their line number and drop their trip; a trip with
/// unsorted timestamps is dropped as a whole. Throws SchemaError naming a missing column.
IngestResult ingest_trips(const std::filesystem::path & dir, Platform default_platform);

void write_trips(const std::filesystem::path & dir, std::span<const TripRecord> trips);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);
/// Parses a full field as a double; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);

/// Splits one CSV line on commas and trims blanks and a trailing CR.
std::vector<std::string_view> split_csv_line(std::string_view line);

// conflict_records.csv: event_id,trip_id,t_x,d_cp,t_cp,v_sdv,v_tv,label
void write_conflict_records(const std::filesystem::path & file, std::span<const ConflictRecord> records);
std::vector<ConflictRecord> read_conflict_records(const std::filesystem::path & file);

// scenarios.csv: t_cp,v_sdv,v_tv,d_cp,seed
void write_scenarios(const std::filesystem::path & file, std::span<const ScenarioSample> samples);
std::vector<ScenarioSample> read_scenarios(const std::filesystem::path & file);

/// Model file (JSON): mode, bandwidths and the source triples.
void save_model(const std::filesystem::path & file, const ScenarioModel & model);
ScenarioModel load_model(const std::filesystem::path & file);

}  // namespace ltapod

#endif  // LTAPOD__IO_HPP_
