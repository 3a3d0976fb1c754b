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

#ifndef LTAPOD__SCREENING_HPP_
#define LTAPOD__SCREENING_HPP_

#include "ltapod/association.hpp"
#include "ltapod/geo.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltapod
{

struct ScreeningConfig
{
  double min_host_speed{3.0};                  // [m/s], every host sample strictly above
  double max_heading_change{10.0};             // [deg], unwrapped max - min strictly below
  double max_target_longitudinal_speed{-0.5};  // [m/s], rr*cos(azimuth) strictly below
  double min_duration{1.5};                    // [s], track duration strictly above
  double max_point_gap{1.0};                   // [s], largest consecutive gap strictly below
  Platform platform{Platform::HeavyTruck};

  void validate() const;
};

/// Screening criteria in evaluation order. The first failing one is reported.
enum class RejectReason { NotAtIntersection, HostNotStraight, TargetNotCrossing, Duration, Gap };

inline constexpr std::array<RejectReason, 5> kRejectReasons{
  RejectReason::NotAtIntersection, RejectReason::HostNotStraight, RejectReason::TargetNotCrossing,
  RejectReason::Duration, RejectReason::Gap};

/// "intersection", "straight", "target", "duration", "gap".
std::string_view to_string(RejectReason reason);
RejectReason parse_reject_reason(std::string_view text);

struct LtapOdEvent
{
  std::string trip_id;
  Platform platform{Platform::HeavyTruck};
  std::vector<HostState> host_states;
  TargetTrack target_track;

  std::string event_id() const { return trip_id + "#" + std::to_string(target_track.track_id); }
};

struct ScreenResult
{
  std::optional<LtapOdEvent> event;
  std::optional<RejectReason> reason;
  std::string detail;

  bool accepted() const { return event.has_value(); }
};

/// Sign change of the transversal in the platform's left-to-right direction.
/// `before` is the last nonzero sample ahead of the crossing, `after` the first nonzero one
/// behind it; `zero` is set when a sample in between is exactly zero.
struct ZeroCrossing
{
  std::size_t before{0};
  std::size_t after{0};
  std::optional<std::size_t> zero;
};

struct CrossingScan
{
  std::vector<ZeroCrossing> platform_crossings;
  std::size_t sign_changes{0};  // in either direction
};

CrossingScan scan_crossings(std::span<const RadarPoint> points, Platform platform);

/// Minimum speed and heading excursion over the whole window.
/// Throws InvalidInput with fewer than two states.
bool is_straight_driving(std::span<const HostState> states, const ScreeningConfig & cfg);

/// Max minus min of the unwrapped heading sequence [deg].
double heading_excursion(std::span<const HostState> states);

/// Every point closing faster than the longitudinal bound, and the track starts on the entry
/// side and ends on the exit side of the host path for the platform. Sign flicker around zero
/// does not count as a crossing on its own.
bool is_crossing_target(const TargetTrack & track, const ScreeningConfig & cfg);

double max_point_gap(const TargetTrack & track);

/// Host samples covering [t0, t1], including one bracketing sample on each side when available.
std::vector<HostState> host_window(std::span<const HostState> states, double t0, double t1);

/// Applies the criteria in order. `host_states` should already be cut to the track window.
ScreenResult screen_event(
  std::span<const HostState> host_states, const TargetTrack & track, const ScreeningConfig & cfg,
  bool at_intersection = true, const std::string & trip_id = {});

}  // namespace ltapod

#endif  // LTAPOD__SCREENING_HPP_
