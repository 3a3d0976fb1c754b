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

#include "ltapod/screening.hpp"

#include "ltapod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ltapod
{

void ScreeningConfig::validate() const
{
  if (!(min_duration > 0.0) || !(max_point_gap > 0.0) || !(min_host_speed > 0.0)) {
    throw InvalidInput("screening: min_duration, max_point_gap and min_host_speed must be positive");
  }
  if (!(max_heading_change > 0.0)) {
    throw InvalidInput("screening.max_heading_change must be positive");
  }
}

std::string_view to_string(RejectReason reason)
{
  switch (reason) {
    case RejectReason::NotAtIntersection:
      return "intersection";
    case RejectReason::HostNotStraight:
      return "straight";
    case RejectReason::TargetNotCrossing:
      return "target";
    case RejectReason::Duration:
      return "duration";
    case RejectReason::Gap:
      return "gap";
  }
  return "unknown";
}

RejectReason parse_reject_reason(std::string_view text)
{
  for (const auto r : kRejectReasons) {
    if (to_string(r) == text) {
      return r;
    }
  }
  throw InvalidInput("unknown rejection reason '" + std::string(text) + "'");
}

CrossingScan scan_crossings(std::span<const RadarPoint> points, Platform platform)
{
  // orient so that the required crossing is always negative -> positive
  const double dir = platform == Platform::HeavyTruck ? 1.0 : -1.0;
  CrossingScan scan;
  std::optional<std::size_t> prev;
  std::optional<std::size_t> first_zero;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double v = dir * points[k].transversal;
    if (v == 0.0) {
      if (prev && !first_zero) {
        first_zero = k;
      }
      continue;
    }
    if (prev) {
      const double pv = dir * points[*prev].transversal;
      if ((pv < 0.0) != (v < 0.0)) {
        ++scan.sign_changes;
        if (pv < 0.0) {
          scan.platform_crossings.push_back({*prev, k, first_zero});
        }
      }
    }
    prev = k;
    first_zero.reset();
  }
  return scan;
}

double heading_excursion(std::span<const HostState> states)
{
  if (states.empty()) {
    return 0.0;
  }
  double unwrapped = states.front().heading;
  double lo = unwrapped;
  double hi = unwrapped;
  for (std::size_t k = 1; k < states.size(); ++k) {
    unwrapped += heading_difference(states[k - 1].heading, states[k].heading);
    lo = std::min(lo, unwrapped);
    hi = std::max(hi, unwrapped);
  }
  return hi - lo;
}

bool is_straight_driving(std::span<const HostState> states, const ScreeningConfig & cfg)
{
  if (states.size() < 2) {
    throw InvalidInput("is_straight_driving needs at least two host states");
  }
  const auto slowest = std::min_element(
    states.begin(), states.end(),
    [](const HostState & a, const HostState & b) { return a.speed < b.speed; });
  return slowest->speed > cfg.min_host_speed && heading_excursion(states) < cfg.max_heading_change;
}

bool is_crossing_target(const TargetTrack & track, const ScreeningConfig & cfg)
{
  if (track.points.empty()) {
    return false;
  }
  const bool approaching = std::all_of(track.points.begin(), track.points.end(), [&](const auto & p) {
    return p.range_rate * std::cos(deg2rad(p.azimuth)) < cfg.max_target_longitudinal_speed;
  });
  if (!approaching) {
    return false;
  }
  // net direction: first and last nonzero transversal on opposite sides, in platform order
  const double dir = cfg.platform == Platform::HeavyTruck ? 1.0 : -1.0;
  const auto nonzero = [](const RadarPoint & p) { return p.transversal != 0.0; };
  const auto first = std::find_if(track.points.begin(), track.points.end(), nonzero);
  const auto last = std::find_if(track.points.rbegin(), track.points.rend(), nonzero);
  return first != track.points.end() && dir * first->transversal < 0.0 && dir * last->transversal > 0.0;
}

double max_point_gap(const TargetTrack & track)
{
  double gap = 0.0;
  for (std::size_t k = 1; k < track.points.size(); ++k) {
    gap = std::max(gap, track.points[k].t - track.points[k - 1].t);
  }
  return gap;
}

std::vector<HostState> host_window(std::span<const HostState> states, double t0, double t1)
{
  auto first = std::lower_bound(
    states.begin(), states.end(), t0, [](const HostState & s, double v) { return s.t < v; });
  auto last = std::upper_bound(
    states.begin(), states.end(), t1, [](double v, const HostState & s) { return v < s.t; });
  if (first != states.begin() && (first == states.end() || first->t > t0)) {
    --first;
  }
  if (last != states.end() && last != states.begin() && std::prev(last)->t < t1) {
    ++last;
  }
  return {first, last};
}

ScreenResult screen_event(
  std::span<const HostState> host_states, const TargetTrack & track, const ScreeningConfig & cfg,
  bool at_intersection, const std::string & trip_id)
{
  ScreenResult result;
  auto reject = [&](RejectReason reason, std::string detail) {
    result.reason = reason;
    result.detail = std::move(detail);
    return result;
  };

  if (!at_intersection) {
    return reject(RejectReason::NotAtIntersection, "host not in an intersection segment");
  }
  if (host_states.size() < 2) {
    return reject(RejectReason::HostNotStraight, "fewer than two host samples over the track");
  }
  if (!is_straight_driving(host_states, cfg)) {
    std::ostringstream os;
    const auto slowest = std::min_element(
      host_states.begin(), host_states.end(),
      [](const HostState & a, const HostState & b) { return a.speed < b.speed; });
    os << "min speed " << slowest->speed << " m/s, heading change "
       << heading_excursion(host_states) << " deg";
    return reject(RejectReason::HostNotStraight, os.str());
  }
  if (!is_crossing_target(track, cfg)) {
    return reject(RejectReason::TargetNotCrossing, "target not approaching or not crossing left to right");
  }
  if (!(track.duration() > cfg.min_duration)) {
    return reject(RejectReason::Duration, "track duration " + std::to_string(track.duration()) + " s");
  }
  const double gap = max_point_gap(track);
  if (!(gap < cfg.max_point_gap)) {
    return reject(RejectReason::Gap, "max point gap " + std::to_string(gap) + " s");
  }

  LtapOdEvent event;
  event.trip_id = trip_id;
  event.platform = cfg.platform;
  event.host_states.assign(host_states.begin(), host_states.end());
  event.target_track = track;
  result.event = std::move(event);
  return result;
}

}  // namespace ltapod
