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

// Small hand-built host and target fixtures shared by the unit and acceptance suites.

#ifndef FIXTURES_HPP_
#define FIXTURES_HPP_

#include "ltapod/association.hpp"
#include "ltapod/geo.hpp"
#include "ltapod/screening.hpp"
#include "ltapod/synth.hpp"

#include <cmath>
#include <vector>

namespace fixtures
{

inline constexpr ltapod::GeoPoint kAnchor{42.30, -83.70};

/// Host driving straight at constant speed, one sample every `dt` over [t0, t1].
inline std::vector<ltapod::HostState> straight_host(
  double t0, double t1, double speed, double heading = 0.0, double dt = 0.1)
{
  std::vector<ltapod::HostState> out;
  const auto dir = ltapod::heading_direction(heading);
  const auto n = static_cast<int>(std::llround((t1 - t0) / dt));
  for (int k = 0; k <= n; ++k) {
    const double t = t0 + k * dt;
    const auto g = ltapod::from_local_frame(kAnchor, dir * (speed * (t - t0)));
    out.push_back({t, g.lat, g.lon, speed, heading});
  }
  return out;
}

/// Target closing at `rr` with the transversal ramping linearly from `tr0` to `tr1`.
inline ltapod::TargetTrack ramp_track(
  double t0, double duration, double tr0, double tr1, double rr = -8.0, double dt = 0.1,
  double range0 = 60.0)
{
  ltapod::TargetTrack track;
  const auto n = static_cast<int>(std::llround(duration / dt));
  for (int k = 0; k <= n; ++k) {
    const double f = static_cast<double>(k) / n;
    const double t = t0 + k * dt;
    track.points.push_back({t, range0 + rr * (t - t0), rr, tr0 + f * (tr1 - tr0), 0.0});
  }
  return track;
}

/// Candidate event made of the whole radar stretch of an encounter and the host samples around it.
inline ltapod::LtapOdEvent encounter_event(const ltapod::Encounter & enc, ltapod::Platform platform)
{
  ltapod::LtapOdEvent ev;
  ev.trip_id = "enc";
  ev.platform = platform;
  ev.target_track.points = enc.radar;
  ev.host_states = ltapod::host_window(enc.host, enc.radar.front().t, enc.radar.back().t);
  return ev;
}

/// Truth position of the target at time t in the frame anchored at `anchor`.
inline ltapod::PlanarPoint truth_tv_position(
  const ltapod::GroundTruth & truth, const ltapod::GeoPoint & spec_anchor,
  const ltapod::GeoPoint & anchor, double t)
{
  const auto & h = truth.tv_history;
  std::size_t k = 1;
  while (k + 1 < h.size() && h[k].t < t) {
    ++k;
  }
  const double f = (t - h[k - 1].t) / (h[k].t - h[k - 1].t);
  const ltapod::PlanarPoint p = h[k - 1].position + f * (h[k].position - h[k - 1].position);
  return ltapod::to_local_frame(anchor, ltapod::from_local_frame(spec_anchor, p));
}

}  // namespace fixtures

#endif  // FIXTURES_HPP_
