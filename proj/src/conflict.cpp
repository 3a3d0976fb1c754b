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

#include "ltapod/conflict.hpp"

#include "ltapod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ltapod
{

ConflictTime find_conflict_time(std::span<const RadarPoint> points, Platform platform)
{
  const CrossingScan scan = scan_crossings(points, platform);
  if (scan.platform_crossings.empty()) {
    throw ConsistencyError("transversal never crosses zero in the platform direction");
  }
  const ZeroCrossing & c = scan.platform_crossings.front();
  ConflictTime out;
  out.multiple_crossings = scan.sign_changes > 1;
  if (c.zero) {
    out.t_x = points[*c.zero].t;
    return out;
  }
  const RadarPoint & a = points[c.before];
  const RadarPoint & b = points[c.after];
  const double f = a.transversal / (a.transversal - b.transversal);
  out.t_x = a.t + f * (b.t - a.t);
  return out;
}

ConflictTime find_conflict_time(const LtapOdEvent & event)
{
  return find_conflict_time(event.target_track.points, event.platform);
}

PathSample interpolate_path(std::span<const PathSample> path, double t)
{
  if (path.empty() || !(t >= path.front().t && t <= path.back().t)) {
    throw OutOfRange("time outside path span");
  }
  const auto it = std::lower_bound(
    path.begin(), path.end(), t, [](const PathSample & s, double v) { return s.t < v; });
  if (it->t == t) {
    return *it;
  }
  const PathSample & b = *it;
  const PathSample & a = *(it - 1);
  const double f = (t - a.t) / (b.t - a.t);
  return {t, a.position + f * (b.position - a.position), a.speed + f * (b.speed - a.speed)};
}

ReconstructedEvent reconstruct(const LtapOdEvent & event)
{
  const auto & host = event.host_states;
  const auto & radar = event.target_track.points;
  if (host.empty() || radar.empty()) {
    throw SynchronizationError("event without host or radar samples");
  }
  ReconstructedEvent rec;
  rec.event_id = event.event_id();
  rec.trip_id = event.trip_id;

  const HostState & anchor = host.front();
  rec.sdv_path.reserve(host.size());
  for (const auto & s : host) {
    rec.sdv_path.push_back({s.t, to_local_frame(anchor, s.position()), s.speed});
  }

  rec.tv_path.reserve(radar.size());
  for (const auto & pt : radar) {
    if (pt.t < host.front().t || pt.t > host.back().t) {
      throw SynchronizationError("host record does not cover radar time " + std::to_string(pt.t));
    }
    const HostState h = interpolate_host(host, pt.t);
    rec.tv_path.push_back({pt.t, radar_to_global(h, pt, anchor, event.platform), 0.0});
  }
  auto & tv = rec.tv_path;
  const std::size_t n = tv.size();
  for (std::size_t k = 0; n > 1 && k < n; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == n ? n - 1 : k + 1;
    tv[k].speed = (tv[hi].position - tv[lo].position).norm() / (tv[hi].t - tv[lo].t);
  }

  if (scan_crossings(radar, event.platform).platform_crossings.empty()) {
    rec.t_x = std::numeric_limits<double>::quiet_NaN();
    rec.sdv_heading = host.front().heading;
    return rec;
  }
  const ConflictTime ct = find_conflict_time(event);
  rec.t_x = ct.t_x;
  rec.multiple_crossings = ct.multiple_crossings;
  rec.sdv_heading = interpolate_host(host, ct.t_x).heading;
  return rec;
}

ConflictRecord compute_metrics(const ReconstructedEvent & rec)
{
  if (!rec.has_conflict_time()) {
    throw ConsistencyError("event has no conflict time");
  }
  const PathSample sdv = interpolate_path(rec.sdv_path, rec.t_x);
  const PathSample tv = interpolate_path(rec.tv_path, rec.t_x);
  if (!(sdv.speed > 0.0)) {
    throw InvalidEvent("host speed at t_x is not positive");
  }
  ConflictRecord out;
  out.event_id = rec.event_id;
  out.trip_id = rec.trip_id;
  out.t_x = rec.t_x;
  out.d_cp = (sdv.position - tv.position).norm();
  out.v_sdv = sdv.speed;
  out.v_tv = tv.speed;
  out.t_cp = out.d_cp / out.v_sdv;
  return out;
}

std::vector<TracePoint> conflict_trace(const ReconstructedEvent & rec)
{
  if (!rec.has_conflict_time()) {
    throw ConsistencyError("event has no conflict time");
  }
  const PlanarPoint conflict_point = interpolate_path(rec.tv_path, rec.t_x).position;
  const PlanarPoint forward = heading_direction(rec.sdv_heading);
  std::vector<TracePoint> trace;
  for (const auto & s : rec.sdv_path) {
    if (!(s.speed > 0.0)) {
      continue;
    }
    trace.push_back({s.t - rec.t_x, forward.dot(conflict_point - s.position) / s.speed});
  }
  return trace;
}

}  // namespace ltapod
