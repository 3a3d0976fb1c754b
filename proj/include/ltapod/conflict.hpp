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

#ifndef LTAPOD__CONFLICT_HPP_
#define LTAPOD__CONFLICT_HPP_

#include "ltapod/geo.hpp"
#include "ltapod/screening.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace ltapod
{

struct PathSample
{
  double t{0.0};
  PlanarPoint position{PlanarPoint::Zero()};
  double speed{0.0};
};

struct ReconstructedEvent
{
  std::string event_id;
  std::string trip_id;
  std::vector<PathSample> sdv_path;  // host GPS track in the anchor frame
  std::vector<PathSample> tv_path;   // radar target in the anchor frame
  double t_x{0.0};           // NaN when the transversal never crosses in the platform direction
  double sdv_heading{0.0};  // [deg] at t_x
  bool multiple_crossings{false};

  bool has_conflict_time() const { return std::isfinite(t_x); }
};

/// Conflict variables evaluated at the moment the target's transversal crosses zero.
struct ConflictRecord
{
  std::string event_id;
  std::string trip_id;
  std::string label;
  double t_x{0.0};    // [s]
  double d_cp{0.0};   // [m]
  double t_cp{0.0};   // [s], always d_cp / v_sdv
  double v_sdv{0.0};  // [m/s]
  double v_tv{0.0};   // [m/s]
};

struct ConflictTime
{
  double t_x{0.0};
  bool multiple_crossings{false};
};

/// First platform-direction zero crossing of the transversal, linearly interpolated.
/// Throws ConsistencyError when there is none.
ConflictTime find_conflict_time(std::span<const RadarPoint> points, Platform platform);
ConflictTime find_conflict_time(const LtapOdEvent & event);

/// Host path from GPS (anchored at the first fix) and target path from radar, with the host
/// interpolated to every radar timestamp. Target speed comes from central differences.
/// Throws SynchronizationError when the host record misses a radar timestamp. Without a crossing
/// the paths are still built and t_x is left NaN.
ReconstructedEvent reconstruct(const LtapOdEvent & event);

/// Linear interpolation on a time-sorted path. Throws OutOfRange outside its span.
PathSample interpolate_path(std::span<const PathSample> path, double t);

/// Throws InvalidEvent when the host speed at t_x is not positive, ConsistencyError without t_x.
ConflictRecord compute_metrics(const ReconstructedEvent & rec);

struct TracePoint
{
  double relative_time{0.0};  // t - t_x [s]
  double t_cp{0.0};           // [s]
};

/// Time for the host to reach the conflict point at each host sample, measured along the host
/// heading at t_x (negative once the conflict point is passed).
std::vector<TracePoint> conflict_trace(const ReconstructedEvent & rec);

}  // namespace ltapod

#endif  // LTAPOD__CONFLICT_HPP_
