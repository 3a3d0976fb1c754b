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

#ifndef LTAPOD__ASSOCIATION_HPP_
#define LTAPOD__ASSOCIATION_HPP_

#include "ltapod/geo.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ltapod
{

/// Neighbor rules used to group heavy-truck radar returns into targets.
struct AssociationConfig
{
  double min_closing_speed{-0.3};     // [m/s], eligible points have rr strictly below
  double max_azimuth{5.5};            // [deg], eligible points have |azimuth| strictly below
  double time_window{0.85};           // [s], expansion horizon after a cluster point
  double correspondence_tol{0.3};     // bound on |1 - dt_pred / dt|
  double max_transversal_rate{20.0};  // [m/s]
  std::size_t min_cluster_size{5};

  /// Throws InvalidInput when a threshold is out of its domain.
  void validate() const;
};

struct TargetTrack
{
  int track_id{0};
  std::vector<RadarPoint> points;  // strictly increasing t

  double start_time() const { return points.front().t; }
  double end_time() const { return points.back().t; }
  double duration() const { return points.empty() ? 0.0 : end_time() - start_time(); }
};

struct AssociationResult
{
  std::vector<TargetTrack> tracks;
  std::vector<RadarPoint> noise;
  /// Track id of every input point in input order, -1 for noise.
  std::vector<int> labels;
};

bool point_eligible(const RadarPoint & pt, const AssociationConfig & cfg);

/// Range/range-rate/time correspondence and transversal-rate test for a later point `j`.
/// Throws InvalidInput unless j.t > i.t.
bool neighbor_compatible(const RadarPoint & i, const RadarPoint & j, const AssociationConfig & cfg);

/// Region growing in time order: each eligible point joins the cluster holding its
/// nearest-in-time compatible predecessor (ties go to the lower id) or seeds a new one.
/// Clusters smaller than min_cluster_size and ineligible points are returned as noise.
/// Track ids are dense, ordered by the time of the first point.
AssociationResult associate_targets(std::span<const RadarPoint> points, const AssociationConfig & cfg);

}  // namespace ltapod

#endif  // LTAPOD__ASSOCIATION_HPP_
