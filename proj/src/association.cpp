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

#include "ltapod/association.hpp"

#include "ltapod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ltapod
{

void AssociationConfig::validate() const
{
  if (!(min_closing_speed < 0.0)) {
    throw InvalidInput("association.min_closing_speed must be negative");
  }
  if (!(max_azimuth > 0.0 && time_window > 0.0 && correspondence_tol > 0.0 &&
        max_transversal_rate > 0.0)) {
    throw InvalidInput("association thresholds must be strictly positive");
  }
  if (min_cluster_size < 2) {
    throw InvalidInput("association.min_cluster_size must be at least 2");
  }
}

bool point_eligible(const RadarPoint & pt, const AssociationConfig & cfg)
{
  return pt.range_rate < cfg.min_closing_speed && std::abs(pt.azimuth) < cfg.max_azimuth;
}

bool neighbor_compatible(const RadarPoint & i, const RadarPoint & j, const AssociationConfig & cfg)
{
  const double dt = j.t - i.t;
  if (!(dt > 0.0)) {
    throw InvalidInput("neighbor_compatible requires t(j) > t(i)");
  }
  if (dt > cfg.time_window) {
    return false;
  }
  const double rr_sum = j.range_rate + i.range_rate;
  if (rr_sum == 0.0) {
    return false;
  }
  const double dt_pred = 2.0 * (j.range - i.range) / rr_sum;
  if (!(std::abs(1.0 - dt_pred / dt) < cfg.correspondence_tol)) {
    return false;
  }
  return std::abs(j.transversal - i.transversal) / dt < cfg.max_transversal_rate;
}

AssociationResult associate_targets(std::span<const RadarPoint> points, const AssociationConfig & cfg)
{
  cfg.validate();

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].t < points[b].t;
  });

  // clusters hold input indices in time order
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> active;  // clusters whose last point is still inside the window

  for (const std::size_t idx : order) {
    const RadarPoint & p = points[idx];
    if (!point_eligible(p, cfg)) {
      continue;
    }
    active.erase(
      std::remove_if(
        active.begin(), active.end(),
        [&](std::size_t c) { return p.t - points[clusters[c].back()].t > cfg.time_window; }),
      active.end());

    int best = -1;
    double best_dt = std::numeric_limits<double>::infinity();
    for (const std::size_t c : active) {
      const auto & members = clusters[c];
      if (points[members.back()].t >= p.t) {
        continue;
      }
      // newest first, so the first hit is the nearest in time
      for (auto it = members.rbegin(); it != members.rend(); ++it) {
        const RadarPoint & q = points[*it];
        const double dt = p.t - q.t;
        if (dt > cfg.time_window) {
          break;
        }
        if (neighbor_compatible(q, p, cfg)) {
          if (dt < best_dt || (dt == best_dt && static_cast<int>(c) < best)) {
            best_dt = dt;
            best = static_cast<int>(c);
          }
          break;
        }
      }
    }
    if (best < 0) {
      best = static_cast<int>(clusters.size());
      clusters.emplace_back();
      active.push_back(static_cast<std::size_t>(best));
    }
    clusters[static_cast<std::size_t>(best)].push_back(idx);
  }

  AssociationResult result;
  result.labels.assign(points.size(), -1);
  // clusters are created in time order of their first point, so ids stay time-ordered
  for (const auto & members : clusters) {
    if (members.size() < cfg.min_cluster_size) {
      continue;
    }
    TargetTrack track;
    track.track_id = static_cast<int>(result.tracks.size());
    track.points.reserve(members.size());
    for (const std::size_t idx : members) {
      track.points.push_back(points[idx]);
      result.labels[idx] = track.track_id;
    }
    result.tracks.push_back(std::move(track));
  }
  for (const std::size_t idx : order) {
    if (result.labels[idx] < 0) {
      result.noise.push_back(points[idx]);
    }
  }
  return result;
}

}  // namespace ltapod
