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

#ifndef LTAPOD__GEO_HPP_
#define LTAPOD__GEO_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace ltapod
{

inline constexpr double kEarthRadius = 6371000.0;  // [m]

/// Instrumented platform. The two platforms report transversal with opposite signs.
enum class Platform { LightVehicle, HeavyTruck };

std::string_view to_string(Platform platform);
/// Accepts "lv"/"ht" and the long names, case-insensitive.
Platform parse_platform(std::string_view text);

/// +1 when positive transversal lies to the host's right (HT), -1 when it lies to the left (LV).
constexpr double lateral_sign(Platform platform)
{
  return platform == Platform::HeavyTruck ? 1.0 : -1.0;
}

struct GeoPoint
{
  double lat{0.0};  // [deg]
  double lon{0.0};  // [deg]
};

struct HostState
{
  double t{0.0};        // [s]
  double lat{0.0};      // [deg]
  double lon{0.0};      // [deg]
  double speed{0.0};    // [m/s]
  double heading{0.0};  // [deg] clockwise from north, [0, 360)

  GeoPoint position() const { return {lat, lon}; }
};

struct RadarPoint
{
  double t{0.0};            // [s]
  double range{0.0};        // [m]
  double range_rate{0.0};   // [m/s], negative = closing
  double transversal{0.0};  // [m], lateral offset in the host frame
  double azimuth{0.0};      // [deg]

  bool operator==(const RadarPoint &) const = default;
};

template <typename Scalar>
using Planar = Eigen::Matrix<Scalar, 2, 1>;

/// x east, y north in a local tangent frame [m].
using PlanarPoint = Planar<double>;

void validate(const HostState & state);
void validate(const RadarPoint & point);

template <typename Scalar>
Scalar deg2rad(Scalar deg)
{
  return deg * Scalar(std::numbers::pi / 180.0);
}

template <typename Scalar>
Scalar rad2deg(Scalar rad)
{
  return rad * Scalar(180.0 / std::numbers::pi);
}

/// Unit vector of a compass heading (clockwise from north) in the east/north frame.
template <typename Scalar>
Planar<Scalar> heading_direction(Scalar heading_deg)
{
  const Scalar h = deg2rad(heading_deg);
  return Planar<Scalar>(std::sin(h), std::cos(h));
}

/// Rotates a host-frame offset (forward, right) into the east/north frame.
template <typename Scalar>
Planar<Scalar> host_offset_to_world(Scalar heading_deg, Scalar longitudinal, Scalar lateral_right)
{
  const Eigen::Rotation2D<Scalar> rot(-deg2rad(heading_deg));
  return rot * Planar<Scalar>(lateral_right, longitudinal);
}

/// Inverse of host_offset_to_world; returns (longitudinal, lateral_right).
template <typename Scalar>
Planar<Scalar> world_offset_to_host(Scalar heading_deg, const Planar<Scalar> & offset)
{
  const Eigen::Rotation2D<Scalar> rot(deg2rad(heading_deg));
  const Planar<Scalar> right_forward = rot * offset;
  return Planar<Scalar>(right_forward.y(), right_forward.x());
}

/// Wraps any angle into [0, 360).
double wrap_heading(double deg);

/// Signed shortest angular difference `to - from`, in (-180, 180].
double heading_difference(double from, double to);

/// Equirectangular projection around `anchor`. Both points must lie within one degree.
PlanarPoint to_local_frame(const GeoPoint & anchor, const GeoPoint & p);
PlanarPoint to_local_frame(const HostState & anchor, const GeoPoint & p);

/// Exact inverse of to_local_frame for the same anchor.
GeoPoint from_local_frame(const GeoPoint & anchor, const PlanarPoint & xy);

/// Places a radar return in the anchor's planar frame. Longitudinal offset is r*cos(azimuth),
/// lateral offset is the transversal channel (sign given by the platform convention).
PlanarPoint radar_to_global(
  const HostState & host, const RadarPoint & pt, const HostState & anchor, Platform platform);

/// Linear interpolation of position and speed; heading follows the shortest arc.
/// Throws OutOfRange when `t` lies outside the record span.
HostState interpolate_host(std::span<const HostState> states, double t);

/// Replaces non-finite headings by the bearing between consecutive GPS fixes.
void fill_missing_headings(std::vector<HostState> & states);

}  // namespace ltapod

#endif  // LTAPOD__GEO_HPP_
