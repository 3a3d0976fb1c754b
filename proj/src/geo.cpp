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

#include "ltapod/geo.hpp"

#include "ltapod/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

namespace ltapod
{

namespace
{

std::string lowercase(std::string_view text)
{
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

void check_geo(const GeoPoint & p)
{
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon)) {
    throw InvalidInput("non-finite coordinate");
  }
  if (p.lat < -90.0 || p.lat > 90.0 || p.lon < -180.0 || p.lon > 180.0) {
    throw InvalidInput("coordinate out of range");
  }
}

}  // namespace

std::string_view to_string(Platform platform)
{
  return platform == Platform::HeavyTruck ? "ht" : "lv";
}

Platform parse_platform(std::string_view text)
{
  const auto s = lowercase(text);
  if (s == "ht" || s == "heavy_truck" || s == "heavytruck") {
    return Platform::HeavyTruck;
  }
  if (s == "lv" || s == "light_vehicle" || s == "lightvehicle") {
    return Platform::LightVehicle;
  }
  throw InvalidInput("unknown platform '" + std::string(text) + "'");
}

void validate(const HostState & state)
{
  if (!std::isfinite(state.t) || !std::isfinite(state.speed)) {
    throw InvalidInput("host state: non-finite time or speed");
  }
  check_geo(state.position());
  if (state.speed < 0.0) {
    throw InvalidInput("host state: negative speed");
  }
  if (!(state.heading >= 0.0 && state.heading < 360.0)) {
    throw InvalidInput("host state: heading outside [0, 360)");
  }
}

void validate(const RadarPoint & point)
{
  if (
    !std::isfinite(point.t) || !std::isfinite(point.range) || !std::isfinite(point.range_rate) ||
    !std::isfinite(point.transversal) || !std::isfinite(point.azimuth)) {
    throw InvalidInput("radar point: non-finite field");
  }
  if (point.range <= 0.0) {
    throw InvalidInput("radar point: range must be positive");
  }
  if (std::abs(point.azimuth) > 90.0) {
    throw InvalidInput("radar point: |azimuth| > 90");
  }
}

double wrap_heading(double deg)
{
  double h = std::fmod(deg, 360.0);
  if (h < 0.0) {
    h += 360.0;
  }
  // fmod of a tiny negative value can round up to exactly 360
  return h >= 360.0 ? 0.0 : h;
}

double heading_difference(double from, double to)
{
  double d = std::fmod(to - from, 360.0);
  if (d <= -180.0) {
    d += 360.0;
  } else if (d > 180.0) {
    d -= 360.0;
  }
  return d;
}

PlanarPoint to_local_frame(const GeoPoint & anchor, const GeoPoint & p)
{
  check_geo(anchor);
  check_geo(p);
  const double dlat = p.lat - anchor.lat;
  const double dlon = p.lon - anchor.lon;
  if (std::abs(dlat) > 1.0 || std::abs(dlon) > 1.0) {
    throw InvalidInput("point farther than one degree from the anchor");
  }
  return {
    kEarthRadius * deg2rad(dlon) * std::cos(deg2rad(anchor.lat)), kEarthRadius * deg2rad(dlat)};
}

PlanarPoint to_local_frame(const HostState & anchor, const GeoPoint & p)
{
  return to_local_frame(anchor.position(), p);
}

GeoPoint from_local_frame(const GeoPoint & anchor, const PlanarPoint & xy)
{
  check_geo(anchor);
  if (!xy.allFinite()) {
    throw InvalidInput("non-finite planar point");
  }
  const double cos_lat = std::cos(deg2rad(anchor.lat));
  if (cos_lat <= 0.0) {
    throw InvalidInput("anchor at a pole");
  }
  return {
    anchor.lat + rad2deg(xy.y() / kEarthRadius),
    anchor.lon + rad2deg(xy.x() / (kEarthRadius * cos_lat))};
}

PlanarPoint radar_to_global(
  const HostState & host, const RadarPoint & pt, const HostState & anchor, Platform platform)
{
  const PlanarPoint host_xy = to_local_frame(anchor, host.position());
  const double longitudinal = pt.range * std::cos(deg2rad(pt.azimuth));
  const double lateral_right = lateral_sign(platform) * pt.transversal;
  return host_xy + host_offset_to_world(host.heading, longitudinal, lateral_right);
}

HostState interpolate_host(std::span<const HostState> states, double t)
{
  if (states.empty()) {
    throw OutOfRange("empty host record");
  }
  if (!(t >= states.front().t && t <= states.back().t)) {
    throw OutOfRange("query time outside host record span");
  }
  const auto it = std::lower_bound(
    states.begin(), states.end(), t, [](const HostState & s, double v) { return s.t < v; });
  if (it->t == t) {
    return *it;
  }
  const HostState & b = *it;
  const HostState & a = *(it - 1);
  const double f = (t - a.t) / (b.t - a.t);
  HostState out;
  out.t = t;
  out.lat = a.lat + f * (b.lat - a.lat);
  out.lon = a.lon + f * (b.lon - a.lon);
  out.speed = a.speed + f * (b.speed - a.speed);
  out.heading = wrap_heading(a.heading + f * heading_difference(a.heading, b.heading));
  return out;
}

void fill_missing_headings(std::vector<HostState> & states)
{
  if (states.empty()) {
    return;
  }
  const GeoPoint anchor = states.front().position();
  std::vector<double> bearing(states.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const PlanarPoint d =
      to_local_frame(anchor, states[k + 1].position()) - to_local_frame(anchor, states[k].position());
    if (d.norm() > 1e-9) {
      bearing[k] = wrap_heading(rad2deg(std::atan2(d.x(), d.y())));
    }
  }
  // last fix and stationary stretches reuse the nearest known bearing
  for (std::size_t k = 1; k < bearing.size(); ++k) {
    if (!std::isfinite(bearing[k])) {
      bearing[k] = bearing[k - 1];
    }
  }
  for (std::size_t k = bearing.size(); k-- > 1;) {
    if (!std::isfinite(bearing[k - 1])) {
      bearing[k - 1] = bearing[k];
    }
  }
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!std::isfinite(states[k].heading)) {
      states[k].heading = std::isfinite(bearing[k]) ? bearing[k] : 0.0;
    }
  }
}

}  // namespace ltapod
