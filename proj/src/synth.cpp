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

#include "ltapod/synth.hpp"

#include "ltapod/association.hpp"
#include "ltapod/errors.hpp"
#include "ltapod/parallel.hpp"
#include "ltapod/scenario_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ltapod
{

namespace
{

constexpr double kPi = std::numbers::pi;

// Encounter frame: x to the host's right, y along its heading, origin at the conflict point.
// The target approaches along x = -w heading -y, turns onto a circle of radius R centred at
// (-w + R, y_a) and leaves along +x.
class TurnPath
{
public:
  TurnPath(double w, double radius, TurnSide side) : w_(w), r_(radius), mirror_(side == TurnSide::Mirrored)
  {
    quarter_ = r_ * kPi / 2.0;
    if (r_ > w_) {
      const double phi = 2.0 * kPi - std::acos((w_ - r_) / r_);
      s_cross_ = r_ * (phi - kPi);
    } else {
      s_cross_ = quarter_ + (w_ - r_);
    }
    y_a_ = -raw(s_cross_).y();
  }

  double crossing_arc_length() const { return s_cross_; }

  PlanarPoint position(double s) const
  {
    PlanarPoint p = raw(s);
    p.y() += y_a_;
    if (mirror_) {
      p.x() = -p.x();
    }
    return p;
  }

  PlanarPoint direction(double s) const
  {
    PlanarPoint d;
    if (s < 0.0) {
      d = {0.0, -1.0};
    } else if (s <= quarter_) {
      const double phi = kPi + s / r_;
      d = {-std::sin(phi), std::cos(phi)};
    } else {
      d = {1.0, 0.0};
    }
    if (mirror_) {
      d.x() = -d.x();
    }
    return d;
  }

private:
  PlanarPoint raw(double s) const
  {
    if (s < 0.0) {
      return {-w_, -s};
    }
    if (s <= quarter_) {
      const double phi = kPi + s / r_;
      return {-w_ + r_ + r_ * std::cos(phi), r_ * std::sin(phi)};
    }
    return {-w_ + r_ + (s - quarter_), -r_};
  }

  double w_;
  double r_;
  bool mirror_;
  double quarter_{0.0};
  double s_cross_{0.0};
  double y_a_{0.0};
};

struct RadarSlot
{
  double t{0.0};
  RadarPoint clean;
  bool visible{false};
};

struct Timeline
{
  double t_x{0.0};
  std::vector<double> host_times;
  std::vector<RadarSlot> radar;
  std::size_t first{0};  // emitted stretch [first, last]
  std::size_t last{0};
};

double sample_phase(std::uint64_t seed)
{
  std::mt19937_64 rng(derive_seed(seed, 1));
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Geometry and visibility without noise. Throws InfeasibleSpec.
Timeline build_timeline(const EncounterSpec & spec, const TurnPath & path)
{
  spec.validate();
  const double v_s = spec.sdv_speed;
  const double v_tv = spec.tv_speed_at_crossing;
  if (v_tv * v_tv / spec.tv_turn_radius > spec.max_lateral_accel) {
    throw InfeasibleSpec("turn radius too small: lateral acceleration exceeds bound");
  }
  const double dt = 1.0 / spec.sample_rate;
  const double d = spec.t_cp_true * v_s;

  Timeline tl;
  tl.t_x = spec.t_start + 1.0 + spec.pre_window + sample_phase(spec.seed) * dt;
  const double host_end = tl.t_x + spec.post_window + 1.0;
  for (std::size_t k = 0;; ++k) {
    const double t = spec.t_start + static_cast<double>(k) * dt;
    if (t > host_end) {
      break;
    }
    tl.host_times.push_back(t);
  }

  const double fov = deg2rad(spec.fov_half_angle);
  const double s_c = path.crossing_arc_length();
  std::optional<std::size_t> at_crossing;
  for (std::size_t j = 0;; ++j) {
    const double t = spec.t_start + (static_cast<double>(j) + 0.25) * dt;
    if (t > tl.t_x + spec.post_window) {
      break;
    }
    if (t < tl.t_x - spec.pre_window) {
      continue;
    }
    const double tau = t - tl.t_x;
    const double s = s_c + v_tv * tau;
    const PlanarPoint p = path.position(s);
    const PlanarPoint vel = v_tv * path.direction(s);
    const double y_host = -d + v_s * tau;
    const double lon = p.y() - y_host;
    const double lat = p.x();
    RadarSlot slot;
    slot.t = t;
    slot.visible = lon > 0.0 && std::abs(std::atan2(lat, lon)) <= fov;
    const double range = std::hypot(lat, lon);
    slot.clean.t = t;
    slot.clean.range = range;
    slot.clean.range_rate = range > 0.0 ? (lat * vel.x() + lon * (vel.y() - v_s)) / range : 0.0;
    slot.clean.transversal = lateral_sign(spec.platform) * lat;
    if (t <= tl.t_x) {
      at_crossing = tl.radar.size();
    }
    tl.radar.push_back(slot);
  }

  if (!at_crossing || !tl.radar[*at_crossing].visible) {
    throw InfeasibleSpec("target outside the radar field of view at the crossing");
  }
  tl.first = *at_crossing;
  while (tl.first > 0 && tl.radar[tl.first - 1].visible) {
    --tl.first;
  }
  tl.last = *at_crossing;
  while (tl.last + 1 < tl.radar.size() && tl.radar[tl.last + 1].visible) {
    ++tl.last;
  }
  if (tl.radar[tl.first].t > tl.t_x - spec.min_visible_before + 1e-9) {
    throw InfeasibleSpec("radar coverage before the crossing is too short");
  }
  if (tl.last - *at_crossing < spec.min_samples_after) {
    throw InfeasibleSpec("target leaves the field of view right after the crossing");
  }
  return tl;
}

double draw(std::mt19937_64 & rng, const Range & r)
{
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

}  // namespace

void EncounterSpec::validate() const
{
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sdv_speed) || !positive(tv_speed_at_crossing) || !positive(t_cp_true) ||
      !positive(tv_turn_radius) || !positive(tv_lane_offset) || !positive(pre_window) ||
      !positive(post_window) || !positive(fov_half_angle) || !positive(max_lateral_accel)) {
    throw InfeasibleSpec("encounter magnitudes must be positive");
  }
  if (!(sample_rate >= 5.0) || !std::isfinite(sample_rate)) {
    throw InfeasibleSpec("sample rate must be at least 5 Hz");
  }
  if (noise.range < 0.0 || noise.range_rate < 0.0 || noise.transversal < 0.0 || noise.gps < 0.0) {
    throw InfeasibleSpec("noise standard deviations must be non-negative");
  }
  if (min_visible_before > pre_window) {
    throw InfeasibleSpec("required coverage exceeds the radar window");
  }
}

Encounter generate_encounter(const EncounterSpec & spec)
{
  const TurnPath path(spec.tv_lane_offset, spec.tv_turn_radius, spec.turn);
  const Timeline tl = build_timeline(spec, path);

  const double v_s = spec.sdv_speed;
  const double v_tv = spec.tv_speed_at_crossing;
  const double d = spec.t_cp_true * v_s;
  const PlanarPoint fwd = heading_direction(spec.sdv_heading);
  const PlanarPoint right = host_offset_to_world(spec.sdv_heading, 0.0, 1.0);
  const PlanarPoint conflict = fwd * (v_s * (tl.t_x - spec.t_start) + d);
  const double heading = wrap_heading(spec.sdv_heading);

  std::mt19937_64 rng(derive_seed(spec.seed, 0));
  std::normal_distribution<double> gauss(0.0, 1.0);

  Encounter enc;
  enc.truth.t_x = tl.t_x;
  enc.truth.d_cp = d;
  enc.truth.v_sdv = v_s;
  enc.truth.t_cp = d / v_s;
  enc.truth.v_tv = v_tv;

  enc.host.reserve(tl.host_times.size());
  for (const double t : tl.host_times) {
    const PlanarPoint sdv = fwd * (v_s * (t - spec.t_start));
    const double s = path.crossing_arc_length() + v_tv * (t - tl.t_x);
    const PlanarPoint tv_local = path.position(s);
    const PlanarPoint tv_dir = path.direction(s);
    enc.truth.sdv_history.push_back({t, sdv, fwd * v_s});
    enc.truth.tv_history.push_back(
      {t, conflict + tv_local.x() * right + tv_local.y() * fwd,
       v_tv * (tv_dir.x() * right + tv_dir.y() * fwd)});

    const double ex = gauss(rng);
    const double ey = gauss(rng);
    const PlanarPoint measured = sdv + spec.noise.gps * PlanarPoint(ex, ey);
    const GeoPoint g = from_local_frame(spec.anchor, measured);
    enc.host.push_back({t, g.lat, g.lon, v_s, heading});
  }

  for (std::size_t j = tl.first; j <= tl.last; ++j) {
    RadarPoint p = tl.radar[j].clean;
    p.range += spec.noise.range * gauss(rng);
    p.range_rate += spec.noise.range_rate * gauss(rng);
    p.transversal += spec.noise.transversal * gauss(rng);
    p.range = std::max(p.range, 0.1);
    p.azimuth = rad2deg(std::asin(std::clamp(p.transversal / p.range, -1.0, 1.0)));
    enc.radar.push_back(p);
  }
  return enc;
}

bool is_feasible(const EncounterSpec & spec)
{
  try {
    const TurnPath path(spec.tv_lane_offset, spec.tv_turn_radius, spec.turn);
    build_timeline(spec, path);
    return true;
  } catch (const InfeasibleSpec &) {
    return false;
  }
}

EncounterSpec draw_feasible_spec(
  const ParameterRanges & ranges, const EncounterSpec & base, std::mt19937_64 & rng,
  int max_attempts)
{
  EncounterSpec spec = base;
  spec.sdv_speed = draw(rng, ranges.sdv_speed);
  spec.t_cp_true = draw(rng, ranges.t_cp);
  spec.seed = rng();
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    spec.tv_speed_at_crossing = draw(rng, ranges.tv_speed);
    spec.tv_turn_radius = draw(rng, ranges.turn_radius);
    if (is_feasible(spec)) {
      return spec;
    }
  }
  throw InfeasibleSpec(
    "no feasible target speed and turn radius for host speed " + std::to_string(spec.sdv_speed) +
    " and t_cp " + std::to_string(spec.t_cp_true));
}

std::string_view to_string(DecoyKind kind)
{
  switch (kind) {
    case DecoyKind::None:
      return "none";
    case DecoyKind::SlowHost:
      return "slow_host";
    case DecoyKind::NotAtIntersection:
      return "not_at_intersection";
    case DecoyKind::WrongDirection:
      return "wrong_direction";
    case DecoyKind::ShortTrack:
      return "short_track";
    case DecoyKind::Gap:
      return "gap";
  }
  return "unknown";
}

DecoyKind parse_decoy_kind(std::string_view text)
{
  for (const auto k :
       {DecoyKind::None, DecoyKind::SlowHost, DecoyKind::NotAtIntersection,
        DecoyKind::WrongDirection, DecoyKind::ShortTrack, DecoyKind::Gap}) {
    if (to_string(k) == text) {
      return k;
    }
  }
  throw InvalidInput("unknown decoy kind '" + std::string(text) + "'");
}

std::optional<RejectReason> expected_reason(DecoyKind kind)
{
  switch (kind) {
    case DecoyKind::None:
      return std::nullopt;
    case DecoyKind::SlowHost:
      return RejectReason::HostNotStraight;
    case DecoyKind::NotAtIntersection:
      return RejectReason::NotAtIntersection;
    case DecoyKind::WrongDirection:
      return RejectReason::TargetNotCrossing;
    case DecoyKind::ShortTrack:
      return RejectReason::Duration;
    case DecoyKind::Gap:
      return RejectReason::Gap;
  }
  return std::nullopt;
}

std::vector<DecoyKind> default_decoy_kinds(Platform platform)
{
  std::vector<DecoyKind> kinds{
    DecoyKind::SlowHost, DecoyKind::NotAtIntersection, DecoyKind::WrongDirection,
    DecoyKind::ShortTrack};
  if (platform == Platform::LightVehicle) {
    kinds.push_back(DecoyKind::Gap);
  }
  return kinds;
}

TripRecord to_trip(
  const Encounter & enc, const EncounterSpec & spec, std::string trip_id, std::string label,
  bool at_intersection)
{
  TripRecord trip;
  trip.trip_id = std::move(trip_id);
  trip.platform = spec.platform;
  trip.label = std::move(label);
  trip.host.reserve(enc.host.size());
  for (const auto & h : enc.host) {
    trip.host.push_back({h, at_intersection});
  }
  const int target_id = spec.platform == Platform::LightVehicle ? 1 : -1;
  trip.radar.reserve(enc.radar.size());
  for (const auto & p : enc.radar) {
    trip.radar.push_back({p, target_id});
  }
  return trip;
}

std::vector<SynthTrip> generate_population(
  const PopulationSpec & spec, std::uint64_t seed, std::size_t jobs)
{
  if (spec.n == 0) {
    throw InvalidInput("population size must be at least 1");
  }
  if (!(spec.decoy_fraction >= 0.0 && spec.decoy_fraction <= 1.0)) {
    throw InvalidInput("decoy fraction must lie in [0, 1]");
  }
  auto kinds = spec.decoy_kinds.empty() ? default_decoy_kinds(spec.platform) : spec.decoy_kinds;
  if (spec.platform == Platform::HeavyTruck &&
      std::find(kinds.begin(), kinds.end(), DecoyKind::Gap) != kinds.end()) {
    throw InvalidInput("gap decoys need pre-tracked light-vehicle targets");
  }
  if (std::find(kinds.begin(), kinds.end(), DecoyKind::None) != kinds.end()) {
    throw InvalidInput("'none' is not a decoy kind");
  }

  const auto n_decoys =
    static_cast<std::size_t>(std::llround(static_cast<double>(spec.n) * spec.decoy_fraction));
  std::vector<std::size_t> order(spec.n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffle_rng(derive_seed(seed, ~std::uint64_t{0}));
  std::shuffle(order.begin(), order.end(), shuffle_rng);
  std::vector<std::size_t> decoy_members(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_decoys));
  std::sort(decoy_members.begin(), decoy_members.end());
  std::vector<DecoyKind> assigned(spec.n, DecoyKind::None);
  for (std::size_t k = 0; k < decoy_members.size(); ++k) {
    assigned[decoy_members[k]] = kinds[k % kinds.size()];
  }

  const std::size_t width = std::to_string(spec.n - 1).size();
  std::vector<SynthTrip> out(spec.n);
  parallel_for(spec.n, jobs, [&](std::size_t k) {
    std::mt19937_64 rng(derive_seed(seed, k));
    EncounterSpec base;
    base.platform = spec.platform;
    base.noise = spec.noise;
    base.sample_rate = spec.sample_rate;
    base.sdv_heading = std::uniform_real_distribution<double>(0.0, 360.0)(rng);
    base.anchor.lat += std::uniform_real_distribution<double>(-0.05, 0.05)(rng);
    base.anchor.lon += std::uniform_real_distribution<double>(-0.05, 0.05)(rng);
    const DecoyKind decoy = assigned[k];

    EncounterSpec es;
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      try {
        es = draw_feasible_spec(spec.ranges, base, rng);
      } catch (const InfeasibleSpec &) {
        continue;
      }
      if (decoy == DecoyKind::SlowHost) {
        // same distance to the conflict point, crawling host
        es.t_cp_true = es.t_cp_true * es.sdv_speed / 2.0;
        es.sdv_speed = 2.0;
      } else if (decoy == DecoyKind::WrongDirection) {
        es.turn = TurnSide::Mirrored;
      }
      found = is_feasible(es);
    }
    if (!found) {
      throw InfeasibleSpec("population member " + std::to_string(k) + " has no feasible draw");
    }

    std::string id = std::to_string(k);
    id.insert(0, width - id.size(), '0');
    SynthTrip member;
    member.spec = es;
    member.decoy = decoy;
    const Encounter enc = generate_encounter(es);
    member.truth = enc.truth;
    member.trip = to_trip(
      enc, es, spec.id_prefix + id, spec.label, decoy != DecoyKind::NotAtIntersection);

    const double t_x = enc.truth.t_x;
    auto & radar = member.trip.radar;
    if (decoy == DecoyKind::ShortTrack) {
      std::erase_if(radar, [&](const RadarRow & r) {
        return r.point.t < t_x - 0.9 || r.point.t > t_x + 0.3;
      });
    } else if (decoy == DecoyKind::Gap) {
      std::erase_if(radar, [&](const RadarRow & r) {
        return r.point.t > t_x - 1.9 && r.point.t < t_x - 0.7;
      });
    }
    out[k] = std::move(member);
  });
  return out;
}

RadarScene generate_radar_scene(const SceneSpec & spec)
{
  if (spec.points_per_target < 2 || !(spec.sample_rate > 0.0)) {
    throw InvalidInput("scene needs at least two points per target and a positive rate");
  }
  std::mt19937_64 rng(derive_seed(spec.seed, 0));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double dt = 1.0 / spec.sample_rate;
  const double span = dt * static_cast<double>(spec.points_per_target - 1);

  struct Item
  {
    RadarPoint p;
    int truth;
  };
  std::vector<Item> items;
  const auto emit = [&](RadarPoint p, int truth) {
    p.range += spec.noise.range * gauss(rng);
    p.range_rate += spec.noise.range_rate * gauss(rng);
    p.transversal += spec.noise.transversal * gauss(rng);
    p.range = std::max(p.range, 0.1);
    p.azimuth = rad2deg(std::asin(std::clamp(p.transversal / p.range, -1.0, 1.0)));
    items.push_back({p, truth});
  };

  // Redraw until every target point passes the eligibility gates and no point of one target is
  // compatible with a point of the other, so the two tracks are separable by construction.
  std::array<std::vector<RadarPoint>, 2> targets;
  const AssociationConfig gate;
  for (int attempt = 0;; ++attempt) {
    for (int target = 0; target < 2; ++target) {
      const double r0 = std::uniform_real_distribution<double>(60.0, 90.0)(rng);
      const double speed = std::uniform_real_distribution<double>(5.0, 15.0)(rng);
      const double slope =
        (target == 0 ? 1.0 : -1.0) * std::uniform_real_distribution<double>(1.0, 3.0)(rng);
      const double tr0 = -0.5 * slope * span;
      const double offset = target == 0 ? 0.0 : 0.5 * dt;
      auto & pts = targets[static_cast<std::size_t>(target)];
      pts.clear();
      for (std::size_t k = 0; k < spec.points_per_target; ++k) {
        const double tau = static_cast<double>(k) * dt;
        RadarPoint p;
        p.t = tau + offset;
        p.range = r0 - speed * tau;
        p.range_rate = -speed;
        p.transversal = tr0 + slope * tau;
        p.azimuth = rad2deg(std::asin(p.transversal / p.range));
        pts.push_back(p);
      }
    }
    bool separable = true;
    for (const auto & pts : targets) {
      separable = separable && std::all_of(pts.begin(), pts.end(), [&](const RadarPoint & p) {
        return point_eligible(p, gate);
      });
    }
    for (const auto & a : targets[0]) {
      if (!separable) {
        break;
      }
      for (const auto & b : targets[1]) {
        const bool linked = a.t < b.t ? neighbor_compatible(a, b, gate) : neighbor_compatible(b, a, gate);
        if (linked) {
          separable = false;
          break;
        }
      }
    }
    if (separable) {
      break;
    }
    if (attempt == 1000) {
      throw InfeasibleSpec("no separable pair of scene targets");
    }
  }
  for (int target = 0; target < 2; ++target) {
    for (const auto & p : targets[static_cast<std::size_t>(target)]) {
      emit(p, target);
    }
  }
  for (std::size_t k = 0; k < spec.noise_points; ++k) {
    RadarPoint p;
    p.t = std::uniform_real_distribution<double>(0.0, span)(rng);
    p.range = std::uniform_real_distribution<double>(15.0, 100.0)(rng);
    p.range_rate = std::uniform_real_distribution<double>(-15.0, -0.5)(rng);
    p.transversal = std::uniform_real_distribution<double>(-1.0, 1.0)(rng) * p.range *
                    std::sin(deg2rad(5.0));
    emit(p, -1);
  }
  std::stable_sort(items.begin(), items.end(), [](const Item & a, const Item & b) {
    return a.p.t < b.p.t;
  });
  RadarScene scene;
  for (const auto & it : items) {
    scene.points.push_back(it.p);
    scene.truth.push_back(it.truth);
  }
  return scene;
}

}  // namespace ltapod
