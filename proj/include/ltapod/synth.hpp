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

#ifndef LTAPOD__SYNTH_HPP_
#define LTAPOD__SYNTH_HPP_

#include "ltapod/geo.hpp"
#include "ltapod/io.hpp"
#include "ltapod/screening.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ltapod
{

/// Per-channel Gaussian noise standard deviations.
struct NoiseSpec
{
  double range{0.0};        // [m]
  double range_rate{0.0};   // [m/s]
  double transversal{0.0};  // [m]
  double gps{0.0};          // [m], per planar axis
};

enum class TurnSide {
  Left,      // regular left turn from the opposite lane
  Mirrored,  // right-hand mirror image; crosses the host path in the wrong direction
};

struct EncounterSpec
{
  double sdv_speed{15.0};            // [m/s]
  double tv_speed_at_crossing{5.0};  // [m/s], constant along the turn
  double t_cp_true{2.0};             // [s]
  double tv_turn_radius{20.0};       // [m]
  double sample_rate{10.0};          // [Hz], host and radar
  NoiseSpec noise;
  Platform platform{Platform::HeavyTruck};
  std::uint64_t seed{0};

  double sdv_heading{0.0};     // [deg]
  GeoPoint anchor{42.2808, -83.7430};
  double t_start{0.0};         // [s], first host sample
  double tv_lane_offset{3.5};  // [m], opposite-lane centre to the left of the host path
  double pre_window{4.0};      // [s] of radar before the crossing
  double post_window{2.0};     // [s] of radar after the crossing
  double fov_half_angle{5.5};  // [deg]
  double max_lateral_accel{4.0};        // [m/s^2], bound on v^2 / R
  double min_visible_before{2.0};       // [s] of continuous radar coverage before the crossing
  std::size_t min_samples_after{2};     // radar samples past the crossing
  TurnSide turn{TurnSide::Left};

  /// Throws InfeasibleSpec for non-positive magnitudes or a rate below 5 Hz.
  void validate() const;
};

struct TruthSample
{
  double t{0.0};
  PlanarPoint position{PlanarPoint::Zero()};  // anchor frame [m]
  PlanarPoint velocity{PlanarPoint::Zero()};  // [m/s]
};

struct GroundTruth
{
  double t_x{0.0};
  double d_cp{0.0};
  double t_cp{0.0};  // d_cp / v_sdv
  double v_sdv{0.0};
  double v_tv{0.0};
  std::vector<TruthSample> sdv_history;  // at host sample times
  std::vector<TruthSample> tv_history;   // at host sample times
};

struct Encounter
{
  std::vector<HostState> host;
  std::vector<RadarPoint> radar;  // contiguous visible stretch around the crossing
  GroundTruth truth;
};

/// Straight constant-speed host, constant-radius turn for the target, radar returns inside the
/// field of view plus seeded noise. Throws InfeasibleSpec when the turn exceeds the lateral
/// acceleration bound or the radar cannot follow the target through the crossing.
Encounter generate_encounter(const EncounterSpec & spec);

bool is_feasible(const EncounterSpec & spec);

struct Range
{
  double lo{0.0};
  double hi{0.0};
};

struct ParameterRanges
{
  Range sdv_speed{8.0, 25.0};
  Range tv_speed{2.0, 10.0};
  Range t_cp{0.5, 6.0};
  Range turn_radius{5.0, 50.0};
};

/// Draws sdv_speed and t_cp once, then redraws target speed and turn radius until the
/// encounter is feasible. Throws InfeasibleSpec after `max_attempts`.
EncounterSpec draw_feasible_spec(
  const ParameterRanges & ranges, const EncounterSpec & base, std::mt19937_64 & rng,
  int max_attempts = 500);

enum class DecoyKind { None, SlowHost, NotAtIntersection, WrongDirection, ShortTrack, Gap };

std::string_view to_string(DecoyKind kind);
DecoyKind parse_decoy_kind(std::string_view text);
/// Screening reason a decoy is built to trigger; nullopt for None.
std::optional<RejectReason> expected_reason(DecoyKind kind);
/// Gap needs pre-tracked targets; an association window would split the track instead.
std::vector<DecoyKind> default_decoy_kinds(Platform platform);

struct PopulationSpec
{
  std::size_t n{100};
  ParameterRanges ranges;
  double decoy_fraction{0.0};
  std::vector<DecoyKind> decoy_kinds;  // cycled over the decoys; empty means the platform default
  Platform platform{Platform::HeavyTruck};
  NoiseSpec noise;
  double sample_rate{10.0};
  std::string label;
  std::string id_prefix{"trip"};
};

struct SynthTrip
{
  TripRecord trip;
  EncounterSpec spec;
  GroundTruth truth;
  DecoyKind decoy{DecoyKind::None};

  bool eligible() const { return decoy == DecoyKind::None; }
};

/// Exactly round(n * decoy_fraction) decoys. Member k uses its own derived seed, so the result
/// does not depend on `jobs`.
std::vector<SynthTrip> generate_population(
  const PopulationSpec & spec, std::uint64_t seed, std::size_t jobs = 1);

/// Channel rows of one encounter as a trip (target id 1 on the light-vehicle platform).
TripRecord to_trip(
  const Encounter & enc, const EncounterSpec & spec, std::string trip_id, std::string label = {},
  bool at_intersection = true);

struct SceneSpec
{
  std::size_t points_per_target{30};
  std::size_t noise_points{10};
  double sample_rate{10.0};
  NoiseSpec noise;
  std::uint64_t seed{0};
};

struct RadarScene
{
  std::vector<RadarPoint> points;  // sorted by time
  std::vector<int> truth;          // target index per point, -1 for injected noise
};

/// Two simultaneous approaching targets with straight transversal ramps of opposite slope,
/// plus uniformly scattered clutter. Target kinematics are redrawn until no point of one target
/// is compatible with a point of the other under the default association thresholds.
RadarScene generate_radar_scene(const SceneSpec & spec);

}  // namespace ltapod

#endif  // LTAPOD__SYNTH_HPP_
