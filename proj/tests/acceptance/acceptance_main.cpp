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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any criterion fails.

#include "fixtures.hpp"
#include "ltapod/config.hpp"
#include "ltapod/errors.hpp"
#include "ltapod/io.hpp"
#include "ltapod/pipeline.hpp"
#include "ltapod/scenario_model.hpp"
#include "ltapod/stats.hpp"
#include "ltapod/synth.hpp"
#include "oracles/oracles.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using ltapod::Platform;
using ltapod::RejectReason;

namespace
{

struct Outcome
{
  bool pass{false};
  std::string detail;
};

std::string fmt(const char * f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

ltapod::PipelineConfig config_for(Platform platform)
{
  ltapod::PipelineConfig cfg;
  cfg.screening.platform = platform;
  return cfg;
}

// First accepted event of a trip with its metrics, if any.
std::optional<ltapod::ConflictRecord> first_record(const ltapod::TripOutcome & out)
{
  for (const auto & c : out.candidates) {
    if (!c.reason && c.record) {
      return c.record;
    }
  }
  return std::nullopt;
}

std::string read_file(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1: zero-noise closure over the full parameter box.
Outcome zero_noise_closure(const fs::path &)
{
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  const ltapod::ParameterRanges ranges;
  int closed = 0;
  int redraws = 0;
  double max_tcp = 0.0, max_dcp = 0.0, max_v = 0.0;
  double lo_v = 1e9, hi_v = 0.0, lo_t = 1e9, hi_t = 0.0;
  constexpr int kCount = 200;
  for (int k = 0; k < kCount; ++k) {
    ltapod::EncounterSpec base;
    base.platform = k % 2 ? Platform::LightVehicle : Platform::HeavyTruck;
    ltapod::EncounterSpec spec;
    for (;;) {
      try {
        spec = ltapod::draw_feasible_spec(ranges, base, rng);
        break;
      } catch (const ltapod::InfeasibleSpec &) {
        ++redraws;
      }
    }
    lo_v = std::min(lo_v, spec.sdv_speed);
    hi_v = std::max(hi_v, spec.sdv_speed);
    lo_t = std::min(lo_t, spec.t_cp_true);
    hi_t = std::max(hi_t, spec.t_cp_true);
    const auto enc = ltapod::generate_encounter(spec);
    const auto trip = ltapod::to_trip(enc, spec, "ac1_" + std::to_string(k));
    const auto rec = first_record(ltapod::process_trip(trip, config_for(spec.platform)));
    if (!rec) {
      continue;
    }
    const double e_t = std::abs(rec->t_cp - enc.truth.t_cp);
    const double e_d = std::abs(rec->d_cp - enc.truth.d_cp);
    const double e_v = std::abs(rec->v_sdv - enc.truth.v_sdv);
    max_tcp = std::max(max_tcp, e_t);
    max_dcp = std::max(max_dcp, e_d);
    max_v = std::max(max_v, e_v);
    closed += e_t <= 0.05 && e_d <= 0.5 && e_v <= 0.1 ? 1 : 0;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = closed >= static_cast<int>(std::ceil(0.99 * kCount)) && secs < 30.0;
  return {pass, fmt(
                  "%d/%d within (0.05 s, 0.5 m, 0.1 m/s); max err t_cp %.4f d_cp %.4f v_sdv %.4f; "
                  "v_sdv %.1f-%.1f, t_cp %.2f-%.2f, %d redraws; %.2f s",
                  closed, kCount, max_tcp, max_dcp, max_v, lo_v, hi_v, lo_t, hi_t, redraws, secs)};
}

// 2: mean absolute t_cp error under the reference noise levels.
Outcome noisy_recovery(const fs::path &)
{
  std::mt19937_64 rng(2002);
  const ltapod::NoiseSpec noise{0.5, 0.25, 0.3, 1.0};
  constexpr int kCount = 500;
  double sum = 0.0;
  int recovered = 0;
  for (int k = 0; k < kCount; ++k) {
    ltapod::EncounterSpec base;
    base.platform = k % 2 ? Platform::LightVehicle : Platform::HeavyTruck;
    base.noise = noise;
    const auto spec = ltapod::draw_feasible_spec({}, base, rng);
    const auto enc = ltapod::generate_encounter(spec);
    const auto trip = ltapod::to_trip(enc, spec, "ac2_" + std::to_string(k));
    if (const auto rec = first_record(ltapod::process_trip(trip, config_for(spec.platform)))) {
      sum += std::abs(rec->t_cp - enc.truth.t_cp);
      ++recovered;
    }
  }
  const double mae = recovered > 0 ? sum / recovered : INFINITY;
  return {mae < 0.3, fmt("mean |t_cp error| %.4f s over %d/%d recovered events", mae, recovered, kCount)};
}

struct AssociationScore
{
  double precision{0.0};
  double recall{0.0};
};

// Pooled point-level scores; each track is credited to its majority ground-truth target.
AssociationScore score_scenes(const ltapod::NoiseSpec & noise, int scenes, std::ofstream * out)
{
  ltapod::SceneSpec spec;
  spec.points_per_target = 30;
  spec.noise_points = 15;  // 15 of 75 points
  spec.noise = noise;
  std::size_t assigned = 0, correct = 0, target_points = 0, recalled = 0;
  for (int s = 0; s < scenes; ++s) {
    spec.seed = static_cast<std::uint64_t>(3000 + s);
    const auto scene = ltapod::generate_radar_scene(spec);
    const auto res = ltapod::associate_targets(scene.points, ltapod::AssociationConfig{});
    std::map<int, std::map<int, std::size_t>> votes;
    for (std::size_t k = 0; k < scene.points.size(); ++k) {
      const auto & p = scene.points[k];
      if (out != nullptr) {
        *out << s << ',' << ltapod::format_double(p.t) << ',' << ltapod::format_double(p.range) << ','
             << ltapod::format_double(p.range_rate) << ',' << ltapod::format_double(p.transversal) << ','
             << ltapod::format_double(p.azimuth) << ',' << scene.truth[k] << ',' << res.labels[k] << '\n';
      }
      if (res.labels[k] >= 0) {
        ++votes[res.labels[k]][scene.truth[k]];
      }
      target_points += scene.truth[k] >= 0 ? 1 : 0;
    }
    std::map<int, std::size_t> best_for_target;
    for (const auto & [track, v] : votes) {
      int majority = -1;
      std::size_t n = 0, total = 0;
      for (const auto & [truth, c] : v) {
        total += c;
        if (truth >= 0 && c > n) {
          majority = truth;
          n = c;
        }
      }
      assigned += total;
      correct += n;
      if (majority >= 0) {
        best_for_target[majority] = std::max(best_for_target[majority], n);
      }
    }
    for (const auto & [target, n] : best_for_target) {
      recalled += n;
    }
  }
  return {assigned ? static_cast<double>(correct) / assigned : 0.0,
          static_cast<double>(recalled) / static_cast<double>(target_points)};
}

// 3: point-level association precision and recall with 20% injected clutter. The measurement
// noise case is reported alongside; it is not part of the criterion.
Outcome association_quality(const fs::path & artifacts)
{
  constexpr int kScenes = 50;
  std::ofstream out(artifacts / "association_scenes.csv");
  out << "scene,t,range,range_rate,transversal,azimuth,truth,track\n";
  const auto clean = score_scenes({}, kScenes, &out);
  const auto noisy = score_scenes({0.5, 0.25, 0.3, 0.0}, kScenes, nullptr);
  return {clean.precision >= 0.9 && clean.recall >= 0.9,
          fmt("precision %.4f recall %.4f over %d scenes (point sets in association_scenes.csv); "
              "with range/range-rate/transversal noise 0.5/0.25/0.3: precision %.4f recall %.4f",
              clean.precision, clean.recall, kScenes, noisy.precision, noisy.recall)};
}

// 4: boundary suite, one pass case and one violation at each exact threshold per direction.
Outcome screening_exactness(const fs::path &)
{
  constexpr double dt = 0.125;  // binary-exact times keep the thresholds exact
  struct Case
  {
    std::string name;
    std::optional<RejectReason> expected;
    double host_speed_dip{3.25};
    double heading_peak{9.75};
    double rr{-0.75};
    double end{2.625};
    double gap_end{2.125};
    bool at_intersection{true};
  };
  int right = 0;
  int total = 0;
  std::string misses;
  for (const auto platform : {Platform::HeavyTruck, Platform::LightVehicle}) {
    const bool ht = platform == Platform::HeavyTruck;
    std::vector<Case> cases(6);
    cases[0].name = "pass";
    cases[1].name = "intersection";
    cases[1].expected = RejectReason::NotAtIntersection;
    cases[1].at_intersection = false;
    cases[2].expected = RejectReason::HostNotStraight;
    if (ht) {
      cases[2].name = "speed=3.0";
      cases[2].host_speed_dip = 3.0;
    } else {
      cases[2].name = "heading=10";
      cases[2].heading_peak = 10.0;
    }
    cases[3].name = "rr=-0.5";
    cases[3].expected = RejectReason::TargetNotCrossing;
    cases[3].rr = -0.5;
    cases[4].name = "duration=1.5";
    cases[4].expected = RejectReason::Duration;
    cases[4].end = 2.5;
    cases[5].name = "gap=1.0";
    cases[5].expected = RejectReason::Gap;
    cases[5].gap_end = 2.25;

    const auto cfg = config_for(platform).screening;
    for (const auto & c : cases) {
      auto host = fixtures::straight_host(0.0, 4.0, 10.0, 0.0, dt);
      host[16].speed = c.host_speed_dip;  // t = 2.0
      host[16].heading = c.heading_peak;
      ltapod::TargetTrack track;
      const double sign = ht ? 1.0 : -1.0;
      for (double t = 1.0; t <= c.end; t += dt) {
        if (t > 1.25 && t < c.gap_end) {
          continue;
        }
        const double tr = sign * (-3.0 + 6.0 * (t - 1.0) / (c.end - 1.0));
        track.points.push_back({t, 40.0 + c.rr * (t - 1.0), c.rr, tr, 0.0});
      }
      const auto window = ltapod::host_window(host, track.start_time(), track.end_time());
      const auto res = ltapod::screen_event(window, track, cfg, c.at_intersection);
      ++total;
      if (res.reason == c.expected) {
        ++right;
      } else {
        misses += " " + std::string(ltapod::to_string(platform)) + ":" + c.name;
      }
    }
  }
  return {right == total && total == 12,
          fmt("%d/%d cases classified with the expected first reason%s", right, total, misses.c_str())};
}

// 5: rank-sum test against brute-force enumeration and under monotone transforms.
Outcome mww_correctness(const fs::path &)
{
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  const auto draw = [&](int n) {
    Eigen::VectorXd v(n);
    for (int k = 0; k < n; ++k) {
      v[k] = u(rng);
    }
    return v;
  };
  const auto as_vec = [](const Eigen::VectorXd & v) { return std::vector<double>(v.begin(), v.end()); };

  double exact_err = 0.0;
  for (int n1 = 1; n1 <= 8; ++n1) {
    for (int n2 = 1; n2 <= 8; ++n2) {
      for (int rep = 0; rep < 5; ++rep) {
        const auto a = draw(n1);
        const auto b = draw(n2);
        const auto r = ltapod::mww_test({a}, {b}, ltapod::MwwMethod::Exact);
        exact_err = std::max(exact_err, std::abs(r.p_value - oracles::mww_enumerated_p(as_vec(a), as_vec(b))));
      }
    }
  }
  double normal_err = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const ltapod::EmpiricalDistribution a(draw(8));
    const ltapod::EmpiricalDistribution b(draw(8));
    const double exact = ltapod::mww_test(a, b, ltapod::MwwMethod::Exact).p_value;
    const double normal = ltapod::mww_test(a, b, ltapod::MwwMethod::NormalApprox).p_value;
    normal_err = std::max(normal_err, std::abs(exact - normal));
  }
  int invariant = 0;
  constexpr int kPairs = 200;
  std::uniform_int_distribution<int> size(3, 80);
  std::lognormal_distribution<double> dist(3.0, 0.6);
  for (int rep = 0; rep < kPairs; ++rep) {
    std::vector<ltapod::ConflictRecord> pa(static_cast<std::size_t>(size(rng)));
    std::vector<ltapod::ConflictRecord> pb(static_cast<std::size_t>(size(rng)));
    for (auto * p : {&pa, &pb}) {
      for (auto & r : *p) {
        r.d_cp = dist(rng);
        r.v_sdv = 12.0;
        r.t_cp = r.d_cp / r.v_sdv;
      }
    }
    const auto p_direct = ltapod::mww_test(
      ltapod::build_distribution(pa, ltapod::Variable::Dcp).distribution,
      ltapod::build_distribution(pb, ltapod::Variable::Dcp).distribution).p_value;
    const auto p_inverse = ltapod::mww_test(
      ltapod::build_distribution(pa, ltapod::Variable::DcpInv).distribution,
      ltapod::build_distribution(pb, ltapod::Variable::DcpInv).distribution).p_value;
    invariant += p_direct == p_inverse ? 1 : 0;
  }
  const bool pass = exact_err <= 1e-9 && normal_err <= 0.01 && invariant == kPairs;
  return {pass, fmt("exact vs enumeration max |dp| %.2e (n1,n2 <= 8); normal vs exact max |dp| %.5f "
                    "at (8,8) over 200; rank invariance %d/%d identical",
                    exact_err, normal_err, invariant, kPairs)};
}

// 6: constructed encounter with a 2.3 s margin and its time-to-conflict-point trace.
Outcome reference_fixture(const fs::path & artifacts)
{
  ltapod::EncounterSpec spec;
  spec.platform = Platform::HeavyTruck;
  spec.sdv_speed = 12.0;
  spec.t_cp_true = 2.3;
  spec.tv_speed_at_crossing = 6.0;
  spec.tv_turn_radius = 15.0;
  const auto enc = ltapod::generate_encounter(spec);
  const auto trip = ltapod::to_trip(enc, spec, "fixture");
  const auto out = ltapod::process_trip(trip, config_for(spec.platform), true);
  const ltapod::CandidateOutcome * event = nullptr;
  for (const auto & c : out.candidates) {
    if (!c.reason && c.record) {
      event = &c;
      break;
    }
  }
  if (event == nullptr) {
    return {false, "fixture produced no accepted event"};
  }
  const auto trace = ltapod::conflict_trace(*event->reconstruction);
  std::ofstream csv(artifacts / "conflict_trace.csv");
  csv << "relative_time,t_cp\n";
  Eigen::MatrixX2d a(static_cast<Eigen::Index>(trace.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(trace.size()));
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    a(i, 0) = 1.0;
    a(i, 1) = trace[k].relative_time;
    y[i] = trace[k].t_cp;
    csv << ltapod::format_double(trace[k].relative_time) << ',' << ltapod::format_double(trace[k].t_cp) << '\n';
  }
  const Eigen::Vector2d fit = a.colPivHouseholderQr().solve(y);
  const double deviation = (a * fit - y).cwiseAbs().maxCoeff();
  const double span = y.maxCoeff() - y.minCoeff();
  const double t_cp = event->record->t_cp;
  const bool pass = std::abs(t_cp - 2.3) <= 0.05 && deviation < 0.05 * span;
  return {pass, fmt("recovered t_cp %.4f s; trace slope %.4f, max deviation %.2f%% of range over %zu "
                    "samples (conflict_trace.csv)",
                    t_cp, fit[1], 100.0 * deviation / span, trace.size())};
}

std::vector<ltapod::ConflictRecord> source_records(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> t_cp(0.8, 0.4);
  std::uniform_real_distribution<double> v_sdv(8.0, 25.0);
  std::gamma_distribution<double> v_tv(6.0, 1.0);
  std::vector<ltapod::ConflictRecord> out(n);
  for (auto & r : out) {
    r.t_cp = t_cp(rng);
    r.v_sdv = v_sdv(rng);
    r.v_tv = v_tv(rng);
    r.d_cp = r.t_cp * r.v_sdv;
  }
  return out;
}

Eigen::VectorXd sample_column(const std::vector<ltapod::ScenarioSample> & s, int column)
{
  Eigen::VectorXd v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) {
    v[static_cast<Eigen::Index>(k)] = column == 0 ? s[k].t_cp : column == 1 ? s[k].v_sdv : s[k].v_tv;
  }
  return v;
}

// 7: marginal fidelity of both sampling modes and byte-identical scenario files.
Outcome sampler_fidelity(const fs::path & artifacts)
{
  const auto records = source_records(5000, 7007);
  double worst[2] = {0.0, 0.0};
  bool identical = true;
  for (const auto mode : {ltapod::SamplingMode::JointResample, ltapod::SamplingMode::IndependentKde}) {
    const auto model = ltapod::fit_model(records, mode);
    const auto samples = ltapod::sample_scenarios(model, 10000, 77);
    for (int c = 0; c < 3; ++c) {
      const ltapod::EmpiricalDistribution src(model.source.col(c));
      const ltapod::EmpiricalDistribution drawn(sample_column(samples, c));
      worst[mode == ltapod::SamplingMode::IndependentKde] =
        std::max(worst[mode == ltapod::SamplingMode::IndependentKde], ltapod::ks_distance(drawn, src));
    }
    const auto name = std::string(ltapod::to_string(mode));
    const auto f1 = artifacts / ("scenarios_" + name + "_a.csv");
    const auto f2 = artifacts / ("scenarios_" + name + "_b.csv");
    ltapod::write_scenarios(f1, samples);
    ltapod::write_scenarios(f2, ltapod::sample_scenarios(model, 10000, 77));
    identical = identical && read_file(f1) == read_file(f2) && !read_file(f1).empty();
  }
  const bool pass = worst[0] < 0.02 && worst[1] < 0.05 && identical;
  return {pass, fmt("max marginal KS resample %.4f, kde %.4f; same-seed files %s", worst[0], worst[1],
                    identical ? "byte-identical" : "DIFFER")};
}

std::vector<ltapod::ConflictRecord> to_records(const std::vector<ltapod::ScenarioSample> & s, double tv_shift)
{
  std::vector<ltapod::ConflictRecord> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    out[k].t_cp = s[k].t_cp;
    out[k].v_sdv = s[k].v_sdv;
    out[k].v_tv = s[k].v_tv + tv_shift;
    out[k].d_cp = s[k].d_cp;
  }
  return out;
}

// 8: populations from one model are not told apart; a +2 m/s target speed shift is.
Outcome same_population(const fs::path &)
{
  const auto model = ltapod::fit_model(source_records(5000, 8008), ltapod::SamplingMode::JointResample);
  std::map<ltapod::Variable, int> same;
  int shifted = 0;
  constexpr int kReps = 100;
  for (int rep = 0; rep < kReps; ++rep) {
    const auto a = to_records(ltapod::sample_scenarios(model, 500, ltapod::derive_seed(8008, 2 * rep)), 0.0);
    const auto b_samples = ltapod::sample_scenarios(model, 500, ltapod::derive_seed(8008, 2 * rep + 1));
    const auto b = to_records(b_samples, 0.0);
    for (const auto v : ltapod::kConflictVariables) {
      const auto p = ltapod::mww_test(
        ltapod::build_distribution(a, v).distribution, ltapod::build_distribution(b, v).distribution).p_value;
      same[v] += p > 0.05 ? 1 : 0;
    }
    const auto b_shift = to_records(b_samples, 2.0);
    const auto p = ltapod::mww_test(
      ltapod::build_distribution(a, ltapod::Variable::Vtv).distribution,
      ltapod::build_distribution(b_shift, ltapod::Variable::Vtv).distribution).p_value;
    shifted += p < 0.01 ? 1 : 0;
  }
  bool pass = shifted >= 95;
  std::string per_var;
  for (const auto & [v, n] : same) {
    pass = pass && n >= 90;
    per_var += fmt(" %s %d", std::string(ltapod::to_string(v)).c_str(), n);
  }
  return {pass, fmt("same model p > 0.05 in [%s ] of %d; shifted v_tv p < 0.01 in %d of %d", per_var.c_str(),
                    kReps, shifted, kReps)};
}

// 9: 10^4 trips through files, single-threaded and 8-way, identical outputs.
Outcome determinism(const fs::path &)
{
  const fs::path work = fs::temp_directory_path() / "ltapod_acceptance_scale";
  fs::remove_all(work);
  std::vector<ltapod::TripRecord> trips;
  for (const auto platform : {Platform::HeavyTruck, Platform::LightVehicle}) {
    ltapod::PopulationSpec spec;
    spec.n = 5000;
    spec.platform = platform;
    spec.decoy_fraction = 0.2;
    spec.noise = {0.5, 0.25, 0.3, 1.0};
    spec.label = std::string(ltapod::to_string(platform));
    spec.id_prefix = spec.label + "_";
    for (auto & t : ltapod::generate_population(spec, 9009, 8)) {
      trips.push_back(std::move(t.trip));
    }
  }
  ltapod::write_trips(work / "in", trips);

  ltapod::PipelineConfig cfg;
  cfg.input = work / "in";
  cfg.compare_labels = {"ht", "lv"};
  cfg.scenario_samples = 2000;
  cfg.seed = 9;
  double secs[2] = {0.0, 0.0};
  ltapod::RunReport reports[2];
  const std::size_t jobs[2] = {1, 8};
  for (int k = 0; k < 2; ++k) {
    cfg.jobs = jobs[k];
    cfg.output = work / ("out_" + std::to_string(jobs[k]));
    const auto t0 = std::chrono::steady_clock::now();
    reports[k] = ltapod::run_pipeline(cfg);
    secs[k] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  bool identical = true;
  std::size_t files = 0;
  for (const auto & entry : fs::directory_iterator(work / "out_1")) {
    ++files;
    const auto other = work / "out_8" / entry.path().filename();
    identical = identical && fs::exists(other) && read_file(entry.path()) == read_file(other);
  }
  const auto & f = reports[1].funnel;
  const bool pass = identical && files >= 3 && secs[1] < 60.0 &&
                    reports[1].status != ltapod::RunStatus::Failed && f.trips_in == 10000;
  const std::string result = fmt(
    "%zu trips, %zu events; %zu output files %s; 1 job %.1f s, 8 jobs %.1f s (%u hardware threads)",
    f.trips_in, f.accepted, files, identical ? "identical" : "DIFFER", secs[0], secs[1],
    std::thread::hardware_concurrency());
  fs::remove_all(work);
  return {pass, result};
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"ltapod acceptance suite"};
  std::vector<int> only;
  std::string artifacts = "acceptance_artifacts";
  app.add_option("criteria", only, "criterion numbers to run (default: all)");
  app.add_option("--artifacts", artifacts, "directory for emitted point sets, traces and scenario files")
    ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome(const fs::path &)>>> criteria{
    {"zero-noise pipeline closure", zero_noise_closure},
    {"noisy recovery", noisy_recovery},
    {"association quality", association_quality},
    {"screening boundary suite", screening_exactness},
    {"rank-sum test correctness", mww_correctness},
    {"2.3 s reference encounter", reference_fixture},
    {"scenario sampler fidelity", sampler_fidelity},
    {"same-population rank-sum property", same_population},
    {"determinism and parallel scale", determinism},
  };
  fs::create_directories(artifacts);
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second(artifacts);
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("AC%d %s %s: %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
