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

#include "ltapod/pipeline.hpp"

#include "ltapod/errors.hpp"
#include "ltapod/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace ltapod
{

namespace
{

bool any_flagged(const TripRecord & trip, double t0, double t1)
{
  return std::any_of(trip.host.begin(), trip.host.end(), [&](const HostRow & h) {
    return h.at_intersection && h.state.t >= t0 && h.state.t <= t1;
  });
}

void add_summaries(
  RunReport & report, std::span<const ConflictRecord> records, const std::string & population,
  const PipelineConfig & cfg)
{
  for (const auto v : cfg.variables) {
    VariableSummary vs;
    vs.population = population;
    vs.variable = v;
    if (!records.empty()) {
      try {
        const auto built = build_distribution(records, v, population);
        vs.summary = summarize(built.distribution, cfg.histogram_bins);
        vs.excluded = built.excluded;
      } catch (const InsufficientData &) {
        vs.excluded = records.size();
      }
    }
    report.summaries.push_back(std::move(vs));
  }
}

nlohmann::ordered_json summary_to_json(const VariableSummary & vs)
{
  nlohmann::ordered_json j;
  j["population"] = vs.population;
  j["variable"] = std::string(to_string(vs.variable));
  j["excluded"] = vs.excluded;
  if (!vs.summary) {
    j["count"] = 0;
    return j;
  }
  const auto & s = *vs.summary;
  j["count"] = s.count;
  j["mean"] = s.mean;
  j["stddev"] = s.stddev;
  j["min"] = s.min;
  j["max"] = s.max;
  j["histogram"] = {{"edges", s.histogram.edges}, {"counts", s.histogram.counts}};
  return j;
}

}  // namespace

std::vector<TargetTrack> candidate_tracks(const TripRecord & trip, const AssociationConfig & cfg)
{
  if (trip.platform == Platform::HeavyTruck) {
    return associate_targets(trip.radar_points(), cfg).tracks;
  }
  std::map<int, TargetTrack> by_id;
  for (const auto & row : trip.radar) {
    if (row.target_id < 0) {
      continue;
    }
    auto & track = by_id[row.target_id];
    track.track_id = row.target_id;
    if (!track.points.empty() && !(row.point.t > track.points.back().t)) {
      continue;
    }
    track.points.push_back(row.point);
  }
  std::vector<TargetTrack> tracks;
  tracks.reserve(by_id.size());
  for (auto & [id, track] : by_id) {
    tracks.push_back(std::move(track));
  }
  std::stable_sort(tracks.begin(), tracks.end(), [](const TargetTrack & a, const TargetTrack & b) {
    return a.start_time() < b.start_time();
  });
  return tracks;
}

TripOutcome process_trip(const TripRecord & trip, const PipelineConfig & cfg, bool keep_reconstruction)
{
  TripOutcome out;
  out.trip_id = trip.trip_id;
  auto host = trip.host_states();
  if (host.empty()) {
    throw InvalidInput("trip " + trip.trip_id + " has no host samples");
  }
  if (std::any_of(host.begin(), host.end(), [](const HostState & h) { return std::isnan(h.heading); })) {
    fill_missing_headings(host);
  }
  ScreeningConfig screening = cfg.screening;
  screening.platform = trip.platform;

  for (const auto & track : candidate_tracks(trip, cfg.association)) {
    CandidateOutcome c;
    c.track_id = track.track_id;
    c.start_time = track.start_time();
    c.end_time = track.end_time();
    c.points = track.points.size();
    const auto window = host_window(host, track.start_time(), track.end_time());
    const bool at_intersection =
      !window.empty() && any_flagged(trip, window.front().t, window.back().t);
    auto screened = screen_event(window, track, screening, at_intersection, trip.trip_id);
    if (!screened.accepted()) {
      c.reason = screened.reason;
      out.candidates.push_back(std::move(c));
      continue;
    }
    try {
      auto rec = reconstruct(*screened.event);
      ConflictRecord record = compute_metrics(rec);
      record.label = trip.label;
      c.record = std::move(record);
      if (keep_reconstruction) {
        c.reconstruction = std::move(rec);
      }
    } catch (const std::exception & e) {
      c.error = e.what();
    }
    out.candidates.push_back(std::move(c));
  }
  return out;
}

std::string_view to_string(RunStatus status)
{
  switch (status) {
    case RunStatus::Success:
      return "success";
    case RunStatus::Partial:
      return "partial";
    case RunStatus::Failed:
      return "failed";
  }
  return "failed";
}

int exit_code(RunStatus status)
{
  switch (status) {
    case RunStatus::Success:
      return 0;
    case RunStatus::Partial:
      return 2;
    case RunStatus::Failed:
      return 1;
  }
  return 1;
}

RunReport analyze(std::span<const TripRecord> trips, const PipelineConfig & cfg, bool keep_reconstruction)
{
  cfg.validate();
  {
    std::set<std::string_view> ids;
    for (const auto & t : trips) {
      if (!ids.insert(t.trip_id).second) {
        throw InvalidInput("duplicate trip_id '" + t.trip_id + "'");
      }
    }
  }

  RunReport report;
  report.trips.resize(trips.size());
  parallel_for(trips.size(), cfg.jobs, [&](std::size_t k) {
    try {
      report.trips[k] = process_trip(trips[k], cfg, keep_reconstruction);
    } catch (const std::exception & e) {
      report.trips[k].trip_id = trips[k].trip_id;
      report.trips[k].failed = true;
      report.trips[k].error = e.what();
    }
  });

  auto & f = report.funnel;
  f.trips_in = trips.size();
  for (const auto & t : report.trips) {
    if (t.failed) {
      ++f.trips_rejected;
      report.diagnostics.push_back(t.trip_id + ": " + t.error);
      continue;
    }
    ++f.trips_processed;
    for (const auto & c : t.candidates) {
      ++f.candidates;
      if (c.reason) {
        ++f.rejected_by[static_cast<std::size_t>(*c.reason)];
        continue;
      }
      ++f.accepted;
      if (c.record) {
        report.records.push_back(*c.record);
      } else {
        ++f.metrics_failed;
        report.diagnostics.push_back(t.trip_id + "#" + std::to_string(c.track_id) + ": " + c.error);
      }
    }
  }

  add_summaries(report, report.records, "all", cfg);
  std::set<std::string> labels;
  for (const auto & r : report.records) {
    labels.insert(r.label);
  }
  if (labels.size() > 1) {
    for (const auto & label : labels) {
      std::vector<ConflictRecord> subset;
      std::copy_if(report.records.begin(), report.records.end(), std::back_inserter(subset),
                   [&](const ConflictRecord & r) { return r.label == label; });
      add_summaries(report, subset, label, cfg);
    }
  }

  if (cfg.compare_labels) {
    const auto & [a, b] = *cfg.compare_labels;
    std::vector<ConflictRecord> pa;
    std::vector<ConflictRecord> pb;
    for (const auto & r : report.records) {
      if (r.label == a) {
        pa.push_back(r);
      } else if (r.label == b) {
        pb.push_back(r);
      }
    }
    for (const auto v : cfg.variables) {
      try {
        const auto da = build_distribution(pa, v, a);
        const auto db = build_distribution(pb, v, b);
        Comparison c;
        c.variable = v;
        c.label_a = a;
        c.label_b = b;
        c.n_a = static_cast<std::size_t>(da.distribution.size());
        c.n_b = static_cast<std::size_t>(db.distribution.size());
        c.result = mww_test(da.distribution, db.distribution);
        report.comparisons.push_back(c);
      } catch (const InsufficientData & e) {
        report.diagnostics.push_back(
          "comparison " + std::string(to_string(v)) + " skipped: " + e.what());
      }
    }
  }

  if (cfg.scenario_samples > 0) {
    try {
      const auto model = fit_model(report.records, cfg.model_mode);
      report.scenarios = sample_scenarios(model, cfg.scenario_samples, cfg.seed);
    } catch (const InsufficientData & e) {
      report.diagnostics.push_back(std::string("scenario model skipped: ") + e.what());
    }
  }

  report.status = f.trips_rejected > 0 || f.metrics_failed > 0 ? RunStatus::Partial : RunStatus::Success;
  return report;
}

RunReport run_pipeline(const PipelineConfig & cfg)
{
  RunReport report;
  IngestResult ingest;
  try {
    cfg.validate();
    ingest = ingest_trips(cfg.input, cfg.screening.platform);
    report = analyze(ingest.trips, cfg);
  } catch (const std::exception & e) {
    report = RunReport{};
    report.status = RunStatus::Failed;
    report.diagnostics.push_back(e.what());
    if (!cfg.output.empty()) {
      write_report(report, cfg, cfg.output);
    }
    return report;
  }

  report.funnel.trips_in += ingest.trips_dropped;
  report.funnel.trips_rejected += ingest.trips_dropped;
  std::vector<std::string> diagnostics;
  for (const auto & d : ingest.diagnostics) {
    diagnostics.push_back(d.to_string());
  }
  diagnostics.insert(diagnostics.end(), report.diagnostics.begin(), report.diagnostics.end());
  report.diagnostics = std::move(diagnostics);
  if (report.status == RunStatus::Success && (ingest.trips_dropped > 0 || !ingest.diagnostics.empty())) {
    report.status = RunStatus::Partial;
  }
  if (!cfg.output.empty()) {
    write_report(report, cfg, cfg.output);
  }
  return report;
}

std::string summary_json(const RunReport & report, const PipelineConfig & cfg)
{
  const auto & f = report.funnel;
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(report.status));
  nlohmann::ordered_json funnel;
  funnel["trips_in"] = f.trips_in;
  funnel["trips_processed"] = f.trips_processed;
  funnel["trips_rejected"] = f.trips_rejected;
  funnel["candidates"] = f.candidates;
  funnel["accepted"] = f.accepted;
  funnel["metrics_failed"] = f.metrics_failed;
  nlohmann::ordered_json reasons;
  for (const auto r : kRejectReasons) {
    reasons[std::string(to_string(r))] = f.rejected(r);
  }
  funnel["rejected"] = reasons;
  j["funnel"] = funnel;
  j["events"] = report.records.size();

  auto & summaries = j["summaries"] = nlohmann::ordered_json::array();
  for (const auto & vs : report.summaries) {
    summaries.push_back(summary_to_json(vs));
  }
  auto & comparisons = j["comparisons"] = nlohmann::ordered_json::array();
  for (const auto & c : report.comparisons) {
    nlohmann::ordered_json cj;
    cj["variable"] = std::string(to_string(c.variable));
    cj["label_a"] = c.label_a;
    cj["label_b"] = c.label_b;
    cj["n_a"] = c.n_a;
    cj["n_b"] = c.n_b;
    cj["u"] = c.result.u_statistic;
    cj["z"] = c.result.z_score;
    cj["p_value"] = c.result.p_value;
    cj["method"] = std::string(to_string(c.result.method));
    comparisons.push_back(cj);
  }
  if (cfg.scenario_samples > 0) {
    j["scenarios"] = {
      {"mode", std::string(to_string(cfg.model_mode))},
      {"count", report.scenarios.size()},
      {"seed", cfg.seed}};
  }
  j["diagnostics"] = report.diagnostics;
  return j.dump(2) + "\n";
}

void write_report(const RunReport & report, const PipelineConfig & cfg, const std::filesystem::path & dir)
{
  std::filesystem::create_directories(dir);
  write_conflict_records(dir / "conflict_records.csv", report.records);
  {
    std::ofstream out(dir / "summary.json", std::ios::binary | std::ios::trunc);
    if (!out) {
      throw InvalidInput("cannot write " + (dir / "summary.json").string());
    }
    out << summary_json(report, cfg);
  }
  if (cfg.scenario_samples > 0) {
    write_scenarios(dir / "scenarios.csv", report.scenarios);
  }
}

}  // namespace ltapod
