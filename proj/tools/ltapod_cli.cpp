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

#include "ltapod/config.hpp"
#include "ltapod/errors.hpp"
#include "ltapod/io.hpp"
#include "ltapod/pipeline.hpp"
#include "ltapod/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace
{

using ltapod::PipelineConfig;

struct GlobalOptions
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::string out{"out"};
};

PipelineConfig make_config(const GlobalOptions & g, const std::string & input)
{
  PipelineConfig cfg;
  if (!g.config.empty()) {
    cfg = ltapod::load_config(g.config);
  }
  if (g.seed) {
    cfg.seed = *g.seed;
  }
  if (g.jobs) {
    cfg.jobs = *g.jobs;
  }
  if (!input.empty()) {
    cfg.input = input;
  }
  if (!g.out.empty()) {
    cfg.output = g.out;
  }
  return cfg;
}

ltapod::IngestResult ingest_or_throw(const PipelineConfig & cfg)
{
  if (cfg.input.empty()) {
    throw ltapod::InvalidInput("no input directory (use --input or pipeline.input)");
  }
  auto ingest = ltapod::ingest_trips(cfg.input, cfg.screening.platform);
  for (const auto & d : ingest.diagnostics) {
    std::cerr << "warning: " << d.to_string() << '\n';
  }
  return ingest;
}

void print_funnel(const ltapod::Funnel & f)
{
  std::cout << "trips in " << f.trips_in << ", processed " << f.trips_processed << ", rejected "
            << f.trips_rejected << '\n'
            << "candidates " << f.candidates << ", accepted " << f.accepted
            << ", metrics failed " << f.metrics_failed << '\n';
  for (const auto r : ltapod::kRejectReasons) {
    std::cout << "  rejected " << ltapod::to_string(r) << ": " << f.rejected(r) << '\n';
  }
}

std::ofstream open_out(const std::filesystem::path & file)
{
  if (file.has_parent_path()) {
    std::filesystem::create_directories(file.parent_path());
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ltapod::InvalidInput("cannot write " + file.string());
  }
  return out;
}

int cmd_synth(
  const GlobalOptions & g, ltapod::PopulationSpec spec, const std::string & platform,
  const std::vector<std::string> & decoy_kinds)
{
  const auto cfg = make_config(g, {});
  spec.platform = ltapod::parse_platform(platform);
  for (const auto & k : decoy_kinds) {
    spec.decoy_kinds.push_back(ltapod::parse_decoy_kind(k));
  }
  const auto population = ltapod::generate_population(spec, cfg.seed, cfg.jobs);
  std::vector<ltapod::TripRecord> trips;
  trips.reserve(population.size());
  for (const auto & m : population) {
    trips.push_back(m.trip);
  }
  ltapod::write_trips(cfg.output, trips);

  auto truth = open_out(cfg.output / "truth.csv");
  truth << "trip_id,decoy,t_x,d_cp,t_cp,v_sdv,v_tv\n";
  std::size_t decoys = 0;
  for (const auto & m : population) {
    decoys += m.eligible() ? 0 : 1;
    truth << m.trip.trip_id << ',' << ltapod::to_string(m.decoy) << ','
          << ltapod::format_double(m.truth.t_x) << ',' << ltapod::format_double(m.truth.d_cp)
          << ',' << ltapod::format_double(m.truth.t_cp) << ','
          << ltapod::format_double(m.truth.v_sdv) << ',' << ltapod::format_double(m.truth.v_tv)
          << '\n';
  }
  std::cout << "wrote " << population.size() << " trips (" << decoys << " decoys) to "
            << cfg.output.string() << '\n';
  return 0;
}

int cmd_associate(const GlobalOptions & g, const std::string & input)
{
  const auto cfg = make_config(g, input);
  cfg.validate();
  const auto ingest = ingest_or_throw(cfg);
  auto out = open_out(cfg.output / "associated.csv");
  out << "trip_id,t,range,range_rate,transversal,azimuth,track_id\n";
  std::size_t tracks = 0;
  std::size_t noise = 0;
  for (const auto & trip : ingest.trips) {
    const auto points = trip.radar_points();
    const auto result = ltapod::associate_targets(points, cfg.association);
    tracks += result.tracks.size();
    noise += result.noise.size();
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto & p = points[k];
      out << trip.trip_id << ',' << ltapod::format_double(p.t) << ','
          << ltapod::format_double(p.range) << ',' << ltapod::format_double(p.range_rate) << ','
          << ltapod::format_double(p.transversal) << ',' << ltapod::format_double(p.azimuth)
          << ',' << result.labels[k] << '\n';
    }
  }
  std::cout << ingest.trips.size() << " trips, " << tracks << " tracks, " << noise
            << " noise points\n";
  return ingest.trips_dropped > 0 ? 2 : 0;
}

int cmd_extract(const GlobalOptions & g, const std::string & input, bool with_metrics, bool trace)
{
  auto cfg = make_config(g, input);
  const auto ingest = ingest_or_throw(cfg);
  const auto report = ltapod::analyze(ingest.trips, cfg, trace);

  auto out = open_out(cfg.output / "candidates.csv");
  out << "trip_id,track_id,start,end,points,outcome\n";
  for (const auto & t : report.trips) {
    if (t.failed) {
      out << t.trip_id << ",,,,,failed\n";
      continue;
    }
    for (const auto & c : t.candidates) {
      std::string outcome = c.reason ? std::string(ltapod::to_string(*c.reason)) : "accepted";
      if (!c.reason && !c.record) {
        outcome = "metrics_failed";
      }
      out << t.trip_id << ',' << c.track_id << ',' << ltapod::format_double(c.start_time) << ','
          << ltapod::format_double(c.end_time) << ',' << c.points << ',' << outcome << '\n';
    }
  }
  if (with_metrics) {
    ltapod::write_conflict_records(cfg.output / "conflict_records.csv", report.records);
  }
  if (trace) {
    auto tr = open_out(cfg.output / "trace.csv");
    tr << "event_id,relative_time,t_cp\n";
    for (const auto & t : report.trips) {
      for (const auto & c : t.candidates) {
        if (!c.reconstruction || !c.record) {
          continue;
        }
        for (const auto & p : ltapod::conflict_trace(*c.reconstruction)) {
          tr << c.record->event_id << ',' << ltapod::format_double(p.relative_time) << ','
             << ltapod::format_double(p.t_cp) << '\n';
        }
      }
    }
  }
  auto f = report.funnel;
  f.trips_in += ingest.trips_dropped;
  f.trips_rejected += ingest.trips_dropped;
  print_funnel(f);
  return f.trips_rejected > 0 || f.metrics_failed > 0 ? 2 : 0;
}

int cmd_compare(
  const GlobalOptions & g, const std::vector<std::string> & files, const std::string & labels,
  const std::vector<std::string> & variables)
{
  auto cfg = make_config(g, {});
  if (!variables.empty()) {
    cfg.variables.clear();
    for (const auto & v : variables) {
      cfg.variables.push_back(ltapod::parse_variable(v));
    }
  }
  std::vector<ltapod::ConflictRecord> a;
  std::vector<ltapod::ConflictRecord> b;
  std::string name_a;
  std::string name_b;
  if (files.size() == 2) {
    a = ltapod::read_conflict_records(files[0]);
    b = ltapod::read_conflict_records(files[1]);
    name_a = files[0];
    name_b = files[1];
  } else {
    if (!labels.empty()) {
      ltapod::apply_setting(cfg, "stats.compare", labels);
    }
    if (!cfg.compare_labels) {
      throw ltapod::InvalidInput("one records file needs --labels a,b (or stats.compare)");
    }
    std::tie(name_a, name_b) = *cfg.compare_labels;
    for (const auto & r : ltapod::read_conflict_records(files[0])) {
      if (r.label == name_a) {
        a.push_back(r);
      } else if (r.label == name_b) {
        b.push_back(r);
      }
    }
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto v : cfg.variables) {
    const auto da = ltapod::build_distribution(a, v, name_a);
    const auto db = ltapod::build_distribution(b, v, name_b);
    const auto r = ltapod::mww_test(da.distribution, db.distribution);
    j.push_back(
      {{"variable", std::string(ltapod::to_string(v))},
       {"n_a", da.distribution.size()},
       {"n_b", db.distribution.size()},
       {"u", r.u_statistic},
       {"z", r.z_score},
       {"p_value", r.p_value},
       {"method", std::string(ltapod::to_string(r.method))}});
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_fit(const GlobalOptions & g, const std::string & records, const std::string & mode)
{
  auto cfg = make_config(g, {});
  if (!mode.empty()) {
    cfg.model_mode = ltapod::parse_sampling_mode(mode);
  }
  const auto rows = ltapod::read_conflict_records(records);
  const auto model = ltapod::fit_model(rows, cfg.model_mode);
  ltapod::save_model(cfg.output / "model.json", model);
  std::cout << "model over " << model.source.rows() << " records (" << model.excluded
            << " excluded), mode " << ltapod::to_string(model.mode) << '\n';
  return 0;
}

int cmd_sample(const GlobalOptions & g, const std::string & model_file, std::size_t n)
{
  const auto cfg = make_config(g, {});
  const auto model = ltapod::load_model(model_file);
  const auto samples = ltapod::sample_scenarios(model, n, cfg.seed);
  ltapod::write_scenarios(cfg.output / "scenarios.csv", samples);
  std::cout << "wrote " << samples.size() << " scenarios\n";
  return 0;
}

int cmd_run(const GlobalOptions & g, const std::string & input)
{
  const auto cfg = make_config(g, input);
  const auto report = ltapod::run_pipeline(cfg);
  for (const auto & d : report.diagnostics) {
    std::cerr << "warning: " << d << '\n';
  }
  print_funnel(report.funnel);
  std::cout << "status " << ltapod::to_string(report.status) << ", " << report.records.size()
            << " conflict records\n";
  return ltapod::exit_code(report.status);
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"LTAP/OD conflict extraction from naturalistic driving logs"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "base random seed");
  app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)");
  app.add_option("--out", g.out, "output directory")->capture_default_str();

  std::string input;
  bool trace = false;

  ltapod::PopulationSpec pop;
  std::string platform = "ht";
  std::vector<std::string> decoy_kinds;
  auto * synth = app.add_subcommand("synth", "generate a synthetic trip population");
  synth->add_option("-n,--count", pop.n, "number of trips")->capture_default_str();
  synth->add_option("--platform", platform, "ht or lv")->capture_default_str();
  synth->add_option("--decoys", pop.decoy_fraction, "fraction of decoy trips")->capture_default_str();
  synth->add_option("--decoy-kinds", decoy_kinds, "slow_host, not_at_intersection, wrong_direction, short_track, gap");
  synth->add_option("--label", pop.label, "population label");
  synth->add_option("--prefix", pop.id_prefix, "trip id prefix")->capture_default_str();
  synth->add_option("--rate", pop.sample_rate, "sample rate [Hz]")->capture_default_str();
  synth->add_option("--range-noise", pop.noise.range, "[m]");
  synth->add_option("--range-rate-noise", pop.noise.range_rate, "[m/s]");
  synth->add_option("--transversal-noise", pop.noise.transversal, "[m]");
  synth->add_option("--gps-noise", pop.noise.gps, "[m]");
  synth->add_option("--tv-speed", [&](const CLI::results_t & r) {
    pop.ranges.tv_speed = {std::stod(r.at(0)), std::stod(r.at(1))};
    return true;
  }, "target speed range [m/s]")->expected(2);

  auto * associate = app.add_subcommand("associate", "group heavy-truck radar returns into targets");
  associate->add_option("--input", input, "trip directory");

  auto * extract = app.add_subcommand("extract", "screen candidate targets into events");
  extract->add_option("--input", input, "trip directory");

  auto * metrics = app.add_subcommand("metrics", "conflict variables of every accepted event");
  metrics->add_option("--input", input, "trip directory");
  metrics->add_flag("--trace", trace, "also write the time-to-conflict-point trace");

  std::vector<std::string> files;
  std::string labels;
  std::vector<std::string> variables;
  auto * compare = app.add_subcommand("compare", "rank-sum test between two populations");
  compare->add_option("records", files, "one labelled records file or two files")
    ->required()
    ->expected(1, 2);
  compare->add_option("--labels", labels, "two labels, comma separated");
  compare->add_option("--variables", variables, "dcp_inv tcp_inv v_sdv v_tv d_cp t_cp");

  std::string records;
  std::string mode;
  auto * fit = app.add_subcommand("fit", "fit the scenario model");
  fit->add_option("records", records, "conflict_records.csv")->required()->check(CLI::ExistingFile);
  fit->add_option("--mode", mode, "resample or kde");

  std::string model_file;
  std::size_t count = 1000;
  auto * sample = app.add_subcommand("sample", "draw scenarios from a fitted model");
  sample->add_option("model", model_file, "model.json")->required()->check(CLI::ExistingFile);
  sample->add_option("-n,--count", count, "number of scenarios")->capture_default_str();

  auto * run = app.add_subcommand("run", "full pipeline");
  run->add_option("--input", input, "trip directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      return cmd_synth(g, pop, platform, decoy_kinds);
    }
    if (*associate) {
      return cmd_associate(g, input);
    }
    if (*extract) {
      return cmd_extract(g, input, false, false);
    }
    if (*metrics) {
      return cmd_extract(g, input, true, trace);
    }
    if (*compare) {
      return cmd_compare(g, files, labels, variables);
    }
    if (*fit) {
      return cmd_fit(g, records, mode);
    }
    if (*sample) {
      return cmd_sample(g, model_file, count);
    }
    if (*run) {
      return cmd_run(g, input);
    }
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
