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

#include "ltapod/io.hpp"

#include "ltapod/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ltapod
{

namespace
{

using Columns = std::unordered_map<std::string, std::size_t>;

bool same_double(double a, double b)
{
  return a == b || (std::isnan(a) && std::isnan(b));
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::ifstream open_input(const std::filesystem::path & file)
{
  std::ifstream in(file);
  if (!in) {
    throw InvalidInput("cannot open " + file.string());
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path & file)
{
  if (file.has_parent_path()) {
    std::filesystem::create_directories(file.parent_path());
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InvalidInput("cannot write " + file.string());
  }
  return out;
}

Columns read_header(
  std::istream & in, const std::string & file, std::initializer_list<std::string_view> required)
{
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError(file + ": missing header");
  }
  Columns cols;
  const auto fields = split_csv_line(line);
  for (std::size_t k = 0; k < fields.size(); ++k) {
    cols.emplace(std::string(fields[k]), k);
  }
  for (const auto name : required) {
    if (!cols.contains(std::string(name))) {
      throw SchemaError(file + ": missing column '" + std::string(name) + "'");
    }
  }
  return cols;
}

// Row accessor that records the first problem it sees.
class RowReader
{
public:
  RowReader(const Columns & cols, const std::vector<std::string_view> & fields)
  : cols_(cols), fields_(fields)
  {
  }

  std::string_view text(std::string_view name)
  {
    const auto it = cols_.find(std::string(name));
    if (it == cols_.end() || it->second >= fields_.size()) {
      fail("missing field '" + std::string(name) + "'");
      return {};
    }
    return fields_[it->second];
  }

  bool has(std::string_view name) const { return cols_.contains(std::string(name)); }

  double number(std::string_view name)
  {
    const auto s = text(name);
    const auto v = parse_double(s);
    if (!v) {
      fail("bad number '" + std::string(s) + "' in '" + std::string(name) + "'");
      return 0.0;
    }
    return *v;
  }

  // empty text reads as NaN
  double optional_number(std::string_view name)
  {
    if (!has(name) || trim(text(name)).empty()) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return number(name);
  }

  long integer(std::string_view name)
  {
    const auto s = text(name);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail("bad integer '" + std::string(s) + "' in '" + std::string(name) + "'");
    }
    return v;
  }

  void fail(std::string message)
  {
    if (error_.empty()) {
      error_ = std::move(message);
    }
  }

  const std::string & error() const { return error_; }

private:
  const Columns & cols_;
  const std::vector<std::string_view> & fields_;
  std::string error_;
};

struct PendingTrip
{
  TripRecord record;
  bool bad{false};
  bool has_host{false};
};

}  // namespace

bool HostRow::operator==(const HostRow & o) const
{
  return at_intersection == o.at_intersection && same_double(state.t, o.state.t) &&
         same_double(state.lat, o.state.lat) && same_double(state.lon, o.state.lon) &&
         same_double(state.speed, o.state.speed) && same_double(state.heading, o.state.heading);
}

std::vector<HostState> TripRecord::host_states() const
{
  std::vector<HostState> out;
  out.reserve(host.size());
  for (const auto & row : host) {
    out.push_back(row.state);
  }
  return out;
}

std::vector<RadarPoint> TripRecord::radar_points() const
{
  std::vector<RadarPoint> out;
  out.reserve(radar.size());
  for (const auto & row : radar) {
    out.push_back(row.point);
  }
  return out;
}

std::string Diagnostic::to_string() const
{
  std::string s = file;
  if (row > 0) {
    s += ":" + std::to_string(row);
  }
  if (!trip_id.empty()) {
    s += " [" + trip_id + "]";
  }
  return s + ": " + message;
}

std::string format_double(double v)
{
  if (std::isnan(v)) {
    return {};
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) {
    throw InvalidInput("cannot format number");
  }
  return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view text)
{
  text = trim(text);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return std::nullopt;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string_view> split_csv_line(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

IngestResult ingest_trips(const std::filesystem::path & dir, Platform default_platform)
{
  IngestResult result;
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidInput("input directory does not exist: " + dir.string());
  }

  std::vector<PendingTrip> pending;
  std::unordered_map<std::string, std::size_t> index;
  const auto trip_for = [&](const std::string & id) -> PendingTrip & {
    const auto [it, inserted] = index.emplace(id, pending.size());
    if (inserted) {
      pending.push_back({});
      pending.back().record.trip_id = id;
      pending.back().record.platform = default_platform;
    }
    return pending[it->second];
  };
  const auto row_error = [&](const std::string & file, std::size_t row, const std::string & trip,
                             const std::string & message) {
    result.diagnostics.push_back({file, row, trip, message});
    if (!trip.empty()) {
      trip_for(trip).bad = true;
    }
  };

  const auto host_path = dir / kHostFile;
  const auto radar_path = dir / kRadarFile;
  const auto trips_path = dir / kTripsFile;

  if (std::filesystem::exists(host_path)) {
    const std::string file(kHostFile);
    auto in = open_input(host_path);
    const auto cols =
      read_header(in, file, {"trip_id", "t", "lat", "lon", "speed", "at_intersection"});
    std::string line;
    for (std::size_t row = 2; std::getline(in, line); ++row) {
      if (trim(line).empty()) {
        continue;
      }
      const auto fields = split_csv_line(line);
      RowReader r(cols, fields);
      const std::string trip(r.text("trip_id"));
      if (trip.empty()) {
        row_error(file, row, {}, "empty trip_id");
        continue;
      }
      HostRow h;
      h.state.t = r.number("t");
      h.state.lat = r.number("lat");
      h.state.lon = r.number("lon");
      h.state.speed = r.number("speed");
      h.state.heading = r.optional_number("heading");
      const long flag = r.integer("at_intersection");
      if (r.error().empty() && flag != 0 && flag != 1) {
        r.fail("at_intersection must be 0 or 1");
      }
      h.at_intersection = flag == 1;
      if (r.error().empty()) {
        try {
          HostState probe = h.state;
          if (std::isnan(probe.heading)) {
            probe.heading = 0.0;
          }
          validate(probe);
        } catch (const std::exception & e) {
          r.fail(e.what());
        }
      }
      auto & p = trip_for(trip);
      p.has_host = true;
      if (!r.error().empty()) {
        row_error(file, row, trip, r.error());
        continue;
      }
      p.record.host.push_back(h);
    }
  }

  if (std::filesystem::exists(radar_path)) {
    const std::string file(kRadarFile);
    auto in = open_input(radar_path);
    const auto cols = read_header(
      in, file, {"trip_id", "t", "range", "range_rate", "transversal", "azimuth"});
    std::string line;
    for (std::size_t row = 2; std::getline(in, line); ++row) {
      if (trim(line).empty()) {
        continue;
      }
      const auto fields = split_csv_line(line);
      RowReader r(cols, fields);
      const std::string trip(r.text("trip_id"));
      if (trip.empty()) {
        row_error(file, row, {}, "empty trip_id");
        continue;
      }
      RadarRow rr;
      rr.point.t = r.number("t");
      rr.point.range = r.number("range");
      rr.point.range_rate = r.number("range_rate");
      rr.point.transversal = r.number("transversal");
      rr.point.azimuth = r.number("azimuth");
      if (r.has("target_id")) {
        rr.target_id = static_cast<int>(r.integer("target_id"));
      }
      if (r.error().empty()) {
        try {
          validate(rr.point);
        } catch (const std::exception & e) {
          r.fail(e.what());
        }
      }
      auto & p = trip_for(trip);
      if (!r.error().empty()) {
        row_error(file, row, trip, r.error());
        continue;
      }
      p.record.radar.push_back(rr);
    }
  }

  if (std::filesystem::exists(trips_path)) {
    const std::string file(kTripsFile);
    auto in = open_input(trips_path);
    const auto cols = read_header(in, file, {"trip_id"});
    std::string line;
    for (std::size_t row = 2; std::getline(in, line); ++row) {
      if (trim(line).empty()) {
        continue;
      }
      const auto fields = split_csv_line(line);
      RowReader r(cols, fields);
      const std::string trip(r.text("trip_id"));
      const auto it = index.find(trip);
      if (it == index.end()) {
        result.diagnostics.push_back({file, row, trip, "trip has no channel data"});
        continue;
      }
      auto & rec = pending[it->second].record;
      if (r.has("platform")) {
        const auto text = r.text("platform");
        try {
          rec.platform = parse_platform(text);
        } catch (const std::exception & e) {
          row_error(file, row, trip, e.what());
        }
      }
      if (r.has("label")) {
        rec.label = std::string(r.text("label"));
      }
    }
  }

  result.trips_seen = pending.size();
  for (auto & p : pending) {
    auto & rec = p.record;
    if (!p.bad && !p.has_host) {
      result.diagnostics.push_back({std::string(kRadarFile), 0, rec.trip_id, "trip has no host rows"});
      p.bad = true;
    }
    if (!p.bad) {
      for (std::size_t k = 1; k < rec.host.size(); ++k) {
        if (!(rec.host[k].state.t > rec.host[k - 1].state.t)) {
          result.diagnostics.push_back(
            {std::string(kHostFile), 0, rec.trip_id, "host timestamps not strictly increasing"});
          p.bad = true;
          break;
        }
      }
    }
    if (!p.bad) {
      for (std::size_t k = 1; k < rec.radar.size(); ++k) {
        if (rec.radar[k].point.t < rec.radar[k - 1].point.t) {
          result.diagnostics.push_back(
            {std::string(kRadarFile), 0, rec.trip_id, "radar timestamps not sorted"});
          p.bad = true;
          break;
        }
      }
    }
    if (p.bad) {
      ++result.trips_dropped;
      continue;
    }
    result.trips.push_back(std::move(rec));
  }
  return result;
}

void write_trips(const std::filesystem::path & dir, std::span<const TripRecord> trips)
{
  std::filesystem::create_directories(dir);
  auto host = open_output(dir / kHostFile);
  auto radar = open_output(dir / kRadarFile);
  auto meta = open_output(dir / kTripsFile);
  host << "trip_id,t,lat,lon,speed,heading,at_intersection\n";
  radar << "trip_id,t,range,range_rate,transversal,azimuth,target_id\n";
  meta << "trip_id,platform,label\n";
  for (const auto & trip : trips) {
    meta << trip.trip_id << ',' << to_string(trip.platform) << ',' << trip.label << '\n';
    for (const auto & h : trip.host) {
      const auto & s = h.state;
      host << trip.trip_id << ',' << format_double(s.t) << ',' << format_double(s.lat) << ','
           << format_double(s.lon) << ',' << format_double(s.speed) << ','
           << format_double(s.heading) << ',' << (h.at_intersection ? 1 : 0) << '\n';
    }
    for (const auto & r : trip.radar) {
      const auto & p = r.point;
      radar << trip.trip_id << ',' << format_double(p.t) << ',' << format_double(p.range) << ','
            << format_double(p.range_rate) << ',' << format_double(p.transversal) << ','
            << format_double(p.azimuth) << ',' << r.target_id << '\n';
    }
  }
}

void write_conflict_records(
  const std::filesystem::path & file, std::span<const ConflictRecord> records)
{
  auto out = open_output(file);
  out << "event_id,trip_id,t_x,d_cp,t_cp,v_sdv,v_tv,label\n";
  for (const auto & r : records) {
    out << r.event_id << ',' << r.trip_id << ',' << format_double(r.t_x) << ','
        << format_double(r.d_cp) << ',' << format_double(r.t_cp) << ',' << format_double(r.v_sdv)
        << ',' << format_double(r.v_tv) << ',' << r.label << '\n';
  }
}

std::vector<ConflictRecord> read_conflict_records(const std::filesystem::path & file)
{
  auto in = open_input(file);
  const std::string name = file.filename().string();
  const auto cols =
    read_header(in, name, {"event_id", "trip_id", "t_x", "d_cp", "t_cp", "v_sdv", "v_tv"});
  std::vector<ConflictRecord> out;
  std::string line;
  for (std::size_t row = 2; std::getline(in, line); ++row) {
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split_csv_line(line);
    RowReader r(cols, fields);
    ConflictRecord c;
    c.event_id = std::string(r.text("event_id"));
    c.trip_id = std::string(r.text("trip_id"));
    c.t_x = r.number("t_x");
    c.d_cp = r.number("d_cp");
    c.t_cp = r.number("t_cp");
    c.v_sdv = r.number("v_sdv");
    c.v_tv = r.number("v_tv");
    if (r.has("label")) {
      c.label = std::string(r.text("label"));
    }
    if (!r.error().empty()) {
      throw InvalidInput(name + ":" + std::to_string(row) + ": " + r.error());
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_scenarios(const std::filesystem::path & file, std::span<const ScenarioSample> samples)
{
  auto out = open_output(file);
  out << "t_cp,v_sdv,v_tv,d_cp,seed\n";
  for (const auto & s : samples) {
    out << format_double(s.t_cp) << ',' << format_double(s.v_sdv) << ',' << format_double(s.v_tv)
        << ',' << format_double(s.d_cp) << ',' << s.seed << '\n';
  }
}

std::vector<ScenarioSample> read_scenarios(const std::filesystem::path & file)
{
  auto in = open_input(file);
  const std::string name = file.filename().string();
  const auto cols = read_header(in, name, {"t_cp", "v_sdv", "v_tv", "d_cp", "seed"});
  std::vector<ScenarioSample> out;
  std::string line;
  for (std::size_t row = 2; std::getline(in, line); ++row) {
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split_csv_line(line);
    RowReader r(cols, fields);
    ScenarioSample s;
    s.t_cp = r.number("t_cp");
    s.v_sdv = r.number("v_sdv");
    s.v_tv = r.number("v_tv");
    s.d_cp = r.number("d_cp");
    const auto seed_text = r.text("seed");
    const auto [ptr, ec] =
      std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), s.seed);
    if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size()) {
      r.fail("bad seed");
    }
    if (!r.error().empty()) {
      throw InvalidInput(name + ":" + std::to_string(row) + ": " + r.error());
    }
    out.push_back(s);
  }
  return out;
}

void save_model(const std::filesystem::path & file, const ScenarioModel & model)
{
  nlohmann::json j;
  j["mode"] = std::string(to_string(model.mode));
  j["bandwidths"] = {model.bandwidths[0], model.bandwidths[1], model.bandwidths[2]};
  j["excluded"] = model.excluded;
  auto & rows = j["source"] = nlohmann::json::array();
  for (Eigen::Index k = 0; k < model.source.rows(); ++k) {
    rows.push_back({model.source(k, 0), model.source(k, 1), model.source(k, 2)});
  }
  auto out = open_output(file);
  out << j.dump(2) << '\n';
}

ScenarioModel load_model(const std::filesystem::path & file)
{
  auto in = open_input(file);
  ScenarioModel model;
  try {
    const auto j = nlohmann::json::parse(in);
    model.mode = parse_sampling_mode(j.at("mode").get<std::string>());
    const auto bw = j.at("bandwidths").get<std::vector<double>>();
    if (bw.size() != 3) {
      throw SchemaError("bandwidths must have three entries");
    }
    model.bandwidths = Eigen::Vector3d(bw[0], bw[1], bw[2]);
    model.excluded = j.value("excluded", std::size_t{0});
    const auto & rows = j.at("source");
    model.source.resize(static_cast<Eigen::Index>(rows.size()), 3);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto row = rows[k].get<std::vector<double>>();
      if (row.size() != 3) {
        throw SchemaError("source rows must have three entries");
      }
      model.source.row(static_cast<Eigen::Index>(k)) << row[0], row[1], row[2];
    }
  } catch (const nlohmann::json::exception & e) {
    throw SchemaError(file.string() + ": " + e.what());
  }
  return model;
}

}  // namespace ltapod
