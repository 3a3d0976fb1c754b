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

#include "ltapod/errors.hpp"
#include "ltapod/io.hpp"
#include "ltapod/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using ltapod::Platform;

namespace
{

class io_test : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const auto * info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("ltapod_io_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(std::string_view name, const std::string & text) const
  {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }

  fs::path dir_;
};

ltapod::TripRecord small_trip(const std::string & id, Platform platform, const std::string & label)
{
  ltapod::TripRecord t;
  t.trip_id = id;
  t.platform = platform;
  t.label = label;
  for (int k = 0; k < 5; ++k) {
    const double time = 0.1 * k;
    t.host.push_back({{time, 42.3 + 1e-6 * k, -83.7, 10.0, k == 2 ? std::nan("") : 1.5}, k != 4});
    t.radar.push_back({{time + 0.025, 50.0 - k, -8.0, -1.0 + 0.3 * k, -1.1 + 0.3 * k}, k % 2});
  }
  return t;
}

constexpr std::string_view kHostHeader = "trip_id,t,lat,lon,speed,heading,at_intersection\n";
constexpr std::string_view kRadarHeader = "trip_id,t,range,range_rate,transversal,azimuth\n";

}  // namespace

TEST_F(io_test, two_trips_round_trip)
{
  const std::vector<ltapod::TripRecord> trips{
    small_trip("a", Platform::HeavyTruck, "x"), small_trip("b", Platform::LightVehicle, "")};
  ltapod::write_trips(dir_, trips);
  const auto in = ltapod::ingest_trips(dir_, Platform::HeavyTruck);
  EXPECT_TRUE(in.diagnostics.empty());
  EXPECT_EQ(in.trips_seen, 2u);
  EXPECT_EQ(in.trips_dropped, 0u);
  ASSERT_EQ(in.trips.size(), 2u);
  EXPECT_EQ(in.trips[0], trips[0]);
  EXPECT_EQ(in.trips[1], trips[1]);
  EXPECT_TRUE(std::isnan(in.trips[0].host[2].state.heading));
}

TEST_F(io_test, bad_number_reports_row_and_drops_trip)
{
  write(ltapod::kHostFile, std::string(kHostHeader) +
                             "a,0.0,42.3,-83.7,10,0,1\n"
                             "a,0.1,42.3,-83.7,10,0,1\n"
                             "b,0.0,42.3,-83.7,10,0,1\n"
                             "b,0.1,42.3,-83.7,10,0,1\n");
  write(ltapod::kRadarFile, std::string(kRadarHeader) +
                              "a,0.0,50,-8,-1,-1.1\n"
                              "b,0.0,abc,-8,-1,-1.1\n"
                              "b,0.1,49,-8,-1,-1.1\n");
  const auto in = ltapod::ingest_trips(dir_, Platform::HeavyTruck);
  ASSERT_EQ(in.trips.size(), 1u);
  EXPECT_EQ(in.trips[0].trip_id, "a");
  EXPECT_EQ(in.trips_seen, 2u);
  EXPECT_EQ(in.trips_dropped, 1u);
  ASSERT_FALSE(in.diagnostics.empty());
  const auto & d = in.diagnostics.front();
  EXPECT_EQ(d.file, "radar.csv");
  EXPECT_EQ(d.row, 3u);
  EXPECT_EQ(d.trip_id, "b");
  EXPECT_NE(d.message.find("range"), std::string::npos);
  EXPECT_NE(d.to_string().find("radar.csv:3"), std::string::npos);
}

TEST_F(io_test, missing_column_names_it)
{
  write(ltapod::kHostFile, "trip_id,t,lat,lon,heading,at_intersection\n");
  try {
    ltapod::ingest_trips(dir_, Platform::HeavyTruck);
    FAIL() << "expected SchemaError";
  } catch (const ltapod::SchemaError & e) {
    EXPECT_NE(std::string(e.what()).find("speed"), std::string::npos);
  }
}

TEST_F(io_test, unsorted_timestamps_drop_trip)
{
  write(ltapod::kHostFile, std::string(kHostHeader) +
                             "a,0.0,42.3,-83.7,10,0,1\n"
                             "a,0.2,42.3,-83.7,10,0,1\n"
                             "a,0.1,42.3,-83.7,10,0,1\n"
                             "b,0.0,42.3,-83.7,10,0,1\n"
                             "b,0.1,42.3,-83.7,10,0,1\n");
  write(ltapod::kRadarFile, std::string(kRadarHeader) +
                              "b,0.1,50,-8,-1,-1.1\n"
                              "b,0.0,49,-8,-1,-1.1\n");
  const auto in = ltapod::ingest_trips(dir_, Platform::HeavyTruck);
  EXPECT_TRUE(in.trips.empty());
  EXPECT_EQ(in.trips_dropped, 2u);
  EXPECT_EQ(in.diagnostics.size(), 2u);
}

TEST_F(io_test, missing_files_and_directory)
{
  const auto in = ltapod::ingest_trips(dir_, Platform::HeavyTruck);
  EXPECT_TRUE(in.trips.empty());
  EXPECT_EQ(in.trips_seen, 0u);
  EXPECT_THROW(ltapod::ingest_trips(dir_ / "nope", Platform::HeavyTruck), ltapod::InvalidInput);
}

TEST_F(io_test, default_platform_and_optional_columns)
{
  write(ltapod::kHostFile,
        "trip_id,t,lat,lon,speed,at_intersection\n"
        "a,0.0,42.3,-83.7,10,1\n"
        "a,0.1,42.3,-83.7,10,0\n");
  const auto in = ltapod::ingest_trips(dir_, Platform::LightVehicle);
  ASSERT_EQ(in.trips.size(), 1u);
  EXPECT_EQ(in.trips[0].platform, Platform::LightVehicle);
  EXPECT_TRUE(std::isnan(in.trips[0].host[0].state.heading));
  EXPECT_FALSE(in.trips[0].host[1].at_intersection);
  EXPECT_TRUE(in.trips[0].radar.empty());
}

TEST_F(io_test, population_round_trip)
{
  ltapod::PopulationSpec spec;
  spec.n = 100;
  spec.decoy_fraction = 0.3;
  spec.noise = {0.5, 0.25, 0.3, 1.0};
  spec.label = "pop";
  std::vector<ltapod::TripRecord> trips;
  for (auto & t : ltapod::generate_population(spec, 21)) {
    trips.push_back(std::move(t.trip));
  }
  ltapod::write_trips(dir_, trips);
  const auto in = ltapod::ingest_trips(dir_, Platform::LightVehicle);
  EXPECT_TRUE(in.diagnostics.empty());
  ASSERT_EQ(in.trips.size(), trips.size());
  for (std::size_t k = 0; k < trips.size(); ++k) {
    EXPECT_EQ(in.trips[k], trips[k]) << trips[k].trip_id;
  }
}

TEST(io, number_text_round_trip)
{
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 10000; ++k) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(ltapod::parse_double(ltapod::format_double(v)), v);
  }
  EXPECT_EQ(ltapod::format_double(std::nan("")), "");
  EXPECT_EQ(ltapod::format_double(0.1), "0.1");
  EXPECT_EQ(ltapod::parse_double(" 2.5 "), 2.5);
  EXPECT_EQ(ltapod::parse_double("+3"), 3.0);
  EXPECT_FALSE(ltapod::parse_double("1.5x"));
  EXPECT_FALSE(ltapod::parse_double(""));
}

TEST(io, csv_split)
{
  const auto f = ltapod::split_csv_line(" a , b,,c\r");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[0], "a");
  EXPECT_EQ(f[1], "b");
  EXPECT_EQ(f[2], "");
  EXPECT_EQ(f[3], "c");
}

TEST_F(io_test, records_scenarios_and_model_round_trip)
{
  std::vector<ltapod::ConflictRecord> recs;
  for (int k = 0; k < 20; ++k) {
    ltapod::ConflictRecord r;
    r.event_id = "t" + std::to_string(k) + "#0";
    r.trip_id = "t" + std::to_string(k);
    r.label = k % 2 ? "a" : "b";
    r.t_x = 3.0 + 0.1 * k;
    r.v_sdv = 10.0 + k / 3.0;
    r.t_cp = 1.0 + k / 7.0;
    r.d_cp = r.t_cp * r.v_sdv;
    r.v_tv = 4.0 + k / 11.0;
    recs.push_back(r);
  }
  ltapod::write_conflict_records(dir_ / "r.csv", recs);
  const auto back = ltapod::read_conflict_records(dir_ / "r.csv");
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    EXPECT_EQ(back[k].event_id, recs[k].event_id);
    EXPECT_EQ(back[k].trip_id, recs[k].trip_id);
    EXPECT_EQ(back[k].label, recs[k].label);
    EXPECT_EQ(back[k].t_x, recs[k].t_x);
    EXPECT_EQ(back[k].d_cp, recs[k].d_cp);
    EXPECT_EQ(back[k].t_cp, recs[k].t_cp);
    EXPECT_EQ(back[k].v_sdv, recs[k].v_sdv);
    EXPECT_EQ(back[k].v_tv, recs[k].v_tv);
  }

  for (const auto mode : {ltapod::SamplingMode::JointResample, ltapod::SamplingMode::IndependentKde}) {
    const auto model = ltapod::fit_model(recs, mode);
    ltapod::save_model(dir_ / "m.json", model);
    const auto loaded = ltapod::load_model(dir_ / "m.json");
    EXPECT_EQ(loaded.mode, model.mode);
    EXPECT_EQ(loaded.source, model.source);
    EXPECT_EQ(loaded.bandwidths, model.bandwidths);
    const auto samples = ltapod::sample_scenarios(model, 50, 9);
    EXPECT_EQ(ltapod::sample_scenarios(loaded, 50, 9), samples);
    ltapod::write_scenarios(dir_ / "s.csv", samples);
    EXPECT_EQ(ltapod::read_scenarios(dir_ / "s.csv"), samples);
  }
}
