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

#include "ltapod/scenario_model.hpp"

#include "ltapod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace ltapod
{

namespace
{

double normal_cdf(double z)
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// linear-interpolated quantile of sorted data
double quantile(const std::vector<double> & sorted, double q)
{
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view to_string(SamplingMode mode)
{
  return mode == SamplingMode::JointResample ? "resample" : "kde";
}

SamplingMode parse_sampling_mode(std::string_view text)
{
  if (text == "resample" || text == "joint") {
    return SamplingMode::JointResample;
  }
  if (text == "kde") {
    return SamplingMode::IndependentKde;
  }
  throw InvalidInput("unknown sampling mode '" + std::string(text) + "'");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index)
{
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double silverman_bandwidth(const Eigen::Ref<const Eigen::VectorXd> & x)
{
  const auto n = x.size();
  if (n < 2) {
    throw InsufficientData("bandwidth needs at least two samples");
  }
  const double mean = x.mean();
  const double sd = std::sqrt((x.array() - mean).square().sum() / static_cast<double>(n - 1));
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  double spread = sd;
  if (iqr > 0.0) {
    spread = std::min(sd, iqr / 1.34);
  }
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  // identical samples: keep kernels positive but negligibly wide
  const double floor = 1e-6 * std::max(1.0, std::abs(mean));
  return std::max(h, floor);
}

ScenarioModel fit_model(std::span<const ConflictRecord> records, SamplingMode mode)
{
  std::vector<Eigen::Vector3d> rows;
  rows.reserve(records.size());
  ScenarioModel model;
  model.mode = mode;
  for (const auto & r : records) {
    if (r.t_cp > 0.0 && r.v_sdv > 0.0 && r.v_tv > 0.0 && std::isfinite(r.t_cp) &&
        std::isfinite(r.v_sdv) && std::isfinite(r.v_tv)) {
      rows.emplace_back(r.t_cp, r.v_sdv, r.v_tv);
    } else {
      ++model.excluded;
    }
  }
  if (rows.size() < 2) {
    throw InsufficientData(
      "scenario model needs at least two records with positive values, got " +
      std::to_string(rows.size()));
  }
  model.source.resize(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    model.source.row(static_cast<Eigen::Index>(k)) = rows[k].transpose();
  }
  if (mode == SamplingMode::IndependentKde) {
    for (Eigen::Index c = 0; c < 3; ++c) {
      model.bandwidths[c] = silverman_bandwidth(model.source.col(c));
    }
  }
  return model;
}

double kde_cdf(const ScenarioModel & model, Eigen::Index column, double x)
{
  if (x <= 0.0) {
    return 0.0;
  }
  const double h = model.bandwidths[column];
  if (!(h > 0.0)) {
    throw InvalidInput("kde_cdf needs a model fitted in KDE mode");
  }
  double below_x = 0.0;
  double below_zero = 0.0;
  for (const double c : model.source.col(column)) {
    below_x += normal_cdf((x - c) / h);
    below_zero += normal_cdf(-c / h);
  }
  const double n = static_cast<double>(model.source.rows());
  return (below_x - below_zero) / (n - below_zero);
}

std::vector<ScenarioSample> sample_scenarios(
  const ScenarioModel & model, std::size_t n, std::uint64_t seed)
{
  if (n == 0) {
    throw InvalidInput("sample_scenarios needs n >= 1");
  }
  const auto rows = static_cast<std::size_t>(model.source.rows());
  if (rows == 0) {
    throw InsufficientData("empty scenario model");
  }
  std::vector<ScenarioSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    ScenarioSample s;
    s.seed = derive_seed(seed, k);
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<std::size_t> pick(0, rows - 1);
    Eigen::Vector3d v;
    if (model.mode == SamplingMode::JointResample) {
      v = model.source.row(static_cast<Eigen::Index>(pick(rng))).transpose();
    } else {
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (Eigen::Index c = 0; c < 3; ++c) {
        double draw = 0.0;
        do {
          draw = model.source(static_cast<Eigen::Index>(pick(rng)), c) + model.bandwidths[c] * gauss(rng);
        } while (!(draw > 0.0));
        v[c] = draw;
      }
    }
    s.t_cp = v[kTcpColumn];
    s.v_sdv = v[kVsdvColumn];
    s.v_tv = v[kVtvColumn];
    s.d_cp = s.t_cp * s.v_sdv;
    out.push_back(s);
  }
  return out;
}

}  // namespace ltapod
