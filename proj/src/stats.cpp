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

#include "ltapod/stats.hpp"

#include "ltapod/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace ltapod
{

std::string_view to_string(Variable v)
{
  switch (v) {
    case Variable::DcpInv:
      return "dcp_inv";
    case Variable::TcpInv:
      return "tcp_inv";
    case Variable::Vsdv:
      return "v_sdv";
    case Variable::Vtv:
      return "v_tv";
    case Variable::Dcp:
      return "d_cp";
    case Variable::Tcp:
      return "t_cp";
  }
  return "unknown";
}

Variable parse_variable(std::string_view text)
{
  for (const auto v :
       {Variable::DcpInv, Variable::TcpInv, Variable::Vsdv, Variable::Vtv, Variable::Dcp,
        Variable::Tcp}) {
    if (to_string(v) == text) {
      return v;
    }
  }
  throw InvalidInput("unknown variable '" + std::string(text) + "'");
}

std::string_view to_string(MwwMethod m)
{
  return m == MwwMethod::Exact ? "exact" : "normal";
}

EmpiricalDistribution::EmpiricalDistribution(Eigen::VectorXd samples, std::string label)
: samples_(std::move(samples)), sorted_(samples_), label_(std::move(label))
{
  if (samples_.size() == 0) {
    throw InsufficientData("empirical distribution needs at least one sample");
  }
  if (!samples_.allFinite()) {
    throw InvalidInput("empirical distribution samples must be finite");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalDistribution::stddev() const
{
  const Eigen::Index n = samples_.size();
  if (n < 2) {
    return 0.0;
  }
  return std::sqrt((samples_.array() - mean()).square().sum() / static_cast<double>(n - 1));
}

double EmpiricalDistribution::cdf(double x) const
{
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double variable_value(const ConflictRecord & r, Variable v)
{
  switch (v) {
    case Variable::DcpInv:
      return 1.0 / r.d_cp;
    case Variable::TcpInv:
      return 1.0 / r.t_cp;
    case Variable::Vsdv:
      return r.v_sdv;
    case Variable::Vtv:
      return r.v_tv;
    case Variable::Dcp:
      return r.d_cp;
    case Variable::Tcp:
      return r.t_cp;
  }
  return 0.0;
}

DistributionBuild build_distribution(
  std::span<const ConflictRecord> records, Variable variable, std::string label)
{
  std::vector<double> values;
  values.reserve(records.size());
  std::size_t excluded = 0;
  for (const auto & r : records) {
    const bool reciprocal = variable == Variable::DcpInv || variable == Variable::TcpInv;
    const double base = variable == Variable::DcpInv ? r.d_cp : r.t_cp;
    if (reciprocal && !(base > 0.0)) {
      ++excluded;
      continue;
    }
    values.push_back(variable_value(r, variable));
  }
  if (values.empty()) {
    throw InsufficientData(
      "no usable samples for " + std::string(to_string(variable)) + " (" +
      std::to_string(excluded) + " excluded)");
  }
  Eigen::VectorXd samples = Eigen::Map<const Eigen::VectorXd>(
    values.data(), static_cast<Eigen::Index>(values.size()));
  return {EmpiricalDistribution(std::move(samples), std::move(label)), excluded};
}

Summary summarize(const EmpiricalDistribution & dist, std::size_t bins)
{
  if (bins == 0) {
    throw InvalidInput("histogram needs at least one bin");
  }
  Summary s;
  s.count = static_cast<std::size_t>(dist.size());
  s.mean = dist.mean();
  s.stddev = dist.stddev();
  s.min = dist.sorted()[0];
  s.max = dist.sorted()[dist.size() - 1];

  const double width = (s.max - s.min) / static_cast<double>(bins);
  s.histogram.edges.resize(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k) {
    s.histogram.edges[k] = s.min + width * static_cast<double>(k);
  }
  s.histogram.edges.back() = s.max;
  s.histogram.counts.assign(bins, 0);
  for (const double x : dist.samples()) {
    std::size_t k = 0;
    if (width > 0.0) {
      k = std::min(bins - 1, static_cast<std::size_t>((x - s.min) / width));
    }
    ++s.histogram.counts[k];
  }
  return s;
}

std::vector<double> mww_null_counts(int n1, int n2)
{
  if (n1 < 0 || n2 < 0) {
    throw InvalidInput("negative sample size");
  }
  // counts[i][j] is the U distribution for sizes (i, j):
  // f(i, j, u) = f(i - 1, j, u - j) + f(i, j - 1, u)
  std::vector<std::vector<std::vector<double>>> counts(
    static_cast<std::size_t>(n1) + 1, std::vector<std::vector<double>>(static_cast<std::size_t>(n2) + 1));
  for (int i = 0; i <= n1; ++i) {
    for (int j = 0; j <= n2; ++j) {
      auto & f = counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      f.assign(static_cast<std::size_t>(i * j) + 1, 0.0);
      if (i == 0 || j == 0) {
        f[0] = 1.0;
        continue;
      }
      const auto & drop_a = counts[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      const auto & drop_b = counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
      for (std::size_t u = 0; u < drop_a.size(); ++u) {
        f[u + static_cast<std::size_t>(j)] += drop_a[u];
      }
      for (std::size_t u = 0; u < drop_b.size(); ++u) {
        f[u] += drop_b[u];
      }
    }
  }
  return counts[static_cast<std::size_t>(n1)][static_cast<std::size_t>(n2)];
}

MwwResult mww_test(const EmpiricalDistribution & a, const EmpiricalDistribution & b)
{
  return mww_test(a, b, std::nullopt);
}

MwwResult mww_test(
  const EmpiricalDistribution & a, const EmpiricalDistribution & b, std::optional<MwwMethod> method)
{
  const Eigen::Index n1 = a.size();
  const Eigen::Index n2 = b.size();
  const Eigen::Index n = n1 + n2;

  struct Item
  {
    double value;
    bool from_a;
  };
  std::vector<Item> pooled;
  pooled.reserve(static_cast<std::size_t>(n));
  for (const double x : a.samples()) {
    pooled.push_back({x, true});
  }
  for (const double x : b.samples()) {
    pooled.push_back({x, false});
  }
  std::sort(pooled.begin(), pooled.end(), [](const Item & l, const Item & r) {
    return l.value < r.value;
  });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  bool ties = false;
  for (std::size_t lo = 0; lo < pooled.size();) {
    std::size_t hi = lo + 1;
    while (hi < pooled.size() && pooled[hi].value == pooled[lo].value) {
      ++hi;
    }
    const double t = static_cast<double>(hi - lo);
    const double midrank = 0.5 * static_cast<double>(lo + 1 + hi);
    for (std::size_t k = lo; k < hi; ++k) {
      if (pooled[k].from_a) {
        rank_sum_a += midrank;
      }
    }
    if (hi - lo > 1) {
      ties = true;
      tie_term += t * t * t - t;
    }
    lo = hi;
  }

  const double d1 = static_cast<double>(n1);
  const double d2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  MwwResult r;
  r.u_statistic = rank_sum_a - d1 * (d1 + 1.0) / 2.0;
  const double mu = d1 * d2 / 2.0;
  const double dev = std::abs(r.u_statistic - mu);

  double var = d1 * d2 / 12.0 * (dn + 1.0);
  if (n > 1) {
    var -= d1 * d2 / 12.0 * tie_term / (dn * (dn - 1.0));
  }
  const double sigma = var > 0.0 ? std::sqrt(var) : 0.0;
  const double z_abs = sigma > 0.0 ? std::max(dev - 0.5, 0.0) / sigma : 0.0;
  r.z_score = r.u_statistic < mu ? -z_abs : z_abs;

  const bool exact_possible = !ties && n1 <= kMwwExactLimit && n2 <= kMwwExactLimit;
  if (method == MwwMethod::Exact && !exact_possible) {
    throw InvalidInput("exact rank-sum p-value needs tie-free samples of at most 8 each");
  }
  if (exact_possible && method != MwwMethod::NormalApprox) {
    r.method = MwwMethod::Exact;
    const auto counts = mww_null_counts(static_cast<int>(n1), static_cast<int>(n2));
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    double extreme = 0.0;
    for (std::size_t u = 0; u < counts.size(); ++u) {
      if (std::abs(static_cast<double>(u) - mu) >= dev - 1e-9) {
        extreme += counts[u];
      }
    }
    r.p_value = std::min(1.0, extreme / total);
    return r;
  }

  r.method = MwwMethod::NormalApprox;
  if (sigma <= 0.0) {
    r.p_value = 1.0;
    return r;
  }
  // Edgeworth term from the null excess kurtosis of U (Fix & Hodges)
  const double kurtosis =
    -6.0 * (d1 * d1 + d2 * d2 + d1 * d2 + d1 + d2) / (5.0 * d1 * d2 * (dn + 1.0));
  const double density = std::exp(-0.5 * z_abs * z_abs) / std::sqrt(2.0 * std::numbers::pi);
  const double p = std::erfc(z_abs / std::numbers::sqrt2) +
                   2.0 * density * kurtosis / 24.0 * (z_abs * z_abs * z_abs - 3.0 * z_abs);
  r.p_value = std::clamp(p, 0.0, 1.0);
  return r;
}

double ks_distance(const EmpiricalDistribution & a, const EmpiricalDistribution & b)
{
  const auto & x = a.sorted();
  const auto & y = b.sorted();
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) {
      ++i;
    }
    while (j < y.size() && y[j] == v) {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

}  // namespace ltapod
