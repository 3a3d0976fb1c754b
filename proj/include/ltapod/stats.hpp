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

#ifndef LTAPOD__STATS_HPP_
#define LTAPOD__STATS_HPP_

#include "ltapod/conflict.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltapod
{

enum class Variable { DcpInv, TcpInv, Vsdv, Vtv, Dcp, Tcp };

/// The four variables reported per population.
inline constexpr std::array<Variable, 4> kConflictVariables{
  Variable::DcpInv, Variable::TcpInv, Variable::Vsdv, Variable::Vtv};

/// "dcp_inv", "tcp_inv", "v_sdv", "v_tv", "d_cp", "t_cp".
std::string_view to_string(Variable v);
Variable parse_variable(std::string_view text);

/// Immutable sample set. Nonempty, all values finite.
class EmpiricalDistribution
{
public:
  EmpiricalDistribution(Eigen::VectorXd samples, std::string label = {});

  const Eigen::VectorXd & samples() const { return samples_; }
  const Eigen::VectorXd & sorted() const { return sorted_; }
  const std::string & label() const { return label_; }
  Eigen::Index size() const { return samples_.size(); }

  double mean() const { return samples_.mean(); }
  /// n - 1 denominator; zero for a single sample.
  double stddev() const;
  /// Fraction of samples <= x.
  double cdf(double x) const;

private:
  Eigen::VectorXd samples_;
  Eigen::VectorXd sorted_;
  std::string label_;
};

struct DistributionBuild
{
  EmpiricalDistribution distribution;
  std::size_t excluded{0};  // zero d_cp / t_cp under a reciprocal variable
};

double variable_value(const ConflictRecord & r, Variable v);

/// Throws InsufficientData when no record survives.
DistributionBuild build_distribution(
  std::span<const ConflictRecord> records, Variable variable, std::string label = {});

struct Histogram
{
  std::vector<double> edges;  // bins + 1 equal-width edges over [min, max]
  std::vector<std::size_t> counts;
};

struct Summary
{
  std::size_t count{0};
  double mean{0.0};
  double stddev{0.0};
  double min{0.0};
  double max{0.0};
  Histogram histogram;
};

Summary summarize(const EmpiricalDistribution & dist, std::size_t bins = 30);

enum class MwwMethod { Exact, NormalApprox };

std::string_view to_string(MwwMethod m);

struct MwwResult
{
  double u_statistic{0.0};  // U of the first sample, midranks for ties
  double z_score{0.0};
  double p_value{1.0};  // two-sided
  MwwMethod method{MwwMethod::NormalApprox};
};

/// Largest per-side size for which the exact null distribution is used.
inline constexpr Eigen::Index kMwwExactLimit = 8;

/// Two-sided Mann-Whitney-Wilcoxon rank-sum test. Small tie-free samples use the exact null
/// distribution; everything else the tie-corrected normal approximation with continuity and
/// kurtosis (Edgeworth) correction.
MwwResult mww_test(const EmpiricalDistribution & a, const EmpiricalDistribution & b);

/// Same test with the method forced when `method` is set. Forcing Exact on tied or large samples
/// throws InvalidInput.
MwwResult mww_test(
  const EmpiricalDistribution & a, const EmpiricalDistribution & b, std::optional<MwwMethod> method);

/// Number of rank assignments giving each U in [0, n1*n2] for tie-free samples.
std::vector<double> mww_null_counts(int n1, int n2);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(const EmpiricalDistribution & a, const EmpiricalDistribution & b);

/// Kolmogorov-Smirnov distance between samples and a continuous CDF.
template <std::invocable<double> Cdf>
double ks_distance(const EmpiricalDistribution & samples, Cdf && cdf)
{
  const auto & s = samples.sorted();
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double f = cdf(s[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  return d;
}

}  // namespace ltapod

#endif  // LTAPOD__STATS_HPP_
