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

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace ltapod
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && blank(s.front())) {
    s.remove_prefix(1);
  }
  while (!s.empty() && blank(s.back())) {
    s.remove_suffix(1);
  }
  return s;
}

double to_double(std::string_view key, std::string_view value)
{
  const auto v = parse_double(value);
  if (!v) {
    throw InvalidInput("config: '" + std::string(key) + "' expects a number, got '" +
                       std::string(value) + "'");
  }
  return *v;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view value)
{
  Int v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw InvalidInput("config: '" + std::string(key) + "' expects a non-negative integer, got '" +
                       std::string(value) + "'");
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view value)
{
  std::vector<std::string_view> out;
  for (const auto item : split_csv_line(value)) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

struct Key
{
  std::string_view name;
  std::function<void(PipelineConfig &, std::string_view)> set;
  std::function<std::string(const PipelineConfig &)> get;
};

std::string join_variables(const std::vector<Variable> & vars)
{
  std::string s;
  for (const auto v : vars) {
    if (!s.empty()) {
      s += ',';
    }
    s += to_string(v);
  }
  return s;
}

const std::vector<Key> & keys()
{
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    const auto number = [&k](std::string_view name, auto member) {
      k.push_back(
        {name,
         [name, member](PipelineConfig & c, std::string_view v) { member(c) = to_double(name, v); },
         [member](const PipelineConfig & c) {
           return format_double(member(c));
         }});
    };
    number("association.min_closing_speed", [](auto & c) -> auto & { return c.association.min_closing_speed; });
    number("association.max_azimuth", [](auto & c) -> auto & { return c.association.max_azimuth; });
    number("association.time_window", [](auto & c) -> auto & { return c.association.time_window; });
    number("association.correspondence_tol", [](auto & c) -> auto & { return c.association.correspondence_tol; });
    number("association.max_transversal_rate", [](auto & c) -> auto & { return c.association.max_transversal_rate; });
    k.push_back(
      {"association.min_cluster_size",
       [](PipelineConfig & c, std::string_view v) {
         c.association.min_cluster_size = to_integer<std::size_t>("association.min_cluster_size", v);
       },
       [](const PipelineConfig & c) { return std::to_string(c.association.min_cluster_size); }});
    number("screening.min_host_speed", [](auto & c) -> auto & { return c.screening.min_host_speed; });
    number("screening.max_heading_change", [](auto & c) -> auto & { return c.screening.max_heading_change; });
    number("screening.max_target_longitudinal_speed", [](auto & c) -> auto & { return c.screening.max_target_longitudinal_speed; });
    number("screening.min_duration", [](auto & c) -> auto & { return c.screening.min_duration; });
    number("screening.max_point_gap", [](auto & c) -> auto & { return c.screening.max_point_gap; });
    k.push_back(
      {"screening.platform",
       [](PipelineConfig & c, std::string_view v) { c.screening.platform = parse_platform(v); },
       [](const PipelineConfig & c) { return std::string(to_string(c.screening.platform)); }});
    k.push_back(
      {"stats.variables",
       [](PipelineConfig & c, std::string_view v) {
         std::vector<Variable> vars;
         for (const auto item : split_list(v)) {
           vars.push_back(parse_variable(item));
         }
         c.variables = std::move(vars);
       },
       [](const PipelineConfig & c) { return join_variables(c.variables); }});
    k.push_back(
      {"stats.histogram_bins",
       [](PipelineConfig & c, std::string_view v) {
         c.histogram_bins = to_integer<std::size_t>("stats.histogram_bins", v);
       },
       [](const PipelineConfig & c) { return std::to_string(c.histogram_bins); }});
    k.push_back(
      {"stats.compare",
       [](PipelineConfig & c, std::string_view v) {
         const auto items = split_list(v);
         if (items.empty()) {
           c.compare_labels.reset();
           return;
         }
         if (items.size() != 2 || items[0] == items[1]) {
           throw InvalidInput("config: 'stats.compare' expects two distinct labels");
         }
         c.compare_labels.emplace(std::string(items[0]), std::string(items[1]));
       },
       [](const PipelineConfig & c) {
         return c.compare_labels ? c.compare_labels->first + "," + c.compare_labels->second
                                 : std::string();
       }});
    k.push_back(
      {"model.mode",
       [](PipelineConfig & c, std::string_view v) { c.model_mode = parse_sampling_mode(v); },
       [](const PipelineConfig & c) { return std::string(to_string(c.model_mode)); }});
    k.push_back(
      {"model.samples",
       [](PipelineConfig & c, std::string_view v) {
         c.scenario_samples = to_integer<std::size_t>("model.samples", v);
       },
       [](const PipelineConfig & c) { return std::to_string(c.scenario_samples); }});
    k.push_back(
      {"pipeline.input", [](PipelineConfig & c, std::string_view v) { c.input = std::string(v); },
       [](const PipelineConfig & c) { return c.input.string(); }});
    k.push_back(
      {"pipeline.output", [](PipelineConfig & c, std::string_view v) { c.output = std::string(v); },
       [](const PipelineConfig & c) { return c.output.string(); }});
    k.push_back(
      {"pipeline.jobs",
       [](PipelineConfig & c, std::string_view v) { c.jobs = to_integer<std::size_t>("pipeline.jobs", v); },
       [](const PipelineConfig & c) { return std::to_string(c.jobs); }});
    k.push_back(
      {"pipeline.seed",
       [](PipelineConfig & c, std::string_view v) { c.seed = to_integer<std::uint64_t>("pipeline.seed", v); },
       [](const PipelineConfig & c) { return std::to_string(c.seed); }});
    return k;
  }();
  return table;
}

}  // namespace

void PipelineConfig::validate() const
{
  association.validate();
  screening.validate();
  if (variables.empty()) {
    throw InvalidInput("config: at least one stats variable is required");
  }
  if (histogram_bins == 0) {
    throw InvalidInput("config: stats.histogram_bins must be at least 1");
  }
}

void apply_setting(PipelineConfig & cfg, std::string_view key, std::string_view value)
{
  key = trim(key);
  value = trim(value);
  for (const auto & k : keys()) {
    if (k.name == key) {
      k.set(cfg, value);
      return;
    }
  }
  throw InvalidInput("config: unknown key '" + std::string(key) + "'");
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base)
{
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const InvalidInput & e) {
      throw InvalidInput("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

PipelineConfig load_config(const std::filesystem::path & file, PipelineConfig base)
{
  std::ifstream in(file);
  if (!in) {
    throw InvalidInput("cannot open config " + file.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string to_config_text(const PipelineConfig & cfg)
{
  std::string out;
  for (const auto & k : keys()) {
    out += std::string(k.name) + " = " + k.get(cfg) + "\n";
  }
  return out;
}

}  // namespace ltapod
