// Copyright 2026 The matchplan Authors
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

#include "matchplan/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "matchplan/errors.hpp"
#include "matchplan/high_value.hpp"
#include "matchplan/low_value.hpp"
#include "matchplan/rng.hpp"

namespace matchplan {

MarketInstance generate_instance(const GenConfig& cfg) {
  if (!(cfg.lambda_v > 0.0) || !(cfg.lambda_o > 0.0)) {
    throw DomainError("generate_instance: rates must be positive");
  }
  SplitMix64 rng(cfg.seed);
  std::vector<Supplier> suppliers(cfg.n);
  for (Supplier& s : suppliers) s.v = 1.0 / (1.0 + rng.exponential_mean(cfg.lambda_v));
  for (Supplier& s : suppliers) s.q = 1.0 + rng.exponential_mean(cfg.lambda_o);
  return MarketInstance(cfg.m, std::move(suppliers));
}

std::uint64_t instance_seed(std::uint64_t master, std::size_t row, std::size_t index) {
  return split_seed(master, {static_cast<std::uint64_t>(row), static_cast<std::uint64_t>(index)});
}

namespace {

InstanceOutcome run_instance(const TableConfig& config, std::size_t row, std::size_t index) {
  const RowSpec& spec = config.rows[row];
  const std::uint64_t seed = instance_seed(config.seed, row, index);
  const MarketInstance instance =
      generate_instance({config.n, spec.m, spec.lambda_v, spec.lambda_o, seed});
  const LowValuePlan plan = plan_low_value(instance);

  InstanceOutcome out;
  out.row = row;
  out.index = index;
  if (config.evaluation == TableEvaluation::kExact) {
    out.alg = exact_expected_matches(instance, plan.menus).expected_matches;
  } else {
    out.alg = monte_carlo_expected_matches(instance, plan.menus, config.sims_per_instance,
                                           split_seed(seed, 1), Estimator::kRaoBlackwell,
                                           Execution::kSerial)
                  .expected_matches;
  }
  out.ub = allocation_upper_bound(instance.outside_options(), spec.m, BoundKind::kContinuous);
  out.ratio = out.ub > 0.0 ? out.alg / out.ub : 0.0;
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

TableResult run_table(const TableConfig& config, Execution execution) {
  if (config.sims_per_instance == 0 && config.evaluation == TableEvaluation::kMonteCarlo) {
    throw DomainError("run_table: sims_per_instance must be >= 1");
  }
  const std::size_t per_row = config.instances_per_row;
  const std::size_t total = config.rows.size() * per_row;
  TableResult result;
  result.instances.resize(total);

  if (execution == Execution::kParallel) {
    const auto count = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
      const auto ut = static_cast<std::size_t>(t);
      result.instances[ut] = run_instance(config, ut / per_row, ut % per_row);
    }
  } else {
    for (std::size_t t = 0; t < total; ++t) {
      result.instances[t] = run_instance(config, t / per_row, t % per_row);
    }
  }

  for (std::size_t r = 0; r < config.rows.size(); ++r) {
    const RowSpec& spec = config.rows[r];
    TableRow row{spec.m, spec.lambda_v, spec.lambda_o};
    std::vector<double> ratios;
    for (std::size_t i = 0; i < per_row; ++i) {
      const InstanceOutcome& o = result.instances[r * per_row + i];
      row.avg_alg += o.alg;
      row.avg_ub += o.ub;
      ratios.push_back(o.ratio);
    }
    if (per_row > 0) {
      const double count = static_cast<double>(per_row);
      row.avg_alg /= count;
      row.avg_ub /= count;
      for (double ratio : ratios) row.ratio_mean += ratio;
      row.ratio_mean /= count;
      row.ratio_min = *std::min_element(ratios.begin(), ratios.end());
      row.ratio_median = median(ratios);
    }
    result.rows.push_back(row);
  }
  return result;
}

std::vector<RowSpec> standard_grid() {
  std::vector<RowSpec> rows;
  for (std::size_t m : {50, 75, 100, 125, 150, 200}) {
    for (double lv : {1.0, 10.0}) {
      for (double lo : {1.0, 10.0}) rows.push_back({m, lv, lo});
    }
  }
  return rows;
}

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& field) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) throw DomainError("CSV: bad number '" + field + "'");
  return value;
}

std::size_t parse_size(const std::string& field) {
  std::size_t value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) throw DomainError("CSV: bad integer '" + field + "'");
  return value;
}

}  // namespace

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::string out = kTableCsvHeader;
  out += '\n';
  for (const TableRow& r : rows) {
    out += std::to_string(r.m);
    for (double x : {r.lambda_v, r.lambda_o, r.avg_alg, r.avg_ub, r.ratio_mean, r.ratio_min,
                     r.ratio_median}) {
      out += ',';
      out += format_double(x);
    }
    out += '\n';
  }
  return out;
}

std::vector<TableRow> table_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kTableCsvHeader) {
    throw DomainError("CSV: missing or unexpected header");
  }
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    if (fields.size() != 8) throw DomainError("CSV: expected 8 columns in '" + line + "'");
    rows.push_back(TableRow{parse_size(fields[0]), parse_double(fields[1]),
                            parse_double(fields[2]), parse_double(fields[3]),
                            parse_double(fields[4]), parse_double(fields[5]),
                            parse_double(fields[6]), parse_double(fields[7])});
  }
  return rows;
}

}  // namespace matchplan
