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

// matchplan: plan, evaluate and bound assortment menus for a two-sided
// matching market.
//
//   matchplan generate --n 100 --m 50 --lambda-v 1 --lambda-o 1 --seed 7 --out f.json
//   matchplan plan --instance f.json [--regime low|high|auto] --out menus.json [--diag d.json]
//   matchplan eval --instance f.json --menus menus.json [--mc 100000 --seed 1] [--raw]
//   matchplan bounds --instance f.json --kind integer|continuous
//   matchplan oracle --instance f.json [--max-profiles N]
//   matchplan buckets --instance f.json
//   matchplan table --rows rows.json --n 100 --instances 25 --sims 30 --seed S --out table.csv

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchplan/bucketing.hpp"
#include "matchplan/combined.hpp"
#include "matchplan/errors.hpp"
#include "matchplan/evaluator.hpp"
#include "matchplan/harness.hpp"
#include "matchplan/high_value.hpp"
#include "matchplan/json_io.hpp"
#include "matchplan/low_value.hpp"
#include "matchplan/oracle.hpp"

namespace {

using nlohmann::json;
using namespace matchplan;

void emit(const json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json_file(path, doc);
  }
}

json allocation_json(const Allocation& a) {
  return {{"x", a.x}, {"value", a.value}};
}

json rounding_json(const RoundingCheck& r) {
  return {{"lpopt", r.lpopt},
          {"rounded_objective", r.rounded_objective},
          {"max_customer_mass", r.max_customer_mass},
          {"max_cap_excess", r.max_cap_excess},
          {"objective_ok", r.objective_ok},
          {"mass_ok", r.mass_ok},
          {"cap_ok", r.cap_ok}};
}

json low_json(const LowValueDiagnostics& d) {
  return {{"lpopt", d.lpopt},
          {"upper_bound", d.upper_bound},
          {"additive_slack", d.additive_slack},
          {"cap_exponent", d.cap_exponent},
          {"clamped", d.clamped},
          {"dropped", d.dropped},
          {"num_buckets", d.num_buckets},
          {"rounding", rounding_json(d.rounding)},
          {"menu_check",
           {{"totals_ok", d.menu_check.totals_ok},
            {"show_bound_ok", d.menu_check.show_bound_ok},
            {"max_count", d.menu_check.max_count}}},
          {"max_menu_mass", d.max_menu_mass}};
}

json high_json(const HighValueDiagnostics& d) {
  return {{"allocation", allocation_json(d.allocation)},
          {"upper_bound", d.upper_bound},
          {"method", d.method == AllocationMethod::kGreedy ? "greedy" : "half_approx"},
          {"proof_constant", d.proof_constant}};
}

json buckets_json(const BucketTable& table) {
  json out = json::array();
  for (const Bucket& b : table.buckets) {
    out.push_back({{"k1", b.index.k1},
                   {"k2", b.index.k2},
                   {"w", b.w},
                   {"q_rep", b.q_rep},
                   {"members", b.members}});
  }
  return out;
}

std::vector<RowSpec> rows_from_json(const json& doc) {
  if (!doc.is_array()) throw DomainError("rows file must be a JSON array");
  std::vector<RowSpec> rows;
  for (const json& r : doc) {
    rows.push_back({r.at("m").get<std::size_t>(), r.at("lambda_v").get<double>(),
                    r.at("lambda_o").get<double>()});
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assortment planning for two-sided matching markets"};
  app.require_subcommand(1);

  GenConfig gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Draw a random instance");
  generate->add_option("--n", gen.n, "Number of suppliers")->default_val(100);
  generate->add_option("--m", gen.m, "Number of customers")->default_val(100);
  generate->add_option("--lambda-v", gen.lambda_v, "Rate of the score transform")->default_val(1.0);
  generate->add_option("--lambda-o", gen.lambda_o, "Rate of the outside-option transform")
      ->default_val(1.0);
  generate->add_option("--seed", gen.seed)->default_val(0);
  generate->add_option("--out", gen_out, "Output file (stdout if omitted)");

  std::string instance_path, out_path, diag_path, regime = "auto";
  bool half_approx = false;
  std::optional<int> cap;
  auto* plan = app.add_subcommand("plan", "Compute menus");
  plan->add_option("--instance", instance_path)->required();
  plan->add_option("--regime", regime)
      ->check(CLI::IsMember({"low", "high", "auto"}))
      ->default_val("auto");
  plan->add_option("--out", out_path, "Menus file (stdout if omitted)");
  plan->add_option("--diag", diag_path, "Diagnostics file");
  plan->add_option("--cap", cap, "Cap exponent for large outside options");
  plan->add_flag("--half-approx", half_approx, "Relaxation+rounding allocation instead of greedy");

  std::string menus_path;
  std::size_t mc_trials = 0;
  std::uint64_t mc_seed = 0;
  bool raw = false;
  auto* eval = app.add_subcommand("eval", "Expected matches of a menu set");
  eval->add_option("--instance", instance_path)->required();
  eval->add_option("--menus", menus_path)->required();
  eval->add_option("--mc", mc_trials, "Monte Carlo trials (exact when omitted)");
  eval->add_option("--seed", mc_seed)->default_val(0);
  eval->add_flag("--raw", raw, "Sample the supplier stage too");

  std::string kind = "integer";
  auto* bounds = app.add_subcommand("bounds", "Allocation upper bound");
  bounds->add_option("--instance", instance_path)->required();
  bounds->add_option("--kind", kind)
      ->check(CLI::IsMember({"integer", "continuous"}))
      ->default_val("integer");

  std::uint64_t max_profiles = kDefaultOracleBudget;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for tiny instances");
  oracle->add_option("--instance", instance_path)->required();
  oracle->add_option("--max-profiles", max_profiles)->default_val(kDefaultOracleBudget);

  auto* buckets = app.add_subcommand("buckets", "Dyadic bucket table");
  buckets->add_option("--instance", instance_path)->required();

  std::string rows_path;
  TableConfig table_cfg;
  bool exact = false;
  auto* table = app.add_subcommand("table", "Simulation table over a grid of markets");
  table->add_option("--rows", rows_path, "JSON array of {m, lambda_v, lambda_o}")->required();
  table->add_option("--n", table_cfg.n)->default_val(100);
  table->add_option("--instances", table_cfg.instances_per_row)->default_val(25);
  table->add_option("--sims", table_cfg.sims_per_instance)->default_val(30);
  table->add_option("--seed", table_cfg.seed)->default_val(0);
  table->add_option("--out", out_path, "CSV file (stdout if omitted)");
  table->add_flag("--exact", exact, "Exact evaluator instead of Monte Carlo");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      emit(instance_to_json(generate_instance(gen)), gen_out);
    } else if (*plan) {
      const MarketInstance instance = instance_from_json(read_json_file(instance_path));
      json diag;
      MenuSet menus;
      if (regime == "low") {
        LowValuePlan p = plan_low_value(instance, {cap});
        menus = std::move(p.menus);
        diag = {{"regime", "low"}, {"low", low_json(p.diagnostics)}};
      } else if (regime == "high") {
        HighValuePlan p = plan_high_value(
            instance, {half_approx ? AllocationMethod::kHalfApprox : AllocationMethod::kGreedy});
        menus = std::move(p.menus);
        diag = {{"regime", "high"}, {"high", high_json(p.diagnostics)}};
      } else {
        CombinedOptions options;
        options.low.cap_exponent = cap;
        if (half_approx) options.high.method = AllocationMethod::kHalfApprox;
        CombinedPlan p = plan_combined(instance, options);
        menus = std::move(p.menus);
        diag = {{"regime", "auto"},
                {"customers_high", p.split.customers_high},
                {"customers_low", p.split.customers_low},
                {"suppliers_high", p.split.high},
                {"suppliers_low", p.split.low}};
        if (p.low) diag["low"] = low_json(*p.low);
        if (p.high) diag["high"] = high_json(*p.high);
      }
      emit(menus_to_json(menus), out_path);
      if (!diag_path.empty()) emit(diag, diag_path);
    } else if (*eval) {
      const MarketInstance instance = instance_from_json(read_json_file(instance_path));
      const MenuSet menus = menus_from_json(read_json_file(menus_path));
      require_valid(instance, menus);
      if (mc_trials > 0) {
        const MonteCarloResult r = monte_carlo_expected_matches(
            instance, menus, mc_trials, mc_seed,
            raw ? Estimator::kRawTwoStage : Estimator::kRaoBlackwell);
        emit({{"expected_matches", r.expected_matches},
              {"per_supplier", r.per_supplier},
              {"standard_error", r.standard_error},
              {"trials", r.trials}},
             "");
      } else {
        const EvalResult r = exact_expected_matches(instance, menus);
        emit({{"expected_matches", r.expected_matches}, {"per_supplier", r.per_supplier}}, "");
      }
    } else if (*bounds) {
      const MarketInstance instance = instance_from_json(read_json_file(instance_path));
      const double ub = allocation_upper_bound(
          instance.outside_options(), instance.num_customers(),
          kind == "integer" ? BoundKind::kInteger : BoundKind::kContinuous);
      emit({{"kind", kind}, {"upper_bound", ub}}, "");
    } else if (*oracle) {
      const MarketInstance instance = instance_from_json(read_json_file(instance_path));
      const OracleResult r = brute_force_optimal(instance, max_profiles);
      json doc = menus_to_json(r.menus);
      doc["value"] = r.value;
      doc["profiles"] = r.profiles;
      emit(doc, "");
    } else if (*buckets) {
      const MarketInstance instance = instance_from_json(read_json_file(instance_path));
      const ClampResult clamped = clamp_low_q(instance);
      emit({{"clamped", clamped.clamped}, {"buckets", buckets_json(build_buckets(clamped.instance))}},
           "");
    } else if (*table) {
      table_cfg.rows = rows_from_json(read_json_file(rows_path));
      table_cfg.evaluation = exact ? TableEvaluation::kExact : TableEvaluation::kMonteCarlo;
      const std::string csv = table_to_csv(run_table(table_cfg).rows);
      if (out_path.empty() || out_path == "-") {
        std::cout << csv;
      } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        file << csv;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "matchplan: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
