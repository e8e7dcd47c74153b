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

#include "matchplan/json_io.hpp"

#include <fstream>

#include "matchplan/errors.hpp"

namespace matchplan {

using nlohmann::json;

MarketInstance instance_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("suppliers")) {
    throw DomainError("instance JSON needs keys \"m\" and \"suppliers\"");
  }
  const json& m = doc.at("m");
  if (!m.is_number_integer() || m.get<long long>() < 1) {
    throw DomainError("instance JSON: \"m\" must be an integer >= 1");
  }
  const json& list = doc.at("suppliers");
  if (!list.is_array() || list.empty()) {
    throw DomainError("instance JSON: \"suppliers\" must be a non-empty array");
  }
  std::vector<Supplier> suppliers;
  suppliers.reserve(list.size());
  for (const json& s : list) {
    if (!s.is_object() || !s.contains("v") || !s.contains("q") || !s.at("v").is_number() ||
        !s.at("q").is_number()) {
      throw DomainError("instance JSON: each supplier needs numeric \"v\" and \"q\"");
    }
    suppliers.push_back({s.at("v").get<double>(), s.at("q").get<double>()});
  }
  return MarketInstance(m.get<std::size_t>(), std::move(suppliers));
}

json instance_to_json(const MarketInstance& instance) {
  json list = json::array();
  for (const Supplier& s : instance.suppliers()) list.push_back({{"v", s.v}, {"q", s.q}});
  return {{"m", instance.num_customers()}, {"suppliers", std::move(list)}};
}

MenuSet menus_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("menus") || !doc.at("menus").is_array()) {
    throw DomainError("menu JSON needs an array under \"menus\"");
  }
  MenuSet out;
  for (const json& menu : doc.at("menus")) {
    if (!menu.is_array()) throw DomainError("menu JSON: each menu must be an array");
    Menu parsed;
    for (const json& j : menu) {
      if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw DomainError("menu JSON: supplier indices must be non-negative integers");
      }
      parsed.push_back(j.get<SupplierIndex>());
    }
    out.menus.push_back(std::move(parsed));
  }
  return out;
}

json menus_to_json(const MenuSet& menu_set) {
  json menus = json::array();
  for (const Menu& menu : menu_set.menus) menus.push_back(menu);
  return {{"menus", std::move(menus)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace matchplan
