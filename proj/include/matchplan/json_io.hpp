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

#ifndef MATCHPLAN_JSON_IO_HPP_
#define MATCHPLAN_JSON_IO_HPP_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "matchplan/market.hpp"

namespace matchplan {

// Instance schema: {"m": int, "suppliers": [{"v": float, "q": float}, ...]}
// Menu schema:     {"menus": [[int, ...], ...]}
//
// Loaders require m >= 1 and at least one supplier, and throw DomainError
// on malformed documents.
MarketInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const MarketInstance& instance);

MenuSet menus_from_json(const nlohmann::json& doc);
nlohmann::json menus_to_json(const MenuSet& menu_set);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace matchplan

#endif  // MATCHPLAN_JSON_IO_HPP_
