// Copyright 2026 The toycat Authors
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

#pragma once

#include <string>

#include "json.hpp"
#include "toycat/relation.hpp"

namespace toycat {

// Relation files: {"dom":[4,4],"cod":[4],"pairs":[[j,i],...]} where j indexes
// the flattened domain, i the flattened codomain, and pairs are sorted with no
// duplicates. Output is canonical; input must already be canonical.
nlohmann::json relation_to_json(const Relation& r);
Relation relation_from_json(const nlohmann::json& j);

FinObject object_from_json(const nlohmann::json& j);
nlohmann::json object_to_json(const FinObject& a);

// Parses an object name such as "I", "IV", "IVxII" or "F3xIV".
FinObject parse_object_name(const std::string& name);

Relation read_relation_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace toycat
