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

#include "toycat/serialize.hpp"

#include <fstream>

namespace toycat {

using nlohmann::json;

json object_to_json(const FinObject& a) {
  json out = json::array();
  for (std::size_t k = 0; k < a.arity(); ++k) out.push_back(a.factor(k));
  return out;
}

FinObject object_from_json(const json& j) {
  if (!j.is_array()) throw TypeError("object must be a JSON array of factor sizes");
  std::vector<std::size_t> factors;
  for (const auto& f : j) {
    if (!f.is_number_unsigned()) throw TypeError("object factors must be positive integers");
    factors.push_back(f.get<std::size_t>());
  }
  return FinObject(factors);
}

json relation_to_json(const Relation& r) {
  json pairs = json::array();
  for (auto [from, to] : r.pairs()) pairs.push_back(json::array({from, to}));
  json out;
  out["dom"] = object_to_json(r.dom());
  out["cod"] = object_to_json(r.cod());
  out["pairs"] = std::move(pairs);
  return out;
}

Relation relation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dom") || !j.contains("cod") ||
      !j.contains("pairs")) {
    throw TypeError("relation JSON needs \"dom\", \"cod\" and \"pairs\"");
  }
  FinObject dom = object_from_json(j.at("dom"));
  FinObject cod = object_from_json(j.at("cod"));
  std::vector<Relation::Pair> pairs;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() ||
        !p[1].is_number_unsigned()) {
      throw TypeError("each pair must be [dom_index, cod_index]");
    }
    Relation::Pair pair{p[0].get<std::size_t>(), p[1].get<std::size_t>()};
    if (!pairs.empty() && !(pairs.back() < pair)) {
      throw TypeError("pairs must be sorted and free of duplicates");
    }
    pairs.push_back(pair);
  }
  return Relation::from_pairs(dom, cod, pairs);
}

FinObject parse_object_name(const std::string& name) {
  if (name == "I") return FinObject::unit();
  std::vector<std::size_t> factors;
  std::size_t pos = 0;
  while (pos <= name.size()) {
    std::size_t end = name.find('x', pos);
    if (end == std::string::npos) end = name.size();
    std::string part = name.substr(pos, end - pos);
    if (part == "I") {
      factors.push_back(1);
    } else if (part == "II") {
      factors.push_back(2);
    } else if (part == "IV") {
      factors.push_back(4);
    } else if (part.size() > 1 && part[0] == 'F' &&
               part.find_first_not_of("0123456789", 1) == std::string::npos) {
      factors.push_back(std::stoul(part.substr(1)));
    } else {
      throw TypeError("unknown object name '" + name + "'");
    }
    pos = end + 1;
  }
  return FinObject(factors);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Relation read_relation_file(const std::string& path) {
  return relation_from_json(read_json_file(path));
}

}  // namespace toycat
