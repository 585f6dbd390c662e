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

#include "toycat/protocols.hpp"

#include <algorithm>
#include <set>

#include "toycat/serialize.hpp"

namespace toycat {

namespace {

void require_cup(const Relation& eta) {
  if (!eta.is_state() || eta.cod().arity() == 0 || eta.cod().arity() % 2 != 0 ||
      !satisfies_snake(eta)) {
    throw ProtocolError("eta " + eta.cod().name() + " is not a cup passing the snake equations");
  }
}

FinObject half(const Relation& eta) {
  return eta.cod().slice(0, eta.cod().arity() / 2);
}

void require_unitaries(const std::vector<Relation>& us, const FinObject& a) {
  for (const auto& u : us) {
    if (u.dom() != a || u.cod() != a) {
      throw TypeError("expected a unitary on " + a.name() + ", got " + u.dom().name() +
                      " -> " + u.cod().name());
    }
    if (!is_unitary(u)) throw ProtocolError("not unitary: " + describe(u));
  }
}

Relation shifted(const Relation& u, const Relation& eta) {
  return compose(tensor(u, Relation::identity(u.dom())), eta);
}

std::vector<Relation> sorted_unique(std::vector<Relation> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

nlohmann::json relation_json(const Relation& r) {
  nlohmann::json j = relation_to_json(r);
  j["text"] = describe(r);
  if (r.empty()) j["empty"] = true;  // an impossible branch
  return j;
}

}  // namespace

BellBasis bell_basis(const BasisStructure& bx, const BasisStructure& bz) {
  if (bx.object() != bz.object()) {
    throw TypeError("basis structures live on " + bx.object().name() + " and " +
                    bz.object().name());
  }
  const ComplementarityReport report = check_complementary(bx, bz);
  if (!report.holds()) {
    throw ProtocolError("structures are not complementary: " + to_json(report).dump());
  }
  const FinObject& a = bx.object();
  const Relation id = Relation::identity(a);
  Relation delta = compose(tensor(tensor(id, swap(a, a)), id), tensor(bx.delta(), bz.delta()));
  Relation epsilon = tensor(bx.epsilon(), bz.epsilon());
  Relation bell = compose(tensor(bx.multiplication(), id), tensor(id, bz.delta()));
  return {BasisStructure(std::move(delta), std::move(epsilon)), std::move(bell)};
}

std::vector<Relation> composition_closure(const std::vector<Relation>& generators) {
  if (generators.empty()) return {};
  const FinObject a = generators.front().dom();
  for (const auto& g : generators) {
    if (g.dom() != a || g.cod() != a) throw TypeError("closure needs endomorphisms of " + a.name());
  }
  std::set<Relation> seen{Relation::identity(a)};
  std::vector<Relation> frontier{Relation::identity(a)};
  while (!frontier.empty()) {
    std::vector<Relation> next;
    for (const auto& f : frontier) {
      for (const auto& g : generators) {
        Relation h = compose(g, f);
        if (seen.insert(h).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

PhaseUnitaries phase_unitaries(const BasisStructure& b) {
  PhaseUnitaries out;
  for (const auto& u : enumerate_points(b).unbiased) out.unitaries.push_back(lambda(b, u));
  out.unitaries = sorted_unique(std::move(out.unitaries));
  out.closure = composition_closure(out.unitaries);
  if (out.closure.empty()) out.closure.push_back(Relation::identity(b.object()));
  return out;
}

BranchSearch find_branch_unitaries(const Relation& eta, const std::vector<Relation>& pool) {
  require_cup(eta);
  const FinObject a = half(eta);
  require_unitaries(pool, a);
  const std::vector<Relation> us = sorted_unique(pool);
  const std::size_t cells = eta.cod().cardinality();

  using Mask = std::vector<bool>;
  std::vector<Mask> masks;
  for (const auto& u : us) {
    Mask m(cells, false);
    for (const auto& [_, to] : shifted(u, eta).pairs()) m[to] = true;
    masks.push_back(std::move(m));
  }
  auto disjoint = [](const Mask& x, const Mask& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] && y[i]) return false;
    return true;
  };

  BranchSearch out;
  out.total = cells;
  std::vector<std::size_t> chosen;
  std::optional<std::vector<std::size_t>> best;
  Mask covered(cells, false);
  std::size_t count = 0;
  // Depth-first over increasing index lists; a shorter cover always beats a
  // longer one and the first cover of a given length found is the least.
  auto search = [&](auto&& self, std::size_t start) -> void {
    out.coverage = std::max(out.coverage, count);
    if (count == cells) {
      if (!best || chosen.size() < best->size()) best = chosen;
      return;
    }
    if (best && chosen.size() + 1 >= best->size()) return;
    for (std::size_t i = start; i < masks.size(); ++i) {
      if (!disjoint(covered, masks[i])) continue;
      std::size_t added = 0;
      for (std::size_t c = 0; c < cells; ++c)
        if (masks[i][c]) covered[c] = true, ++added;
      chosen.push_back(i);
      count += added;
      self(self, i + 1);
      count -= added;
      chosen.pop_back();
      for (std::size_t c = 0; c < cells; ++c)
        if (masks[i][c]) covered[c] = false;
    }
  };
  search(search, 0);
  if (best) {
    std::vector<Relation> picked;
    for (std::size_t i : *best) picked.push_back(us[i]);
    out.unitaries = std::move(picked);
  }
  return out;
}

std::vector<Relation> TeleportationCertificate::morphisms() const {
  std::vector<Relation> out{eta};
  for (const auto& b : branches) {
    for (const Relation* r : {&b.unitary, &b.state, &b.effect, &b.branch_map, &b.correction})
      out.push_back(*r);
  }
  return sorted_unique(std::move(out));
}

TeleportationCertificate check_teleportation(const Relation& eta,
                                             const std::vector<Relation>& unitaries) {
  require_cup(eta);
  const FinObject a = half(eta);
  require_unitaries(unitaries, a);
  const Relation id = Relation::identity(a);

  TeleportationCertificate cert{eta, {}, true, false, std::nullopt};
  std::vector<bool> covered(eta.cod().cardinality(), false);
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const Relation& u = unitaries[i];
    Relation state = shifted(u, eta);
    Relation effect = dagger(state);
    Relation map = compose(tensor(effect, id), tensor(id, eta));
    Branch b{u, state, effect, map, u, false, false};
    b.map_is_inverse = map == dagger(u);
    b.corrected = compose(u, map) == id;
    if ((!b.map_is_inverse || !b.corrected) && !cert.failing_branch) cert.failing_branch = i;
    for (const auto& [_, to] : state.pairs()) {
      if (covered[to]) cert.disjoint = false;
      covered[to] = true;
    }
    cert.branches.push_back(std::move(b));
  }
  cert.covering = std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
  return cert;
}

DenseCoding check_dense_coding(const Relation& eta, const std::vector<Relation>& unitaries) {
  require_cup(eta);
  require_unitaries(unitaries, half(eta));
  DenseCoding out;
  out.ok = true;
  std::vector<Relation> states;
  for (const auto& u : unitaries) states.push_back(shifted(u, eta));
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<Scalar> row;
    for (std::size_t j = 0; j < states.size(); ++j) {
      Scalar s = to_scalar(compose(dagger(states[j]), states[i]));
      if ((s == Scalar::identity) != (i == j)) out.ok = false;
      row.push_back(s);
    }
    out.table.push_back(std::move(row));
  }
  return out;
}

Relation measurement_projector(const Relation& phi) {
  if (!phi.is_state()) throw TypeError("expected a state, got domain " + phi.dom().name());
  return compose(phi, dagger(phi));
}

nlohmann::json to_json(const TeleportationCertificate& c) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : c.branches) {
    branches.push_back({{"unitary", relation_json(b.unitary)},
                        {"effect", relation_json(b.effect)},
                        {"branch_map", relation_json(b.branch_map)},
                        {"correction", relation_json(b.correction)},
                        {"branch_map_is_inverse", b.map_is_inverse},
                        {"corrected", b.corrected}});
  }
  nlohmann::json j{{"eta", relation_json(c.eta)},
                   {"branches", std::move(branches)},
                   {"disjoint", c.disjoint},
                   {"covering", c.covering},
                   {"coverage_ok", c.coverage_ok()},
                   {"valid", c.valid()}};
  j["failing_branch"] = c.failing_branch ? nlohmann::json(*c.failing_branch) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const DenseCoding& d) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : d.table) {
    nlohmann::json r = nlohmann::json::array();
    for (Scalar s : row) r.push_back(s == Scalar::identity ? 1 : 0);
    table.push_back(std::move(r));
  }
  return {{"table", std::move(table)}, {"ok", d.ok}};
}

}  // namespace toycat
