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

#include "toycat/models.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace toycat {

std::string model_name(ModelKind kind) {
  return kind == ModelKind::spek ? "spek" : "frel-qubit";
}

ModelKind parse_model_name(const std::string& name) {
  if (name == "spek") return ModelKind::spek;
  if (name == "frel-qubit" || name == "qubit") return ModelKind::frel_qubit;
  throw TypeError("unknown model '" + name + "' (expected spek or frel-qubit)");
}

QubitModel frel_qubit() {
  const FinObject ii = qubit_object();
  const FinObject ii2 = ii * ii;
  // (a, b) in II x II flattens to 2a + b.
  Relation delta_z = Relation::from_pairs(ii, ii2, {{0, 0}, {1, 3}});
  Relation eps_z = Relation::from_pairs(ii, FinObject::unit(), {{0, 0}, {1, 0}});
  Relation delta_x = Relation::from_pairs(ii, ii2, {{0, 0}, {0, 3}, {1, 1}, {1, 2}});
  Relation eps_x = Relation::from_pairs(ii, FinObject::unit(), {{0, 0}});
  Relation not_gate = Permutation::from_cycles(2, {{0, 1}}, false).relation(ii);
  BasisStructure x(delta_x, eps_x);
  return QubitModel{BasisStructure(delta_z, eps_z),
                    x,
                    conjugate(x, not_gate),
                    Relation::state(ii, {0}),
                    Relation::state(ii, {1}),
                    Relation::state(ii, {0, 1}),
                    not_gate};
}

SpekGenerators spek_generators() {
  const FinObject iv = spek_object();
  const FinObject iv2 = spek_object(2);
  SpekGenerators g{Permutation::all(4), {}, Relation(iv, iv2), Relation(iv, FinObject::unit())};
  for (const auto& p : g.perms) g.perm_relations.push_back(p.relation(iv));
  // 1 ~ {(1,1),(2,2)}, 2 ~ {(1,2),(2,1)}, 3 ~ {(3,3),(4,4)}, 4 ~ {(3,4),(4,3)},
  // written 0-based with (a, b) flattened to 4a + b.
  g.delta_z = Relation::from_pairs(
      iv, iv2, {{0, 0}, {0, 5}, {1, 1}, {1, 4}, {2, 10}, {2, 15}, {3, 11}, {3, 14}});
  g.eps_z = Relation::from_pairs(iv, FinObject::unit(), {{0, 0}, {2, 0}});
  return g;
}

std::vector<NamedState> spek_states() {
  const FinObject iv = spek_object();
  return {{"z0", Relation::state(iv, {0, 1})}, {"z1", Relation::state(iv, {2, 3})},
          {"x0", Relation::state(iv, {0, 2})}, {"x1", Relation::state(iv, {1, 3})},
          {"y0", Relation::state(iv, {0, 3})}, {"y1", Relation::state(iv, {1, 2})}};
}

Relation spek_state(const std::string& name) {
  for (auto& s : spek_states())
    if (s.name == name) return s.state;
  throw TypeError("no Spek state named " + name);
}

std::string spek_state_name(const Relation& state) {
  for (const auto& s : spek_states())
    if (s.state == state) return s.name;
  return describe(state);
}

Relation delta_oplus() {
  const FinObject iv = spek_object();
  RelationBuilder b(iv, spek_object(2));
  for (std::size_t i = 0; i < 4; ++i) b.relate(i, 5 * i);
  return std::move(b).build();
}

Relation ghz() {
  const SpekGenerators g = spek_generators();
  const Relation eta_iv = compose(g.delta_z, dagger(g.eps_z));
  return compose(tensor(g.delta_z, Relation::identity(spek_object())), eta_iv);
}

namespace {

Relation conjugate_delta(const Relation& delta, const Relation& s) {
  return compose(tensor(s, s), compose(delta, dagger(s)));
}

std::vector<std::string> classical_names(const BasisStructure& b) {
  std::vector<std::string> out;
  for (const auto& p : enumerate_points(b).classical) out.push_back(spek_state_name(p));
  return out;
}

struct Conjugate {
  Relation delta;
  Permutation by;
};

// Distinct conjugates of delta_Z, each with the first permutation producing it.
std::vector<Conjugate> delta_conjugates(const SpekGenerators& g) {
  std::vector<Conjugate> out;
  for (std::size_t i = 0; i < g.perms.size(); ++i) {
    Relation d = conjugate_delta(g.delta_z, g.perm_relations[i]);
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const Conjugate& c) { return c.delta == d; });
    if (!seen) out.push_back({std::move(d), g.perms[i]});
  }
  return out;
}

Observable build_observable(char label, const Permutation& rep,
                            const SpekGenerators& g,
                            const std::vector<Conjugate>& conjugates,
                            std::vector<std::string>& notes) {
  const FinObject iv = spek_object();
  const Relation s = rep.relation(iv);
  const BasisStructure representative =
      conjugate(BasisStructure(g.delta_z, g.eps_z), s);
  if (!representative.verified()) {
    throw IntegrityError(std::string("representative of ") + label +
                         " is not a basis structure");
  }
  Observable obs;
  obs.label = label;
  obs.classical_points = classical_names(representative);

  std::vector<NamedState> counits;
  for (const auto& u : spek_states())
    if (is_unbiased(representative, u.state)) counits.push_back(u);
  // The representative's own counit goes first.
  std::stable_partition(counits.begin(), counits.end(), [&](const NamedState& u) {
    return dagger(u.state) == representative.epsilon();
  });

  for (const auto& u : counits) {
    const Relation eps = dagger(u.state);
    BasisStructure with_rep(representative.delta(), eps);
    if (!with_rep.verified()) {
      std::string failed;
      for (const auto& c : with_rep.report().checks)
        if (!c.holds) failed += (failed.empty() ? "" : ",") + c.law;
      notes.push_back(std::string("observable ") + label + ": delta_" + label +
                      " with counit " + u.name + "^ fails " + failed);
    }
    std::vector<std::size_t> matches;
    for (std::size_t k = 0; k < conjugates.size(); ++k) {
      BasisStructure candidate(conjugates[k].delta, eps);
      if (candidate.verified() && classical_names(candidate) == obs.classical_points) {
        matches.push_back(k);
      }
    }
    if (matches.size() != 1) {
      throw IntegrityError(std::string("observable ") + label + ": counit " + u.name +
                           "^ has " + std::to_string(matches.size()) +
                           " lawful comultiplications, expected 1");
    }
    const Conjugate& c = conjugates[matches.front()];
    obs.family.emplace_back(c.delta, eps);
    obs.conjugators.push_back(c.by);
    obs.counit_names.push_back(u.name);
  }
  if (obs.family.size() != 4) {
    throw IntegrityError(std::string("observable ") + label + " has " +
                         std::to_string(obs.family.size()) + " members, expected 4");
  }
  return obs;
}

}  // namespace

const Observable& SpekObservables::operator[](char label) const {
  switch (label) {
    case 'Z': return z;
    case 'X': return x;
    case 'Y': return y;
    default: throw std::out_of_range(std::string("no observable ") + label);
  }
}

SpekObservables spek_observables() {
  const SpekGenerators g = spek_generators();
  const auto conjugates = delta_conjugates(g);
  SpekObservables out;
  out.z = build_observable('Z', Permutation::identity(4), g, conjugates, out.notes);
  out.x = build_observable('X', Permutation::from_cycles(4, {{2, 3}}, true), g,
                           conjugates, out.notes);
  out.y = build_observable('Y', Permutation::from_cycles(4, {{2, 4}}, true), g,
                           conjugates, out.notes);
  return out;
}

std::vector<OrbitGroup> observable_orbit() {
  const SpekGenerators g = spek_generators();
  std::vector<OrbitGroup> groups;
  for (const auto& c : delta_conjugates(g)) {
    BasisStructure b = conjugate(BasisStructure(g.delta_z, g.eps_z),
                                 c.by.relation(spek_object()));
    auto names = classical_names(b);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const OrbitGroup& og) {
      return og.classical_points == names;
    });
    if (it == groups.end()) {
      groups.push_back({names, {}, {}});
      it = std::prev(groups.end());
    }
    it->deltas.push_back(c.delta);
    it->conjugators.push_back(c.by);
  }
  return groups;
}

std::vector<BlochRow> bloch_table(ModelKind model) {
  std::vector<BlochRow> rows;
  auto fill = [&](const std::string& name, const std::string& axis, const Relation& st,
                  const std::vector<std::pair<std::string, const BasisStructure*>>& obs) {
    BlochRow row{name, axis, {}, {}, false};
    for (const auto& [label, b] : obs) {
      if (is_classical(*b, st)) row.classical_for.push_back(label);
      if (is_unbiased(*b, st)) row.unbiased_for.push_back(label);
    }
    rows.push_back(std::move(row));
  };
  if (model == ModelKind::frel_qubit) {
    const QubitModel q = frel_qubit();
    std::vector<std::pair<std::string, const BasisStructure*>> obs{{"Z", &q.z},
                                                                   {"X", &q.x}};
    fill("z0", "Z+", q.z0, obs);
    fill("z1", "Z-", q.z1, obs);
    fill("x0", "X+", q.x0, obs);
    // No boolean vector plays the role of |->.
    rows.push_back(BlochRow{"none", "X-", {}, {}, true});
    return rows;
  }
  const SpekObservables so = spek_observables();
  std::vector<std::pair<std::string, const BasisStructure*>> obs{
      {"Z", &so.z.family.front()},
      {"X", &so.x.family.front()},
      {"Y", &so.y.family.front()}};
  for (const auto& s : spek_states()) {
    std::string axis(1, static_cast<char>(std::toupper(s.name[0])));
    axis += s.name[1] == '0' ? "+" : "-";
    fill(s.name, axis, s.state, obs);
  }
  return rows;
}

}  // namespace toycat
