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

#include "toycat/closure.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <thread>

#include "toycat/models.hpp"
#include "toycat/serialize.hpp"
#include "toycat/term.hpp"

namespace toycat {

ClosureConfig default_closure_config() {
  ClosureConfig config;
  if (const char* env = std::getenv("TOYCAT_MAX_ARITY")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw TypeError(std::string("TOYCAT_MAX_ARITY must be a positive integer, got '") +
                      env + "'");
    }
    config.max_arity = v;
  }
  return config;
}

std::vector<Generator> spek_generator_list() {
  const SpekGenerators g = spek_generators();
  std::vector<Generator> out;
  for (std::size_t i = 0; i < g.perms.size(); ++i)
    out.push_back({g.perms[i].identifier(true), g.perm_relations[i]});
  out.push_back({"delta_Z", g.delta_z});
  out.push_back({"eps_Z", g.eps_z});
  return out;
}

namespace {

using Leaves = std::vector<std::uint16_t>;

struct Candidate {
  Derivation how;
  Leaves leaves;
};

auto derivation_key(const Derivation& d) {
  return std::make_tuple(static_cast<int>(d.step), d.a, d.b, d.param);
}

bool better(const Candidate& x, const Candidate& y) {
  if (x.leaves != y.leaves) return x.leaves < y.leaves;
  return derivation_key(x.how) < derivation_key(y.how);
}

using Pending = std::unordered_map<Relation, Candidate, RelationHash>;

Leaves concat(const Leaves& a, const Leaves& b) {
  Leaves out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

class ClosureEngine {
 public:
  ClosureEngine(const std::vector<Generator>& generators, const ClosureConfig& config)
      : config_(config) {
    store_.generators_ = generators;
    store_.max_arity_ = config.max_arity;
    std::unordered_map<Relation, bool, RelationHash> seen;
    for (std::uint32_t i = 0; i < generators.size(); ++i) {
      for (bool dag : {false, true}) {
        Relation r = dag ? dagger(generators[i].relation) : generators[i].relation;
        if (!seen.emplace(r, true).second) continue;
        store_.layers_.emplace_back(i, dag);
        layer_relations_.push_back(std::move(r));
      }
    }
  }

  MorphismStore run();

 private:
  using Bucket = std::vector<std::uint32_t>;
  using Level = std::map<Shape, Bucket>;

  const Relation& rel(std::uint32_t id) const { return store_.entries_[id].relation; }

  void offer(Pending& pending, Relation&& r, Derivation how, Leaves leaves) const;
  void unary(Pending& pending, std::uint32_t id) const;
  void tensor_pair(Pending& pending, std::uint32_t x, std::uint32_t y) const;
  void whisker_pair(Pending& pending, std::uint32_t x, std::uint32_t y) const;
  void apply_layers(Pending& pending, std::uint32_t id) const;
  // Adds pending morphisms at `cost` in canonical order; returns their ids.
  std::vector<std::uint32_t> commit(Pending&& pending, std::uint32_t cost);
  // Closes level `cost` under unary steps and pairing with cost-0 morphisms.
  void saturate(std::vector<std::uint32_t> fresh, std::uint32_t cost);
  void bucket(std::size_t cost);
  // Everything of cost c built from complete cheaper levels.
  void build_level(std::size_t c, Pending& out) const;
  bool over_budget() const { return dropped_; }

  ClosureConfig config_;
  bool dropped_ = false;
  MorphismStore store_;
  std::vector<Relation> layer_relations_;
  std::vector<Leaves> leaves_;
  std::vector<std::vector<std::uint32_t>> by_cost_;
  std::vector<Level> levels_;
};

void ClosureEngine::offer(Pending& pending, Relation&& r, Derivation how,
                          Leaves leaves) const {
  if (legs(r) > config_.max_arity || store_.index_.count(r)) return;
  Candidate c{how, std::move(leaves)};
  auto it = pending.find(r);
  if (it == pending.end()) {
    pending.emplace(std::move(r), std::move(c));
  } else if (better(c, it->second)) {
    it->second = std::move(c);
  }
}

void ClosureEngine::unary(Pending& pending, std::uint32_t id) const {
  const Relation& f = rel(id);
  offer(pending, dagger(f), {Step::dagger, id, 0, 0}, leaves_[id]);
  for (std::size_t k = 0; k + 1 < f.cod().arity(); ++k) {
    offer(pending, exchange_codomain(f, k),
          {Step::swap_out, id, 0, static_cast<std::uint32_t>(k)}, leaves_[id]);
  }
}

void ClosureEngine::tensor_pair(Pending& pending, std::uint32_t x, std::uint32_t y) const {
  if (legs(rel(x)) + legs(rel(y)) > config_.max_arity) return;
  offer(pending, tensor(rel(x), rel(y)), {Step::tensor, x, y, 0},
        concat(leaves_[x], leaves_[y]));
}

void ClosureEngine::whisker_pair(Pending& pending, std::uint32_t x, std::uint32_t y) const {
  const Relation& g = rel(x);
  const Relation& f = rel(y);
  const std::size_t m = g.dom().arity();
  if (m == 0 || m > f.cod().arity()) return;
  if (legs(f) - m + g.cod().arity() > config_.max_arity) return;
  for (std::size_t off = 0; off + m <= f.cod().arity(); ++off) {
    if (f.cod().slice(off, m) != g.dom()) continue;
    offer(pending, whisker(g, f, off),
          {Step::whisker, x, y, static_cast<std::uint32_t>(off)},
          concat(leaves_[x], leaves_[y]));
  }
}

void ClosureEngine::apply_layers(Pending& pending, std::uint32_t id) const {
  const Relation& f = rel(id);
  for (std::uint32_t l = 0; l < layer_relations_.size(); ++l) {
    const Relation& g = layer_relations_[l];
    const std::size_t m = g.dom().arity();
    if (m > f.cod().arity()) continue;
    if (legs(f) - m + g.cod().arity() > config_.max_arity) continue;
    const Leaves leaves = concat({static_cast<std::uint16_t>(store_.layers_[l].first)}, leaves_[id]);
    for (std::size_t off = 0; off + m <= f.cod().arity(); ++off) {
      // Layers with empty domain sit at every position; the leftmost is enough
      // since codomain exchanges produce the others.
      if (m == 0 && off > 0) break;
      if (f.cod().slice(off, m) != g.dom()) continue;
      offer(pending, whisker(g, f, off),
            {Step::layer, l, id, static_cast<std::uint32_t>(off)}, leaves);
    }
  }
}

std::vector<std::uint32_t> ClosureEngine::commit(Pending&& pending, std::uint32_t cost) {
  std::vector<std::pair<Relation, Candidate>> items(
      std::make_move_iterator(pending.begin()), std::make_move_iterator(pending.end()));
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::uint32_t> ids;
  for (auto& [r, c] : items) {
    // Candidates are sorted, so which ones fit under the cap is deterministic.
    if (store_.entries_.size() >= config_.max_morphisms) {
      dropped_ = true;
      break;
    }
    auto id = static_cast<std::uint32_t>(store_.entries_.size());
    store_.index_.emplace(r, id);
    store_.entries_.push_back({std::move(r), cost, c.how});
    leaves_.push_back(std::move(c.leaves));
    if (by_cost_.size() <= cost) by_cost_.resize(cost + 1);
    by_cost_[cost].push_back(id);
    ids.push_back(id);
  }
  return ids;
}

void ClosureEngine::saturate(std::vector<std::uint32_t> fresh, std::uint32_t cost) {
  while (!fresh.empty() && !over_budget()) {
    Pending pending;
    const std::vector<std::uint32_t> zero =
        by_cost_.empty() ? std::vector<std::uint32_t>{} : by_cost_[0];
    for (std::uint32_t n : fresh) {
      unary(pending, n);
      for (std::uint32_t z : zero) {
        tensor_pair(pending, n, z);
        tensor_pair(pending, z, n);
        if (config_.exhaustive) {
          whisker_pair(pending, n, z);
          whisker_pair(pending, z, n);
        }
      }
    }
    fresh = commit(std::move(pending), cost);
  }
}

void ClosureEngine::bucket(std::size_t cost) {
  while (levels_.size() <= cost) levels_.emplace_back();
  Level level;
  if (cost < by_cost_.size()) {
    for (std::uint32_t id : by_cost_[cost]) level[{rel(id).dom(), rel(id).cod()}].push_back(id);
  }
  levels_[cost] = std::move(level);
}

void ClosureEngine::build_level(std::size_t c, Pending& out) const {
  const std::size_t cap = config_.max_arity;
  // Work items: a row of left operands against one bucket of right operands.
  // A null bucket means "apply every layer to each row entry".
  struct Task {
    const Bucket* xs;
    const Bucket* ys;
    bool whisker;
  };
  std::vector<Task> tasks;
  if (c - 1 < levels_.size()) {
    for (const auto& [shape, ids] : levels_[c - 1]) tasks.push_back({&ids, nullptr, false});
  }
  for (std::size_t i = 1; i < c; ++i) {
    for (const auto& [sx, xs] : levels_[i]) {
      for (const auto& [sy, ys] : levels_[c - i]) {
        const std::size_t lx = sx.first.arity() + sx.second.arity();
        const std::size_t ly = sy.first.arity() + sy.second.arity();
        if (lx + ly <= cap) tasks.push_back({&xs, &ys, false});
        if (!config_.exhaustive) continue;
        const std::size_t m = sx.first.arity();
        if (m == 0 || m > sy.second.arity() || ly - m + sx.second.arity() > cap) continue;
        for (std::size_t off = 0; off + m <= sy.second.arity(); ++off) {
          if (sy.second.slice(off, m) == sx.first) {
            tasks.push_back({&xs, &ys, true});
            break;
          }
        }
      }
    }
  }
  auto run = [&](Pending& pending, unsigned w, unsigned stride) {
    for (const auto& t : tasks) {
      for (std::size_t k = w; k < t.xs->size(); k += stride) {
        const std::uint32_t x = (*t.xs)[k];
        if (!t.ys) {
          apply_layers(pending, x);
          continue;
        }
        for (std::uint32_t y : *t.ys) {
          if (t.whisker) {
            whisker_pair(pending, x, y);
          } else {
            tensor_pair(pending, x, y);
          }
        }
      }
    }
  };
  const unsigned workers = std::max(1U, config_.workers);
  if (workers == 1) {
    run(out, 0, 1);
    return;
  }
  // Results are merged under the same total order as offer(), so the outcome
  // does not depend on how work was split.
  std::vector<Pending> local(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back([&, w] { run(local[w], w, workers); });
  for (auto& t : threads) t.join();
  for (auto& p : local) {
    for (auto& [r, c] : p) {
      auto it = out.find(r);
      if (it == out.end()) {
        out.emplace(r, std::move(c));
      } else if (better(c, it->second)) {
        it->second = std::move(c);
      }
    }
  }
}

MorphismStore ClosureEngine::run() {
  const auto& gens = store_.generators_;

  // Cost 0: identities on I and on every base set, swaps of base sets.
  std::set<std::size_t> bases;
  for (const auto& g : gens) {
    for (std::size_t k = 0; k < g.relation.dom().arity(); ++k) bases.insert(g.relation.dom().factor(k));
    for (std::size_t k = 0; k < g.relation.cod().arity(); ++k) bases.insert(g.relation.cod().factor(k));
  }
  Pending seed;
  offer(seed, Relation::identity(FinObject::unit()), {Step::identity, 0, 0, 0}, {});
  for (std::size_t b : bases) {
    offer(seed, Relation::identity(FinObject{b}), {Step::identity, 0, 0, 0}, {});
    for (std::size_t c : bases) {
      offer(seed, swap(FinObject{b}, FinObject{c}),
            {Step::swap, static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c), 0}, {});
    }
  }
  saturate(commit(std::move(seed), 0), 0);
  bucket(0);

  Pending first;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Relation r = gens[i].relation;
    offer(first, std::move(r), {Step::generator, static_cast<std::uint32_t>(i), 0, 0},
          {static_cast<std::uint16_t>(i)});
  }
  build_level(1, first);
  saturate(commit(std::move(first), 1), 1);
  bucket(1);

  bool truncated = over_budget();
  std::size_t max_cost = by_cost_.size() > 1 && !by_cost_[1].empty() ? 1 : 0;
  for (std::size_t c = 2; !truncated && c <= 2 * max_cost; ++c) {
    if (c > config_.max_rounds) {
      truncated = true;
      break;
    }
    Pending pending;
    build_level(c, pending);
    saturate(commit(std::move(pending), static_cast<std::uint32_t>(c)),
             static_cast<std::uint32_t>(c));
    bucket(c);
    if (c < by_cost_.size() && !by_cost_[c].empty()) max_cost = c;
    truncated = over_budget();
  }
  store_.fixpoint_ = !truncated;
  return std::move(store_);
}

MorphismStore generate_closure(const std::vector<Generator>& generators,
                               const ClosureConfig& config) {
  if (config.max_arity < 1) throw TypeError("max_arity must be at least 1");
  return ClosureEngine(generators, config).run();
}

// ---------------------------------------------------------------------------
// MorphismStore

std::optional<std::size_t> MorphismStore::find(const Relation& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool is_atom(const std::string& w) {
  return !w.empty() && w.find_first_of(" ()^") == std::string::npos;
}

std::string wrap(const std::string& w) { return is_atom(w) ? w : "(" + w + ")"; }

// "id_L x <middle> x id_R ; <inner>", dropping identities on I.
std::string framed(const FinObject& left, const std::string& middle,
                   const FinObject& right, const std::string& inner) {
  std::string lhs;
  if (!left.is_unit()) lhs += "id_" + left.name() + " x ";
  lhs += wrap(middle);
  if (!right.is_unit()) lhs += " x id_" + right.name();
  if (inner.rfind("id_", 0) == 0 && is_atom(inner)) return lhs;
  return lhs + " ; " + wrap(inner);
}

}  // namespace

std::string MorphismStore::word(std::size_t id) const {
  if (!loaded_words_.empty()) return loaded_words_.at(id);
  std::string raw = raw_word(id);
  try {
    return print_term(parse_term(raw));
  } catch (const TermError&) {
    return raw;  // generator names that are not identifiers
  }
}

std::string MorphismStore::raw_word(std::size_t id) const {
  const Entry& e = entries_.at(id);
  const Derivation& d = e.how;
  switch (d.step) {
    case Step::generator:
      return generators_.at(d.a).name;
    case Step::identity:
      return "id_" + e.relation.dom().name();
    case Step::swap:
      return "swap_" + FinObject{d.a}.name() + "_" + FinObject{d.b}.name();
    case Step::dagger:
      return wrap(raw_word(d.a)) + "^";
    case Step::swap_out: {
      const FinObject& cod = entries_.at(d.a).relation.cod();
      return framed(cod.slice(0, d.param),
                    "swap_" + cod.slice(d.param, 1).name() + "_" +
                        cod.slice(d.param + 1, 1).name(),
                    cod.slice(d.param + 2, cod.arity() - d.param - 2), raw_word(d.a));
    }
    case Step::tensor:
      return wrap(raw_word(d.a)) + " x " + wrap(raw_word(d.b));
    case Step::layer: {
      const auto [g, dag] = layers_.at(d.a);
      const Relation& gr = generators_.at(g).relation;
      const std::size_t m = dag ? gr.cod().arity() : gr.dom().arity();
      const FinObject& cod = entries_.at(d.b).relation.cod();
      std::string name = generators_.at(g).name + (dag ? "^" : "");
      return framed(cod.slice(0, d.param), name,
                    cod.slice(d.param + m, cod.arity() - d.param - m), raw_word(d.b));
    }
    case Step::whisker: {
      const FinObject& cod = entries_.at(d.b).relation.cod();
      const std::size_t m = entries_.at(d.a).relation.dom().arity();
      return framed(cod.slice(0, d.param), raw_word(d.a),
                    cod.slice(d.param + m, cod.arity() - d.param - m), raw_word(d.b));
    }
  }
  return {};
}

nlohmann::json MorphismStore::to_json() const {
  struct Record {
    std::size_t id;
    std::vector<Relation::Pair> pairs;
  };
  std::vector<Record> records;
  records.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    records.push_back({i, entries_[i].relation.pairs()});
  std::sort(records.begin(), records.end(), [&](const Record& x, const Record& y) {
    const Relation& a = entries_[x.id].relation;
    const Relation& b = entries_[y.id].relation;
    if (a.dom() != b.dom()) return a.dom() < b.dom();
    if (a.cod() != b.cod()) return a.cod() < b.cod();
    return x.pairs < y.pairs;
  });
  nlohmann::json morphisms = nlohmann::json::array();
  for (const auto& rec : records) {
    nlohmann::json j = relation_to_json(entries_[rec.id].relation);
    j["cost"] = entries_[rec.id].cost;
    j["word"] = word(rec.id);
    morphisms.push_back(std::move(j));
  }
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : generators_)
    gens.push_back({{"name", g.name}, {"relation", relation_to_json(g.relation)}});
  nlohmann::json out;
  out["max_arity"] = max_arity_;
  out["fixpoint"] = fixpoint_;
  out["generators"] = std::move(gens);
  out["morphisms"] = std::move(morphisms);
  return out;
}

MorphismStore MorphismStore::from_json(const nlohmann::json& j) {
  MorphismStore s;
  try {
    s.max_arity_ = j.at("max_arity").get<std::size_t>();
    s.fixpoint_ = j.at("fixpoint").get<bool>();
    for (const auto& g : j.at("generators"))
      s.generators_.push_back({g.at("name").get<std::string>(), relation_from_json(g.at("relation"))});
    for (const auto& m : j.at("morphisms")) {
      Relation r = relation_from_json(m);
      auto id = static_cast<std::uint32_t>(s.entries_.size());
      if (!s.index_.emplace(r, id).second) throw TypeError("duplicate morphism in store");
      s.entries_.push_back({std::move(r), m.at("cost").get<std::uint32_t>(), {}});
      s.loaded_words_.push_back(m.at("word").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw TypeError(std::string("malformed store file: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Queries

std::string to_string(Membership::Answer a) {
  switch (a) {
    case Membership::Answer::member: return "member";
    case Membership::Answer::not_member: return "not_member";
    case Membership::Answer::unknown: return "unknown";
  }
  return "unknown";
}

Membership contains(const MorphismStore& store, const Relation& r) {
  Membership m;
  if (auto id = store.find(r)) {
    m.answer = Membership::Answer::member;
    m.word = store.word(*id);
    return m;
  }
  if (legs(r) > store.max_arity()) {
    m.reason = "relation has " + std::to_string(legs(r)) + " legs, above the store's cap of " +
               std::to_string(store.max_arity());
  } else if (!store.fixpoint()) {
    m.reason = "store did not reach a fixpoint";
  } else {
    m.answer = Membership::Answer::not_member;
  }
  return m;
}

std::map<Shape, std::size_t> census(const MorphismStore& store) {
  std::map<Shape, std::size_t> out;
  for (const auto& e : store.entries()) ++out[{e.relation.dom(), e.relation.cod()}];
  return out;
}

StateCensus state_census(const MorphismStore& store, const FinObject& a) {
  StateCensus out{a, {}, {}};
  for (std::size_t i = 0; i < store.size(); ++i) {
    const Relation& r = store.entries()[i].relation;
    if (r.is_state() && r.cod() == a) out.states.push_back(i);
  }
  std::sort(out.states.begin(), out.states.end(), [&](std::size_t x, std::size_t y) {
    return store.entries()[x].relation < store.entries()[y].relation;
  });

  // Stored permutations of each base factor of a.
  std::vector<std::vector<Relation>> local(a.arity());
  for (const auto& e : store.entries()) {
    const Relation& r = e.relation;
    if (r.dom().arity() != 1 || r.dom() != r.cod() || !is_unitary(r)) continue;
    for (std::size_t k = 0; k < a.arity(); ++k)
      if (r.dom().factor(0) == a.factor(k)) local[k].push_back(r);
  }

  std::vector<std::size_t> parent(out.states.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<Relation, std::size_t, RelationHash> position;
  for (std::size_t k = 0; k < out.states.size(); ++k)
    position.emplace(store.entries()[out.states[k]].relation, k);

  for (std::size_t k = 0; k < out.states.size(); ++k) {
    const Relation& s = store.entries()[out.states[k]].relation;
    for (std::size_t factor = 0; factor < a.arity(); ++factor) {
      for (const Relation& p : local[factor]) {
        Relation moved = whisker(p, s, factor);
        auto it = position.find(moved);
        if (it == position.end()) continue;  // image outside the store
        std::size_t x = root(k), y = root(it->second);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
    }
  }
  std::map<std::size_t, StateOrbit> orbits;
  for (std::size_t k = 0; k < out.states.size(); ++k) {
    const Relation& s = store.entries()[out.states[k]].relation;
    auto [it, inserted] = orbits.try_emplace(root(k), StateOrbit{s, 0, s.size(), {}});
    it->second.size++;
    it->second.members.push_back(out.states[k]);
  }
  for (auto& [_, o] : orbits) out.orbits.push_back(std::move(o));
  return out;
}

}  // namespace toycat
