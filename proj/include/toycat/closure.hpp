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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "toycat/relation.hpp"

namespace toycat {

// Limits for a closure run.
//
// The arity of a morphism is its number of non-unit legs, dom.arity() +
// cod.arity(). Only morphisms of arity <= max_arity are stored, and every
// intermediate object a composition passes through is a leg set of a stored
// morphism, so nothing routes through objects above the cap.
struct ClosureConfig {
  std::size_t max_arity = 3;
  std::size_t max_morphisms = 1'000'000;
  // Largest word cost explored before giving up on reaching a fixpoint.
  std::size_t max_rounds = 64;
  unsigned workers = 1;
  // By default a stored morphism is only post-composed with generators and
  // their daggers (whiskered by identities), which reaches every diagram
  // that can be drawn one generator at a time within the cap. Exhaustive mode
  // also composes every compatible pair of stored morphisms; it costs
  // quadratic time in the store size and is meant for cross-checking.
  bool exhaustive = false;
};

// Reads TOYCAT_MAX_ARITY if set.
ClosureConfig default_closure_config();

struct Generator {
  std::string name;
  Relation relation;
};

// The Spek generators: the 24 permutations of IV (named sigma_<cycles>),
// delta_Z and eps_Z.
std::vector<Generator> spek_generator_list();

// How a stored morphism was first obtained.
enum class Step : std::uint8_t {
  generator,  // a = generator index
  identity,   // the identity on the morphism's domain
  swap,       // swap of two base factors
  dagger,     // dagger(a)
  swap_out,   // exchange codomain factors param and param+1 of a
  tensor,     // a x b
  whisker,    // (id x a x id) o b, with a fed from b's codomain factor param
  layer,      // as whisker, but a indexes MorphismStore::layers()
};

struct Derivation {
  Step step = Step::generator;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t param = 0;
};

inline std::size_t legs(const Relation& r) { return r.dom().arity() + r.cod().arity(); }

class MorphismStore {
 public:
  struct Entry {
    Relation relation;
    std::uint32_t cost = 0;
    Derivation how;
  };

  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<Generator>& generators() const { return generators_; }
  // Generators and their daggers, deduplicated: (generator index, daggered).
  const std::vector<std::pair<std::uint32_t, bool>>& layers() const { return layers_; }
  std::size_t max_arity() const { return max_arity_; }
  // True when one more round of every operation adds nothing.
  bool fixpoint() const { return fixpoint_; }

  std::optional<std::size_t> find(const Relation& r) const;
  // Term-language expression over generator names that evaluates to entry id.
  std::string word(std::size_t id) const;

  // Canonical form: records sorted by (dom, cod, pair list) with words.
  nlohmann::json to_json() const;
  static MorphismStore from_json(const nlohmann::json& j);

 private:
  friend class ClosureEngine;

  std::string raw_word(std::size_t id) const;

  std::vector<Entry> entries_;
  std::unordered_map<Relation, std::uint32_t, RelationHash> index_;
  std::vector<Generator> generators_;
  std::vector<std::pair<std::uint32_t, bool>> layers_;
  // Present for stores read back from disk, which carry words, not derivations.
  std::vector<std::string> loaded_words_;
  std::size_t max_arity_ = 0;
  bool fixpoint_ = false;
};

// Closes the generators (plus identities and swaps) under composition,
// tensor and dagger within the arity cap. Processing goes by word cost, the
// number of generator occurrences, so each morphism keeps a cheapest word;
// ties go to the lexicographically least sequence of generator indices.
// Generators above the cap are not stored but still act as layers. If max_morphisms or max_rounds is
// hit the returned store is flagged as not at fixpoint.
MorphismStore generate_closure(const std::vector<Generator>& generators,
                               const ClosureConfig& config);

struct Membership {
  enum class Answer { member, not_member, unknown };
  Answer answer = Answer::unknown;
  std::optional<std::string> word;
  std::string reason;
};

// Lookup by canonical key. A negative answer is only given for a store at
// fixpoint and a relation within its arity cap; otherwise "unknown".
Membership contains(const MorphismStore& store, const Relation& r);

std::string to_string(Membership::Answer a);

using Shape = std::pair<FinObject, FinObject>;

// Number of stored morphisms per (dom, cod).
std::map<Shape, std::size_t> census(const MorphismStore& store);

struct StateOrbit {
  Relation representative;  // least member
  std::size_t size = 0;
  std::size_t support = 0;  // elements in each member state
  std::vector<std::size_t> members;  // store ids
};

struct StateCensus {
  FinObject object;
  std::vector<std::size_t> states;  // store ids of all states I -> object
  // Orbits under sigma_1 x ... x sigma_k with each sigma_i a stored
  // permutation of the corresponding factor.
  std::vector<StateOrbit> orbits;
};

StateCensus state_census(const MorphismStore& store, const FinObject& a);

}  // namespace toycat
