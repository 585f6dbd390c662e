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


#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "oracle.hpp"
#include "toycat/closure.hpp"
#include "toycat/models.hpp"
#include "toycat/term.hpp"

namespace toycat {
namespace {

using Factors = std::vector<std::size_t>;

std::size_t card(const Factors& f) {
  std::size_t n = 1;
  for (auto x : f) n *= x;
  return n;
}

// A relation together with its factor lists, for the reference closure.
struct Typed {
  Factors dom;
  Factors cod;
  oracle::Rel rel;

  auto key() const { return std::tie(dom, cod, rel.pairs); }
  friend bool operator<(const Typed& a, const Typed& b) { return a.key() < b.key(); }
  friend bool operator==(const Typed& a, const Typed& b) { return a.key() == b.key(); }
};

Typed typed(const Relation& r) { return {r.dom().factors(), r.cod().factors(), oracle::from(r)}; }

// Exchanges codomain factors k and k + 1, by digit arithmetic.
Typed exchanged(const Typed& f, std::size_t k) {
  Typed out{f.dom, f.cod, {f.rel.dom, f.rel.cod, {}}};
  std::swap(out.cod[k], out.cod[k + 1]);
  std::size_t inner = 1;
  for (std::size_t i = k + 2; i < f.cod.size(); ++i) inner *= f.cod[i];
  const std::size_t a = f.cod[k], b = f.cod[k + 1];
  for (const auto& [x, y] : f.rel.pairs) {
    const std::size_t low = y % inner, rest = y / inner;
    const std::size_t yb = rest % b, ya = (rest / b) % a, high = rest / (a * b);
    out.rel.pairs.insert({x, ((high * b + yb) * a + ya) * inner + low});
  }
  return out;
}

// Closes under dagger, tensor, codomain exchange and composition of a
// morphism into any run of another's codomain factors, keeping everything
// with at most `cap` legs. Generators and their daggers may be fed into a
// codomain even when they are themselves too large to keep. Quadratic per
// round, fine for small models.
std::set<Typed> reference_closure(const std::vector<Relation>& gens, std::size_t cap) {
  auto legs = [](const Typed& t) { return t.dom.size() + t.cod.size(); };
  std::set<Typed> all;
  auto add = [&](Typed t, std::set<Typed>& to) {
    if (legs(t) <= cap && !all.count(t)) to.insert(std::move(t));
  };
  std::set<Typed> fresh;
  add(Typed{{}, {}, oracle::identity(1)}, fresh);
  std::set<std::size_t> bases;
  for (const auto& g : gens) {
    add(typed(g), fresh);
    for (auto f : g.dom().factors()) bases.insert(f);
    for (auto f : g.cod().factors()) bases.insert(f);
  }
  for (auto n : bases) {
    add(Typed{{n}, {n}, oracle::identity(n)}, fresh);
    for (auto m : bases) add(Typed{{n, m}, {m, n}, oracle::swap(n, m)}, fresh);
  }
  while (!fresh.empty()) {
    all.insert(fresh.begin(), fresh.end());
    std::set<Typed> next;
    const std::vector<Typed> items(all.begin(), all.end());
    std::vector<Typed> feeds = items;
    for (const auto& g : gens) {
      feeds.push_back(typed(g));
      feeds.push_back(typed(dagger(g)));
    }
    for (const auto& f : items) {
      add(Typed{f.cod, f.dom, oracle::dagger(f.rel)}, next);
      for (std::size_t k = 0; k + 1 < f.cod.size(); ++k) add(exchanged(f, k), next);
      for (const auto& g : feeds) {
        if (legs(f) + legs(g) <= cap && all.count(g)) {
          Factors d = f.dom, c = f.cod;
          d.insert(d.end(), g.dom.begin(), g.dom.end());
          c.insert(c.end(), g.cod.begin(), g.cod.end());
          add(Typed{d, c, oracle::tensor(f.rel, g.rel)}, next);
        }
        // g fed from f's codomain factors [off, off + |g.dom|).
        for (std::size_t off = 0; off + g.dom.size() <= f.cod.size(); ++off) {
          if (!std::equal(g.dom.begin(), g.dom.end(), f.cod.begin() + off)) continue;
          const Factors left(f.cod.begin(), f.cod.begin() + off);
          const Factors right(f.cod.begin() + off + g.dom.size(), f.cod.end());
          Factors c = left;
          c.insert(c.end(), g.cod.begin(), g.cod.end());
          c.insert(c.end(), right.begin(), right.end());
          if (f.dom.size() + c.size() > cap) continue;
          const oracle::Rel mid = oracle::tensor(
              oracle::tensor(oracle::identity(card(left)), g.rel), oracle::identity(card(right)));
          add(Typed{f.dom, c, oracle::compose(mid, f.rel)}, next);
        }
      }
    }
    fresh = std::move(next);
  }
  return all;
}

std::set<Typed> stored(const MorphismStore& s) {
  std::set<Typed> out;
  for (const auto& e : s.entries()) out.insert(typed(e.relation));
  return out;
}

std::vector<Generator> named(const std::vector<std::pair<std::string, Relation>>& rs) {
  std::vector<Generator> out;
  for (const auto& [n, r] : rs) out.push_back({n, r});
  return out;
}

std::vector<Relation> relations(const std::vector<Generator>& gs) {
  std::vector<Relation> out;
  for (const auto& g : gs) out.push_back(g.relation);
  return out;
}

ClosureConfig config(std::size_t cap, bool exhaustive = false, unsigned workers = 1) {
  ClosureConfig c;
  c.max_arity = cap;
  c.exhaustive = exhaustive;
  c.workers = workers;
  return c;
}

const MorphismStore& spek3() {
  static const MorphismStore s = generate_closure(spek_generator_list(), config(3));
  return s;
}

const MorphismStore& spek2() {
  static const MorphismStore s = generate_closure(spek_generator_list(), config(2));
  return s;
}

std::size_t lagrangian_count(std::size_t n) {
  // Nonempty Spek states on n copies of IV, plus the empty state.
  std::size_t c = std::size_t{1} << n;
  for (std::size_t i = 1; i <= n; ++i) c *= (std::size_t{1} << i) + 1;
  return c + 1;
}

TEST(Closure, MatchesReferenceOnQubitModels) {
  const QubitModel q = frel_qubit();
  const std::vector<std::vector<Generator>> cases{
      named({{"NOT", q.not_gate}, {"z0", q.z0}}),
      named({{"delta_Z", q.z.delta()}, {"eps_Z", q.z.epsilon()}}),
      named({{"delta_X", q.x.delta()}, {"eps_X", q.x.epsilon()}}),
  };
  for (const auto& gens : cases) {
    for (std::size_t cap : {2u, 3u}) {
      const std::set<Typed> want = reference_closure(relations(gens), cap);
      for (bool exhaustive : {false, true}) {
        const MorphismStore s = generate_closure(gens, config(cap, exhaustive));
        EXPECT_TRUE(s.fixpoint());
        EXPECT_EQ(stored(s).size(), want.size()) << gens[0].name << " cap " << cap;
        EXPECT_TRUE(stored(s) == want) << gens[0].name << " cap " << cap;
      }
    }
  }
}

TEST(Closure, SpekMatchesReferenceAtCapTwo) {
  const std::set<Typed> want = reference_closure(relations(spek_generator_list()), 2);
  EXPECT_TRUE(stored(spek2()) == want);
  EXPECT_EQ(spek2().size(), 199u);
}

TEST(Closure, LayeredEqualsExhaustiveAtCapThree) {
  const MorphismStore ex = generate_closure(spek_generator_list(), config(3, true));
  EXPECT_TRUE(ex.fixpoint());
  EXPECT_TRUE(stored(ex) == stored(spek3()));
}

TEST(Closure, SpekCapThreeContents) {
  const MorphismStore& s = spek3();
  ASSERT_TRUE(s.fixpoint());
  EXPECT_EQ(s.size(), 4523u);
  const SpekGenerators g = spek_generators();
  const Relation eta = compose(g.delta_z, dagger(g.eps_z));
  const Relation z0 = spek_state("z0");
  for (const Relation& r : {eta, ghz(), compose(z0, dagger(z0)),
                            compose(spek_state("x0"), dagger(z0))}) {
    const Membership m = contains(s, r);
    EXPECT_EQ(m.answer, Membership::Answer::member) << describe(r);
    ASSERT_TRUE(m.word.has_value());
  }
  const Membership d = contains(s, delta_oplus());
  EXPECT_EQ(d.answer, Membership::Answer::not_member);
  EXPECT_FALSE(d.word.has_value());
}

TEST(Closure, CensusMatchesStateCount) {
  const auto c = census(spek3());
  const FinObject iv{4};
  const FinObject unit = FinObject::unit();
  EXPECT_EQ(c.at({unit, iv * iv}), lagrangian_count(2));
  EXPECT_EQ(c.at({iv, iv}), lagrangian_count(2));
  EXPECT_EQ(c.at({unit, iv * iv * iv}), lagrangian_count(3));
  EXPECT_EQ(c.at({iv, iv * iv}), lagrangian_count(3));
  EXPECT_EQ(c.at({iv * iv, iv}), lagrangian_count(3));
  EXPECT_EQ(c.at({iv * iv * iv, unit}), lagrangian_count(3));
  EXPECT_EQ(c.at({unit, iv}), 7u);  // six states and the empty one
  std::size_t total = 0;
  for (const auto& [shape, n] : c) total += n;
  EXPECT_EQ(total, spek3().size());
}

TEST(Closure, StateCensusOrbits) {
  const FinObject iv{4};
  const StateCensus sc = state_census(spek3(), iv * iv);
  EXPECT_EQ(sc.states.size(), 61u);
  std::multiset<std::size_t> sizes;
  for (const auto& o : sc.orbits) sizes.insert(o.size);
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 24, 36}));
  for (const auto& o : sc.orbits) {
    if (o.size == 24) {
      EXPECT_EQ(o.support, 4u);
    }
    if (o.size == 1) {
      EXPECT_EQ(o.support, 0u);
    }
  }
}

// Every word re-evaluates, through the term language, to its morphism.
TEST(Closure, WordsAreSound) {
  const MorphismStore& s = spek3();
  const SymbolTable symbols(ModelKind::spek);
  for (std::size_t id = 0; id < s.size(); ++id) {
    ASSERT_EQ(eval_source(s.word(id), symbols), s.entries()[id].relation) << s.word(id);
  }
}

TEST(Closure, ClosedUnderDagger) {
  const MorphismStore& s = spek3();
  for (const auto& e : s.entries()) ASSERT_TRUE(s.find(dagger(e.relation)).has_value());
}

TEST(Closure, Idempotent) {
  std::vector<Generator> again;
  for (std::size_t id = 0; id < spek2().size(); ++id) {
    again.push_back({"m" + std::to_string(id), spek2().entries()[id].relation});
  }
  const MorphismStore s = generate_closure(again, config(2));
  EXPECT_TRUE(stored(s) == stored(spek2()));
}

TEST(Closure, MonotoneInCap) {
  const std::set<Typed> small = stored(spek2());
  const std::set<Typed> large = stored(spek3());
  EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  for (const auto& e : spek3().entries()) {
    if (legs(e.relation) <= 2) {
      EXPECT_TRUE(spek2().find(e.relation).has_value());
    }
  }
}

TEST(Closure, DeltaOplusExcludedAtSmallCaps) {
  // It has three legs, so cap 2 cannot decide and says so.
  EXPECT_EQ(contains(spek2(), delta_oplus()).answer, Membership::Answer::unknown);
  EXPECT_EQ(contains(spek3(), delta_oplus()).answer, Membership::Answer::not_member);
  const FinObject iv{4};
  EXPECT_EQ(contains(spek3(), Relation::full(iv, iv)).answer, Membership::Answer::not_member);
}

TEST(Closure, Deterministic) {
  const std::string one = spek3().to_json().dump();
  const MorphismStore three = generate_closure(spek_generator_list(), config(3, false, 3));
  EXPECT_EQ(three.to_json().dump(), one);
  const MorphismStore again = generate_closure(spek_generator_list(), config(3));
  EXPECT_EQ(again.to_json().dump(), one);
}

TEST(Closure, WorkersInExhaustiveMode) {
  const auto a = generate_closure(spek_generator_list(), config(2, true, 1)).to_json().dump();
  const auto b = generate_closure(spek_generator_list(), config(2, true, 4)).to_json().dump();
  EXPECT_EQ(a, b);
}

TEST(Closure, BudgetOverflowIsNotAFixpoint) {
  ClosureConfig c = config(3);
  c.max_morphisms = 100;
  const MorphismStore s = generate_closure(spek_generator_list(), c);
  EXPECT_FALSE(s.fixpoint());
  EXPECT_LE(s.size(), 100u);
  const Membership m = contains(s, delta_oplus());
  EXPECT_EQ(m.answer, Membership::Answer::unknown);
  EXPECT_FALSE(m.reason.empty());

  ClosureConfig r = config(3);
  r.max_rounds = 1;
  EXPECT_FALSE(generate_closure(spek_generator_list(), r).fixpoint());
}

TEST(Closure, AboveCapIsUnknown) {
  const FinObject iv{4};
  const Membership m = contains(spek2(), ghz());
  EXPECT_EQ(m.answer, Membership::Answer::unknown);
  EXPECT_EQ(contains(spek3(), Relation::identity(iv * iv)).answer,
            Membership::Answer::unknown);
}

TEST(Closure, CheapestWords) {
  const MorphismStore& s = spek3();
  const SpekGenerators g = spek_generators();
  const Relation z0 = spek_state("z0");
  const auto id = s.find(compose(z0, dagger(z0)));
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(s.entries()[*id].cost, 3u);
  const auto eta = s.find(compose(g.delta_z, dagger(g.eps_z)));
  ASSERT_TRUE(eta.has_value());
  EXPECT_EQ(s.entries()[*eta].cost, 2u);
  EXPECT_EQ(s.word(*eta), "delta_Z ; eps_Z^");
  const auto dz = s.find(g.delta_z);
  EXPECT_EQ(s.word(*dz), "delta_Z");
  EXPECT_EQ(s.entries()[*dz].cost, 1u);
}

TEST(Closure, JsonRoundTrip) {
  const nlohmann::json j = spek2().to_json();
  const MorphismStore back = MorphismStore::from_json(j);
  EXPECT_EQ(back.to_json().dump(), j.dump());
  EXPECT_EQ(back.fixpoint(), spek2().fixpoint());
  EXPECT_EQ(back.max_arity(), 2u);
  const SpekGenerators g = spek_generators();
  const Relation eta = compose(g.delta_z, dagger(g.eps_z));
  EXPECT_EQ(contains(back, eta).word, contains(spek2(), eta).word);
}

TEST(Closure, JsonRejectsMalformedStores) {
  nlohmann::json j = spek2().to_json();
  nlohmann::json missing = j;
  missing.erase("fixpoint");
  EXPECT_THROW(MorphismStore::from_json(missing), TypeError);
  nlohmann::json bad = j;
  bad["morphisms"][0]["pairs"] = "oops";
  EXPECT_THROW(MorphismStore::from_json(bad), TypeError);
  EXPECT_THROW(MorphismStore::from_json(nlohmann::json::array()), TypeError);
}

TEST(Closure, EnvironmentCap) {
  ::setenv("TOYCAT_MAX_ARITY", "2", 1);
  EXPECT_EQ(default_closure_config().max_arity, 2u);
  ::setenv("TOYCAT_MAX_ARITY", "two", 1);
  EXPECT_THROW(default_closure_config(), TypeError);
  ::unsetenv("TOYCAT_MAX_ARITY");
  EXPECT_EQ(default_closure_config().max_arity, 3u);
}

}  // namespace
}  // namespace toycat
