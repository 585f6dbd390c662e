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
#include <string>
#include <vector>

#include "oracle.hpp"
#include "toycat/basis.hpp"
#include "toycat/models.hpp"
#include "toycat/permutation.hpp"

namespace toycat {
namespace {

using oracle::Rel;

const FinObject II{2};
const FinObject IV{4};

// The six laws written directly against the pair-set semantics.
bool oracle_basis(const Rel& delta, const Rel& eps) {
  const std::size_t n = delta.dom;
  const Rel id = oracle::identity(n);
  const Rel mu = oracle::dagger(delta);
  using oracle::compose;
  using oracle::tensor;
  return compose(tensor(delta, id), delta) == compose(tensor(id, delta), delta) &&
         compose(tensor(eps, id), delta) == id && compose(tensor(id, eps), delta) == id &&
         compose(oracle::swap(n, n), delta) == delta && compose(mu, delta) == id &&
         compose(delta, mu) == compose(tensor(mu, id), tensor(id, delta));
}

std::vector<BasisStructure> all_qubit_structures() {
  std::vector<BasisStructure> out;
  for (unsigned long long d = 0; d < 256; ++d) {
    for (unsigned long long e = 0; e < 4; ++e) {
      BasisStructure b(oracle::to(oracle::nth(2, 4, d), II, II * II),
                       oracle::to(oracle::nth(2, 1, e), II, FinObject::unit()));
      if (b.verified()) out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> supports(const std::vector<Relation>& states) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : states) out.push_back(s.support());
  return out;
}

using Supports = std::vector<std::vector<std::size_t>>;

TEST(BasisLaws, QubitStructuresPass) {
  const QubitModel q = frel_qubit();
  for (const BasisStructure* b : {&q.z, &q.x, &q.x_prime}) {
    EXPECT_TRUE(b->verified());
    EXPECT_EQ(b->report().checks.size(), 6u);
    for (const auto& c : b->report().checks) EXPECT_TRUE(c.holds) << c.law;
  }
}

TEST(BasisLaws, SpekZPasses) {
  const SpekGenerators g = spek_generators();
  EXPECT_TRUE(BasisStructure(g.delta_z, g.eps_z).verified());
}

// Every candidate (delta, epsilon) on II, judged by the library and by the
// pair-set oracle.
TEST(BasisLaws, ExhaustiveOnQubitAgreesWithOracle) {
  std::size_t verified = 0;
  for (unsigned long long d = 0; d < 256; ++d) {
    for (unsigned long long e = 0; e < 4; ++e) {
      const Rel delta = oracle::nth(2, 4, d);
      const Rel eps = oracle::nth(2, 1, e);
      const BasisStructure b(oracle::to(delta, II, II * II),
                             oracle::to(eps, II, FinObject::unit()));
      ASSERT_EQ(b.verified(), oracle_basis(delta, eps)) << d << "," << e;
      verified += b.verified();
    }
  }
  // Z, and the two group-like structures X and X'.
  EXPECT_EQ(verified, 3u);
  const QubitModel q = frel_qubit();
  const auto found = all_qubit_structures();
  for (const BasisStructure* b : {&q.z, &q.x, &q.x_prime}) {
    const bool present = std::any_of(found.begin(), found.end(), [&](const BasisStructure& f) {
      return f.delta() == b->delta() && f.epsilon() == b->epsilon();
    });
    EXPECT_TRUE(present);
  }
}

TEST(BasisLaws, FailuresCarryWitness) {
  const QubitModel q = frel_qubit();
  const LawReport r = verify_basis_structure(q.z.delta(), q.x.epsilon());
  EXPECT_FALSE(r.all_hold());
  EXPECT_FALSE(r.at("left_counit").holds);
  ASSERT_TRUE(r.at("left_counit").witness.has_value());
  EXPECT_TRUE(r.at("coassociativity").holds);
  EXPECT_FALSE(r.at("coassociativity").witness.has_value());
  EXPECT_THROW(verify_basis_structure(q.z.epsilon(), q.z.delta()), TypeError);
}

TEST(BasisLaws, ConjugationPreservesLaws) {
  const QubitModel q = frel_qubit();
  for (const BasisStructure* b : {&q.z, &q.x}) {
    EXPECT_TRUE(conjugate(*b, q.not_gate).verified());
    EXPECT_TRUE(conjugate(*b, Relation::identity(II)).verified());
  }
  const SpekGenerators g = spek_generators();
  const BasisStructure z(g.delta_z, g.eps_z);
  for (const auto& s : g.perm_relations) EXPECT_TRUE(conjugate(z, s).verified());
  EXPECT_THROW(conjugate(z, Relation::full(IV, IV)), TypeError);
}

TEST(Points, QubitZ) {
  const QubitModel q = frel_qubit();
  const PointReport p = enumerate_points(q.z);
  EXPECT_EQ(supports(p.classical), (Supports{{0}, {1}}));
  EXPECT_EQ(supports(p.unbiased), (Supports{{0, 1}}));
  EXPECT_TRUE(p.other.empty());
}

TEST(Points, QubitX) {
  const QubitModel q = frel_qubit();
  const PointReport p = enumerate_points(q.x);
  EXPECT_EQ(supports(p.classical), (Supports{{0, 1}}));
  EXPECT_EQ(supports(p.unbiased), (Supports{{0}, {1}}));
}

TEST(Points, SpekZ) {
  const SpekGenerators g = spek_generators();
  const PointReport p = enumerate_points(BasisStructure(g.delta_z, g.eps_z));
  std::vector<std::string> classical, unbiased;
  for (const auto& s : p.classical) classical.push_back(spek_state_name(s));
  for (const auto& s : p.unbiased) unbiased.push_back(spek_state_name(s));
  std::sort(unbiased.begin(), unbiased.end());
  EXPECT_EQ(classical, (std::vector<std::string>{"z0", "z1"}));
  EXPECT_EQ(unbiased, (std::vector<std::string>{"x0", "x1", "y0", "y1"}));
  EXPECT_EQ(p.classical.size() + p.unbiased.size() + p.other.size(), 15u);
}

TEST(Points, RefusesLargeObjects) {
  const SpekGenerators g = spek_generators();
  const BasisStructure b(g.delta_z, g.eps_z);
  EXPECT_THROW(enumerate_points(b, 3), LimitError);
}

// Each structure's unit is fixed by its own phase map: lambda(u) = id.
TEST(Points, LambdaOfUnitIsIdentity) {
  for (const auto& b : all_qubit_structures()) {
    EXPECT_EQ(lambda(b, b.unit()), Relation::identity(II));
  }
  const SpekObservables obs = spek_observables();
  for (char label : {'Z', 'X', 'Y'}) {
    for (const auto& b : obs[label].family) {
      EXPECT_EQ(lambda(b, b.unit()), Relation::identity(IV));
    }
  }
}

TEST(Complementarity, QubitZX) {
  const QubitModel q = frel_qubit();
  EXPECT_TRUE(check_complementary(q.z, q.x).holds());
  EXPECT_TRUE(check_hopf(q.z, q.x).all_hold());
  EXPECT_FALSE(check_complementary(q.z, q.z).holds());
  EXPECT_FALSE(check_complementary(q.x, q.x).holds());
  EXPECT_FALSE(check_hopf(q.z, q.z).all_hold());
  EXPECT_FALSE(check_hopf(q.x, q.x).all_hold());
  const LawReport r = check_hopf(q.z, q.x);
  for (const char* law : {"bialgebra(a,b)", "hopf(a,b)", "bialgebra(b,a)", "hopf(b,a)"}) {
    EXPECT_TRUE(r.at(law).holds) << law;
  }
}

// Definition-style complementarity and the Hopf laws agree on every pair of
// basis structures on II.
TEST(Complementarity, DefinitionMatchesHopfOnQubit) {
  const auto all = all_qubit_structures();
  std::size_t complementary = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      const bool def = check_complementary(a, b).holds();
      EXPECT_EQ(def, check_hopf(a, b).all_hold());
      complementary += def;
    }
  }
  // (Z, X), (Z, X') and their mirrors.
  EXPECT_EQ(complementary, 4u);
}

TEST(Complementarity, DefinitionMatchesHopfOnSpek) {
  const SpekObservables obs = spek_observables();
  std::vector<BasisStructure> all;
  for (char label : {'Z', 'X', 'Y'})
    for (const auto& b : obs[label].family) all.push_back(b);
  std::size_t agree = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      EXPECT_EQ(check_complementary(a, b).holds(), check_hopf(a, b).all_hold());
      ++agree;
    }
  }
  EXPECT_EQ(agree, 144u);
}

TEST(Complementarity, Symmetric) {
  const SpekObservables obs = spek_observables();
  std::vector<BasisStructure> all = all_qubit_structures();
  for (char label : {'Z', 'X'})
    for (const auto& b : obs[label].family) all.push_back(b);
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (a.object() != b.object()) continue;
      EXPECT_EQ(check_complementary(a, b).holds(), check_complementary(b, a).holds());
      EXPECT_EQ(check_hopf(a, b).all_hold(), check_hopf(b, a).all_hold());
    }
  }
}

TEST(Complementarity, MismatchedObjectsThrow) {
  const QubitModel q = frel_qubit();
  const SpekGenerators g = spek_generators();
  EXPECT_THROW(check_complementary(q.z, BasisStructure(g.delta_z, g.eps_z)), TypeError);
}

TEST(Cups, SnakeForEveryVerifiedStructure) {
  for (const auto& b : all_qubit_structures()) {
    const Cup c = eta(b);
    EXPECT_FALSE(c.from_unverified);
    EXPECT_TRUE(snake_check(c.eta));
  }
  const SpekObservables obs = spek_observables();
  for (char label : {'Z', 'X', 'Y'}) {
    for (const auto& b : obs[label].family) EXPECT_TRUE(snake_check(eta(b).eta));
  }
}

TEST(Cups, UnverifiedStructureIsFlagged) {
  const QubitModel q = frel_qubit();
  const BasisStructure broken(q.z.delta(), q.x.epsilon());
  EXPECT_FALSE(broken.verified());
  EXPECT_TRUE(eta(broken).from_unverified);
}

}  // namespace
}  // namespace toycat
