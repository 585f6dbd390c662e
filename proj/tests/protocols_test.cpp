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

#include <set>
#include <vector>

#include "oracle.hpp"
#include "toycat/models.hpp"
#include "toycat/permutation.hpp"
#include "toycat/protocols.hpp"

namespace toycat {
namespace {

using oracle::Rel;

const FinObject II{2};
const FinObject IV{4};

Relation spek_cup() {
  const SpekGenerators g = spek_generators();
  return compose(g.delta_z, dagger(g.eps_z));
}

std::vector<Relation> perms(std::initializer_list<std::vector<std::vector<std::size_t>>> cycles) {
  std::vector<Relation> out;
  for (const auto& c : cycles) out.push_back(Permutation::from_cycles(4, c, true).relation(IV));
  return out;
}

// (U x 1) o eta, computed on pair sets.
Rel shifted(const Rel& u, const Rel& eta) {
  return oracle::compose(oracle::tensor(u, oracle::identity(u.dom)), eta);
}

// Recomputes every claim of a certificate with the pair-set oracle.
void expect_certificate_sound(const TeleportationCertificate& cert) {
  const Rel eta = oracle::from(cert.eta);
  const std::size_t n = oracle::from(cert.branches.front().unitary).dom;
  const Rel id = oracle::identity(n);
  std::set<std::size_t> seen;
  bool disjoint = true;
  for (const auto& b : cert.branches) {
    const Rel u = oracle::from(b.unitary);
    const Rel state = shifted(u, eta);
    EXPECT_EQ(oracle::from(b.state), state);
    EXPECT_EQ(oracle::from(b.effect), oracle::dagger(state));
    const Rel map =
        oracle::compose(oracle::tensor(oracle::dagger(state), id), oracle::tensor(id, eta));
    EXPECT_EQ(oracle::from(b.branch_map), map);
    EXPECT_EQ(oracle::compose(oracle::from(b.correction), map), id);
    EXPECT_TRUE(b.corrected && b.map_is_inverse);
    for (const auto& [_, to] : state.pairs) disjoint &= seen.insert(to).second;
  }
  EXPECT_EQ(cert.disjoint, disjoint);
  EXPECT_EQ(cert.covering, seen.size() == n * n);
}

TEST(Teleportation, Qubit) {
  const QubitModel q = frel_qubit();
  const Relation eta = compose(q.z.delta(), q.z.unit());
  const PhaseUnitaries phases = phase_unitaries(q.x);
  EXPECT_EQ(phases.closure, (std::vector<Relation>{q.not_gate, Relation::identity(II)}));
  const BranchSearch search = find_branch_unitaries(eta, phases.closure);
  ASSERT_TRUE(search.unitaries.has_value());
  EXPECT_EQ(*search.unitaries, (std::vector<Relation>{q.not_gate, Relation::identity(II)}));
  const TeleportationCertificate cert = check_teleportation(eta, *search.unitaries);
  EXPECT_TRUE(cert.valid());
  EXPECT_EQ(cert.branches.size(), 2u);
  expect_certificate_sound(cert);
}

TEST(Teleportation, SpekKleinGroup) {
  const Relation eta = spek_cup();
  const SpekObservables obs = spek_observables();
  std::vector<Relation> pool = phase_unitaries(obs.z.family[0]).unitaries;
  for (const auto& u : phase_unitaries(obs.x.family[0]).unitaries) pool.push_back(u);
  const BranchSearch search = find_branch_unitaries(eta, composition_closure(pool));
  ASSERT_TRUE(search.unitaries.has_value());
  const std::vector<Relation> klein = perms({{}, {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}});
  EXPECT_EQ(std::set<Relation>(search.unitaries->begin(), search.unitaries->end()),
            std::set<Relation>(klein.begin(), klein.end()));
  const TeleportationCertificate cert = check_teleportation(eta, *search.unitaries);
  EXPECT_TRUE(cert.valid());
  EXPECT_EQ(cert.branches.size(), 4u);
  EXPECT_FALSE(cert.failing_branch.has_value());
  expect_certificate_sound(cert);
}

TEST(Teleportation, PhaseGroups) {
  const SpekObservables obs = spek_observables();
  const PhaseUnitaries z = phase_unitaries(obs.z.family[0]);
  const PhaseUnitaries x = phase_unitaries(obs.x.family[0]);
  const auto zs = perms({{}, {{1, 2}}, {{3, 4}}, {{1, 2}, {3, 4}}});
  const auto xs = perms({{}, {{1, 3}}, {{2, 4}}, {{1, 3}, {2, 4}}});
  EXPECT_EQ(std::set<Relation>(z.closure.begin(), z.closure.end()),
            std::set<Relation>(zs.begin(), zs.end()));
  EXPECT_EQ(std::set<Relation>(x.closure.begin(), x.closure.end()),
            std::set<Relation>(xs.begin(), xs.end()));
  std::vector<Relation> both = z.unitaries;
  both.insert(both.end(), x.unitaries.begin(), x.unitaries.end());
  EXPECT_EQ(composition_closure(both).size(), 24u);
}

TEST(Teleportation, IncompleteBranchesAreReported) {
  const Relation eta = spek_cup();
  const auto two = perms({{}, {{1, 2}, {3, 4}}});
  const TeleportationCertificate cert = check_teleportation(eta, two);
  EXPECT_TRUE(cert.disjoint);
  EXPECT_FALSE(cert.covering);
  EXPECT_FALSE(cert.valid());
  const auto overlapping = perms({{}, {{1, 2}}, {{3, 4}}, {{1, 2}, {3, 4}}});
  const TeleportationCertificate c2 = check_teleportation(eta, overlapping);
  EXPECT_FALSE(c2.disjoint);
  expect_certificate_sound(c2);
}

// For every unitary, the branch map is its inverse: the yanking identity.
TEST(Teleportation, YankingForAllUnitaries) {
  const Relation eta_ii = Relation::state(II * II, {0, 3});
  for (unsigned k = 0; k < 16; ++k) {
    const Relation u = oracle::to(oracle::nth(2, 2, k), II, II);
    if (!is_unitary(u)) continue;
    const TeleportationCertificate c = check_teleportation(eta_ii, {u});
    EXPECT_TRUE(c.branches[0].corrected);
    EXPECT_TRUE(c.branches[0].map_is_inverse);
  }
  for (const auto& p : Permutation::all(4)) {
    const TeleportationCertificate c = check_teleportation(spek_cup(), {p.relation(IV)});
    EXPECT_TRUE(c.branches[0].corrected);
    EXPECT_EQ(c.branches[0].branch_map, p.inverse().relation(IV));
  }
}

TEST(Teleportation, Preconditions) {
  const Relation not_cup = Relation::full(FinObject::unit(), IV * IV);
  EXPECT_THROW(check_teleportation(not_cup, perms({{}})), ProtocolError);
  EXPECT_THROW(check_teleportation(spek_cup(), {Relation::full(IV, IV)}), ProtocolError);
  EXPECT_THROW(find_branch_unitaries(not_cup, perms({{}})), ProtocolError);
  const BranchSearch none = find_branch_unitaries(spek_cup(), perms({{}, {{1, 2}}}));
  EXPECT_FALSE(none.unitaries.has_value());
  EXPECT_EQ(none.total, 16u);
  EXPECT_EQ(none.coverage, 4u);
}

TEST(DenseCoding, KleinGroupDecodesExactly) {
  const auto klein = perms({{}, {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}});
  const DenseCoding d = check_dense_coding(spek_cup(), klein);
  EXPECT_TRUE(d.ok);
  ASSERT_EQ(d.table.size(), 4u);
  const Rel eta = oracle::from(spek_cup());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(d.table[i][j], i == j ? Scalar::identity : Scalar::empty);
      const Rel s = oracle::compose(oracle::dagger(shifted(oracle::from(klein[j]), eta)),
                                    shifted(oracle::from(klein[i]), eta));
      EXPECT_EQ(!s.pairs.empty(), i == j);
    }
  }
  const QubitModel q = frel_qubit();
  const DenseCoding dq = check_dense_coding(Relation::state(II * II, {0, 3}),
                                            {Relation::identity(II), q.not_gate});
  EXPECT_TRUE(dq.ok);
}

// Decoding works exactly when the shifted cups are pairwise disjoint; with
// four unitaries on IV that is the same as partitioning IV x IV.
TEST(DenseCoding, EquivalentToPartition) {
  const Relation eta = spek_cup();
  const auto all = Permutation::all(4);
  std::size_t partitions = 0;
  for (std::size_t a = 0; a < 24; ++a)
    for (std::size_t b = a + 1; b < 24; ++b)
      for (std::size_t c = b + 1; c < 24; ++c)
        for (std::size_t d = c + 1; d < 24; ++d) {
          const std::vector<Relation> us{all[a].relation(IV), all[b].relation(IV),
                                         all[c].relation(IV), all[d].relation(IV)};
          std::set<std::size_t> seen;
          bool disjoint = true;
          for (const auto& u : us)
            for (const auto& [_, to] : shifted(oracle::from(u), oracle::from(eta)).pairs)
              disjoint &= seen.insert(to).second;
          const bool partition = disjoint && seen.size() == 16;
          ASSERT_EQ(check_dense_coding(eta, us).ok, partition);
          ASSERT_EQ(check_teleportation(eta, us).coverage_ok(), partition);
          partitions += partition;
        }
  // Each Latin square of order 4 read as four permutations; 576 squares,
  // 24 orderings of the rows each.
  EXPECT_EQ(partitions, 576u / 24u);
}

TEST(Bell, BasisFromComplementaryPair) {
  const SpekObservables obs = spek_observables();
  const BellBasis bell = bell_basis(obs.x.family[0], obs.z.family[0]);
  EXPECT_TRUE(bell.tensor_basis.verified());
  EXPECT_TRUE(is_unitary(bell.bell_map));
  const QubitModel q = frel_qubit();
  EXPECT_TRUE(is_unitary(bell_basis(q.x, q.z).bell_map));
  EXPECT_THROW(bell_basis(q.z, q.z), ProtocolError);
}

TEST(Measurement, ProjectorIsIdempotentForClassicalPoints) {
  const SpekGenerators g = spek_generators();
  const BasisStructure z(g.delta_z, g.eps_z);
  for (const auto& p : enumerate_points(z).classical) {
    const Relation pr = measurement_projector(p);
    EXPECT_EQ(compose(pr, pr), pr);
    EXPECT_EQ(dagger(pr), pr);
  }
  EXPECT_THROW(measurement_projector(Relation::identity(IV)), TypeError);
}

TEST(Protocols, CertificateJson) {
  const auto klein = perms({{}, {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}});
  const nlohmann::json j = to_json(check_teleportation(spek_cup(), klein));
  EXPECT_EQ(j.at("branches").size(), 4u);
  EXPECT_TRUE(j.at("valid").get<bool>());
  EXPECT_TRUE(to_json(check_dense_coding(spek_cup(), klein)).at("ok").get<bool>());
}

}  // namespace
}  // namespace toycat
