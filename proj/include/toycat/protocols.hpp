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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "toycat/basis.hpp"
#include "toycat/relation.hpp"

namespace toycat {

// A protocol precondition does not hold; the message says which.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BellBasis {
  // delta = (1 x swap x 1) o (delta_X x delta_Z), epsilon = epsilon_X x epsilon_Z.
  BasisStructure tensor_basis;
  // (dagger(delta_X) x 1) o (1 x delta_Z).
  Relation bell_map;
};

// Throws ProtocolError unless bx and bz are complementary on one object.
BellBasis bell_basis(const BasisStructure& bx, const BasisStructure& bz);

struct PhaseUnitaries {
  std::vector<Relation> unitaries;  // lambda(b, u) for unbiased u, sorted
  std::vector<Relation> closure;    // generated monoid, identity included
};

PhaseUnitaries phase_unitaries(const BasisStructure& b);

// Every composite of the inputs (and the identity), sorted. All inputs must be
// endomorphisms of one object.
std::vector<Relation> composition_closure(const std::vector<Relation>& generators);

struct BranchSearch {
  std::optional<std::vector<Relation>> unitaries;
  // Largest number of pairs covered by pairwise disjoint shifted cups.
  std::size_t coverage = 0;
  std::size_t total = 0;
};

// Smallest subset of the pool whose shifted cups (U x 1) o eta partition
// A x A. Among equally small subsets the one that is least as a sorted list
// of pool positions wins, with the pool sorted and deduplicated first.
BranchSearch find_branch_unitaries(const Relation& eta, const std::vector<Relation>& pool);

struct Branch {
  Relation unitary;
  Relation state;       // (U x 1) o eta
  Relation effect;      // dagger(state)
  Relation branch_map;  // (effect x 1) o (1 x eta)
  Relation correction;  // U, undoing branch_map
  bool map_is_inverse = false;
  bool corrected = false;
};

struct TeleportationCertificate {
  Relation eta;
  std::vector<Branch> branches;
  bool disjoint = false;
  bool covering = false;
  std::optional<std::size_t> failing_branch;

  bool coverage_ok() const { return disjoint && covering; }
  bool valid() const { return coverage_ok() && !failing_branch; }
  // Every composite used, for membership audits.
  std::vector<Relation> morphisms() const;
};

TeleportationCertificate check_teleportation(const Relation& eta,
                                             const std::vector<Relation>& unitaries);

struct DenseCoding {
  // table[i][j] = e_j o (U_i x 1) o eta.
  std::vector<std::vector<Scalar>> table;
  bool ok = false;
};

DenseCoding check_dense_coding(const Relation& eta, const std::vector<Relation>& unitaries);

// phi o dagger(phi).
Relation measurement_projector(const Relation& phi);

nlohmann::json to_json(const TeleportationCertificate& c);
nlohmann::json to_json(const DenseCoding& d);

}  // namespace toycat
