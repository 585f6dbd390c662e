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

#include <stdexcept>
#include <string>
#include <vector>

#include "toycat/basis.hpp"
#include "toycat/permutation.hpp"
#include "toycat/relation.hpp"

namespace toycat {

// Raised when built-in model data fails its own consistency checks.
class IntegrityError : public std::runtime_error {
 public:
  explicit IntegrityError(const std::string& message) : std::runtime_error(message) {}
};

struct NamedState {
  std::string name;
  Relation state;
};

enum class ModelKind { frel_qubit, spek };

std::string model_name(ModelKind kind);
ModelKind parse_model_name(const std::string& name);

// The two-element set II = {0, 1} in FRel.
inline FinObject qubit_object() { return FinObject{2}; }
// IV x ... x IV with `systems` factors; IV = {1, 2, 3, 4} in display.
inline FinObject spek_object(std::size_t systems = 1) {
  return FinObject::power(4, systems);
}

struct QubitModel {
  BasisStructure z;
  BasisStructure x;
  // x with the roles of 0 and 1 exchanged.
  BasisStructure x_prime;
  Relation z0;
  Relation z1;
  Relation x0;
  Relation not_gate;
};

QubitModel frel_qubit();

struct SpekGenerators {
  // S4 in lexicographic one-line order; perm_relations[i] is perms[i] on IV.
  std::vector<Permutation> perms;
  std::vector<Relation> perm_relations;
  Relation delta_z;
  Relation eps_z;
};

SpekGenerators spek_generators();

// z0, z1, x0, x1, y0, y1 on IV.
std::vector<NamedState> spek_states();
Relation spek_state(const std::string& name);
// Name of a state of IV from spek_states(), or its support in display form.
std::string spek_state_name(const Relation& state);

// The diagonal copy i ~ (i, i) on IV, which FRel has but Spek lacks.
Relation delta_oplus();

// (delta_Z x 1_IV) o eta_IV.
Relation ghz();

struct Observable {
  char label = 'Z';
  // Four basis structures sharing classical points; family[0] is the
  // representative built from delta_Z by the defining conjugation.
  std::vector<BasisStructure> family;
  // family[i].delta() = (s x s) o delta_Z o s^dagger for s = conjugators[i].
  std::vector<Permutation> conjugators;
  // Names of the states u with family[i].epsilon() = dagger(u).
  std::vector<std::string> counit_names;
  std::vector<std::string> classical_points;
};

struct SpekObservables {
  Observable z;
  Observable x;
  Observable y;
  // Deviations found between the pairings one might expect and the ones
  // that pass every law.
  std::vector<std::string> notes;

  const Observable& operator[](char label) const;
};

// Builds X, Y, Z by conjugating delta_Z with (23) and (24), and pairs every
// counit with the unique permutation-conjugate comultiplication that passes
// all laws. Throws IntegrityError if a family does not have four members.
SpekObservables spek_observables();

struct OrbitGroup {
  std::vector<std::string> classical_points;
  std::vector<Relation> deltas;
  // First permutation (lexicographic) producing each delta.
  std::vector<Permutation> conjugators;
};

// All permutation-conjugates of delta_Z, grouped by their classical points.
std::vector<OrbitGroup> observable_orbit();

struct BlochRow {
  std::string state;
  std::string axis;
  std::vector<std::string> classical_for;
  std::vector<std::string> unbiased_for;
  bool absent = false;
};

std::vector<BlochRow> bloch_table(ModelKind model);

}  // namespace toycat
