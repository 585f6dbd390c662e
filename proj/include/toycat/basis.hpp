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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "toycat/relation.hpp"

namespace toycat {

// Raised when an exhaustive enumeration would exceed its configured cap.
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& message) : std::runtime_error(message) {}
};

// A matrix cell (codomain row, domain column) where two relations differ.
struct Witness {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

// Lexicographically least (row, col) at which a and b differ, if any.
std::optional<Witness> first_difference(const Relation& a, const Relation& b);

struct LawCheck {
  std::string law;
  bool holds = false;
  std::optional<Witness> witness;
};

struct LawReport {
  std::vector<LawCheck> checks;

  bool all_hold() const;
  const LawCheck& at(const std::string& law) const;
};

nlohmann::json to_json(const LawCheck& c);
nlohmann::json to_json(const LawReport& r);

// Evaluates coassociativity, both counit laws, cocommutativity, isometry and
// the Frobenius identity for delta: A -> A x A, epsilon: A -> I.
// Throws TypeError if the pair is not typed that way.
LawReport verify_basis_structure(const Relation& delta, const Relation& epsilon);

// A candidate basis structure (A, delta, epsilon) together with its law report.
// Construction type-checks; verified() tells whether every law holds.
class BasisStructure {
 public:
  BasisStructure(Relation delta, Relation epsilon);

  const FinObject& object() const { return delta_.dom(); }
  const Relation& delta() const { return delta_; }
  const Relation& epsilon() const { return epsilon_; }
  Relation multiplication() const { return dagger(delta_); }
  Relation unit() const { return dagger(epsilon_); }

  const LawReport& report() const { return report_; }
  bool verified() const { return report_.all_hold(); }

 private:
  Relation delta_;
  Relation epsilon_;
  LawReport report_;
};

// ((s x s) o delta o s^dagger, epsilon o s^dagger) for a unitary s.
BasisStructure conjugate(const BasisStructure& b, const Relation& s);

// dagger(delta) o (psi x id_A).
Relation lambda(const BasisStructure& b, const Relation& psi);

bool is_classical(const BasisStructure& b, const Relation& phi);
bool is_unbiased(const BasisStructure& b, const Relation& psi);

struct PointReport {
  std::vector<Relation> classical;
  std::vector<Relation> unbiased;
  std::vector<Relation> other;
};

inline constexpr std::size_t kDefaultPointCap = 16;

// Classifies every nonempty state of the structure's object, in lexicographic
// order of supports. Refuses objects with more than max_elements elements.
PointReport enumerate_points(const BasisStructure& b,
                             std::size_t max_elements = kDefaultPointCap);

struct ComplementarityReport {
  bool classical_a_unbiased_for_b = false;
  bool classical_b_unbiased_for_a = false;
  bool unit_a_classical_for_b = false;
  bool unit_b_classical_for_a = false;

  bool holds() const {
    return classical_a_unbiased_for_b && classical_b_unbiased_for_a &&
           unit_a_classical_for_b && unit_b_classical_for_a;
  }
};

nlohmann::json to_json(const ComplementarityReport& r);

// Checks the three clauses of complementarity by enumerating points.
// Throws TypeError when the structures live on different objects.
ComplementarityReport check_complementary(const BasisStructure& a,
                                          const BasisStructure& b,
                                          std::size_t max_elements = kDefaultPointCap);

// Equality used by the Hopf-law checks. Boolean scalars are idempotent, so
// the scaled laws reduce to exact equality in FRel.
using MorphismEquality = std::function<bool(const Relation&, const Relation&)>;

// Bialgebra and trivial-antipode Hopf laws in both directions:
//   b.delta o mu_a = (mu_a x mu_a) o (1 x swap x 1) o (b.delta x b.delta)
//   mu_a o b.delta = u_a o b.epsilon
// with mu_a = dagger(a.delta), u_a = dagger(a.epsilon), then a and b swapped.
LawReport check_hopf(const BasisStructure& a, const BasisStructure& b,
                     const MorphismEquality& equal = {});

struct Cup {
  Relation eta;
  // Set when the structure the cup was built from does not pass every law.
  bool from_unverified = false;
};

// delta o dagger(epsilon).
Cup eta(const BasisStructure& b);

// (eta^ x 1) o (1 x eta) = 1 and (1 x eta^) o (eta x 1) = 1.
inline bool snake_check(const Relation& eta) { return satisfies_snake(eta); }

}  // namespace toycat
