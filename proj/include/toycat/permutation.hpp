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
#include <string>
#include <vector>

#include "toycat/relation.hpp"

namespace toycat {

// A permutation of {0, ..., n-1}, stored as its one-line image list.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t n);
  // Cycles are given with display labels: 1-based when one_based is set.
  static Permutation from_cycles(std::size_t n,
                                 const std::vector<std::vector<std::size_t>>& cycles,
                                 bool one_based);
  // All n! permutations, in lexicographic order of their one-line notation.
  static std::vector<Permutation> all(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }

  Permutation inverse() const;
  // (*this o other)(i) = (*this)(other(i)).
  Permutation after(const Permutation& other) const;
  bool is_identity() const;

  // Cycle notation such as "(23)" or "(12)(34)"; "e" for the identity.
  std::string cycles(bool one_based) const;
  // Term-language name: "sigma_23", "sigma_12_34", "sigma_e".
  std::string identifier(bool one_based) const;

  Relation relation(const FinObject& a) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

// Recovers the permutation whose graph is r, if r is one on a single factor.
bool as_permutation(const Relation& r, Permutation& out);

}  // namespace toycat
