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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toycat {

// Raised when morphisms are combined with incompatible objects, or when a
// value is constructed from malformed data.
class TypeError : public std::logic_error {
 public:
  explicit TypeError(const std::string& message) : std::logic_error(message) {}
};

// A finite set presented as a cartesian product of base sets.
//
// Factors of size 1 are erased on construction, so IV x I, I x IV and IV are
// the same object and the unit I is the empty factor list. Elements are
// numbered 0..cardinality-1 with row-major flattening: the first factor is the
// most significant digit.
class FinObject {
 public:
  static constexpr std::size_t kMaxFactors = 16;

  FinObject() = default;
  explicit FinObject(std::span<const std::size_t> factors);
  FinObject(std::initializer_list<std::size_t> factors);

  static FinObject unit() { return {}; }
  // base x base x ... x base, n times.
  static FinObject power(std::size_t base, std::size_t n);

  std::size_t arity() const { return arity_; }
  std::size_t factor(std::size_t k) const { return factors_[k]; }
  std::vector<std::size_t> factors() const;
  std::size_t cardinality() const { return cardinality_; }
  bool is_unit() const { return arity_ == 0; }

  // Display name: "I", "II", "IV", "IVxIV", sizes other than 2 and 4 as "F<n>".
  std::string name() const;

  // Splits a flattened element index into one digit per factor.
  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t flatten(std::span<const std::size_t> digits) const;

  // Sub-object made of factors [first, first + count).
  FinObject slice(std::size_t first, std::size_t count) const;

  friend FinObject operator*(const FinObject& a, const FinObject& b);
  friend bool operator==(const FinObject& a, const FinObject& b);
  friend std::strong_ordering operator<=>(const FinObject& a,
                                          const FinObject& b);

 private:
  std::array<std::uint32_t, kMaxFactors> factors_{};
  std::uint32_t arity_ = 0;
  std::size_t cardinality_ = 1;
};

namespace detail {

// Fixed-length bit array with inline storage for up to 256 bits.
class BitBlock {
 public:
  static constexpr std::size_t kInlineWords = 4;

  BitBlock() = default;
  explicit BitBlock(std::size_t bits);
  BitBlock(const BitBlock& other);
  BitBlock(BitBlock&& other) noexcept;
  BitBlock& operator=(const BitBlock& other);
  BitBlock& operator=(BitBlock&& other) noexcept;
  ~BitBlock() = default;

  std::size_t bits() const { return bits_; }
  std::size_t words() const { return words_; }
  const std::uint64_t* data() const { return heap_ ? heap_.get() : inline_.data(); }
  std::uint64_t* data() { return heap_ ? heap_.get() : inline_.data(); }

  bool test(std::size_t i) const { return (data()[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { data()[i >> 6] |= std::uint64_t{1} << (i & 63); }

  // Reads up to 64 bits starting at `offset`.
  std::uint64_t load(std::size_t offset, std::size_t len) const;
  // ORs the low `len` bits of `value` in at `offset`.
  void merge(std::size_t offset, std::size_t len, std::uint64_t value);

  std::size_t count() const;
  bool none() const;
  std::size_t hash() const;

  friend bool operator==(const BitBlock& a, const BitBlock& b);
  friend std::strong_ordering operator<=>(const BitBlock& a, const BitBlock& b);

 private:
  std::size_t bits_ = 0;
  std::size_t words_ = 0;
  std::array<std::uint64_t, kInlineWords> inline_{};
  std::unique_ptr<std::uint64_t[]> heap_;
};

}  // namespace detail

// A morphism of FRel: a relation between two finite objects, stored as a
// boolean matrix with one bit-packed row per codomain element. Entry (i, j)
// is set iff domain element j is related to codomain element i.
class Relation {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;  // (domain, codomain)

  // The empty relation dom -> cod.
  Relation(FinObject dom, FinObject cod);

  static Relation identity(const FinObject& a);
  static Relation from_pairs(FinObject dom, FinObject cod,
                             std::span<const Pair> pairs);
  static Relation from_pairs(FinObject dom, FinObject cod,
                             std::initializer_list<Pair> pairs);
  // The state I -> cod relating * to each listed element.
  static Relation state(FinObject cod, std::span<const std::size_t> elements);
  static Relation state(FinObject cod, std::initializer_list<std::size_t> elements);
  // The graph of a function, given as the image of each domain element.
  static Relation graph(FinObject dom, FinObject cod,
                        std::span<const std::size_t> images);
  static Relation full(FinObject dom, FinObject cod);

  const FinObject& dom() const { return dom_; }
  const FinObject& cod() const { return cod_; }

  bool related(std::size_t from, std::size_t to) const {
    return bits_.test(to * dom_.cardinality() + from);
  }
  bool entry(std::size_t row, std::size_t col) const { return related(col, row); }

  // Related pairs (domain, codomain), sorted lexicographically.
  std::vector<Pair> pairs() const;
  // Codomain elements related to `from`.
  std::vector<std::size_t> image(std::size_t from) const;
  // For a state: the codomain elements it selects.
  std::vector<std::size_t> support() const;

  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_state() const { return dom_.is_unit(); }
  bool is_effect() const { return cod_.is_unit(); }
  bool is_scalar() const { return dom_.is_unit() && cod_.is_unit(); }

  std::size_t hash() const;

  friend bool operator==(const Relation& a, const Relation& b);
  // Orders by (dom, cod, bits); a strict total order used for canonical keys.
  friend std::strong_ordering operator<=>(const Relation& a, const Relation& b);

  friend Relation compose(const Relation& g, const Relation& f);
  friend Relation tensor(const Relation& f, const Relation& g);
  friend Relation dagger(const Relation& f);
  friend Relation whisker(const Relation& g, const Relation& f, std::size_t offset);
  friend Relation exchange_codomain(const Relation& f, std::size_t k);
  friend class RelationBuilder;

 private:
  FinObject dom_;
  FinObject cod_;
  detail::BitBlock bits_;
};

// Mutable accumulator for building a Relation entry by entry.
class RelationBuilder {
 public:
  RelationBuilder(FinObject dom, FinObject cod) : rel_(std::move(dom), std::move(cod)) {}
  RelationBuilder& relate(std::size_t from, std::size_t to);
  Relation build() && { return std::move(rel_); }

 private:
  Relation rel_;
};

struct RelationHash {
  std::size_t operator()(const Relation& r) const { return r.hash(); }
};

// The two scalars I -> I.
enum class Scalar { empty, identity };

Scalar to_scalar(const Relation& r);
Relation scalar(Scalar s);

// g o f. Throws TypeError naming both objects when f.cod() != g.dom().
Relation compose(const Relation& g, const Relation& f);
// Relates ((a, c), (b, d)) iff f relates a to b and g relates c to d.
Relation tensor(const Relation& f, const Relation& g);
// Relational converse.
Relation dagger(const Relation& f);

// (id_L x g x id_R) o f, where g consumes codomain factors
// [offset, offset + g.dom().arity()) of f. Equal to the composite with the
// whiskered morphism, without building it.
Relation whisker(const Relation& g, const Relation& f, std::size_t offset);
// s o f where s exchanges codomain factors k and k + 1.
Relation exchange_codomain(const Relation& f, std::size_t k);

Relation swap(const FinObject& a, const FinObject& b);
// Permutes the factors of `a`: factor k of the result is factor order[k] of a.
Relation permute_factors(const FinObject& a, std::span<const std::size_t> order);

// dagger(f) o f = id and f o dagger(f) = id.
bool is_unitary(const Relation& f);

// The transpose of f: A -> B taken with cups eta_a: I -> A x A and
// eta_b: I -> B x B. Throws TypeError unless both cups satisfy the snake
// equations.
Relation transpose_star(const Relation& f, const Relation& eta_a,
                        const Relation& eta_b);
// dagger(transpose_star(f)).
Relation conjugate_star(const Relation& f, const Relation& eta_a,
                        const Relation& eta_b);

// Snake equations for a candidate cup eta: I -> A x A.
bool satisfies_snake(const Relation& eta);

// Human-readable rendering in the "a ~ {b, ...}" form. Elements
// of IV are printed 1..4 and everything else 0-based.
std::string describe(const Relation& r);
std::string element_name(const FinObject& a, std::size_t index);

}  // namespace toycat
