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

#include "toycat/relation.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <sstream>

namespace toycat {

// ---------------------------------------------------------------------------
// FinObject

FinObject::FinObject(std::span<const std::size_t> factors) {
  for (std::size_t f : factors) {
    if (f == 0) throw TypeError("object factor of size 0");
    if (f == 1) continue;
    if (arity_ == kMaxFactors) {
      throw TypeError("object has more than " + std::to_string(kMaxFactors) +
                      " non-unit factors");
    }
    factors_[arity_++] = static_cast<std::uint32_t>(f);
    if (cardinality_ > (std::size_t{1} << 40) / f) {
      throw TypeError("object cardinality too large");
    }
    cardinality_ *= f;
  }
}

FinObject::FinObject(std::initializer_list<std::size_t> factors)
    : FinObject(std::span<const std::size_t>(factors.begin(), factors.size())) {}

FinObject FinObject::power(std::size_t base, std::size_t n) {
  std::vector<std::size_t> f(n, base);
  return FinObject(f);
}

std::vector<std::size_t> FinObject::factors() const {
  return {factors_.begin(), factors_.begin() + arity_};
}

std::string FinObject::name() const {
  if (arity_ == 0) return "I";
  std::string out;
  for (std::size_t k = 0; k < arity_; ++k) {
    if (k) out += 'x';
    switch (factors_[k]) {
      case 2: out += "II"; break;
      case 4: out += "IV"; break;
      default: out += "F" + std::to_string(factors_[k]);
    }
  }
  return out;
}

std::vector<std::size_t> FinObject::digits(std::size_t index) const {
  std::vector<std::size_t> d(arity_);
  for (std::size_t k = arity_; k-- > 0;) {
    d[k] = index % factors_[k];
    index /= factors_[k];
  }
  return d;
}

std::size_t FinObject::flatten(std::span<const std::size_t> digits) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < arity_; ++k) index = index * factors_[k] + digits[k];
  return index;
}

FinObject FinObject::slice(std::size_t first, std::size_t count) const {
  if (first + count > arity_) throw TypeError("object slice out of range");
  std::vector<std::size_t> f(factors_.begin() + first,
                             factors_.begin() + first + count);
  return FinObject(f);
}

FinObject operator*(const FinObject& a, const FinObject& b) {
  std::vector<std::size_t> f = a.factors();
  for (std::size_t k = 0; k < b.arity_; ++k) f.push_back(b.factors_[k]);
  return FinObject(f);
}

bool operator==(const FinObject& a, const FinObject& b) {
  return a.arity_ == b.arity_ &&
         std::equal(a.factors_.begin(), a.factors_.begin() + a.arity_,
                    b.factors_.begin());
}

std::strong_ordering operator<=>(const FinObject& a, const FinObject& b) {
  return std::lexicographical_compare_three_way(
      a.factors_.begin(), a.factors_.begin() + a.arity_, b.factors_.begin(),
      b.factors_.begin() + b.arity_);
}

// ---------------------------------------------------------------------------
// BitBlock

namespace detail {

BitBlock::BitBlock(std::size_t bits) : bits_(bits), words_((bits + 63) / 64) {
  if (words_ > kInlineWords) heap_ = std::make_unique<std::uint64_t[]>(words_);
}

BitBlock::BitBlock(const BitBlock& other)
    : bits_(other.bits_), words_(other.words_), inline_(other.inline_) {
  if (other.heap_) {
    heap_ = std::make_unique<std::uint64_t[]>(words_);
    std::memcpy(heap_.get(), other.heap_.get(), words_ * sizeof(std::uint64_t));
  }
}

BitBlock::BitBlock(BitBlock&& other) noexcept
    : bits_(other.bits_),
      words_(other.words_),
      inline_(other.inline_),
      heap_(std::move(other.heap_)) {
  other.bits_ = other.words_ = 0;
}

BitBlock& BitBlock::operator=(const BitBlock& other) {
  if (this != &other) *this = BitBlock(other);
  return *this;
}

BitBlock& BitBlock::operator=(BitBlock&& other) noexcept {
  bits_ = other.bits_;
  words_ = other.words_;
  inline_ = other.inline_;
  heap_ = std::move(other.heap_);
  other.bits_ = other.words_ = 0;
  return *this;
}

std::uint64_t BitBlock::load(std::size_t offset, std::size_t len) const {
  const std::uint64_t* w = data();
  std::size_t q = offset >> 6;
  std::size_t r = offset & 63;
  std::uint64_t v = w[q] >> r;
  if (r != 0 && r + len > 64) v |= w[q + 1] << (64 - r);
  return len == 64 ? v : v & ((std::uint64_t{1} << len) - 1);
}

void BitBlock::merge(std::size_t offset, std::size_t len, std::uint64_t value) {
  std::uint64_t* w = data();
  std::size_t q = offset >> 6;
  std::size_t r = offset & 63;
  w[q] |= value << r;
  if (r != 0 && r + len > 64) w[q + 1] |= value >> (64 - r);
}

std::size_t BitBlock::count() const {
  std::size_t n = 0;
  const std::uint64_t* w = data();
  for (std::size_t i = 0; i < words_; ++i) n += std::popcount(w[i]);
  return n;
}

bool BitBlock::none() const {
  const std::uint64_t* w = data();
  for (std::size_t i = 0; i < words_; ++i)
    if (w[i]) return false;
  return true;
}

std::size_t BitBlock::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ bits_;
  const std::uint64_t* w = data();
  for (std::size_t i = 0; i < words_; ++i) {
    h ^= w[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

bool operator==(const BitBlock& a, const BitBlock& b) {
  return a.bits_ == b.bits_ &&
         std::memcmp(a.data(), b.data(), a.words_ * sizeof(std::uint64_t)) == 0;
}

std::strong_ordering operator<=>(const BitBlock& a, const BitBlock& b) {
  if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.data(), a.data() + a.words_,
                                                b.data(), b.data() + b.words_);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(FinObject dom, FinObject cod)
    : dom_(dom), cod_(cod), bits_(dom.cardinality() * cod.cardinality()) {}

RelationBuilder& RelationBuilder::relate(std::size_t from, std::size_t to) {
  if (from >= rel_.dom_.cardinality() || to >= rel_.cod_.cardinality()) {
    throw TypeError("pair (" + std::to_string(from) + "," + std::to_string(to) +
                    ") out of range for " + rel_.dom_.name() + " -> " +
                    rel_.cod_.name());
  }
  rel_.bits_.set(to * rel_.dom_.cardinality() + from);
  return *this;
}

Relation Relation::identity(const FinObject& a) {
  RelationBuilder b(a, a);
  for (std::size_t i = 0; i < a.cardinality(); ++i) b.relate(i, i);
  return std::move(b).build();
}

Relation Relation::from_pairs(FinObject dom, FinObject cod,
                              std::span<const Pair> pairs) {
  RelationBuilder b(dom, cod);
  for (auto [from, to] : pairs) b.relate(from, to);
  return std::move(b).build();
}

Relation Relation::from_pairs(FinObject dom, FinObject cod,
                              std::initializer_list<Pair> pairs) {
  return from_pairs(dom, cod, std::span<const Pair>(pairs.begin(), pairs.size()));
}

Relation Relation::state(FinObject cod, std::span<const std::size_t> elements) {
  RelationBuilder b(FinObject::unit(), cod);
  for (std::size_t e : elements) b.relate(0, e);
  return std::move(b).build();
}

Relation Relation::state(FinObject cod, std::initializer_list<std::size_t> elements) {
  return state(cod, std::span<const std::size_t>(elements.begin(), elements.size()));
}

Relation Relation::graph(FinObject dom, FinObject cod,
                         std::span<const std::size_t> images) {
  if (images.size() != dom.cardinality()) {
    throw TypeError("function graph needs one image per element of " + dom.name());
  }
  RelationBuilder b(dom, cod);
  for (std::size_t i = 0; i < images.size(); ++i) b.relate(i, images[i]);
  return std::move(b).build();
}

Relation Relation::full(FinObject dom, FinObject cod) {
  RelationBuilder b(dom, cod);
  for (std::size_t i = 0; i < dom.cardinality(); ++i)
    for (std::size_t j = 0; j < cod.cardinality(); ++j) b.relate(i, j);
  return std::move(b).build();
}

std::vector<Relation::Pair> Relation::pairs() const {
  std::vector<Pair> out;
  const std::size_t n = dom_.cardinality();
  for (std::size_t from = 0; from < n; ++from)
    for (std::size_t to = 0; to < cod_.cardinality(); ++to)
      if (bits_.test(to * n + from)) out.emplace_back(from, to);
  return out;
}

std::vector<std::size_t> Relation::image(std::size_t from) const {
  std::vector<std::size_t> out;
  for (std::size_t to = 0; to < cod_.cardinality(); ++to)
    if (related(from, to)) out.push_back(to);
  return out;
}

std::vector<std::size_t> Relation::support() const {
  if (!is_state()) throw TypeError("support() needs a state, got " +
                                   dom_.name() + " -> " + cod_.name());
  return image(0);
}

std::size_t Relation::hash() const {
  std::size_t h = bits_.hash();
  for (std::size_t k = 0; k < dom_.arity(); ++k) h = h * 31 + dom_.factor(k);
  h = h * 131 + 7;
  for (std::size_t k = 0; k < cod_.arity(); ++k) h = h * 31 + cod_.factor(k);
  return h;
}

bool operator==(const Relation& a, const Relation& b) {
  return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.bits_ == b.bits_;
}

std::strong_ordering operator<=>(const Relation& a, const Relation& b) {
  if (auto c = a.dom_ <=> b.dom_; c != 0) return c;
  if (auto c = a.cod_ <=> b.cod_; c != 0) return c;
  return a.bits_ <=> b.bits_;
}

Scalar to_scalar(const Relation& r) {
  if (!r.is_scalar()) {
    throw TypeError("expected a scalar I -> I, got " + r.dom().name() + " -> " +
                    r.cod().name());
  }
  return r.empty() ? Scalar::empty : Scalar::identity;
}

Relation scalar(Scalar s) {
  return s == Scalar::identity ? Relation::identity(FinObject::unit())
                               : Relation(FinObject::unit(), FinObject::unit());
}

Relation compose(const Relation& g, const Relation& f) {
  if (f.cod_ != g.dom_) {
    throw TypeError("cannot compose " + g.dom_.name() + " -> " + g.cod_.name() +
                    " after " + f.dom_.name() + " -> " + f.cod_.name() + ": " +
                    f.cod_.name() + " != " + g.dom_.name());
  }
  Relation out(f.dom_, g.cod_);
  const std::size_t na = f.dom_.cardinality();
  const std::size_t nb = f.cod_.cardinality();
  const std::size_t nc = g.cod_.cardinality();
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (!g.bits_.test(c * nb + b)) continue;
      for (std::size_t k = 0; k < na; k += 64) {
        std::size_t len = std::min<std::size_t>(64, na - k);
        std::uint64_t row = f.bits_.load(b * na + k, len);
        if (row) out.bits_.merge(c * na + k, len, row);
      }
    }
  }
  return out;
}

Relation tensor(const Relation& f, const Relation& g) {
  Relation out(f.dom_ * g.dom_, f.cod_ * g.cod_);
  const std::size_t na = f.dom_.cardinality();
  const std::size_t nb = f.cod_.cardinality();
  const std::size_t nc = g.dom_.cardinality();
  const std::size_t nd = g.cod_.cardinality();
  const std::size_t row_len = na * nc;
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t d = 0; d < nd; ++d) {
      const std::size_t row = (b * nd + d) * row_len;
      for (std::size_t a = 0; a < na; ++a) {
        if (!f.bits_.test(b * na + a)) continue;
        for (std::size_t k = 0; k < nc; k += 64) {
          std::size_t len = std::min<std::size_t>(64, nc - k);
          std::uint64_t chunk = g.bits_.load(d * nc + k, len);
          if (chunk) out.bits_.merge(row + a * nc + k, len, chunk);
        }
      }
    }
  }
  return out;
}

Relation dagger(const Relation& f) {
  Relation out(f.cod_, f.dom_);
  const std::size_t na = f.dom_.cardinality();
  const std::size_t nb = f.cod_.cardinality();
  const std::uint64_t* w = f.bits_.data();
  for (std::size_t word = 0; word < f.bits_.words(); ++word) {
    std::uint64_t v = w[word];
    while (v) {
      std::size_t i = word * 64 + static_cast<std::size_t>(std::countr_zero(v));
      v &= v - 1;
      std::size_t to = i / na;
      std::size_t from = i % na;
      out.bits_.set(from * nb + to);
    }
  }
  return out;
}

namespace {

void copy_row(detail::BitBlock& dst, std::size_t dst_row,
              const detail::BitBlock& src, std::size_t src_row, std::size_t n) {
  for (std::size_t k = 0; k < n; k += 64) {
    std::size_t len = std::min<std::size_t>(64, n - k);
    std::uint64_t chunk = src.load(src_row * n + k, len);
    if (chunk) dst.merge(dst_row * n + k, len, chunk);
  }
}

}  // namespace

Relation whisker(const Relation& g, const Relation& f, std::size_t offset) {
  const FinObject& b = f.cod_;
  const std::size_t m = g.dom_.arity();
  if (offset + m > b.arity() || b.slice(offset, m) != g.dom_) {
    throw TypeError("cannot feed codomain factors " + std::to_string(offset) + ".." +
                    std::to_string(offset + m) + " of " + b.name() + " into " +
                    g.dom_.name() + " -> " + g.cod_.name());
  }
  const FinObject left = b.slice(0, offset);
  const FinObject right = b.slice(offset + m, b.arity() - offset - m);
  Relation out(f.dom_, left * g.cod_ * right);
  const std::size_t na = f.dom_.cardinality();
  const std::size_t nl = left.cardinality();
  const std::size_t nc = g.dom_.cardinality();
  const std::size_t nd = g.cod_.cardinality();
  const std::size_t nr = right.cardinality();
  for (std::size_t l = 0; l < nl; ++l)
    for (std::size_t d = 0; d < nd; ++d)
      for (std::size_t c = 0; c < nc; ++c) {
        if (!g.bits_.test(d * nc + c)) continue;
        for (std::size_t r = 0; r < nr; ++r)
          copy_row(out.bits_, (l * nd + d) * nr + r, f.bits_, (l * nc + c) * nr + r, na);
      }
  return out;
}

Relation exchange_codomain(const Relation& f, std::size_t k) {
  const FinObject& b = f.cod_;
  if (k + 1 >= b.arity()) throw TypeError("no codomain factors to exchange in " + b.name());
  const std::size_t nh = b.slice(0, k).cardinality();
  const std::size_t nx = b.factor(k);
  const std::size_t ny = b.factor(k + 1);
  const std::size_t nlo = b.slice(k + 2, b.arity() - k - 2).cardinality();
  std::vector<std::size_t> factors = b.factors();
  std::swap(factors[k], factors[k + 1]);
  Relation out(f.dom_, FinObject(factors));
  const std::size_t na = f.dom_.cardinality();
  for (std::size_t h = 0; h < nh; ++h)
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t lo = 0; lo < nlo; ++lo)
          copy_row(out.bits_, ((h * ny + y) * nx + x) * nlo + lo, f.bits_,
                   ((h * nx + x) * ny + y) * nlo + lo, na);
  return out;
}

Relation permute_factors(const FinObject& a, std::span<const std::size_t> order) {
  if (order.size() != a.arity()) throw TypeError("factor permutation has wrong length");
  std::vector<std::size_t> seen(a.arity(), 0);
  std::vector<std::size_t> target_factors;
  for (std::size_t k : order) {
    if (k >= a.arity() || seen[k]++) throw TypeError("invalid factor permutation");
    target_factors.push_back(a.factor(k));
  }
  FinObject b(target_factors);
  RelationBuilder out(a, b);
  std::vector<std::size_t> d(a.arity());
  for (std::size_t x = 0; x < a.cardinality(); ++x) {
    auto src = a.digits(x);
    for (std::size_t k = 0; k < order.size(); ++k) d[k] = src[order[k]];
    out.relate(x, b.flatten(d));
  }
  return std::move(out).build();
}

Relation swap(const FinObject& a, const FinObject& b) {
  FinObject ab = a * b;
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < b.arity(); ++k) order.push_back(a.arity() + k);
  for (std::size_t k = 0; k < a.arity(); ++k) order.push_back(k);
  return permute_factors(ab, order);
}

bool is_unitary(const Relation& f) {
  if (f.dom().cardinality() != f.cod().cardinality()) return false;
  Relation fd = dagger(f);
  return compose(fd, f) == Relation::identity(f.dom()) &&
         compose(f, fd) == Relation::identity(f.cod());
}

namespace {

// Splits the codomain of a cup I -> A x A into A.
FinObject cup_object(const Relation& eta) {
  const FinObject& c = eta.cod();
  if (!eta.is_state() || c.arity() % 2 != 0) {
    throw TypeError("a cup must be a state I -> A x A, got " + eta.dom().name() +
                    " -> " + c.name());
  }
  FinObject a = c.slice(0, c.arity() / 2);
  if (a * a != c) throw TypeError("cup codomain " + c.name() + " is not A x A");
  return a;
}

}  // namespace

bool satisfies_snake(const Relation& eta) {
  FinObject a;
  try {
    a = cup_object(eta);
  } catch (const TypeError&) {
    return false;
  }
  Relation id = Relation::identity(a);
  Relation left = compose(tensor(dagger(eta), id), tensor(id, eta));
  Relation right = compose(tensor(id, dagger(eta)), tensor(eta, id));
  return left == id && right == id;
}

Relation transpose_star(const Relation& f, const Relation& eta_a,
                        const Relation& eta_b) {
  const FinObject& a = f.dom();
  const FinObject& b = f.cod();
  if (cup_object(eta_a) != a || cup_object(eta_b) != b) {
    throw TypeError("cups do not match " + a.name() + " -> " + b.name());
  }
  if (!satisfies_snake(eta_a) || !satisfies_snake(eta_b)) {
    throw TypeError("cup fails the snake equations");
  }
  Relation id_a = Relation::identity(a);
  Relation id_b = Relation::identity(b);
  Relation open = tensor(eta_a, id_b);                    // B -> A x A x B
  Relation apply = tensor(tensor(id_a, f), id_b);         // -> A x B x B
  Relation close = tensor(id_a, dagger(eta_b));           // -> A
  return compose(close, compose(apply, open));
}

Relation conjugate_star(const Relation& f, const Relation& eta_a,
                        const Relation& eta_b) {
  return dagger(transpose_star(f, eta_a, eta_b));
}

std::string element_name(const FinObject& a, std::size_t index) {
  if (a.is_unit()) return "*";
  auto d = a.digits(index);
  auto one = [&](std::size_t k) {
    return std::to_string(a.factor(k) == 4 ? d[k] + 1 : d[k]);
  };
  if (a.arity() == 1) return one(0);
  std::string out = "(";
  for (std::size_t k = 0; k < a.arity(); ++k) {
    if (k) out += ',';
    out += one(k);
  }
  return out + ")";
}

std::string describe(const Relation& r) {
  std::ostringstream out;
  auto set_of = [&](const std::vector<std::size_t>& elems) {
    std::string s = "{";
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (i) s += ", ";
      s += element_name(r.cod(), elems[i]);
    }
    return s + "}";
  };
  for (std::size_t from = 0; from < r.dom().cardinality(); ++from) {
    auto img = r.image(from);
    if (img.empty()) continue;
    if (out.tellp() > 0) out << "; ";
    out << element_name(r.dom(), from) << " ~ " << set_of(img);
  }
  if (out.tellp() == 0) return "empty";
  return out.str();
}

}  // namespace toycat
