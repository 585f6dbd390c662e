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

#include "toycat/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace toycat {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v >= images_.size() || seen[v]) throw TypeError("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(
    std::size_t n, const std::vector<std::vector<std::size_t>>& cycles,
    bool one_based) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  const std::size_t shift = one_based ? 1 : 0;
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      std::size_t from = c[k] - shift;
      std::size_t to = c[(k + 1) % c.size()] - shift;
      if (from >= n || to >= n) throw TypeError("cycle element out of range");
      im[from] = to;
    }
  }
  return Permutation(std::move(im));
}

std::vector<Permutation> Permutation::all(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::after(const Permutation& other) const {
  if (other.size() != size()) throw TypeError("permutation sizes differ");
  std::vector<std::size_t> im(size());
  for (std::size_t i = 0; i < size(); ++i) im[i] = images_[other.images_[i]];
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

namespace {

std::vector<std::vector<std::size_t>> cycle_list(const std::vector<std::size_t>& im) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(im.size(), false);
  for (std::size_t start = 0; start < im.size(); ++start) {
    if (seen[start] || im[start] == start) continue;
    std::vector<std::size_t> c;
    for (std::size_t i = start; !seen[i]; i = im[i]) {
      seen[i] = true;
      c.push_back(i);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::string Permutation::cycles(bool one_based) const {
  auto cs = cycle_list(images_);
  if (cs.empty()) return "e";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t i : c) out += std::to_string(i + (one_based ? 1 : 0));
    out += ')';
  }
  return out;
}

std::string Permutation::identifier(bool one_based) const {
  auto cs = cycle_list(images_);
  if (cs.empty()) return "sigma_e";
  std::string out = "sigma";
  for (const auto& c : cs) {
    out += '_';
    for (std::size_t i : c) out += std::to_string(i + (one_based ? 1 : 0));
  }
  return out;
}

Relation Permutation::relation(const FinObject& a) const {
  if (a.cardinality() != size()) {
    throw TypeError("permutation of " + std::to_string(size()) +
                    " elements cannot act on " + a.name());
  }
  return Relation::graph(a, a, images_);
}

bool as_permutation(const Relation& r, Permutation& out) {
  if (r.dom() != r.cod()) return false;
  const std::size_t n = r.dom().cardinality();
  std::vector<std::size_t> im(n);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto img = r.image(i);
    if (img.size() != 1 || hit[img[0]]) return false;
    hit[img[0]] = true;
    im[i] = img[0];
  }
  out = Permutation(std::move(im));
  return true;
}

}  // namespace toycat
