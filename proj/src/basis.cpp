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

#include "toycat/basis.hpp"

#include <algorithm>

namespace toycat {

namespace {

LawCheck compare(std::string law, const Relation& lhs, const Relation& rhs) {
  LawCheck c{std::move(law), true, std::nullopt};
  c.witness = first_difference(lhs, rhs);
  c.holds = !c.witness.has_value();
  return c;
}

void require_same_object(const BasisStructure& a, const BasisStructure& b) {
  if (a.object() != b.object()) {
    throw TypeError("basis structures live on different objects: " +
                    a.object().name() + " and " + b.object().name());
  }
}

void require_state_of(const BasisStructure& b, const Relation& psi) {
  if (!psi.is_state() || psi.cod() != b.object()) {
    throw TypeError("expected a state I -> " + b.object().name() + ", got " +
                    psi.dom().name() + " -> " + psi.cod().name());
  }
}

}  // namespace

std::optional<Witness> first_difference(const Relation& a, const Relation& b) {
  if (a.dom() != b.dom() || a.cod() != b.cod()) {
    throw TypeError("cannot compare " + a.dom().name() + " -> " + a.cod().name() +
                    " with " + b.dom().name() + " -> " + b.cod().name());
  }
  if (a == b) return std::nullopt;
  for (std::size_t row = 0; row < a.cod().cardinality(); ++row)
    for (std::size_t col = 0; col < a.dom().cardinality(); ++col)
      if (a.entry(row, col) != b.entry(row, col)) return Witness{row, col};
  return std::nullopt;
}

bool LawReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LawCheck& c) { return c.holds; });
}

const LawCheck& LawReport::at(const std::string& law) const {
  for (const auto& c : checks)
    if (c.law == law) return c;
  throw std::out_of_range("no law named " + law);
}

nlohmann::json to_json(const LawCheck& c) {
  nlohmann::json out;
  out["law"] = c.law;
  out["holds"] = c.holds;
  if (c.witness) {
    out["witness"] = {{"row", c.witness->row}, {"col", c.witness->col}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

nlohmann::json to_json(const LawReport& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : r.checks) out.push_back(to_json(c));
  return out;
}

LawReport verify_basis_structure(const Relation& delta, const Relation& epsilon) {
  const FinObject& a = delta.dom();
  if (delta.cod() != a * a) {
    throw TypeError("comultiplication must be A -> A x A, got " + a.name() +
                    " -> " + delta.cod().name());
  }
  if (epsilon.dom() != a || !epsilon.is_effect()) {
    throw TypeError("counit must be " + a.name() + " -> I, got " +
                    epsilon.dom().name() + " -> " + epsilon.cod().name());
  }
  const Relation id = Relation::identity(a);
  const Relation mu = dagger(delta);
  LawReport r;
  r.checks.push_back(compare("coassociativity", compose(tensor(delta, id), delta),
                             compose(tensor(id, delta), delta)));
  r.checks.push_back(
      compare("left_counit", compose(tensor(epsilon, id), delta), id));
  r.checks.push_back(
      compare("right_counit", compose(tensor(id, epsilon), delta), id));
  r.checks.push_back(
      compare("cocommutativity", compose(swap(a, a), delta), delta));
  r.checks.push_back(compare("isometry", compose(mu, delta), id));
  r.checks.push_back(compare("frobenius", compose(delta, mu),
                             compose(tensor(mu, id), tensor(id, delta))));
  return r;
}

BasisStructure::BasisStructure(Relation delta, Relation epsilon)
    : delta_(std::move(delta)),
      epsilon_(std::move(epsilon)),
      report_(verify_basis_structure(delta_, epsilon_)) {}

BasisStructure conjugate(const BasisStructure& b, const Relation& s) {
  if (!is_unitary(s) || s.dom() != b.object()) {
    throw TypeError("conjugation needs a unitary on " + b.object().name());
  }
  Relation sd = dagger(s);
  return BasisStructure(compose(tensor(s, s), compose(b.delta(), sd)),
                        compose(b.epsilon(), sd));
}

Relation lambda(const BasisStructure& b, const Relation& psi) {
  require_state_of(b, psi);
  return compose(b.multiplication(), tensor(psi, Relation::identity(b.object())));
}

bool is_classical(const BasisStructure& b, const Relation& phi) {
  require_state_of(b, phi);
  return compose(b.delta(), phi) == tensor(phi, phi) &&
         to_scalar(compose(b.epsilon(), phi)) == Scalar::identity;
}

bool is_unbiased(const BasisStructure& b, const Relation& psi) {
  return is_unitary(lambda(b, psi));
}

PointReport enumerate_points(const BasisStructure& b, std::size_t max_elements) {
  const FinObject& a = b.object();
  const std::size_t n = a.cardinality();
  if (n > max_elements || n >= 63) {
    throw LimitError("point enumeration on " + a.name() + " needs " +
                     std::to_string(n) + " elements, above the cap of " +
                     std::to_string(max_elements));
  }
  std::vector<std::vector<std::size_t>> supports;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) s.push_back(i);
    supports.push_back(std::move(s));
  }
  std::sort(supports.begin(), supports.end());
  PointReport report;
  for (const auto& s : supports) {
    Relation psi = Relation::state(a, s);
    if (is_classical(b, psi)) {
      report.classical.push_back(std::move(psi));
    } else if (is_unbiased(b, psi)) {
      report.unbiased.push_back(std::move(psi));
    } else {
      report.other.push_back(std::move(psi));
    }
  }
  return report;
}

nlohmann::json to_json(const ComplementarityReport& r) {
  return {{"classical_a_unbiased_for_b", r.classical_a_unbiased_for_b},
          {"classical_b_unbiased_for_a", r.classical_b_unbiased_for_a},
          {"unit_a_classical_for_b", r.unit_a_classical_for_b},
          {"unit_b_classical_for_a", r.unit_b_classical_for_a},
          {"complementary", r.holds()}};
}

ComplementarityReport check_complementary(const BasisStructure& a,
                                          const BasisStructure& b,
                                          std::size_t max_elements) {
  require_same_object(a, b);
  auto all_unbiased = [](const std::vector<Relation>& points,
                         const BasisStructure& s) {
    return std::all_of(points.begin(), points.end(),
                       [&](const Relation& p) { return is_unbiased(s, p); });
  };
  ComplementarityReport r;
  r.classical_a_unbiased_for_b =
      all_unbiased(enumerate_points(a, max_elements).classical, b);
  r.classical_b_unbiased_for_a =
      all_unbiased(enumerate_points(b, max_elements).classical, a);
  r.unit_a_classical_for_b = is_classical(b, a.unit());
  r.unit_b_classical_for_a = is_classical(a, b.unit());
  return r;
}

LawReport check_hopf(const BasisStructure& a, const BasisStructure& b,
                     const MorphismEquality& equal) {
  require_same_object(a, b);
  const FinObject& obj = a.object();
  const Relation id = Relation::identity(obj);
  const Relation middle = tensor(tensor(id, swap(obj, obj)), id);

  auto check = [&](std::string law, const Relation& lhs, const Relation& rhs) {
    if (!equal) return compare(std::move(law), lhs, rhs);
    LawCheck c{std::move(law), equal(lhs, rhs), std::nullopt};
    if (!c.holds) c.witness = first_difference(lhs, rhs);
    return c;
  };

  LawReport r;
  auto laws = [&](const BasisStructure& x, const BasisStructure& y,
                  const std::string& tag) {
    const Relation mu = x.multiplication();
    const Relation u = x.unit();
    r.checks.push_back(check(
        "bialgebra" + tag, compose(y.delta(), mu),
        compose(tensor(mu, mu), compose(middle, tensor(y.delta(), y.delta())))));
    r.checks.push_back(
        check("hopf" + tag, compose(mu, y.delta()), compose(u, y.epsilon())));
  };
  laws(a, b, "(a,b)");
  laws(b, a, "(b,a)");
  return r;
}

Cup eta(const BasisStructure& b) {
  return Cup{compose(b.delta(), b.unit()), !b.verified()};
}

}  // namespace toycat
