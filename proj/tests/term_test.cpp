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
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "toycat/models.hpp"
#include "toycat/term.hpp"

namespace toycat {
namespace {

const FinObject IV{4};

std::string shape(const Term& t) {
  switch (t.kind) {
    case Term::Kind::name: return t.name;
    case Term::Kind::compose: return "C(" + shape(*t.left) + "," + shape(*t.right) + ")";
    case Term::Kind::tensor: return "T(" + shape(*t.left) + "," + shape(*t.right) + ")";
    case Term::Kind::dagger: return "D(" + shape(*t.left) + ")";
  }
  return "?";
}

TEST(Parse, Precedence) {
  EXPECT_EQ(shape(parse_term("a ; b x c^")), "C(a,T(b,D(c)))");
  EXPECT_EQ(shape(parse_term("a x b ; c")), "C(T(a,b),c)");
  EXPECT_EQ(shape(parse_term("a^^")), "D(D(a))");
  EXPECT_EQ(shape(parse_term("(a ; b)^")), "D(C(a,b))");
}

TEST(Parse, LeftAssociative) {
  EXPECT_EQ(shape(parse_term("a ; b ; c")), "C(C(a,b),c)");
  EXPECT_EQ(shape(parse_term("a x b x c")), "T(T(a,b),c)");
  EXPECT_EQ(shape(parse_term("a ; (b ; c)")), "C(a,C(b,c))");
}

TEST(Parse, TensorOperatorVersusIdentifiers) {
  EXPECT_EQ(shape(parse_term("x0 x x1")), "T(x0,x1)");
  EXPECT_EQ(shape(parse_term("id_IVxIV")), "id_IVxIV");
  EXPECT_EQ(shape(parse_term("x0x x x1")), "T(x0x,x1)");
  EXPECT_THROW(parse_term("x0x x1"), TermError);
  EXPECT_EQ(shape(parse_term("(x0)x(x1)")), "T(x0,x1)");
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_term("delta_Z ;\n  (eps_Z");
    FAIL();
  } catch (const TermError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
    EXPECT_EQ(std::string(e.what()), "2:9: expected ')', found end of input");
  }
  try {
    parse_term("z0 x x0 ;; z1");
    FAIL();
  } catch (const TermError& e) {
    EXPECT_EQ(e.column(), 10u);
  }
  EXPECT_THROW(parse_term(""), TermError);
  EXPECT_THROW(parse_term("a b"), TermError);
  EXPECT_THROW(parse_term("^a"), TermError);
  EXPECT_THROW(parse_term("a ; $"), TermError);
}

TEST(Print, MinimalParentheses) {
  EXPECT_EQ(print_term(parse_term("((a ; b)) ; c")), "a ; b ; c");
  EXPECT_EQ(print_term(parse_term("a ; (b ; c)")), "a ; (b ; c)");
  EXPECT_EQ(print_term(parse_term("(a x b)^")), "(a x b)^");
  EXPECT_EQ(print_term(parse_term("(a ; b) x c")), "(a ; b) x c");
  EXPECT_EQ(print_term(parse_term("a x (b x c)")), "a x (b x c)");
}

Term random_term(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> names{"z0", "x1", "delta_Z", "eps_Z", "id_IV"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
  Term t;
  switch (pick(rng)) {
    case 0:
      t.name = names[rng() % names.size()];
      return t;
    case 1:
      t.kind = Term::Kind::dagger;
      t.left = std::make_shared<Term>(random_term(rng, depth - 1));
      return t;
    default:
      t.kind = rng() % 2 ? Term::Kind::compose : Term::Kind::tensor;
      t.left = std::make_shared<Term>(random_term(rng, depth - 1));
      t.right = std::make_shared<Term>(random_term(rng, depth - 1));
      return t;
  }
}

TEST(Print, RoundTripsRandomTrees) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const Term t = random_term(rng, 5);
    const std::string s = print_term(t);
    ASSERT_TRUE(parse_term(s) == t) << s;
    ASSERT_EQ(print_term(parse_term(s)), s);
  }
}

TEST(Eval, SpekExamples) {
  const SymbolTable sym(ModelKind::spek);
  const SpekGenerators g = spek_generators();
  EXPECT_EQ(eval_source("delta_Z ; eps_Z^", sym), compose(g.delta_z, dagger(g.eps_z)));
  EXPECT_EQ(eval_source("eta", sym), compose(g.delta_z, dagger(g.eps_z)));
  EXPECT_EQ(eval_source("delta_Z x id_IV ; eta", sym), ghz());
  EXPECT_EQ(eval_source("ghz", sym), ghz());
  EXPECT_EQ(eval_source("sigma_12 ; sigma_12", sym), Relation::identity(IV));
  EXPECT_EQ(eval_source("sigma_123", sym),
            Permutation::from_cycles(4, {{1, 2, 3}}, true).relation(IV));
  EXPECT_EQ(eval_source("swap_IV_IV ; swap_IV_IV", sym), Relation::identity(IV * IV));
  EXPECT_EQ(eval_source("eps_Z ; z0", sym), scalar(Scalar::identity));
  EXPECT_EQ(eval_source("delta_oplus", sym), delta_oplus());
}

TEST(Eval, QubitExamples) {
  const SymbolTable sym(ModelKind::frel_qubit);
  const QubitModel q = frel_qubit();
  EXPECT_EQ(eval_source("NOT ; z0", sym), q.z1);
  EXPECT_EQ(eval_source("delta_X", sym), q.x.delta());
  EXPECT_EQ(eval_source("eps_Xp^", sym), q.x_prime.unit());
  EXPECT_EQ(eval_source("sigma_01", sym), q.not_gate);
  EXPECT_THROW(eval_source("ghz", sym), TermError);
}

TEST(Eval, ComposeMatchesOracle) {
  const SymbolTable sym(ModelKind::spek);
  const Relation lhs = eval_source("delta_Z^ ; (z0 x x1)", sym);
  const oracle::Rel want = oracle::compose(
      oracle::dagger(oracle::from(spek_generators().delta_z)),
      oracle::tensor(oracle::from(spek_state("z0")), oracle::from(spek_state("x1"))));
  EXPECT_EQ(oracle::from(lhs), want);
}

TEST(Typecheck, MismatchNamesObjectsAndPosition) {
  const SymbolTable sym(ModelKind::spek);
  try {
    eval_source("eps_Z ; delta_Z", sym);
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(std::string(e.what()),
              "1:7: cannot compose IV -> I after IV -> IVxIV (IVxIV != IV)");
  }
  const Signature s = typecheck(parse_term("delta_Z x z0 ; eps_Z^"), sym);
  EXPECT_EQ(s.dom, FinObject::unit());
  EXPECT_EQ(s.cod, IV * IV * IV);
}

TEST(Typecheck, UnknownNames) {
  const SymbolTable sym(ModelKind::spek);
  try {
    eval_source("z0 x foo", sym);
    FAIL();
  } catch (const TermError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
  // Only the canonical spelling of a permutation resolves.
  EXPECT_THROW(eval_source("sigma_21", sym), TermError);
  EXPECT_THROW(eval_source("id_IX", sym), TermError);
}

TEST(Symbols, DefineAndList) {
  SymbolTable sym(ModelKind::spek);
  const Relation full = Relation::full(IV, IV);
  sym.define("all", full);
  EXPECT_EQ(eval_source("all ; z0", sym), Relation::state(IV, {0, 1, 2, 3}));
  const auto names = sym.names();
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_NE(std::find(names.begin(), names.end(), "all"), names.end());
  for (const char* n : {"delta_Z", "eps_Z", "z0", "y1", "eta", "ghz", "delta_oplus"}) {
    EXPECT_TRUE(sym.lookup(n).has_value()) << n;
  }
}

TEST(Assert, Verdicts) {
  const SymbolTable sym(ModelKind::spek);
  EXPECT_TRUE(assert_equal("sigma_12 ; sigma_12", "id_IV", sym).equal);
  // Frobenius for delta_Z.
  EXPECT_TRUE(
      assert_equal("delta_Z ; delta_Z^", "delta_Z^ x id_IV ; (id_IV x delta_Z)", sym).equal);
  const Verdict v = assert_equal("z0", "z1", sym);
  EXPECT_FALSE(v.equal);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->row, 0u);
  EXPECT_EQ(v.witness->col, 0u);
  EXPECT_THROW(assert_equal("z0", "id_IV", sym), TypeError);
}

}  // namespace
}  // namespace toycat
