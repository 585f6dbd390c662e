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
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toycat/basis.hpp"
#include "toycat/models.hpp"
#include "toycat/relation.hpp"

namespace toycat {

// A syntax error or an unknown identifier, located at a 1-based line and
// column of the source text.
class TermError : public std::runtime_error {
 public:
  TermError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Grammar, loosest first:
//   term   := tensor (";" tensor)*      a ; b means a after b
//   tensor := postfix ("x" postfix)*
//   postfix:= atom "^"*
//   atom   := identifier | "(" term ")"
// Both binary operators associate to the left. A bare "x" is the tensor
// operator; identifiers such as x0 or IVxIV are unaffected.
struct Term {
  enum class Kind { name, compose, tensor, dagger };

  Kind kind = Kind::name;
  std::string name;
  std::shared_ptr<const Term> left;   // also the operand of dagger
  std::shared_ptr<const Term> right;
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const Term& a, const Term& b);
};

Term parse_term(const std::string& source);

// Prints with the fewest parentheses that parse back to the same tree.
std::string print_term(const Term& t);

// Named morphisms of one model. Besides the fixed names, id_<obj>,
// swap_<obj>_<obj> and sigma_<cycles> are resolved on demand.
class SymbolTable {
 public:
  explicit SymbolTable(ModelKind model);

  ModelKind model() const { return model_; }
  std::optional<Relation> lookup(const std::string& name) const;
  // Adds or replaces a user name.
  void define(const std::string& name, Relation r);
  // Fixed and user names, sorted.
  std::vector<std::string> names() const;
  const std::map<std::string, Relation>& fixed() const { return symbols_; }

 private:
  ModelKind model_;
  std::map<std::string, Relation> symbols_;
};

struct Signature {
  FinObject dom;
  FinObject cod;
};

// Throws TermError for unknown names and TypeError, naming both objects and
// the offending position, for mismatched compositions.
Signature typecheck(const Term& t, const SymbolTable& symbols);

Relation eval_term(const Term& t, const SymbolTable& symbols);

// Parses, type-checks and evaluates.
Relation eval_source(const std::string& source, const SymbolTable& symbols);

struct Verdict {
  bool equal = false;
  Relation lhs;
  Relation rhs;
  std::optional<Witness> witness;
};

// Exact equality of two terms. Throws TypeError when the signatures differ.
Verdict assert_equal(const std::string& lhs, const std::string& rhs,
                     const SymbolTable& symbols);

}  // namespace toycat
