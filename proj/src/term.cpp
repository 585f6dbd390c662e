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

#include "toycat/term.hpp"

#include <cctype>

#include "toycat/permutation.hpp"
#include "toycat/serialize.hpp"

namespace toycat {

TermError::TermError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  auto same = [](const std::shared_ptr<const Term>& x, const std::shared_ptr<const Term>& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  return same(a.left, b.left) && same(a.right, b.right);
}

namespace {

struct Token {
  enum class Kind { ident, semi, cross, caret, lparen, rparen, end };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < src.size();) {
    const char c = src[i];
    if (c == '\n') {
      ++line, col = 1, ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col, ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word = src.substr(i, j - i);
      out.push_back({word == "x" ? Token::Kind::cross : Token::Kind::ident, word, line, col});
      col += j - i;
      i = j;
      continue;
    }
    Token::Kind kind;
    switch (c) {
      case ';': kind = Token::Kind::semi; break;
      case '^': kind = Token::Kind::caret; break;
      case '(': kind = Token::Kind::lparen; break;
      case ')': kind = Token::Kind::rparen; break;
      default:
        throw TermError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back({kind, std::string(1, c), line, col});
    ++col, ++i;
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Term parse() {
    Term t = term();
    if (peek().kind != Token::Kind::end) fail("expected end of input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw TermError(what + ", found " + found, t.line, t.column);
  }

  static Term binary(Term::Kind kind, Term l, Term r, const Token& op) {
    Term t;
    t.kind = kind;
    t.line = op.line;
    t.column = op.column;
    t.left = std::make_shared<const Term>(std::move(l));
    t.right = std::make_shared<const Term>(std::move(r));
    return t;
  }

  Term term() {
    Term t = tensor();
    while (peek().kind == Token::Kind::semi) {
      Token op = tokens_[pos_++];
      t = binary(Term::Kind::compose, std::move(t), tensor(), op);
    }
    return t;
  }

  Term tensor() {
    Term t = postfix();
    while (peek().kind == Token::Kind::cross) {
      Token op = tokens_[pos_++];
      t = binary(Term::Kind::tensor, std::move(t), postfix(), op);
    }
    return t;
  }

  Term postfix() {
    Term t = atom();
    while (peek().kind == Token::Kind::caret) {
      const Token& op = tokens_[pos_++];
      Term d;
      d.kind = Term::Kind::dagger;
      d.line = op.line;
      d.column = op.column;
      d.left = std::make_shared<const Term>(std::move(t));
      t = std::move(d);
    }
    return t;
  }

  Term atom() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::ident) {
      ++pos_;
      Term t;
      t.name = tok.text;
      t.line = tok.line;
      t.column = tok.column;
      return t;
    }
    if (tok.kind == Token::Kind::lparen) {
      ++pos_;
      Term t = term();
      if (peek().kind != Token::Kind::rparen) fail("expected ')'");
      ++pos_;
      return t;
    }
    fail("expected a name or '('");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(const Term& t) {
  switch (t.kind) {
    case Term::Kind::compose: return 1;
    case Term::Kind::tensor: return 2;
    default: return 3;
  }
}

std::string print_at(const Term& t, int min_prec) {
  std::string s;
  switch (t.kind) {
    case Term::Kind::name:
      return t.name;
    case Term::Kind::dagger:
      s = print_at(*t.left, 3) + "^";
      break;
    case Term::Kind::compose:
      s = print_at(*t.left, 1) + " ; " + print_at(*t.right, 2);
      break;
    case Term::Kind::tensor:
      s = print_at(*t.left, 2) + " x " + print_at(*t.right, 3);
      break;
  }
  return precedence(t) < min_prec ? "(" + s + ")" : s;
}

std::optional<Permutation> parse_sigma(const std::string& text, std::size_t n, bool one_based) {
  if (text == "e") return Permutation::identity(n);
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('_', pos);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(pos, end - pos);
    if (part.size() < 2) return std::nullopt;
    std::vector<std::size_t> cycle;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      cycle.push_back(static_cast<std::size_t>(c - '0'));
    }
    cycles.push_back(std::move(cycle));
    pos = end + 1;
  }
  try {
    Permutation p = Permutation::from_cycles(n, cycles, one_based);
    // Only the canonical spelling names a permutation.
    if (p.identifier(one_based) != "sigma_" + text) return std::nullopt;
    return p;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<FinObject> object_named(const std::string& name) {
  try {
    return parse_object_name(name);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

}  // namespace

Term parse_term(const std::string& source) { return Parser(lex(source)).parse(); }

std::string print_term(const Term& t) { return print_at(t, 0); }

SymbolTable::SymbolTable(ModelKind model) : model_(model) {
  auto add_structure = [&](const std::string& suffix, const BasisStructure& b) {
    symbols_.emplace("delta_" + suffix, b.delta());
    symbols_.emplace("eps_" + suffix, b.epsilon());
    symbols_.emplace("eta_" + suffix, eta(b).eta);
  };
  if (model == ModelKind::frel_qubit) {
    const QubitModel q = frel_qubit();
    add_structure("Z", q.z);
    add_structure("X", q.x);
    add_structure("Xp", q.x_prime);
    symbols_.emplace("z0", q.z0);
    symbols_.emplace("z1", q.z1);
    symbols_.emplace("x0", q.x0);
    symbols_.emplace("NOT", q.not_gate);
    symbols_.emplace("eta", eta(q.z).eta);
  } else {
    const SpekObservables obs = spek_observables();
    add_structure("Z", obs.z.family.front());
    add_structure("X", obs.x.family.front());
    add_structure("Y", obs.y.family.front());
    for (const auto& s : spek_states()) symbols_.emplace(s.name, s.state);
    symbols_.emplace("eta", eta(obs.z.family.front()).eta);
    symbols_.emplace("ghz", ghz());
    symbols_.emplace("delta_oplus", delta_oplus());
  }
}

std::optional<Relation> SymbolTable::lookup(const std::string& name) const {
  if (auto it = symbols_.find(name); it != symbols_.end()) return it->second;
  if (name.rfind("id_", 0) == 0) {
    if (auto a = object_named(name.substr(3))) return Relation::identity(*a);
    return std::nullopt;
  }
  if (name.rfind("swap_", 0) == 0) {
    const std::string rest = name.substr(5);
    const std::size_t cut = rest.find('_');
    if (cut == std::string::npos) return std::nullopt;
    auto a = object_named(rest.substr(0, cut));
    auto b = object_named(rest.substr(cut + 1));
    if (a && b) return swap(*a, *b);
    return std::nullopt;
  }
  if (name.rfind("sigma_", 0) == 0) {
    const bool spek = model_ == ModelKind::spek;
    const FinObject a = spek ? spek_object() : qubit_object();
    if (auto p = parse_sigma(name.substr(6), a.cardinality(), spek)) return p->relation(a);
  }
  return std::nullopt;
}

void SymbolTable::define(const std::string& name, Relation r) {
  symbols_.insert_or_assign(name, std::move(r));
}

std::vector<std::string> SymbolTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : symbols_) out.push_back(name);
  return out;
}

namespace {

std::string signature_text(const Signature& s) {
  return s.dom.name() + " -> " + s.cod.name();
}

}  // namespace

Signature typecheck(const Term& t, const SymbolTable& symbols) {
  switch (t.kind) {
    case Term::Kind::name: {
      auto r = symbols.lookup(t.name);
      if (!r) throw TermError("unknown name '" + t.name + "'", t.line, t.column);
      return {r->dom(), r->cod()};
    }
    case Term::Kind::dagger: {
      Signature s = typecheck(*t.left, symbols);
      return {s.cod, s.dom};
    }
    case Term::Kind::tensor: {
      Signature l = typecheck(*t.left, symbols);
      Signature r = typecheck(*t.right, symbols);
      return {l.dom * r.dom, l.cod * r.cod};
    }
    case Term::Kind::compose: {
      Signature l = typecheck(*t.left, symbols);
      Signature r = typecheck(*t.right, symbols);
      if (l.dom != r.cod) {
        throw TypeError(std::to_string(t.line) + ":" + std::to_string(t.column) +
                        ": cannot compose " + signature_text(l) + " after " +
                        signature_text(r) + " (" + r.cod.name() + " != " + l.dom.name() + ")");
      }
      return {r.dom, l.cod};
    }
  }
  return {};
}

Relation eval_term(const Term& t, const SymbolTable& symbols) {
  typecheck(t, symbols);
  switch (t.kind) {
    case Term::Kind::name:
      return *symbols.lookup(t.name);
    case Term::Kind::dagger:
      return dagger(eval_term(*t.left, symbols));
    case Term::Kind::tensor:
      return tensor(eval_term(*t.left, symbols), eval_term(*t.right, symbols));
    case Term::Kind::compose:
      return compose(eval_term(*t.left, symbols), eval_term(*t.right, symbols));
  }
  return Relation::identity(FinObject::unit());
}

Relation eval_source(const std::string& source, const SymbolTable& symbols) {
  return eval_term(parse_term(source), symbols);
}

Verdict assert_equal(const std::string& lhs, const std::string& rhs,
                     const SymbolTable& symbols) {
  const Term l = parse_term(lhs);
  const Term r = parse_term(rhs);
  const Signature sl = typecheck(l, symbols);
  const Signature sr = typecheck(r, symbols);
  if (sl.dom != sr.dom || sl.cod != sr.cod) {
    throw TypeError("signatures differ: " + signature_text(sl) + " vs " + signature_text(sr));
  }
  Verdict v{false, eval_term(l, symbols), eval_term(r, symbols), std::nullopt};
  v.witness = first_difference(v.lhs, v.rhs);
  v.equal = !v.witness;
  return v;
}

}  // namespace toycat
