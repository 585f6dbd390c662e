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

// toycat: command-line front end.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 for usage,
// input or type errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toycat/basis.hpp"
#include "toycat/closure.hpp"
#include "toycat/models.hpp"
#include "toycat/permutation.hpp"
#include "toycat/protocols.hpp"
#include "toycat/serialize.hpp"
#include "toycat/suite.hpp"
#include "toycat/term.hpp"

namespace {

using nlohmann::json;
using namespace toycat;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Output {
  bool text = false;

  int emit(const json& j, const std::string& text_form, bool ok) const {
    if (text) {
      std::cout << text_form;
      if (!text_form.empty() && text_form.back() != '\n') std::cout << "\n";
    } else {
      std::cout << j.dump(2) << "\n";
    }
    return ok ? kPass : kFail;
  }
};

json relation_json(const Relation& r) {
  json j = relation_to_json(r);
  j["text"] = describe(r);
  if (r.empty()) j["empty"] = true;  // an impossible branch
  return j;
}

std::string relation_text(const Relation& r) {
  return r.dom().name() + " -> " + r.cod().name() + " :: " + describe(r);
}

// Basis structures by name: Z, X, Xp on the qubit; Z, X, Y (or Z0..Y3 for the
// other family members) on Spek.
BasisStructure basis_named(ModelKind model, const std::string& name) {
  if (model == ModelKind::frel_qubit) {
    const QubitModel q = frel_qubit();
    if (name == "Z") return q.z;
    if (name == "X") return q.x;
    if (name == "Xp") return q.x_prime;
    throw TypeError("unknown qubit basis '" + name + "' (expected Z, X or Xp)");
  }
  if (name.empty() || name.size() > 2 || std::string("XYZ").find(name[0]) == std::string::npos) {
    throw TypeError("unknown spek basis '" + name + "' (expected Z, X, Y or Z0..Y3)");
  }
  std::size_t index = 0;
  if (name.size() == 2) {
    if (name[1] < '0' || name[1] > '3') throw TypeError("family index must be 0..3 in '" + name + "'");
    index = static_cast<std::size_t>(name[1] - '0');
  }
  return spek_observables()[name[0]].family.at(index);
}

SymbolTable symbols_for(ModelKind model, const std::vector<std::string>& defines) {
  SymbolTable table(model);
  for (const auto& d : defines) {
    const std::size_t eq = d.find('=');
    if (eq == std::string::npos || eq == 0) throw TypeError("--define expects name=file.json, got '" + d + "'");
    table.define(d.substr(0, eq), read_relation_file(d.substr(eq + 1)));
  }
  return table;
}

// A generator file is an array of {"name", "relation"} records, or an object
// holding such an array under "generators" (a store file qualifies).
std::vector<Generator> read_generators(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("generators")) j = j["generators"];
  if (!j.is_array()) throw TypeError(path + ": expected an array of generators");
  std::vector<Generator> out;
  for (const auto& g : j) {
    if (!g.is_object() || !g.contains("name") || !g.contains("relation") || !g["name"].is_string()) {
      throw TypeError(path + ": each generator needs \"name\" and \"relation\"");
    }
    out.push_back({g["name"].get<std::string>(), relation_from_json(g["relation"])});
  }
  return out;
}

std::string law_text(const LawReport& r) {
  std::ostringstream out;
  for (const auto& c : r.checks) {
    out << (c.holds ? "holds  " : "FAILS  ") << c.law;
    if (c.witness) out << "  (row " << c.witness->row << ", col " << c.witness->col << ")";
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> state_names(ModelKind model, const std::vector<Relation>& states) {
  std::vector<std::string> out;
  for (const auto& s : states) {
    if (model == ModelKind::spek) {
      out.push_back(spek_state_name(s));
      continue;
    }
    const QubitModel q = frel_qubit();
    out.push_back(s == q.z0 ? "z0" : s == q.z1 ? "z1" : s == q.x0 ? "x0" : describe(s));
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string perm_label(const Relation& r, bool one_based) {
  Permutation p = Permutation::identity(r.dom().cardinality());
  return as_permutation(r, p) ? p.cycles(one_based) : describe(r);
}

struct ProtocolSetup {
  Relation eta;
  std::vector<Relation> unitaries;
  BranchSearch search;
};

ProtocolSetup protocol_setup(ModelKind model, const std::string& pool_name) {
  const BasisStructure z = basis_named(model, "Z");
  const BasisStructure x = basis_named(model, "X");
  std::vector<Relation> pool;
  if (pool_name == "s4") {
    if (model != ModelKind::spek) throw TypeError("--pool s4 is only available for spek");
    pool = spek_generators().perm_relations;
  } else if (pool_name == "phase-z") {
    pool = phase_unitaries(z).unitaries;
  } else if (pool_name == "phase") {
    std::vector<Relation> gens = phase_unitaries(z).unitaries;
    for (auto& u : phase_unitaries(x).unitaries) gens.push_back(std::move(u));
    pool = composition_closure(gens);
  } else {
    throw TypeError("unknown pool '" + pool_name + "' (expected phase, phase-z or s4)");
  }
  ProtocolSetup s{eta(z).eta, {}, find_branch_unitaries(eta(z).eta, pool)};
  if (s.search.unitaries) s.unitaries = *s.search.unitaries;
  return s;
}

json dump_models(ModelKind model) {
  const SymbolTable table(model);
  json out = json::object();
  for (const auto& [name, r] : table.fixed()) out[name] = relation_to_json(r);
  if (model == ModelKind::spek) {
    for (const auto& g : spek_generators().perms) out[g.identifier(true)] = relation_to_json(g.relation(spek_object()));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Toy categorical quantum mechanics over finite relations"};
  app.require_subcommand(1);
  Output out;
  std::string model_name = "spek";
  std::vector<std::string> defines;
  // Global flags may also follow the subcommand.
  app.fallthrough();
  bool json_output = false;
  auto* text_flag = app.add_flag("--text", out.text, "Human-readable output instead of JSON");
  app.add_flag("--json", json_output, "JSON output (the default)")->excludes(text_flag);

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", model_name, "frel-qubit or spek")->capture_default_str();
  };
  std::function<int()> action;

  // verify
  auto* verify = app.add_subcommand("verify", "Check the basis-structure laws");
  std::string basis = "Z", delta_file, epsilon_file;
  add_model(verify);
  verify->add_option("--basis", basis, "Named basis structure")->capture_default_str();
  verify->add_option("--delta", delta_file, "Comultiplication relation file");
  verify->add_option("--epsilon", epsilon_file, "Counit relation file");
  verify->callback([&] {
    action = [&] {
      LawReport r;
      if (!delta_file.empty() || !epsilon_file.empty()) {
        if (delta_file.empty() || epsilon_file.empty()) throw TypeError("--delta and --epsilon go together");
        r = verify_basis_structure(read_relation_file(delta_file), read_relation_file(epsilon_file));
      } else {
        r = basis_named(parse_model_name(model_name), basis).report();
      }
      return out.emit(to_json(r), law_text(r), r.all_hold());
    };
  });

  // points
  auto* points = app.add_subcommand("points", "Classify the points of a basis structure");
  add_model(points);
  points->add_option("--basis", basis, "Named basis structure")->capture_default_str();
  points->callback([&] {
    action = [&] {
      const ModelKind m = parse_model_name(model_name);
      const PointReport p = enumerate_points(basis_named(m, basis));
      json j{{"classical", state_names(m, p.classical)},
             {"unbiased", state_names(m, p.unbiased)},
             {"other", p.other.size()}};
      std::string t = "classical: " + join(state_names(m, p.classical)) +
                      "\nunbiased:  " + join(state_names(m, p.unbiased)) +
                      "\nother:     " + std::to_string(p.other.size()) + " states\n";
      return out.emit(j, t, true);
    };
  });

  // complementary / hopf
  std::string first = "Z", second = "X";
  auto* comp = app.add_subcommand("complementary", "Check complementarity by enumerating points");
  add_model(comp);
  comp->add_option("first", first, "Basis structure")->capture_default_str();
  comp->add_option("second", second, "Basis structure")->capture_default_str();
  comp->callback([&] {
    action = [&] {
      const ModelKind m = parse_model_name(model_name);
      const ComplementarityReport r = check_complementary(basis_named(m, first), basis_named(m, second));
      json j = to_json(r);
      std::string t = std::string(r.holds() ? "complementary" : "not complementary") + "\n" +
                      j.dump(2) + "\n";
      return out.emit(j, t, r.holds());
    };
  });
  auto* hopf = app.add_subcommand("hopf", "Check the bialgebra and trivial-antipode laws");
  add_model(hopf);
  hopf->add_option("first", first, "Basis structure")->capture_default_str();
  hopf->add_option("second", second, "Basis structure")->capture_default_str();
  hopf->callback([&] {
    action = [&] {
      const ModelKind m = parse_model_name(model_name);
      const LawReport r = check_hopf(basis_named(m, first), basis_named(m, second));
      return out.emit(to_json(r), law_text(r), r.all_hold());
    };
  });

  // close
  auto* close = app.add_subcommand("close", "Generate the compositional closure");
  ClosureConfig config = default_closure_config();
  std::string store_out, generators_file;
  close->add_option("--max-arity", config.max_arity, "Largest dom + cod arity stored")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  close->add_option("--max-morphisms", config.max_morphisms, "Store size budget")->capture_default_str();
  close->add_option("--max-rounds", config.max_rounds, "Largest word cost explored")->capture_default_str();
  close->add_option("--workers", config.workers, "Worker threads")->capture_default_str();
  close->add_flag("--exhaustive", config.exhaustive, "Also compose every pair of stored morphisms");
  close->add_option("--generators", generators_file, "Generator file (default: Spek)");
  close->add_option("--out", store_out, "Write the store to this file");
  close->callback([&] {
    action = [&] {
      const auto gens = generators_file.empty() ? spek_generator_list() : read_generators(generators_file);
      const MorphismStore store = generate_closure(gens, config);
      if (!store_out.empty()) {
        std::ofstream file(store_out);
        if (!file) throw std::runtime_error("cannot write " + store_out);
        file << store.to_json().dump() << "\n";
      }
      json j{{"morphisms", store.size()}, {"fixpoint", store.fixpoint()}, {"max_arity", store.max_arity()}};
      std::string t = std::to_string(store.size()) + " morphisms, " +
                      (store.fixpoint() ? "fixpoint reached" : "NOT at fixpoint") + "\n";
      return out.emit(j, t, store.fixpoint());
    };
  });

  // contains
  auto* cont = app.add_subcommand("contains", "Look a relation up in a store");
  std::string store_file, rel_file, term_src;
  cont->add_option("--store", store_file, "Store file")->required();
  cont->add_option("--rel", rel_file, "Relation file");
  cont->add_option("--term", term_src, "Term over the Spek names");
  cont->add_option("--define", defines, "Extra name=relation.json for terms");
  cont->callback([&] {
    action = [&] {
      if (rel_file.empty() == term_src.empty()) throw TypeError("give exactly one of --rel and --term");
      const MorphismStore store = MorphismStore::from_json(read_json_file(store_file));
      const Relation r = rel_file.empty() ? eval_source(term_src, symbols_for(ModelKind::spek, defines))
                                          : read_relation_file(rel_file);
      const Membership m = contains(store, r);
      json j{{"answer", to_string(m.answer)}};
      j["word"] = m.word ? json(*m.word) : json();
      if (!m.reason.empty()) j["reason"] = m.reason;
      std::string t = to_string(m.answer) + (m.word ? ": " + *m.word : "") +
                      (m.reason.empty() ? "" : " (" + m.reason + ")") + "\n";
      return out.emit(j, t, m.answer == Membership::Answer::member);
    };
  });

  // census
  auto* cens = app.add_subcommand("census", "Count stored morphisms per shape");
  std::string census_object;
  cens->add_option("--store", store_file, "Store file")->required();
  cens->add_option("--object", census_object, "List the states of this object with their orbits");
  cens->callback([&] {
    action = [&] {
      const MorphismStore store = MorphismStore::from_json(read_json_file(store_file));
      if (census_object.empty()) {
        json rows = json::array();
        std::ostringstream t;
        for (const auto& [shape, n] : census(store)) {
          rows.push_back({{"dom", shape.first.name()}, {"cod", shape.second.name()}, {"count", n}});
          t << shape.first.name() << " -> " << shape.second.name() << "  " << n << "\n";
        }
        t << "total " << store.size() << "\n";
        return out.emit(json{{"shapes", rows}, {"total", store.size()}}, t.str(), true);
      }
      const StateCensus sc = state_census(store, parse_object_name(census_object));
      json orbits = json::array();
      std::ostringstream t;
      t << sc.states.size() << " states of " << census_object << " in " << sc.orbits.size() << " orbits\n";
      for (const auto& o : sc.orbits) {
        orbits.push_back({{"representative", relation_json(o.representative)},
                          {"size", o.size},
                          {"support", o.support}});
        t << "  " << o.size << " x support " << o.support << ": " << describe(o.representative) << "\n";
      }
      return out.emit(json{{"count", sc.states.size()}, {"orbits", orbits}}, t.str(), true);
    };
  });

  // protocol
  auto* proto = app.add_subcommand("protocol", "Teleportation and dense coding certificates");
  proto->require_subcommand(1);
  std::string pool = "phase";
  for (const char* which : {"teleport", "densecode"}) {
    auto* sub = proto->add_subcommand(which, which == std::string("teleport") ? "Teleportation certificate"
                                                                               : "Dense-coding decode table");
    add_model(sub);
    sub->add_option("--pool", pool, "Candidate unitaries: phase, phase-z or s4")->capture_default_str();
    sub->callback([&, which] {
      action = [&, which] {
        const ModelKind m = parse_model_name(model_name);
        const ProtocolSetup s = protocol_setup(m, pool);
        if (!s.search.unitaries) {
          json j{{"found", false}, {"coverage", s.search.coverage}, {"total", s.search.total}};
          return out.emit(j, "no branch unitaries: coverage " + std::to_string(s.search.coverage) + " of " +
                                 std::to_string(s.search.total) + "\n", false);
        }
        const bool one_based = m == ModelKind::spek;
        std::vector<std::string> labels;
        for (const auto& u : s.unitaries) labels.push_back(perm_label(u, one_based));
        if (which == std::string("teleport")) {
          const TeleportationCertificate c = check_teleportation(s.eta, s.unitaries);
          std::ostringstream t;
          t << "teleportation " << (c.valid() ? "valid" : "INVALID") << ", " << c.branches.size()
            << " branches: " << join(labels) << "\n";
          for (std::size_t i = 0; i < c.branches.size(); ++i) {
            t << "  branch " << i << " (" << labels[i] << "): correct with " << labels[i]
              << (c.branches[i].corrected ? "" : "  FAILS") << "\n";
          }
          return out.emit(to_json(c), t.str(), c.valid());
        }
        const DenseCoding d = check_dense_coding(s.eta, s.unitaries);
        std::ostringstream t;
        t << "dense coding " << (d.ok ? "ok" : "FAILS") << " with " << join(labels) << "\n";
        for (const auto& row : d.table) {
          t << " ";
          for (Scalar v : row) t << " " << (v == Scalar::identity ? 1 : 0);
          t << "\n";
        }
        json j = to_json(d);
        j["unitaries"] = labels;
        return out.emit(j, t.str(), d.ok);
      };
    });
  }

  // eval / assert
  auto* ev = app.add_subcommand("eval", "Evaluate a term");
  add_model(ev);
  ev->add_option("term", term_src, "Term, e.g. \"delta_Z ; eps_Z^\"")->required();
  ev->add_option("--define", defines, "Extra name=relation.json");
  ev->callback([&] {
    action = [&] {
      const Relation r = eval_source(term_src, symbols_for(parse_model_name(model_name), defines));
      return out.emit(relation_json(r), relation_text(r), true);
    };
  });
  auto* as = app.add_subcommand("assert", "Check that two terms denote the same relation");
  std::string lhs, rhs;
  add_model(as);
  as->add_option("lhs", lhs, "Left term")->required();
  as->add_option("rhs", rhs, "Right term")->required();
  as->add_option("--define", defines, "Extra name=relation.json");
  as->callback([&] {
    action = [&] {
      const Verdict v = assert_equal(lhs, rhs, symbols_for(parse_model_name(model_name), defines));
      json j{{"equal", v.equal}};
      j["witness"] = v.witness ? json{{"row", v.witness->row}, {"col", v.witness->col}} : json();
      std::string t = v.equal ? "equal\n"
                              : "differ at row " + std::to_string(v.witness->row) + ", col " +
                                    std::to_string(v.witness->col) + "\n  lhs: " + describe(v.lhs) +
                                    "\n  rhs: " + describe(v.rhs) + "\n";
      return out.emit(j, t, v.equal);
    };
  });

  // bloch
  auto* bl = app.add_subcommand("bloch", "Bloch-axis labels of the named states");
  add_model(bl);
  bl->callback([&] {
    action = [&] {
      json rows = json::array();
      std::ostringstream t;
      t << "state  axis  classical  unbiased\n";
      for (const auto& r : bloch_table(parse_model_name(model_name))) {
        rows.push_back({{"state", r.state},
                        {"axis", r.axis},
                        {"classical_for", r.classical_for},
                        {"unbiased_for", r.unbiased_for},
                        {"absent", r.absent}});
        char line[96];
        std::snprintf(line, sizeof line, "%-6s %-5s %-10s %s\n", r.state.c_str(), r.axis.c_str(),
                      r.absent ? "-" : join(r.classical_for, ",").c_str(),
                      r.absent ? "-" : join(r.unbiased_for, ",").c_str());
        t << line;
      }
      return out.emit(rows, t.str(), true);
    };
  });

  // suite
  auto* su = app.add_subcommand("suite", "Run the verification battery");
  std::string suite_name = "all";
  bool inject = false;
  SuiteOptions suite_options;
  su->add_option("name", suite_name, "qubit, spek or all")->capture_default_str();
  su->add_option("--max-arity", suite_options.closure.max_arity, "Closure cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  su->add_flag("--inject-delta-oplus", inject, "Add delta_oplus as a generator (negative control)");
  su->add_option("--generators", generators_file, "Extra generator file");
  su->callback([&] {
    action = [&] {
      if (inject) suite_options.extra_generators.push_back({"delta_oplus", delta_oplus()});
      if (!generators_file.empty()) {
        for (auto& g : read_generators(generators_file)) suite_options.extra_generators.push_back(std::move(g));
      }
      const SuiteReport r = run_suite(suite_name, suite_options);
      return out.emit(r.to_json(), r.to_text(), r.passed());
    };
  });

  // models dump
  auto* models = app.add_subcommand("models", "Named data of the models");
  models->require_subcommand(1);
  auto* dump = models->add_subcommand("dump", "Print every named relation");
  std::string format = "json";
  add_model(dump);
  dump->add_option("--format", format, "json or text")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
  dump->callback([&] {
    action = [&] {
      const ModelKind m = parse_model_name(model_name);
      json j = dump_models(m);
      if (format == "json" && !out.text) {
        std::cout << j.dump(2) << "\n";
        return kPass;
      }
      for (const auto& [name, r] : j.items()) std::cout << name << ": " << relation_text(relation_from_json(r)) << "\n";
      return kPass;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  return action ? action() : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const toycat::TermError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const toycat::TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
  } catch (const toycat::ProtocolError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
