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

#include "toycat/suite.hpp"

#include <algorithm>
#include <sstream>

#include "toycat/basis.hpp"
#include "toycat/models.hpp"
#include "toycat/permutation.hpp"
#include "toycat/protocols.hpp"
#include "toycat/term.hpp"

namespace toycat {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    failed += !c.passed;
    list.push_back({{"group", c.group}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return {{"suite", name},
          {"passed", passed()},
          {"total", checks.size()},
          {"failed", failed},
          {"checks", std::move(list)}};
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    failed += !c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.group << ": " << c.name;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << "\n";
  }
  out << name << ": " << checks.size() - failed << "/" << checks.size() << " passed\n";
  return out.str();
}

namespace {

class Runner {
 public:
  explicit Runner(SuiteReport& report) : report_(report) {}

  void group(std::string g) { group_ = std::move(g); }

  void check(const std::string& name, bool passed, std::string detail = {}) {
    report_.checks.push_back({group_, name, passed, std::move(detail)});
  }

  // Runs body, turning an exception into a failed check.
  template <typename F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }

 private:
  SuiteReport& report_;
  std::string group_;
};

std::vector<std::string> names_of(const std::vector<Relation>& states) {
  std::vector<std::string> out;
  for (const auto& s : states) out.push_back(spek_state_name(s));
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

std::vector<std::string> perm_names(const std::vector<Relation>& rs, bool one_based) {
  std::vector<std::string> out;
  for (const auto& r : rs) {
    Permutation p = Permutation::identity(r.dom().cardinality());
    out.push_back(as_permutation(r, p) ? p.cycles(one_based) : describe(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Relation perm(const std::string& name) { return *SymbolTable(ModelKind::spek).lookup(name); }

void qubit_checks(Runner& run) {
  const QubitModel q = frel_qubit();
  const SymbolTable symbols(ModelKind::frel_qubit);
  const FinObject ii = qubit_object();

  run.group("relcore");
  run.check("eps_Z o z0 is the identity scalar", compose(q.z.epsilon(), q.z0) == scalar(Scalar::identity));
  run.check("z0^ o z1 is the empty scalar", compose(dagger(q.z0), q.z1) == scalar(Scalar::empty));

  run.group("models");
  run.check("delta_Z columns (1,0,0,0) and (0,0,0,1)",
            q.z.delta() == Relation::from_pairs(ii, ii * ii, {{0, 0}, {1, 3}}));
  run.check("delta_X columns (1,0,0,1) and (0,1,1,0)",
            q.x.delta() == Relation::from_pairs(ii, ii * ii, {{0, 0}, {0, 3}, {1, 1}, {1, 2}}));
  {
    const PointReport x = enumerate_points(q.x), xp = enumerate_points(q.x_prime);
    run.check("X' has the classical and unbiased points of X",
              x.classical == xp.classical && x.unbiased == xp.unbiased);
  }
  {
    const auto rows = bloch_table(ModelKind::frel_qubit);
    auto it = std::find_if(rows.begin(), rows.end(), [](const BlochRow& r) { return r.state == "x0"; });
    run.check("bloch: x0 classical for X and unbiased for Z",
              it != rows.end() && it->classical_for == std::vector<std::string>{"X"} &&
                  std::find(it->unbiased_for.begin(), it->unbiased_for.end(), "Z") != it->unbiased_for.end());
    run.check("bloch: fourth row absent", rows.size() == 4 && rows[3].absent);
  }

  run.group("basis");
  run.check("(II, delta_Z, eps_Z) passes all laws", q.z.verified());
  run.check("(II, delta_X, eps_X) passes all laws", q.x.verified());
  run.check("(II, delta_X', eps_X') passes all laws", q.x_prime.verified());
  {
    const PointReport z = enumerate_points(q.z), x = enumerate_points(q.x);
    run.check("Z on II: classical {z0,z1}, unbiased {x0}",
              z.classical == std::vector<Relation>{q.z0, q.z1} &&
                  z.unbiased == std::vector<Relation>{q.x0});
    run.check("X on II: classical {x0}, unbiased {z0,z1}",
              x.classical == std::vector<Relation>{q.x0} &&
                  x.unbiased == std::vector<Relation>{q.z0, q.z1});
  }
  run.check("x0 classical for X", is_classical(q.x, q.x0));
  run.check("x0 not classical for Z", !is_classical(q.z, q.x0));
  run.check("z0 unbiased for X", is_unbiased(q.x, q.z0));
  run.check("z0 not unbiased for Z", !is_unbiased(q.z, q.z0));
  run.check("Z, X complementary", check_complementary(q.z, q.x).holds());
  run.check("Z, Z not complementary", !check_complementary(q.z, q.z).holds());
  run.check("Z, X Hopf laws hold", check_hopf(q.z, q.x).all_hold());
  run.check("Z, Z Hopf laws fail", !check_hopf(q.z, q.z).all_hold());
  run.check("mu_Z o delta_X = eps_Z^ o eps_X",
            compose(q.z.multiplication(), q.x.delta()) == compose(q.z.unit(), q.x.epsilon()));
  const Relation cup = Relation::state(ii * ii, {0, 3});
  run.check("eta(Z) = {(0,0),(1,1)}", eta(q.z).eta == cup);
  run.check("eta(X) = {(0,0),(1,1)}", eta(q.x).eta == cup);
  run.check("snake equations for eta(Z), eta(X), eta(X')",
            snake_check(eta(q.z).eta) && snake_check(eta(q.x).eta) && snake_check(eta(q.x_prime).eta));

  run.group("protocols");
  run.guarded("bell basis on II", [&] {
    const BellBasis bb = bell_basis(q.x, q.z);
    std::vector<std::size_t> images;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) images.push_back(((a ^ b) << 1) | b);
    run.check("bell map is (a,b) ~ (a+b, b)", bb.bell_map == Relation::graph(ii * ii, ii * ii, images));
    run.check("bell map is unitary", is_unitary(bb.bell_map));
    run.check("tensor basis passes all laws", bb.tensor_basis.verified());
  });
  const PhaseUnitaries pz = phase_unitaries(q.z), px = phase_unitaries(q.x);
  run.check("phase unitaries of Z are {id}", pz.unitaries == std::vector<Relation>{Relation::identity(ii)});
  run.check("phase unitaries of X are {id, NOT}",
            perm_names(px.unitaries, false) == std::vector<std::string>{"(01)", "e"});
  std::vector<Relation> pool = pz.unitaries;
  pool.insert(pool.end(), px.unitaries.begin(), px.unitaries.end());
  const Relation e = eta(q.z).eta;
  const BranchSearch found = find_branch_unitaries(e, pool);
  run.check("branch unitaries are {id, NOT}",
            found.unitaries && perm_names(*found.unitaries, false) == std::vector<std::string>{"(01)", "e"});
  const std::vector<Relation> pair{Relation::identity(ii), q.not_gate};
  const TeleportationCertificate cert = check_teleportation(e, pair);
  run.check("teleportation valid with 2 branches", cert.valid() && cert.branches.size() == 2);
  const DenseCoding dc = check_dense_coding(e, pair);
  run.check("dense coding table is the identity pattern", dc.ok, to_json(dc).dump());

  run.group("term");
  run.guarded("delta_X = delta_Z is false", [&] {
    const Verdict v = assert_equal("delta_X", "delta_Z", symbols);
    run.check("delta_X = delta_Z is false with a witness", !v.equal && v.witness.has_value(),
              v.witness ? "row " + std::to_string(v.witness->row) + " col " + std::to_string(v.witness->col) : "");
  });
}

void spek_checks(Runner& run, const SuiteOptions& options) {
  const FinObject iv = spek_object();
  const FinObject iv2 = iv * iv;
  const SpekGenerators g = spek_generators();
  const SpekObservables obs = spek_observables();
  const BasisStructure& z = obs.z.family.front();
  const BasisStructure& x = obs.x.family.front();
  const SymbolTable symbols(ModelKind::spek);
  auto st = [](const char* n) { return spek_state(n); };
  const Relation eta_iv = Relation::state(iv2, {0, 5, 10, 15});

  run.group("relcore");
  const Relation sep = Relation::state(iv2, {0, 1, 4, 5});
  run.check("delta_Z o z0 = {(1,1),(1,2),(2,1),(2,2)}", compose(g.delta_z, st("z0")) == sep);
  run.check("z0 x z0 = delta_Z o z0", tensor(st("z0"), st("z0")) == sep);
  run.check("eps_Z^ = x0", dagger(g.eps_z) == st("x0"));
  run.check("sigma_23 is unitary", is_unitary(perm("sigma_23")));
  run.check("z0 o z0^ is not unitary", !is_unitary(compose(st("z0"), dagger(st("z0")))));
  {
    bool ok = true;
    for (const auto& p : g.perms) {
      ok = ok && transpose_star(p.relation(iv), eta_iv, eta_iv) == p.inverse().relation(iv);
    }
    run.check("transpose of every permutation is its inverse", ok);
  }

  run.group("models");
  run.check("24 permutations, all unitary",
            g.perm_relations.size() == 24 &&
                std::all_of(g.perm_relations.begin(), g.perm_relations.end(), is_unitary));
  run.check("delta_Z relates 2 to {(1,2),(2,1)}", g.delta_z.image(1) == std::vector<std::size_t>{1, 4});
  run.check("y1 = {2,3}", st("y1") == Relation::state(iv, {1, 2}));
  {
    std::vector<Relation> orbit;
    for (const auto& p : g.perm_relations) orbit.push_back(compose(p, st("x0")));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    std::vector<Relation> six;
    for (const auto& s : spek_states()) six.push_back(s.state);
    std::sort(six.begin(), six.end());
    run.check("orbit of x0 is the six states", orbit == six);
  }
  {
    bool ok = true;
    for (const char* p : {"z", "x", "y"}) {
      Relation a = st((std::string(p) + "0").c_str()), b = st((std::string(p) + "1").c_str());
      ok = ok && a.size() + b.size() == 4 && compose(dagger(a), b) == scalar(Scalar::empty);
    }
    run.check("partner states partition IV", ok);
  }
  run.check("Z classical points {z0,z1}", obs.z.classical_points == std::vector<std::string>{"z0", "z1"});
  run.check("X classical points {x0,x1}", obs.x.classical_points == std::vector<std::string>{"x0", "x1"});
  run.check("Y classical points {y0,y1}", obs.y.classical_points == std::vector<std::string>{"y0", "y1"});
  run.check("delta_X relates 3 to {(1,3),(3,1)}", x.delta().image(2) == std::vector<std::size_t>{2, 8});
  {
    const auto groups = observable_orbit();
    std::string labels;
    for (const auto& gr : groups) labels += (labels.empty() ? "{" : " {") + join(gr.classical_points) + "}";
    run.check("conjugates of delta_Z form 3 groups", groups.size() == 3, labels);
  }
  {
    bool ok = true;
    for (const Observable* o : {&obs.z, &obs.x, &obs.y}) {
      ok = ok && o->family.size() == 4;
      for (const auto& b : o->family) ok = ok && b.verified();
    }
    run.check("each observable has four verified members", ok);
  }
  run.check("ghz listing",
            ghz() == Relation::state(iv * iv2, {0, 20, 5, 17, 42, 62, 47, 59}));
  {
    std::vector<std::string> fixing;
    for (const auto& p : g.perms) {
      Relation s = p.relation(iv);
      if (compose(tensor(tensor(s, s), s), ghz()) == ghz()) fixing.push_back(p.cycles(true));
    }
    run.check("ghz symmetry report", !fixing.empty(), "fixed by " + join(fixing));
  }
  run.check("spek bloch table has 6 rows", bloch_table(ModelKind::spek).size() == 6);

  run.group("basis");
  {
    const LawReport r = verify_basis_structure(g.delta_z, dagger(st("z0")));
    run.check("(IV, delta_Z, z0^) fails a counit law",
              !r.at("left_counit").holds || !r.at("right_counit").holds);
  }
  run.check("lambda(Z, x0) = id", lambda(z, st("x0")) == Relation::identity(iv));
  run.check("lambda(Z, y0) = (34)", lambda(z, st("y0")) == perm("sigma_34"));
  {
    const PointReport p = enumerate_points(z);
    std::vector<std::string> unbiased = names_of(p.unbiased);
    std::sort(unbiased.begin(), unbiased.end());
    run.check("Z on IV: classical {z0,z1}, unbiased {x0,x1,y0,y1}",
              join(names_of(p.classical)) == "z0,z1" && join(unbiased) == "x0,x1,y0,y1",
              join(names_of(p.classical)) + " / " + join(names_of(p.unbiased)));
  }
  run.check("Z, X on IV complementary", check_complementary(z, x).holds());
  {
    // The representatives of Z and Y are not complementary; other members are.
    std::string witness;
    for (std::size_t i = 0; i < 4 && witness.empty(); ++i)
      for (std::size_t j = 0; j < 4 && witness.empty(); ++j)
        if (check_hopf(obs.z.family[i], obs.y.family[j]).all_hold())
          witness = "Z[" + std::to_string(i) + "], Y[" + std::to_string(j) + "]";
    run.check("Z, Y on IV: some member pair passes the Hopf laws", !witness.empty(), witness);
  }
  run.check("eta(Z) on IV is the diagonal", eta(z).eta == eta_iv);
  run.check("eta(Z) on IV passes the snake equations", snake_check(eta_iv));
  run.check("z0 x z0 is not a cup", !snake_check(tensor(st("z0"), st("z0"))));
  {
    std::string detail;
    bool ok = true;
    const Observable* all[] = {&obs.z, &obs.x, &obs.y};
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        bool some = false;
        for (const auto& a : all[i]->family)
          for (const auto& b : all[j]->family)
            some = some || (check_complementary(a, b).holds() && check_hopf(a, b).all_hold());
        ok = ok && some;
        detail += std::string(1, all[i]->label) + all[j]->label + (some ? ":yes " : ":no ");
      }
    }
    run.check("X, Y, Z mutually complementary", ok, detail);
  }
  {
    bool ok = true;
    for (const Observable* o : {&obs.z, &obs.x, &obs.y})
      for (const auto& b : o->family) ok = ok && snake_check(eta(b).eta);
    run.check("snake equations for every observable member", ok);
  }

  run.group("closure");
  std::vector<Generator> gens = spek_generator_list();
  gens.insert(gens.end(), options.extra_generators.begin(), options.extra_generators.end());
  const MorphismStore store = generate_closure(gens, options.closure);
  auto member = [&](const Relation& r) {
    return contains(store, r).answer == Membership::Answer::member;
  };
  run.check("store reached a fixpoint", store.fixpoint(),
            std::to_string(store.size()) + " morphisms, cap " + std::to_string(store.max_arity()));
  run.check("contains eta_IV", member(eta_iv));
  {
    const Membership m = contains(store, delta_oplus());
    run.check("delta_oplus is not contained", m.answer == Membership::Answer::not_member,
              to_string(m.answer) + (m.word ? " via " + *m.word : ""));
  }
  if (store.max_arity() >= 3) {
    run.check("contains GHZ", member(ghz()));
    const Relation eps1 = tensor(g.eps_z, Relation::identity(iv2));
    run.check("(eps_Z x 1 x 1) o GHZ is contained", member(compose(eps1, ghz())));
  }
  {
    const Membership m = contains(store, compose(st("z0"), dagger(st("z0"))));
    const std::size_t cost = m.word ? store.entries()[*store.find(compose(st("z0"), dagger(st("z0"))))].cost : 0;
    run.check("contains z0 o z0^ with a word of cost <= 3",
              m.answer == Membership::Answer::member && cost <= 3, m.word.value_or(""));
  }
  run.check("contains x0 o z0^", member(compose(st("x0"), dagger(st("z0")))));
  {
    const Membership m = contains(store, Relation::full(iv, iv));
    run.check("all-relation on IV answered", m.answer != Membership::Answer::unknown,
              to_string(m.answer) + (m.word ? " via " + *m.word : ""));
  }
  {
    const auto counts = census(store);
    auto count = [&](const FinObject& a, const FinObject& b) {
      auto it = counts.find({a, b});
      return it == counts.end() ? std::size_t{0} : it->second;
    };
    run.check("census (I, I) = 2", count(FinObject::unit(), FinObject::unit()) == 2);
    run.check("census (I, IV) >= 6", count(FinObject::unit(), iv) >= 6,
              std::to_string(count(FinObject::unit(), iv)));
  }
  {
    const StateCensus sc = state_census(store, iv2);
    auto has = [&](const Relation& r) {
      return std::any_of(sc.states.begin(), sc.states.end(),
                         [&](std::size_t id) { return store.entries()[id].relation == r; });
    };
    run.check("two-system census includes eta_IV and z0 x z0",
              has(eta_iv) && has(tensor(st("z0"), st("z0"))));
    std::vector<Relation> images;
    for (const auto& a : g.perm_relations)
      for (const auto& b : g.perm_relations)
        for (const Relation* base : {&eta_iv, &sep}) images.push_back(compose(tensor(a, b), *base));
    std::sort(images.begin(), images.end());
    std::size_t maximal = 0, covered = 0;
    for (std::size_t id : sc.states) {
      const Relation& r = store.entries()[id].relation;
      if (r.size() != 4) continue;
      ++maximal;
      covered += std::binary_search(images.begin(), images.end(), r);
    }
    run.check("every maximal two-system state is a local image of eta_IV or z0 x z0",
              maximal > 0 && covered == maximal,
              std::to_string(covered) + "/" + std::to_string(maximal) + ", " +
                  std::to_string(sc.orbits.size()) + " orbits");
  }
  {
    SymbolTable words(ModelKind::spek);
    for (const auto& gen : gens) words.define(gen.name, gen.relation);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < store.size(); ++i) {
      try {
        bad += eval_source(store.word(i), words) != store.entries()[i].relation;
      } catch (const std::exception&) {
        ++bad;
      }
    }
    run.check("every witness word evaluates to its morphism", bad == 0,
              std::to_string(bad) + " mismatches");
  }

  run.group("protocols");
  const BellBasis bb = bell_basis(x, z);
  run.check("bell map on IV is unitary", is_unitary(bb.bell_map));
  run.check("tensor basis on IV passes all laws", bb.tensor_basis.verified());
  const PhaseUnitaries pz = phase_unitaries(z), px = phase_unitaries(x);
  run.check("phase unitaries of Z are {id,(12),(34),(12)(34)}",
            perm_names(pz.unitaries, true) == std::vector<std::string>{"(12)", "(12)(34)", "(34)", "e"},
            join(perm_names(pz.unitaries, true)));
  std::vector<Relation> gens_pool = pz.unitaries;
  gens_pool.insert(gens_pool.end(), px.unitaries.begin(), px.unitaries.end());
  const std::vector<Relation> pool = composition_closure(gens_pool);
  const BranchSearch found = find_branch_unitaries(eta_iv, pool);
  const std::vector<std::string> klein_names{"(12)(34)", "(13)(24)", "(14)(23)", "e"};
  run.check("branch unitaries are the Klein four-group",
            found.unitaries && perm_names(*found.unitaries, true) == klein_names,
            found.unitaries ? join(perm_names(*found.unitaries, true)) : "none");
  const BranchSearch z_only = find_branch_unitaries(eta_iv, pz.unitaries);
  run.check("Z phases alone cover 8 of 16", !z_only.unitaries && z_only.coverage == 8 && z_only.total == 16);
  const std::vector<Relation> klein{perm("sigma_e"), perm("sigma_12_34"), perm("sigma_13_24"),
                                    perm("sigma_14_23")};
  const TeleportationCertificate cert = check_teleportation(eta_iv, klein);
  run.check("teleportation valid with 4 branches", cert.valid() && cert.branches.size() == 4);
  run.check("teleportation with {id,(12)} invalid",
            !check_teleportation(eta_iv, {perm("sigma_e"), perm("sigma_12")}).valid());
  run.check("dense coding with the Klein group", check_dense_coding(eta_iv, klein).ok);
  run.check("dense coding with Z phases fails",
            !check_dense_coding(eta_iv, {perm("sigma_e"), perm("sigma_12"), perm("sigma_34"),
                                         perm("sigma_12_34")}).ok);
  {
    const auto ms = cert.morphisms();
    const std::size_t in = std::count_if(ms.begin(), ms.end(), member);
    run.check("every teleportation composite is in the closure", in == ms.size(),
              std::to_string(in) + "/" + std::to_string(ms.size()));
  }
  const Relation p = measurement_projector(st("z0"));
  run.check("z0 o z0^ is {1,2} ~ {1,2}", describe(p) == "1 ~ {1, 2}; 2 ~ {1, 2}", describe(p));
  const Relation xz = compose(st("x0"), dagger(st("z0")));
  run.check("x0 o z0^ is {1,2} ~ {1,3}", describe(xz) == "1 ~ {1, 3}; 2 ~ {1, 3}", describe(xz));
  {
    bool ok = true;
    for (const auto& s : spek_states()) {
      const Relation pr = measurement_projector(s.state);
      ok = ok && compose(pr, pr) == pr;
    }
    run.check("projectors are idempotent", ok);
  }

  run.group("term");
  run.guarded("term examples", [&] {
    run.check("delta_Z ; eps_Z^ = eta_IV", eval_source("delta_Z ; eps_Z^", symbols) == eta_iv);
    run.check("delta_Z ; z0 = z0 x z0", assert_equal("delta_Z ; z0", "z0 x z0", symbols).equal);
    run.check("snake: (eta^ x id_IV) ; (id_IV x eta) = id_IV",
              assert_equal("(eta^ x id_IV) ; (id_IV x eta)", "id_IV", symbols).equal);
    run.check("z0 ; z0^ is the projector", eval_source("z0 ; z0^", symbols) == p);
    run.check("(z0 x id_IV) is a tensor", parse_term("(z0 x id_IV)").kind == Term::Kind::tensor);
    bool rejected = false;
    std::string message;
    try {
      eval_source("z0 ; delta_Z", symbols);
    } catch (const TypeError& e) {
      rejected = true;
      message = e.what();
    }
    run.check("z0 ; delta_Z is a type error naming the objects",
              rejected && message.find("IVxIV") != std::string::npos && message.find("I ") != std::string::npos,
              message);
  });
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  if (name != "qubit" && name != "spek" && name != "all") {
    throw TypeError("unknown suite '" + name + "' (expected qubit, spek or all)");
  }
  SuiteReport report{name, {}};
  Runner run(report);
  if (name != "spek") qubit_checks(run);
  if (name != "qubit") spek_checks(run, options);
  return report;
}

}  // namespace toycat
