// acceptance runner: one PASS/FAIL line per criterion
#include <chrono>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "dfo/cutelim.hpp"
#include "dfo/derivations.hpp"
#include "dfo/fuzz.hpp"
#include "dfo/translations.hpp"
#include "golden_core.hpp"

using namespace dfo;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome identities() {
  Outcome o;
  long checks = 0, models = 0;
  const VarSet pool{1, 2};
  for (int n = 1; n <= 2; ++n)
    for_each_model(n, [&](const FoModel& m) {
      ++models;
      for (char w : std::string("abcdefpji")) {
        SuiteResult r = check_identities(m, w, pool);
        checks += r.checked;
        if (!r.ok && o.ok) {
          o.ok = false;
          o.detail = std::string("suite ") + w + ": " + r.counterexample + "; ";
        }
      }
    });
  o.detail += std::to_string(checks) + " checks over " + std::to_string(models) + " models";
  return o;
}

Outcome fuzz(uint64_t seed) {
  long per_rule = 12000 / kNumRules + 1;
  FuzzReport f = soundness_fuzz(seed, per_rule);
  Outcome o;
  int missing = 0;
  for (int i = 0; i < kNumRules; ++i)
    if (f.per_rule[static_cast<Rule>(i)] == 0) ++missing;
  o.ok = f.instances >= 10000 && f.violations == 0 && f.rejected == 0 && missing == 0 && f.reverse_checked > 0;
  o.detail = std::to_string(f.instances) + " instances over " + std::to_string(kNumRules - missing) + "/" +
             std::to_string(kNumRules) + " schemas, " + std::to_string(f.nonvacuous) + " non-vacuous, " +
             std::to_string(f.reverse_checked) + " reverse, " + std::to_string(f.violations) + " violations, " +
             std::to_string(f.rejected) + " rejected";
  if (f.violations) o.detail += "; " + f.first_violation;
  return o;
}

Outcome translations(uint64_t seed) {
  Rng r(seed * 7919 + 3);
  GenOpts g;
  Outcome o;
  int sig = 0, kap = 0;
  auto bad = [&](const std::string& what) {
    if (o.ok) o.detail = what + "; ";
    o.ok = false;
  };
  while (sig < 1000) {
    g.dfostar = r.coin(0.3);
    VarSet F = random_subset(r, 3, 3);
    MtP a;
    try {
      a = random_mt(r, F, 1 + r.below(6), g);
    } catch (const Error&) {
      continue;
    }
    ++sig;
    MtP s = sigma(a);
    if (has_subst(s)) bad("sigma leaves a substitution in " + print_mt(a));
    if (mt_type(s) != mt_type(a)) bad("sigma changes the type of " + print_mt(a));
    if (!alpha_eq(tau(s), tau(a))) bad("tau(sigma A) differs from tau(A) for " + print_mt(a));
  }
  while (kap < 1000) {
    FoP a = random_fo(r, 1 + r.below(6), g);
    VarSet F = random_subset(r, 3, 3);
    MtP k;
    try {
      k = kappa(F, a);
    } catch (const Error& e) {
      bad(std::string("kappa failed: ") + e.what());
      ++kap;
      continue;
    }
    ++kap;
    if (mt_type(k) != set_union(F, free_vars(a))) bad("type of kappa wrong for " + print_fo(a));
    if (!alpha_eq(tau(k), a)) bad("tau(kappa A) differs from A for " + print_fo(a));
  }
  o.detail += std::to_string(sig) + " sigma samples, " + std::to_string(kap) + " kappa samples";
  return o;
}

struct CorpusItem {
  std::string name;
  DerivP d;
  FoP expect;
};

FoP closure_of(const FoP& a) {
  FoP e = a;
  for (Var x : sorted(free_vars(a))) e = fo::forall(x, e);
  return e;
}

std::vector<CorpusItem> completeness_corpus() {
  auto F = [](const char* s) { return parse_fo(s); };
  auto T = [](const char* s) { return parse_term(s); };
  std::vector<AxiomInstance> ax = {
      {Schema::Taut, F("(imp (P c) (P c))"), {}, {}, 0, {}, {}},
      {Schema::Taut, F("(imp (and (P v1) (R v1 v2)) (R v1 v2))"), {}, {}, 0, {}, {}},
      {Schema::Taut, F("(or (exists v1 (P v1)) (imp (exists v1 (P v1)) bot))"), {}, {}, 0, {}, {}},
      {Schema::Dist, {}, F("(P v1)"), F("(R v1 v2)"), 1, {}, {}},
      {Schema::Dist, {}, F("(R v1 v2)"), F("(P v2)"), 2, {}, {}},
      {Schema::Dist, {}, F("(= v1 c)"), F("(P (f v1))"), 1, {}, {}},
      {Schema::Gen, {}, F("(P c)"), {}, 1, {}, {}},
      {Schema::Gen, {}, F("(R v2 v2)"), {}, 1, {}, {}},
      {Schema::Gen, {}, F("(forall v1 (P v1))"), {}, 1, {}, {}},
      {Schema::Inst, {}, F("(P c)"), {}, 1, {}, T("(f c)")},
      {Schema::Inst, {}, F("(R v1 v2)"), {}, 1, {}, T("(f v3)")},
      {Schema::Inst, {}, F("(exists v2 (R v1 v2))"), {}, 1, {}, T("(f v2)")},
      {Schema::EqRefl, {}, {}, {}, 0, {}, T("c")},
      {Schema::EqRefl, {}, {}, {}, 0, {}, T("(f c)")},
      {Schema::EqRefl, {}, {}, {}, 0, {}, T("(f v1)")},
      {Schema::EqSubst, F("(= v1 c)"), {}, {}, 1, T("c"), T("c")},
      {Schema::EqSubst, F("(P v1)"), {}, {}, 1, T("c"), T("(f c)")},
      {Schema::EqSubst, F("(R v1 v2)"), {}, {}, 1, T("v2"), T("(f v1)")},
  };
  std::vector<CorpusItem> out;
  std::vector<DerivP> ds;
  for (size_t i = 0; i < ax.size(); ++i) {
    ds.push_back(derive_axiom(ax[i]));
    out.push_back({schema_name(ax[i].schema) + " #" + std::to_string(i % 3 + 1), ds.back(), axiom_formula(ax[i])});
  }
  for (size_t i : {3u, 10u, 17u})
    out.push_back({"closure of " + out[i].name, universal_closure(ds[i]), closure_of(axiom_formula(ax[i]))});
  FoP sub = axiom_formula(ax[15]);
  DerivP mp1 = modus_ponens(ds[12], ds[15]);
  out.push_back({"mp refl/eqsubst", mp1, sub->b});
  out.push_back({"mp twice", modus_ponens(ds[12], mp1), sub->b->b});
  AxiomInstance t2{Schema::Taut, F("(imp (= c c) (or (= c c) (P c)))"), {}, {}, 0, {}, {}};
  out.push_back({"mp refl/taut", modus_ponens(ds[12], derive_axiom(t2)), F("(or (= c c) (P c))")});
  return out;
}

Outcome completeness(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  for (auto& c : corpus) {
    auto rep = check_derivation(c.d);
    bool fine = rep.ok && rep.open_hyps == 0 && alpha_eq(tau(theorem_of(c.d)), c.expect);
    if (!fine && o.ok) o.detail = c.name + " fails: " + (rep.ok ? "tau image differs" : rep.error) + "; ";
    o.ok = o.ok && fine;
  }
  o.detail += std::to_string(corpus.size()) + " derivations";
  return o;
}

Outcome cut_elimination(const std::vector<CorpusItem>& corpus, uint64_t seed) {
  Outcome o;
  long stuck = 0, done = 0, steps = 0;
  auto run = [&](const std::string& name, const DerivP& d) {
    ++done;
    std::string why;
    try {
      CutElimResult res = eliminate_cuts(d);
      steps += res.steps;
      auto rep = check_derivation(res.d);
      if (!res.complete) why = "budget " + std::to_string(res.budget) + " exhausted";
      else if (!rep.ok) why = "output does not check: " + rep.error;
      else if (rep.has_cut) why = "output still has a cut";
      else if (!seq_eq(res.d->concl, d->concl)) why = "end-sequent changed";
      else if (auto sf = subformula_check(res.d); !sf.ok) why = "subformula violation " + sf.occurrence;
    } catch (const Error& e) {
      if (e.kind == "StuckError") ++stuck;
      why = e.what();
    }
    if (!why.empty()) {
      if (o.ok) o.detail = name + ": " + why + "; ";
      o.ok = false;
    }
  };
  for (auto& c : corpus) run(c.name, c.d);
  Rng r(seed * 104729 + 5);
  GenOpts g;
  int kp = 0;
  for (int tries = 0; kp < 100 && tries < 5000; ++tries) {
    VarSet F = random_subset(r, 3, 2);
    DerivPair p;
    MtP a;
    try {
      a = random_mt(r, F, 1 + r.below(3), g);
      p = derive_kappa(F, a);
    } catch (const Error&) {
      continue;
    }
    if (deriv_size(p.fwd) > 300 || deriv_size(p.bwd) > 300) continue;
    ++kp;
    run("kappa fwd " + print_mt(a), p.fwd);
    run("kappa bwd " + print_mt(a), p.bwd);
  }
  if (kp < 100) o.ok = false;
  o.detail += std::to_string(done) + " derivations (" + std::to_string(kp) + " kappa pairs), " + std::to_string(steps) +
              " reduction steps, " + std::to_string(stuck) + " stuck";
  return o;
}

Outcome faithfulness(uint64_t seed) {
  Rng r(seed * 15485863 + 1);
  GenOpts g;
  Outcome o;
  int n = 0;
  while (n < 500) {
    g.dfostar = r.coin(0.3);
    FoModel M = random_model(r, 1 + r.below(2));
    VarSet F = random_subset(r, 3, 3);
    MtP a;
    try {
      a = random_mt(r, F, 1 + r.below(5), g);
    } catch (const Error&) {
      continue;
    }
    ++n;
    if (!check_faithfulness(M, a)) {
      if (o.ok) o.detail = "unfaithful on " + print_mt(a) + "; ";
      o.ok = false;
    }
  }
  o.detail += std::to_string(n) + " pairs";
  return o;
}

Outcome display_property(uint64_t seed) {
  Rng r(seed * 32452843 + 9);
  GenOpts g;
  Outcome o;
  int n = 0;
  long occs = 0;
  auto bad = [&](const std::string& what) {
    if (o.ok) o.detail = what + "; ";
    o.ok = false;
  };
  while (n < 1000) {
    g.dfostar = r.coin(0.3);
    VarSet F = random_subset(r, 3, 2);
    Sequent s;
    try {
      s = random_sequent(r, F, 1 + r.below(6), g);
    } catch (const Error&) {
      continue;
    }
    ++n;
    const std::string orig = print_sequent(s);
    for (const Path& p : all_paths(s)) {
      ++occs;
      std::string where = orig + " at " + std::to_string(p.size()) + "-deep path";
      try {
        DisplayResult dr = display(s, p);
        StP want = at_path(s, p);
        StP got = pol_at(s, p) == Pol::Pos ? dr.out.l : dr.out.r;
        if (print_struct(got) != print_struct(want)) bad("not displayed: " + where);
        Sequent cur = s;
        Lin l(s);
        for (auto& st : dr.chain) {
          auto ps = premises_of(st.rule, st.dir, cur, st.b);
          if (ps.size() != 1) throw Error("ChainError", "step with " + std::to_string(ps.size()) + " premises");
          cur = ps[0];
          l.step(st.rule, st.dir, st.b);
        }
        if (print_sequent(cur) != print_sequent(dr.out)) bad("chain does not end in the display: " + where);
        auto rep = check_derivation(l.hyp());
        if (!rep.ok || rep.open_hyps != 1) bad("chain does not check: " + where);
        Sequent back = dr.out;
        for (size_t i = dr.chain.size(); i-- > 0;) {
          auto& st = dr.chain[i];
          auto ps = premises_of(st.rule, st.dir == Dir::Down ? Dir::Up : Dir::Down, back, st.b);
          if (ps.size() != 1) throw Error("ChainError", "inverse step with several premises");
          back = ps[0];
        }
        if (print_sequent(back) != orig) bad("inverse chain does not recover " + where);
      } catch (const Error& e) {
        bad(std::string(e.what()) + " for " + where);
      }
    }
  }
  o.detail += std::to_string(n) + " sequents, " + std::to_string(occs) + " occurrences";
  return o;
}

Outcome cli_goldens(const std::string& dir) {
  Outcome o;
  golden::Summary s;
  try {
    s = golden::check_corpus(dir);
  } catch (const std::exception& e) {
    return {false, std::string("corpus unreadable: ") + e.what()};
  }
  o.ok = s.failures.empty() && s.proofs >= 20 && s.formulas >= 10 && s.models >= 3;
  if (!s.failures.empty()) o.detail = "first failure " + s.failures[0].substr(0, s.failures[0].find('\n')) + "; ";
  o.detail += std::to_string(s.cases) + " cases, " + std::to_string(s.proofs) + " proofs, " +
              std::to_string(s.formulas) + " formulas, " + std::to_string(s.models) + " models, " +
              std::to_string(s.round_trips) + " round trips, " + std::to_string(s.failures.size()) + " failures";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria", "acceptance"};
  uint64_t seed = 1;
  std::string corpus = DFO_CORPUS_DIR;
  std::vector<int> only;
  app.add_option("--seed", seed, "seed for the random criteria");
  app.add_option("--corpus", corpus, "golden corpus directory");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  std::vector<CorpusItem> comp;
  std::string comp_error;
  try {
    comp = completeness_corpus();
  } catch (const Error& e) {
    comp_error = e.what();
  }
  auto needs_corpus = [&](const std::function<Outcome()>& f) {
    return [&, f] { return comp_error.empty() ? f() : Outcome{false, "corpus construction failed: " + comp_error}; };
  };
  struct Crit {
    int id;
    const char* name;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  std::vector<Crit> crits = {
      {1, "exhaustive identities, inclusions, adjunctions, injectivity", 60, identities},
      {2, "rule soundness fuzz", 300, [&] { return fuzz(seed); }},
      {3, "sigma and kappa properties", 0, [&] { return translations(seed); }},
      {4, "completeness corpus", 60, needs_corpus([&] { return completeness(comp); })},
      {5, "cut elimination", 0, needs_corpus([&] { return cut_elimination(comp, seed); })},
      {6, "faithfulness", 0, [&] { return faithfulness(seed); }},
      {7, "display property", 0, [&] { return display_property(seed); }},
      {8, "CLI goldens", 0, [&] { return cli_goldens(corpus); }},
  };
  bool all = true;
  for (auto& c : crits) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    double t = secs_since(t0);
    if (c.limit > 0 && t > c.limit) {
      o.ok = false;
      o.detail += "; over the time limit";
    }
    all = all && o.ok;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", t);
    std::cout << "criterion " << c.id << " " << (o.ok ? "PASS" : "FAIL") << " [" << c.name << "] " << o.detail << " ("
              << buf << ")" << std::endl;
  }
  return all ? 0 : 1;
}
