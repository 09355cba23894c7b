#include "common.hpp"
#include "dfo/cutelim.hpp"
#include "dfo/derivations.hpp"
#include "dfo/fuzz.hpp"

namespace {

// runs the eliminator and checks the usual post-conditions
bool clean(const DerivP& d, long* steps = nullptr) {
  auto res = eliminate_cuts(d);
  if (steps) *steps = res.steps;
  if (!res.complete) {
    MESSAGE("budget ran out after " << res.steps << " steps");
    return false;
  }
  auto rep = check_derivation(res.d);
  if (!rep.ok) {
    MESSAGE("output does not check: " << rep.error);
    return false;
  }
  if (rep.has_cut || !seq_eq(res.d->concl, d->concl)) return false;
  auto sf = subformula_check(res.d);
  if (!sf.ok) MESSAGE("subformula violation: " << sf.occurrence);
  return sf.ok;
}

}  // namespace

TEST_CASE("cut-free input is returned untouched") {
  DerivP d = derive_identity(M("(and (P v1) (R v1 v1))"));
  auto res = eliminate_cuts(d);
  CHECK(res.complete);
  CHECK(res.steps == 0);
  CHECK(res.d == d);
  CHECK(subformula_check(d).ok);
}

TEST_CASE("identity against identity") {
  for (const char* f : {"(P v1)", "(= v1 c)", "(top v1)", "(bot)", "(and (P v1) (R v1 v1))", "(or (P v1) (top v1))",
                        "(imp (P v1) (P v1))", "(dia v2 (R v1 v2))", "(box v2 (R v1 v2))", "(cyl v2 (P v1))",
                        "(subst ((v1 (f v2))) (P v1))", "(sdia ((v1 (f v2))) (P v2))", "(sbox ((v1 (f v2))) (P v2))"}) {
    MtP a = M(f);
    DerivP i = derive_identity(a);
    DerivP c = cut(a, i, i);
    CHECK_MESSAGE(clean(c), f);
  }
}

namespace {
DerivP id_p() { return make_node(Rule::Id, Dir::Down, {}, SEQ("(^atom P v1) |-{v1} (P v1)"), {}); }
DerivP id_r() { return make_node(Rule::Id, Dir::Down, {}, SEQ("(^atom R v1 v1) |-{v1} (R v1 v1)"), {}); }
}  // namespace

TEST_CASE("atomic principal reduct collapses to the right premise") {
  DerivP id = id_p();
  DerivP intro = Lin(SEQ("(P v1) |-{v1} (P v1)")).step(Rule::AtomIntro).close(id);
  DerivP c = cut(M("(P v1)"), id, intro);
  CHECK(principal_at(id, 1));
  CHECK(principal_at(intro, 0));
  CHECK(principal_reduce(c) == id);
  auto res = eliminate_cuts(c);
  CHECK(res.steps == 1);
  CHECK(res.d == id);
}

TEST_CASE("principal conjunction reduct lowers the rank") {
  MtP a = M("(and (P v1) (R v1 v1))");
  DerivP right = make_node(Rule::And_R, Dir::Down, {},
                           SEQ("(^and (^atom P v1) (^atom R v1 v1)) |-{v1} (and (P v1) (R v1 v1))"), {id_p(), id_r()});
  DerivP ip = Lin(SEQ("(P v1) |-{v1} (P v1)")).step(Rule::AtomIntro).close(id_p());
  DerivP ir = Lin(SEQ("(R v1 v1) |-{v1} (R v1 v1)")).step(Rule::AtomIntro).close(id_r());
  DerivP inner = make_node(Rule::And_R, Dir::Down, {}, SEQ("(^and (P v1) (R v1 v1)) |-{v1} (and (P v1) (R v1 v1))"),
                           {ip, ir});
  DerivP left = Lin(SEQ("(and (P v1) (R v1 v1)) |-{v1} (and (P v1) (R v1 v1))")).step(Rule::And_L).close(inner);
  DerivP c = cut(a, right, left);
  REQUIRE(check_derivation(c).ok);
  DerivP r = principal_reduce(c);
  CHECK(check_derivation(r).ok);
  CHECK(seq_eq(r->concl, c->concl));
  int cuts = 0;
  std::function<void(const DerivP&)> walk = [&](const DerivP& d) {
    if (d->rule == Rule::Cut) {
      ++cuts;
      CHECK(cut_rank(d) < cut_rank(c));
    }
    for (auto& k : d->kids) walk(k);
  };
  walk(r);
  CHECK(cuts == 2);
  CHECK(kind_of([&] { parametric_move(c); }) == "PreconditionError");
  CHECK(kind_of([&] { principal_reduce(cut(a, derive_identity(a), left)); }) == "NotPrincipal");
}

TEST_CASE("quantifier cuts against identities") {
  for (const char* f : {"(cyl v2 (P v1))", "(dia v2 (R v1 v2))", "(box v2 (R v1 v2))", "(subst ((v1 (f v2))) (P v1))"}) {
    MtP a = M(f);
    DerivP i = derive_identity(a);
    auto res = eliminate_cuts(cut(a, i, i));
    CHECK_MESSAGE(res.complete, f);
    bool principal = false;
    for (auto& l : res.log) principal |= l.rfind("principal", 0) == 0;
    CHECK_MESSAGE(principal, f);
  }
}

TEST_CASE("parametric moves") {
  // weakening on the non-cut side
  DerivP w = Lin(SEQ("(^and (^atom R v1 v1) (^atom P v1)) |-{v1} (P v1)")).step(Rule::W_L).close(id_p());
  DerivP i = derive_identity(M("(P v1)"));
  DerivP c = cut(M("(P v1)"), w, i);
  CHECK(!principal_at(w, 1));
  DerivP m = parametric_move(c);
  CHECK(check_derivation(m).ok);
  CHECK(seq_eq(m->concl, c->concl));
  CHECK(m->rule == Rule::W_L);
  // display postulates below the cut formula
  DerivP shown = Lin(SEQ("(^atom P v1) |-{v1} (vimp (^atom R v1 v1) (P v1))")).step(Rule::DP_and_imp).close(w);
  DerivP back =
      Lin(SEQ("(^and (^atom R v1 v1) (^atom P v1)) |-{v1} (P v1)")).step(Rule::DP_and_imp, Dir::Up).close(shown);
  REQUIRE(check_derivation(back).ok);
  CHECK(clean(cut(M("(P v1)"), back, i)));
  // substitution congruence above the cut: (t~)R^(v1,v1) |- (t)R(v1,v1)
  MtP sr = M("(subst ((v1 (f v2))) (R v1 v1))");
  DerivP mono = Lin(SEQ("(~subst ((v1 (f v2))) (^atom R v1 v1)) |-{v2} (subst ((v1 (f v2))) (R v1 v1))"))
                    .step(Rule::Sub_R)
                    .step(Rule::Mono_sub)
                    .close(id_r());
  REQUIRE(check_derivation(mono).ok);
  CHECK(deriv_size(mono) == 3);
  DerivP c3 = cut(sr, mono, derive_identity(sr));
  CHECK(deriv_size(c3) >= 4);
  CHECK(clean(c3));
}

TEST_CASE("smuggled atom is flagged") {
  // (s~)R^(v1,v1) |- R(c,c) proved by rewriting through R^(v3,v4)
  Sequent end = SEQ("(~subst ((v1 c)) (^atom R v1 v1)) |-{} (R c c)");
  DerivP idc = make_node(Rule::Id, Dir::Down, {}, SEQ("(^atom R c c) |-{} (R c c)"), {});
  auto via = [&](const char* mid) {
    return Lin(end)
        .step(Rule::AtomRewrite, Dir::Down, bst(S(mid)))
        .step(Rule::AtomRewrite, Dir::Down, bst(S("(^atom R c c)")))
        .close(idc);
  };
  DerivP d = via("(~subst ((v3 c) (v4 c)) (^atom R v3 v4))");
  REQUIRE(check_derivation(d).ok);
  CHECK(deriv_size(d) == 3);
  auto rep = subformula_check(d);
  CHECK(!rep.ok);
  CHECK(rep.occurrence == print_struct(S("(^atom R v3 v4)")));
  CHECK(rep.node == std::vector<int>{0});
  // a consistent renaming of the variables is accepted
  DerivP d2 = via("(~subst ((v3 c)) (^atom R v3 v3))");
  REQUIRE(check_derivation(d2).ok);
  CHECK(subformula_check(d2).ok);
  CHECK(subformula_check(idc).ok);
}

TEST_CASE("sigma and kappa chains become cut-free") {
  for (const char* f : {"(subst ((v1 (f v2))) (R v1 v1))", "(subst ((v1 v2)) (dia v3 (R v1 v3)))",
                        "(subst ((v1 v2) (v2 (f v3))) (cyl v2 (P v1)))", "(subst ((v1 v2)) (subst ((v3 (f v1))) (P v3)))",
                        "(subst ((v1 v2)) (imp (P v1) (R v1 v1)))", "(dia v1 (subst ((v2 v1)) (P v2)))"}) {
    MtP a = M(f);
    VarSet F = mt_type(a);
    auto p = derive_kappa(F, a);
    CHECK_MESSAGE(clean(p.fwd), f);
    CHECK_MESSAGE(clean(p.bwd), f);
  }
}

TEST_CASE("interchange through a renaming") {
  MtP a = M("(dia v1 (R v1 v2))"), b = M("(dia v3 (R v3 v2))");
  CHECK(clean(derive_interchange(a, b)));
}

TEST_CASE("axioms and modus ponens become cut-free") {
  AxiomInstance refl{Schema::EqRefl, {}, {}, {}, 0, {}, T("c")};
  AxiomInstance sub{Schema::EqSubst, FO("(= v1 c)"), {}, {}, 1, T("c"), T("c")};
  DerivP d1 = derive_axiom(refl);
  DerivP d2 = derive_axiom(sub);
  CHECK(clean(d1));
  CHECK(clean(d2));
  DerivP d3 = modus_ponens(d1, d2);
  CHECK(clean(d3));
  CHECK(clean(modus_ponens(d1, d3)));
  AxiomInstance inst{Schema::Inst, {}, FO("(R v1 v2)"), {}, 1, {}, T("(f v3)")};
  CHECK(clean(universal_closure(derive_axiom(inst))));
}

TEST_CASE("budget exhaustion yields a checked partial rewrite") {
  MtP a = M("(subst ((v1 v2)) (dia v3 (R v1 v3)))");
  auto p = derive_kappa(mt_type(a), a);
  REQUIRE(has_cut(p.fwd));
  auto res = eliminate_cuts(p.fwd, 1);
  CHECK(!res.complete);
  CHECK(res.steps == 1);
  CHECK(check_derivation(res.d).ok);
  CHECK(seq_eq(res.d->concl, p.fwd->concl));
  CHECK(!res.stuck_at.empty());
}

TEST_CASE("random kappa proofs become cut-free") {
  Rng rng(11);
  GenOpts o;
  int done = 0;
  for (int i = 0; i < 60; ++i) {
    VarSet F = random_subset(rng, 3, 2);
    MtP a = random_mt(rng, F, 1 + rng.below(3), o);
    DerivPair p;
    try {
      p = derive_kappa(F, a);
    } catch (const Error& e) {
      continue;
    }
    if (deriv_size(p.fwd) > 300) continue;
    ++done;
    CHECK_MESSAGE(clean(p.fwd), print_mt(a));
  }
  MESSAGE("eliminated " << done);
}
