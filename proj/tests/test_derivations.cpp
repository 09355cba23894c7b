#include "common.hpp"
#include "dfo/derivations.hpp"
#include "dfo/fuzz.hpp"

namespace {

bool closed_ok(const DerivP& d) {
  auto rep = check_derivation(d);
  if (!rep.ok) MESSAGE("check failed: " << rep.error);
  return rep.ok && rep.open_hyps == 0 && !rep.dfostar;
}

bool ends(const DerivP& d, const MtP& l, const MtP& r) {
  return d->concl.l->k == SK::Leaf && d->concl.r->k == SK::Leaf && mt_eq(d->concl.l->f, l) && mt_eq(d->concl.r->f, r);
}

}  // namespace

TEST_CASE("identity proofs") {
  for (const char* f : {"(R v1 v2)", "(= v1 c)", "(top v1)", "(bot)", "(and (cyl v2 (P v1)) (cyl v1 (P v2)))",
                        "(or (P v1) (P v1))", "(imp (P v1) (R v1 v1))", "(dia v1 (R v1 v2))", "(box v2 (R v1 v2))",
                        "(cyl v3 (P v1))", "(subst ((v1 (f v2))) (P v1))"}) {
    MtP a = M(f);
    DerivP d = derive_identity(a);
    CHECK_MESSAGE(closed_ok(d), f);
    CHECK(ends(d, a, a));
  }
  CHECK(kind_of([] { derive_identity(M("(excl (P v1) (P v1))")); }) == "PreconditionError");
}

TEST_CASE("sigma interchange") {
  for (const char* f : {"(subst ((v1 (f v2))) (R v1 v1))", "(subst ((v1 v2)) (dia v3 (R v1 v3)))",
                        "(subst ((v1 v2)) (box v3 (R v1 v3)))", "(subst ((v1 v2) (v2 (f v3))) (cyl v2 (P v1)))",
                        "(subst ((v1 v2)) (subst ((v3 (f v1))) (P v3)))", "(subst ((v1 c)) (top v1))",
                        "(subst ((v1 c)) (bot v1))", "(subst ((v1 v2)) (and (P v1) (= v1 c)))",
                        "(subst ((v1 v2)) (or (P v1) (P v1)))", "(subst ((v1 v2)) (imp (P v1) (R v1 v1)))",
                        "(and (subst ((v1 c)) (P v1)) (top))", "(dia v1 (subst ((v2 v1)) (P v2)))",
                        "(subst ((v1 (f v1))) (dia v2 (subst ((v2 v1) (v1 v2)) (R v1 v2))))"}) {
    MtP a = M(f);
    auto p = derive_sigma(a);
    CHECK_MESSAGE(closed_ok(p.fwd), f);
    CHECK_MESSAGE(closed_ok(p.bwd), f);
    CHECK(ends(p.fwd, a, sigma(a)));
    CHECK(ends(p.bwd, sigma(a), a));
  }
}

TEST_CASE("kappa interchange") {
  for (const char* f : {"(R v1 v2)", "(cyl v2 (P v1))", "(and (cyl v2 (P v1)) (cyl v1 (P v2)))", "(dia v1 (R v1 v2))",
                        "(cyl v1 (dia v1 (P v1)))", "(box v1 (imp (P v1) (dia v2 (R v1 v2))))",
                        "(or (cyl v2 (top v1)) (cyl v1 (bot v2)))", "(subst ((v1 v2)) (dia v3 (R v1 v3)))",
                        "(cyl v3 (and (cyl v2 (P v1)) (cyl v1 (P v2))))", "(cyl v2 (box v3 (R v1 v3)))",
                        "(cyl v1 (cyl v2 (= c c)))"}) {
    MtP a = M(f);
    VarSet F = mt_type(a);
    auto p = derive_kappa(F, a);
    MtP k = kappa(F, tau(sigma(a)));
    CHECK_MESSAGE(closed_ok(p.fwd), f);
    CHECK_MESSAGE(closed_ok(p.bwd), f);
    CHECK(ends(p.fwd, a, k));
    CHECK(ends(p.bwd, k, a));
  }
}

TEST_CASE("alpha interchange") {
  MtP a = M("(dia v1 (R v1 v2))"), b = M("(dia v3 (R v3 v2))");
  DerivP d = derive_interchange(a, b);
  CHECK(closed_ok(d));
  CHECK(ends(d, a, b));
  MtP c = M("(subst ((v1 v2)) (dia v2 (R v1 v2)))");
  CHECK(kind_of([&] { derive_interchange(c, M("(dia v5 (R v2 v5))")); }) == "");
  CHECK(closed_ok(derive_interchange(M("(dia v5 (R v2 v5))"), c)));
  CHECK(kind_of([&] { derive_interchange(a, M("(dia v1 (R v2 v1))")); }) == "PreconditionError");
}

TEST_CASE("derived rules") {
  // built from generic shapes rather than parsed text to cover both operators
  StP X = st::leaf(M("(P v1)")), Y = st::leaf(M("(R v1 v1)")), Z = st::leaf(M("(dia v1 (P v1))"));
  StP W = st::leaf(M("(box v1 (P v1))"));
  Subst s = SUB("((v1 (f v2)))");
  StP X2 = st::leaf(M("(P v2)")), Z2 = st::leaf(M("(P v1)"));
  std::vector<std::pair<DerivedRule, Sequent>> cases{
      {DerivedRule::And, make_seq(st::dia(1, st::and_(X, Y)), Z)},
      {DerivedRule::Excl, make_seq(st::dia(1, st::excl(X, Y)), Z)},
      {DerivedRule::Coexcl, make_seq(st::dia(1, st::coexcl(X, Y)), Z)},
      {DerivedRule::Or, make_seq(W, st::box(1, st::or_(X, Y)))},
      {DerivedRule::Imp, make_seq(W, st::box(1, st::imp(X, Y)))},
      {DerivedRule::Coimp, make_seq(W, st::box(1, st::coimp(X, Y)))},
      {DerivedRule::And, make_seq(st::sdia(s, st::and_(X2, X2)), Z2)},
      {DerivedRule::Or, make_seq(Z2, st::sbox(s, st::or_(X2, X2)))},
  };
  for (auto& [r, concl] : cases) {
    DerivP d = derived_rule(r, concl);
    auto rep = check_derivation(d);
    CHECK_MESSAGE(rep.ok, derived_rule_name(r) << ": " << rep.error);
    CHECK(rep.open_hyps == 1);
  }
  Sequent p = derived_premise(DerivedRule::And, cases[0].second);
  CHECK(p.l->k == SK::AndHat);
  CHECK(p.l->a->k == SK::DiaHat);
}

TEST_CASE("first-order axioms") {
  std::vector<AxiomInstance> axs;
  axs.push_back({Schema::Taut, FO("(imp (P v1) (P v1))"), {}, {}, 0, {}, {}});
  axs.push_back({Schema::Taut, FO("(or (P v1) (imp (P v1) bot))"), {}, {}, 0, {}, {}});
  axs.push_back({Schema::Taut, FO("(imp (and (P v1) (R v1 v2)) (or (R v1 v2) (P c)))"), {}, {}, 0, {}, {}});
  axs.push_back({Schema::Taut, FO("(imp (imp (imp (P v1) (P v2)) (P v1)) (P v1))"), {}, {}, 0, {}, {}});
  axs.push_back({Schema::Dist, {}, FO("(P v1)"), FO("(R v1 v2)"), 1, {}, {}});
  axs.push_back({Schema::Gen, {}, FO("(P v2)"), {}, 1, {}, {}});
  axs.push_back({Schema::Inst, {}, FO("(R v1 v2)"), {}, 1, {}, T("(f v3)")});
  axs.push_back({Schema::Inst, {}, FO("(P v2)"), {}, 1, {}, T("c")});
  axs.push_back({Schema::Inst, {}, FO("(exists v2 (R v1 v2))"), {}, 1, {}, T("v2")});
  axs.push_back({Schema::EqRefl, {}, {}, {}, 0, {}, T("(f v1)")});
  axs.push_back({Schema::EqSubst, FO("(R v1 v2)"), {}, {}, 1, T("v3"), T("(f v2)")});
  axs.push_back({Schema::EqSubst, FO("(P v1)"), {}, {}, 1, T("v1"), T("c")});
  axs.push_back({Schema::EqSubst, FO("(exists v2 (R v1 v2))"), {}, {}, 1, T("c"), T("v2")});
  for (auto& ax : axs) {
    DerivP d = derive_axiom(ax);
    CHECK_MESSAGE(closed_ok(d), schema_name(ax.schema) << " " << print_fo(axiom_formula(ax)));
    CHECK(alpha_eq(tau(theorem_of(d)), axiom_formula(ax)));
    DerivP c = universal_closure(d);
    CHECK(closed_ok(c));
    CHECK(c->concl.F.empty());
  }
  DerivP lifted = derive_axiom(axs[0], VarSet{1, 2, 4});
  CHECK(closed_ok(lifted));
  CHECK(kind_of([] { derive_axiom({Schema::Taut, FO("(P v1)"), {}, {}, 0, {}, {}}); }) == "PreconditionError");
}

TEST_CASE("modus ponens") {
  AxiomInstance refl{Schema::EqRefl, {}, {}, {}, 0, {}, T("c")};
  AxiomInstance sub{Schema::EqSubst, FO("(= v1 c)"), {}, {}, 1, T("c"), T("c")};
  DerivP d1 = derive_axiom(refl);
  DerivP d2 = derive_axiom(sub);
  DerivP d3 = modus_ponens(d1, d2);
  CHECK(closed_ok(d3));
  DerivP d4 = modus_ponens(d1, d3);
  CHECK(closed_ok(d4));
  CHECK(alpha_eq(tau(theorem_of(d4)), FO("(= c c)")));
}

TEST_CASE("random interchange proofs check") {
  Rng rng(7);
  GenOpts o;
  int built = 0, refused = 0;
  for (int i = 0; i < 300; ++i) {
    VarSet F = random_subset(rng, 3, 2);
    MtP a = random_mt(rng, F, 1 + rng.below(4), o);
    try {
      auto p = derive_kappa(F, a);
      auto s = derive_sigma(a);
      ++built;
      CHECK_MESSAGE(closed_ok(p.fwd), print_mt(a));
      CHECK_MESSAGE(closed_ok(p.bwd), print_mt(a));
      CHECK_MESSAGE(closed_ok(s.fwd), print_mt(a));
      CHECK_MESSAGE(closed_ok(s.bwd), print_mt(a));
    } catch (const Error& e) {
      if (e.kind != "PreconditionError") FAIL(print_mt(a) << ": " << e.what());
      ++refused;
    }
  }
  MESSAGE("built " << built << ", refused " << refused);
  CHECK(built > 100);
}
