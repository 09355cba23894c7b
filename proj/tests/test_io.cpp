#include "common.hpp"

TEST_CASE("formula parsing") {
  CHECK(fo_eq(FO("(forall v1 (R v1))"), fo::forall(1, fo::rel("R", {tvar(1)}))));
  CHECK(mt_eq(M("(dia v1 (R v1))"), mt::dia(1, mt::rel("R", {tvar(1)}))));
  CHECK(mt_eq(M("(subst ((v1 (f v2))) (R v1))"), mt::sub(SUB("((v1 (f v2)))"), mt::rel("R", {tvar(1)}))));
  CHECK(fo_eq(FO("(not (P c))"), fo::imp(fo::rel("P", {tconst("c")}), fo::bot())));
  CHECK(kind_of([] { FO("(and (P v1)"); }) == "ParseError");
  CHECK(kind_of([] { FO("(frob v1)"); }) == "");
  CHECK(kind_of([] { FO("(and (P v1))"); }) == "ParseError");
}

TEST_CASE("print parse round trip") {
  for (const char* s : {"(imp (forall v1 (R v1 c)) (exists v3 (= (f v3) v2)))", "(and top bot)", "(Q)"})
    CHECK(print_fo(FO(s)) == s);
  for (const char* s : {"(cyl v3 (dia v1 (R v1 v2)))", "(subst ((v2 (f v1))) (sbox ((v2 v1)) (top v1)))",
                        "(excl (bot v1) (coimp (P v1) (P v1)))"})
    CHECK(print_mt(M(s)) == s);
  const char* seq = "(^and (~cyl v2 (^atom P v1)) (?meta 3 v1 v2)) |-{v1,v2} (vor (vbot v1 v2) (R v1 v2))";
  CHECK(print_sequent(SEQ(seq)) == seq);
}

static const char* kProof =
    "dfo-format 1\n"
    "proof\n"
    "# identity on an atom\n"
    "step 1 Id concl: (^atom P v1) |-{v1} (P v1) from:\n"
    "step 2 AtomIntro concl: (P v1) |-{v1} (P v1) from: 1\n";

TEST_CASE("proof scripts") {
  DerivP one = parse_proof("dfo-format 1\nproof\nstep 1 Id concl: (^atom P v1) |-{v1} (P v1) from:\n");
  CHECK(one->kids.empty());
  DerivP d = parse_proof(kProof);
  CHECK(d->kids.size() == 1);
  CHECK(check_derivation(d).ok);
  CHECK(parse_proof(print_proof(d))->concl.F == d->concl.F);
  CHECK(print_proof(parse_proof(print_proof(d))) == print_proof(d));
  CHECK(kind_of([] {
          parse_proof("dfo-format 1\nproof\nstep 2 AtomIntro concl: (P v1) |-{v1} (P v1) from: 7\n");
        }) == "DanglingRef");
  CHECK(kind_of([] { parse_proof("proof\nstep 1 Id concl: (^atom P v1) |-{v1} (P v1) from:\n"); }) == "ParseError");
  CHECK(kind_of([] { parse_proof("dfo-format 1\nproof\nstep 1 Nope concl: (^atom P v1) |-{v1} (P v1) from:\n"); }) ==
        "ParseError");
}

TEST_CASE("bindings round trip") {
  const char* txt =
      "dfo-format 1\nproof\n"
      "step 1 Cut (bind (cut (P v1))) concl: (^atom P v1) |-{v1} (P v1) from: 2 3\n";
  CHECK(kind_of([&] { parse_proof(txt); }) == "DanglingRef");
  Bindings b;
  b.x = 2;
  b.t = SUB("((v1 c))");
  b.term = T("(f v1)");
  b.cut = M("(P v1)");
  b.st = S("(~subst ((v1 c)) (^atom P v1))");
  auto e = read_sexps(print_bindings(b));
  Bindings c = sexp_bindings(e.at(0));
  CHECK(print_bindings(c) == print_bindings(b));
}

TEST_CASE("model files") {
  const char* txt =
      "dfo-format 1\nmodel\ndomain 2\nconst c 0\nfunc f 1 : 1 0\nrel P 1 : 0\nrel R 2 : 0,1 1,1\nrel Q 0 : ()\n";
  FoModel m = parse_model(txt);
  CHECK(m.n == 2);
  CHECK(m.rel_holds("R", {0, 1}));
  CHECK_FALSE(m.rel_holds("R", {1, 0}));
  CHECK(m.func_value("f", {0}) == 1);
  CHECK(m.rel_holds("Q", {}));
  CHECK(print_model(parse_model(print_model(m))) == print_model(m));
  CHECK(kind_of([] { parse_model("dfo-format 1\nmodel\ndomain 2\nrel P 1 : 5\n"); }) == "ParseError");
  CHECK(kind_of([] { parse_model("dfo-format 1\nmodel\ndomain 2\nconst c 4\n"); }) == "DomainError");
}

TEST_CASE("formula and sequent files") {
  auto f = parse_formula_file("dfo-format 1\nformula mt\ntype {v1,v2}\n(cyl v2 (P v1))\n");
  CHECK_FALSE(f.is_fo);
  CHECK(*f.type == VS({1, 2}));
  CHECK(print_formula_file(f) == "dfo-format 1\nformula mt\ntype {v1,v2}\n(cyl v2 (P v1))\n");
  Sequent s = parse_sequent_file("dfo-format 1\nsequent\n(P v1) |-{v1} (P v1)\n");
  CHECK(print_sequent_file(s) == "dfo-format 1\nsequent\n(P v1) |-{v1} (P v1)\n");
}

TEST_CASE("shared subproofs are printed once") {
  DerivP i = make_node(Rule::Id, Dir::Down, {}, SEQ("(^atom P v1) |-{v1} (P v1)"), {});
  DerivP w = make_node(Rule::W_L, Dir::Down, {}, SEQ("(^and (^atom P v1) (^atom P v1)) |-{v1} (P v1)"), {i});
  DerivP meet = make_node(Rule::And_R, Dir::Down, {},
                          SEQ("(^and (^and (^atom P v1) (^atom P v1)) (^and (^atom P v1) (^atom P v1))) |-{v1} (and (P v1) (P v1))"),
                          {w, w});
  std::string t = print_proof(meet);
  CHECK(std::count(t.begin(), t.end(), '\n') == 5);
  DerivP back = parse_proof(t);
  CHECK(print_proof(back) == t);
  CHECK(back->kids[0] == back->kids[1]);
}
