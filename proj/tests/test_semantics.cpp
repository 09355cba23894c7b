#include "common.hpp"

static FoModel two_point() {
  FoModel m;
  m.n = 2;
  m.rel_arity = {{"R", 1}};
  m.rels["R"] = {1, 0};
  m.consts["c"] = 1;
  return m;
}

TEST_CASE("first-order evaluation") {
  FoModel m = two_point();
  CHECK(eval_fo(m, {{1, 0}}, FO("(R v1)")));
  CHECK(eval_fo(m, {}, FO("(exists v1 (R v1))")));
  CHECK_FALSE(eval_fo(m, {}, FO("(forall v1 (R v1))")));
  CHECK_FALSE(eval_fo(m, {{1, 0}}, FO("bot")));
  CHECK_FALSE(eval_fo(m, {}, FO("(R c)")));
  CHECK(kind_of([&] { eval_fo(m, {}, FO("(R v1)")); }) == "DomainError");
}

TEST_CASE("adjoint triple on small maps") {
  FoModel m = two_point();
  FMap pi = proj_map(VS({1}), 1, 2);
  CHECK(pred_eq(op_direct(pi, p_empty({}, 2)), p_empty(VS({1}), 2)));
  CHECK(pred_eq(op_direct(pi, p_full({}, 2)), p_full(VS({1}), 2)));
  PredSet a{VS({1}), {1, 0}};
  CHECK(pred_eq(op_diamond(pi, a), p_full({}, 2)));
  CHECK(pred_eq(op_box(pi, a), p_empty({}, 2)));
  CHECK(pred_eq(op_box(pi, p_full(VS({1}), 2)), p_full({}, 2)));
  FMap t = subst_map(m, SUB("((v1 c))"));
  HeteroModel h = hetero(m);
  CHECK(pred_eq(op_direct(t, eval_mt(h, M("(R v1)"))), eval_mt(h, M("(R c)"))));
  // direct image of a singleton
  PredSet one{VS({1}), {0, 1}};
  CHECK(pred_eq(op_diamond(t, p_full({}, 2)), one));
}

TEST_CASE("multi-type evaluation and validity") {
  FoModel m = two_point();
  HeteroModel h = hetero(m);
  CHECK(pred_eq(eval_mt(h, M("(top v1 v2)")), p_full(VS({1, 2}), 2)));
  CHECK(pred_eq(eval_mt(h, M("(dia v1 (R v1))")), p_full({}, 2)));
  CHECK(pred_eq(eval_mt(h, M("(cyl v2 (R v1))")), cylindrify_to(eval_mt(h, M("(R v1)")), VS({1, 2}), 2)));
  CHECK(seq_valid(h, SEQ("(^atom R v1) |-{v1} (R v1)")));
  CHECK(kind_of([] { SEQ("^top |-{} (^dia v1 (^atom R v1))"); }) != "");
  CHECK(seq_valid(h, SEQ("^top |-{} (dia v1 (R v1))")));
  CHECK_FALSE(seq_valid(h, SEQ("(R v1) |-{v1} (bot v1)")));
}

TEST_CASE("identity suites") {
  FoModel one = default_signature_model(1);
  CHECK(check_identities(one, 'c', VS({1, 2})).ok);
  FoModel m = default_signature_model(2);
  for (char w : std::string("abcdefpji")) {
    auto r = check_identities(m, w, VS({1, 2}));
    INFO(w << " " << r.counterexample);
    CHECK(r.ok);
    CHECK(r.checked > 0);
  }
}

TEST_CASE("valuation conditions") {
  FoModel m = default_signature_model(2);
  HeteroModel h = hetero(m);
  auto r = check_valuation(h, VS({1, 2}));
  INFO(r.counterexample);
  CHECK(r.ok);
  h.override_atoms["(= c c)"] = p_empty({}, 2);
  auto bad = check_valuation(h, VS({1, 2}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.counterexample.find("(= c c)") != std::string::npos);
}

TEST_CASE("faithfulness") {
  FoModel m = default_signature_model(2);
  CHECK(check_faithfulness(m, M("(R v1 v1)")));
  CHECK(check_faithfulness(m, M("(cyl v3 (dia v1 (R v1 v2)))")));
  CHECK(check_faithfulness(m, M("(subst ((v1 (f v2))) (box v3 (R v1 v3)))")));
  CHECK(check_faithfulness(m, M("(sbox ((v1 (f v2))) (P v2))")));
}
