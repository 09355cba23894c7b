#include "common.hpp"

static std::vector<Sequent> prem(Rule r, const char* c, Bindings b = {}, Dir d = Dir::Down) {
  return premises_of(r, d, SEQ(c), b);
}

TEST_CASE("rule premises") {
  Bindings bx;
  bx.x = 1;
  auto p = prem(Rule::cadj, "(P v1) |-{v1} (P v1)", bx);
  REQUIRE(p.size() == 1);
  CHECK(seq_eq(p[0], SEQ("(~cyl v1 (^dia v1 (P v1))) |-{v1} (P v1)")));
  CHECK(prem(Rule::Id, "(^atom R v1 c) |-{v1} (R v1 c)").empty());
  CHECK(prem(Rule::Id_Eq, "(^= v1 c) |-{v1} (= v1 c)").empty());
  auto q = prem(Rule::And_R, "(^and (P v1) (R v1 v1)) |-{v1} (and (P v1) (R v1 v1))");
  REQUIRE(q.size() == 2);
  CHECK(seq_eq(q[0], SEQ("(P v1) |-{v1} (P v1)")));
  CHECK(seq_eq(q[1], SEQ("(R v1 v1) |-{v1} (R v1 v1)")));
  bx.x = 2;
  CHECK(kind_of([&] { prem(Rule::cadj, "(P v1) |-{v1} (P v1)", bx); }) == "SideCondError");
  CHECK(kind_of([] { prem(Rule::And_R, "(P v1) |-{v1} (P v1)"); }) == "MatchError");
}

TEST_CASE("double-line rules run both ways") {
  Sequent c = SEQ("(^and (P v1) (R v1 v1)) |-{v1} (P v1)");
  auto up = premises_of(Rule::DP_and_imp, Dir::Up, c, {});
  REQUIRE(up.size() == 1);
  auto down = premises_of(Rule::DP_and_imp, Dir::Down, up[0], {});
  REQUIRE(down.size() == 1);
  CHECK(seq_eq(down[0], c));
  CHECK(kind_of([&] { premises_of(Rule::W_L, Dir::Up, c, {}); }) == "MatchError");
}

TEST_CASE("atom side condition") {
  CHECK(side_cond_atom({SUB("((v1 c))")}, "R", {T("v1")}, {}, "R", {T("c")}));
  CHECK(side_cond_atom({}, "R", {T("v1")}, {}, "R", {T("v1")}));
  CHECK_FALSE(side_cond_atom({SUB("((v1 c))")}, "R", {T("v1")}, {}, "R", {T("v1")}));
  CHECK(side_cond_atom({SUB("((v2 (f v3)))"), SUB("((v1 v2))")}, "R", {T("v1")}, {}, "R", {T("(f v3)")}));
}

TEST_CASE("check step") {
  CHECK_NOTHROW(check_step(Rule::Id_Eq, Dir::Down, {}, SEQ("(^= v1 c) |-{v1} (= v1 c)"), {}));
  Bindings b;
  b.cut = M("(P v1)");
  CHECK_NOTHROW(check_step(Rule::Cut, Dir::Down, b, SEQ("(^atom P v1) |-{v1} (P v1)"),
                           {SEQ("(^atom P v1) |-{v1} (P v1)"), SEQ("(P v1) |-{v1} (P v1)")}));
  CHECK(kind_of([] { SEQ("(^dia v1 (^atom R v1)) |-{v1} (R v1)"); }) == "TypeError");
  CHECK(kind_of([&] {
          check_step(Rule::Cut, Dir::Down, b, SEQ("(^atom P v1) |-{v1} (P v1)"),
                     {SEQ("(^atom P v1) |-{v1} (P v1)"), SEQ("(P v1) |-{v1} (R v1 v1)")});
        }) == "PremiseMismatch");
}

TEST_CASE("derivation checking") {
  DerivP id = make_node(Rule::Id, Dir::Down, {}, SEQ("(^atom P v1) |-{v1} (P v1)"), {});
  CHECK(check_derivation(id).ok);
  DerivP two = make_node(Rule::AtomIntro, Dir::Down, {}, SEQ("(P v1) |-{v1} (P v1)"), {id});
  auto rep = check_derivation(two);
  CHECK(rep.ok);
  CHECK(rep.nodes == 2);
  CHECK_FALSE(rep.has_cut);
  DerivP bad = make_node(Rule::AtomIntro, Dir::Down, {}, SEQ("(R v1 v1) |-{v1} (P v1)"), {id});
  auto rb = check_derivation(bad);
  CHECK_FALSE(rb.ok);
  CHECK(rb.error.find("PremiseMismatch") != std::string::npos);
  CHECK(rb.fail_path.empty());
}
