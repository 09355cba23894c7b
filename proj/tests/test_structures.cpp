#include "common.hpp"

TEST_CASE("structure typing") {
  CHECK(struct_type(S("(^dia v1 (^atom R v1))")).empty());
  CHECK(struct_type(S("(~cyl v2 (^atom R v1))")) == VS({1, 2}));
  CHECK(struct_type(S("(~subst ((v1 (f v2 v2))) (^top v1))")) == VS({2}));
  CHECK(kind_of([] { S("(^and (^atom P v1) (^atom P v2))"); }) == "TypeError");
}

TEST_CASE("interpretation") {
  CHECK(mt_eq(interpret(S("(^and (^atom R v1) (^top v1))")), M("(and (R v1) (top v1))")));
  CHECK(mt_eq(interpret(S("(dia v1 (R v1))")), M("(dia v1 (R v1))")));
  CHECK(mt_eq(interpret(S("(vbox v1 (^atom R v1))")), M("(box v1 (R v1))")));
  CHECK(mt_eq(interpret(S("(^excl (^atom P v1) (vbot v1))")), M("(excl (P v1) (bot v1))")));
}

TEST_CASE("polarity is enforced") {
  CHECK(kind_of([] { SEQ("(P v1) |-{v1} (^atom P v1)"); }) != "");
  CHECK(kind_of([] { SEQ("(vbot v1) |-{v1} (P v1)"); }) != "");
  CHECK(kind_of([] { SEQ("(vimp (P v1) (P v1)) |-{v1} (P v1)"); }) != "");
  CHECK(kind_of([] { SEQ("(P v1) |-{v1} (vimp (^atom P v1) (P v1))"); }) == "");
}

TEST_CASE("display") {
  Sequent s = SEQ("(^and (P v1) (R v1 v1)) |-{v1} (P v1)");
  auto d = display(s, {0, 1});
  CHECK(seq_eq(d.out, SEQ("(R v1 v1) |-{v1} (vimp (P v1) (P v1))")));
  auto id = display(s, {0});
  CHECK(seq_eq(id.out, s));
  CHECK(id.chain.empty());
  Sequent q = SEQ("(^dia v1 (P v1)) |-{} (R c c)");
  CHECK(seq_eq(display(q, {0, 0}).out, SEQ("(P v1) |-{v1} (~cyl v1 (R c c))")));
  CHECK(kind_of([&] { display(s, {0, 5}); }) == "PathError");
  CHECK(kind_of([&] { display(s, {2}); }) == "PathError");
}
