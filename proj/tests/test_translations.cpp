#include "common.hpp"

TEST_CASE("tau") {
  CHECK(fo_eq(tau(M("(dia v1 (R v1))")), FO("(exists v1 (R v1))")));
  CHECK(fo_eq(tau(M("(cyl v2 (R v1))")), FO("(R v1)")));
  CHECK(fo_eq(tau(M("(subst ((v1 c)) (R v1))")), FO("(R c)")));
  CHECK(fo_eq(tau(M("(excl (P v1) (R v1 v1))")), FO("(and (imp (P v1) bot) (R v1 v1))")));
  CHECK(alpha_eq(tau(M("(sdia ((v1 (f v2))) (P v2))")), FO("(exists v3 (and (= v1 (f v3)) (P v3)))")));
}

TEST_CASE("sigma") {
  CHECK(mt_eq(sigma(M("(subst ((v1 (f v2))) (R v1))")), M("(R (f v2))")));
  CHECK(mt_eq(sigma(M("(R v1)")), M("(R v1)")));
  CHECK(mt_eq(sigma(M("(subst ((v1 v2)) (dia v3 (R v1 v3)))")), M("(dia v4 (R v2 v4))")));
  CHECK(mt_eq(sigma(M("(subst ((v1 v2) (v2 (f v3))) (cyl v2 (P v1)))")), M("(cyl v3 (P v2))")));
  CHECK(mt_eq(sigma(M("(subst ((v1 v2)) (subst ((v3 (f v1))) (P v3)))")), M("(P (f v2))")));
}

TEST_CASE("kappa") {
  CHECK(mt_eq(kappa(VS({2}), FO("(R v1)")), M("(cyl v2 (R v1))")));
  CHECK(mt_eq(kappa({}, FO("(exists v1 (R v1))")), M("(dia v1 (R v1))")));
  CHECK(mt_eq(kappa(VS({1}), FO("(exists v1 (R v1))")), M("(cyl v1 (dia v1 (R v1)))")));
  CHECK(mt_eq(kappa(VS({1}), FO("top")), M("(top v1)")));
  CHECK(mt_eq(kappa({}, FO("(= c c)")), M("(= c c)")));
  CHECK(mt_eq(kappa({}, FO("(and (P v1) (P v2))")), M("(and (cyl v2 (P v1)) (cyl v1 (P v2)))")));
}
