#include "common.hpp"

TEST_CASE("free variables") {
  CHECK(free_vars(FO("(forall v2 (R v2))")).empty());
  CHECK(free_vars(T("c")).empty());
  CHECK(free_vars(T("(f v1 v2)")) == VS({1, 2}));
  CHECK(free_vars(FO("(and (R v1) (exists v1 (R v1 v3)))")) == VS({1, 3}));
}

TEST_CASE("multi-type typing") {
  CHECK(mt_type(M("(dia v1 (R v1))")).empty());
  CHECK(mt_type(M("(cyl v2 (R v1))")) == VS({1, 2}));
  CHECK(mt_type(M("(subst ((v1 (f v3 v4))) (R v1))")) == VS({3, 4}));
  CHECK(mt_type(M("(sdia ((v1 (f v3 v4))) (R v3 v4))")) == VS({1}));
  CHECK(kind_of([] { M("(and (R v1) (R v2))"); }) == "TypeError");
  CHECK(kind_of([] { M("(dia v2 (R v1))"); }) == "TypeError");
  CHECK(kind_of([] { M("(cyl v1 (R v1))"); }) == "TypeError");
  CHECK(kind_of([] { M("(subst ((v2 c)) (R v1))"); }) == "TypeError");
}

TEST_CASE("simultaneous substitution") {
  Subst s = SUB("((v1 c) (v2 v2))");
  CHECK(fo_eq(apply_subst(FO("(= v1 v2)"), s), FO("(= c v2)")));
  CHECK(alpha_eq(apply_subst(FO("(R v1)"), Subst::identity(VS({1}))), FO("(R v1)")));
  CHECK(fo_eq(apply_subst(FO("(forall v1 (R v1 v2))"), SUB("((v2 v1))")), FO("(forall v3 (R v3 v1))")));
  CHECK(kind_of([] { apply_subst(FO("(R v1 v2)"), SUB("((v1 c))")); }) == "DomainError");
}

TEST_CASE("substitution composition") {
  CHECK(subst_eq(compose_substs(SUB("((v1 v2))"), SUB("((v1 (f v1)))")), SUB("((v1 (f v2)))")));
  Subst s = SUB("((v1 (f v2)) (v3 c))");
  CHECK(subst_eq(compose_substs(Subst::identity(s.range_fv()), s), s));
  CHECK(subst_eq(compose_substs(SUB("((v1 c) (v2 c))"), SUB("((v3 (g v1 v2)))")), SUB("((v3 (g c c)))")));
  CHECK(kind_of([] { compose_substs(SUB("((v1 c))"), SUB("((v3 (g v1 v2)))")); }) == "DomainError");
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(FO("(forall v1 (R v1))"), FO("(forall v2 (R v2))")));
  CHECK_FALSE(alpha_eq(FO("(forall v1 (R v1 v2))"), FO("(forall v1 (R v1 v3))")));
  CHECK(alpha_eq(FO("(exists v5 (imp (R v5) bot))"), FO("(exists v1 (imp (R v1) bot))")));
  CHECK_FALSE(alpha_eq(FO("(forall v1 (forall v2 (R v1 v2)))"), FO("(forall v2 (forall v1 (R v1 v2)))")));
  CHECK(alpha_eq(FO("(forall v1 (forall v2 (R v1 v2)))"), FO("(forall v2 (forall v1 (R v2 v1)))")));
}

TEST_CASE("fresh variables") {
  CHECK(fresh_var({}) == 1);
  CHECK(fresh_var(VS({1, 2})) == 3);
  CHECK(fresh_var(VS({1, 3})) == 2);
}
