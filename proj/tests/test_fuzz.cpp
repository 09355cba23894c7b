#include "common.hpp"
#include "dfo/fuzz.hpp"

using namespace dfo;

TEST_CASE("generated formulas and sequents are well typed") {
  Rng r(7);
  GenOpts o;
  o.pool = 4;
  for (int i = 0; i < 300; ++i) {
    o.dfostar = i % 2 == 0;
    VarSet F = random_subset(r, o.pool, 3);
    MtP a = random_mt(r, F, 6, o);
    CHECK(mt_type(a) == F);
    Sequent s = random_sequent(r, F, 4, o);
    CHECK(polarity_ok(s.l, Pol::Pos));
    CHECK(polarity_ok(s.r, Pol::Neg));
  }
}

TEST_CASE("rule fuzz smoke run") {
  FuzzReport rep = soundness_fuzz(1, 40);
  INFO(rep.first_violation);
  INFO(rep.first_rejection);
  CHECK(rep.violations == 0);
  CHECK(rep.rejected == 0);
  for (int i = 0; i < kNumRules; ++i) {
    CHECK(rep.per_rule[static_cast<Rule>(i)] > 0);
    CHECK(rep.per_rule_nonvacuous[static_cast<Rule>(i)] > 0);
  }
}
