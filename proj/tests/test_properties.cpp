#include <fstream>
#include <sstream>

#include "common.hpp"
#include "dfo/cli.hpp"
#include "dfo/cutelim.hpp"
#include "dfo/derivations.hpp"
#include "dfo/fuzz.hpp"

namespace {

// a cut whose premises are cut-free
DerivP topmost_cut(const DerivP& d) {
  for (auto& k : d->kids)
    if (DerivP c = topmost_cut(k)) return c;
  return d->rule == Rule::Cut ? d : nullptr;
}

bool all_nodes_valid(const HeteroModel& H, const DerivP& d) {
  if (!seq_valid(H, d->concl)) return false;
  for (auto& k : d->kids)
    if (!all_nodes_valid(H, k)) return false;
  return true;
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

TEST_CASE("single reductions keep every node valid in two-element models") {
  Rng r(2024);
  GenOpts g;
  int sampled = 0, principal = 0;
  for (int i = 0; i < 4000 && sampled < 100; ++i) {
    VarSet F = random_subset(r, 3, 2);
    DerivP d;
    try {
      MtP a = random_mt(r, F, 1 + r.below(3), g);
      d = r.coin() ? derive_kappa(F, a).fwd : cut(a, derive_identity(a), derive_identity(a));
    } catch (const Error&) {
      continue;
    }
    // follow the reduction: each reduct's own topmost cut is sampled next
    for (DerivP c = topmost_cut(d); c && sampled < 100 && deriv_size(c) <= 300;) {
      bool both = principal_at(c->kids[0], 1) && principal_at(c->kids[1], 0);
      DerivP red = both ? principal_reduce(c) : parametric_move(c);
      principal += both;
      ++sampled;
      REQUIRE(check_derivation(red).ok);
      CHECK(seq_eq(red->concl, c->concl));
      for (int m = 0; m < 3; ++m) {
        FoModel M = random_model(r, 2);
        CHECK_MESSAGE(all_nodes_valid(hetero(M), red), print_sequent(c->concl));
      }
      c = topmost_cut(red);
    }
  }
  CHECK(sampled == 100);
  CHECK(principal > 0);
  CHECK(principal < sampled);
}

TEST_CASE("cli exit codes") {
  CHECK(cli({}) == kExitUsage);
  CHECK(cli({"--help"}) == kExitOk);
  CHECK(cli({"check"}) == kExitUsage);
  CHECK(cli({"check", "/nonexistent.proof"}) == kExitUsage);
  CHECK(cli({"derive-axiom", "eqrefl"}) == kExitUsage);
  CHECK(cli({"derive-axiom", "taut", "--A", "(P c)"}) == kExitRejected);
  std::string out;
  CHECK(cli({"derive-axiom", "eqrefl", "--t", "c"}, &out) == kExitOk);
  CHECK(out.find("dfo-format 1\nproof\n") != std::string::npos);
  CHECK(cli({"selfcheck", "--domain", "1"}, &out) == kExitOk);
  CHECK(out.find("selfcheck ok") != std::string::npos);
}

TEST_CASE("cli pipelines round trip through files") {
  auto tmp = [](const std::string& name, const std::string& text) {
    std::string p = "/tmp/dfo_prop_" + name;
    std::ofstream(p) << text;
    return p;
  };
  FormulaFile f;
  f.mt = M("(subst ((v1 (f v2))) (dia v3 (R v1 v3)))");
  std::string a = tmp("a.mt", print_formula_file(f)), t, k, p, c;
  REQUIRE(cli({"translate", a}, &t) == kExitOk);
  REQUIRE(cli({"canon", tmp("t.fo", t)}, &k) == kExitOk);
  FormulaFile kf = parse_formula_file(k);
  CHECK(mt_type(kf.mt) == mt_type(f.mt));
  CHECK(alpha_eq(tau(kf.mt), tau(f.mt)));
  REQUIRE(cli({"derive-id", a}, &p) == kExitOk);
  std::string pf = tmp("id.proof", p);
  CHECK(cli({"check", pf}, &c) == kExitOk);
  CHECK(c.rfind("ok ", 0) == 0);
  CHECK(cli({"cut-elim", pf}, &c) == kExitOk);
  CHECK(print_proof(parse_proof(c)) == p);
}
