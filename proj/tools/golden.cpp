// golden corpus driver
//   dfo_golden make DIR     write the generated input files
//   dfo_golden record DIR   run every case and store its output
//   dfo_golden check DIR    compare against the stored output, round-trip every input
#include <iostream>

#include "dfo/derivations.hpp"
#include "dfo/tactics.hpp"
#include "golden_core.hpp"

using namespace golden;

namespace {

void proof(const fs::path& dir, const std::string& name, const DerivP& d) {
  spit(dir / "proofs" / (name + ".proof"), print_proof(d));
}

void mt_file(const fs::path& dir, const std::string& name, const char* text) {
  FormulaFile f;
  f.mt = parse_mt(text);
  spit(dir / "formulas" / (name + ".mt"), print_formula_file(f));
}

void fo_file(const fs::path& dir, const std::string& name, const char* text, std::optional<VarSet> type = {}) {
  FormulaFile f;
  f.is_fo = true;
  f.fo = parse_fo(text);
  f.type = type;
  spit(dir / "formulas" / (name + ".fo"), print_formula_file(f));
}

void make(const fs::path& dir) {
  const char* ids[][2] = {{"id_atom", "(P v1)"},
                          {"id_eq", "(= v1 c)"},
                          {"id_and", "(and (P v1) (R v1 v1))"},
                          {"id_or_imp", "(or (imp (P v1) (P v1)) (top v1))"},
                          {"id_dia", "(dia v2 (R v1 v2))"},
                          {"id_box", "(box v2 (R v1 v2))"},
                          {"id_cyl", "(cyl v2 (P v1))"},
                          {"id_subst", "(subst ((v1 (f v2))) (P v1))"},
                          {"id_sdia", "(sdia ((v1 (f v2))) (P v2))"},
                          {"id_sbox", "(sbox ((v1 (f v2))) (P v2))"}};
  for (auto& [n, f] : ids) proof(dir, n, derive_identity(parse_mt(f)));

  AxiomInstance taut{Schema::Taut, parse_fo("(imp (P c) (or (P c) (= c c)))"), {}, {}, 0, {}, {}};
  AxiomInstance dist{Schema::Dist, {}, parse_fo("(P v1)"), parse_fo("(R v1 v2)"), 1, {}, {}};
  AxiomInstance gen{Schema::Gen, {}, parse_fo("(P c)"), {}, 1, {}, {}};
  AxiomInstance inst{Schema::Inst, {}, parse_fo("(R v1 v2)"), {}, 1, {}, parse_term("(f v3)")};
  AxiomInstance refl{Schema::EqRefl, {}, {}, {}, 0, {}, parse_term("c")};
  AxiomInstance sub{Schema::EqSubst, parse_fo("(= v1 c)"), {}, {}, 1, parse_term("c"), parse_term("c")};
  proof(dir, "ax_taut", derive_axiom(taut));
  proof(dir, "ax_dist", derive_axiom(dist));
  proof(dir, "ax_gen", derive_axiom(gen));
  proof(dir, "ax_inst", derive_axiom(inst));
  proof(dir, "ax_eqrefl", derive_axiom(refl));
  proof(dir, "ax_eqsubst", derive_axiom(sub));
  proof(dir, "closure_dist", universal_closure(derive_axiom(dist)));
  proof(dir, "closure_inst", universal_closure(derive_axiom(inst)));
  proof(dir, "closure_eqsubst", universal_closure(derive_axiom(sub)));

  DerivP d1 = derive_axiom(refl), d2 = derive_axiom(sub);
  DerivP mp1 = modus_ponens(d1, d2);
  proof(dir, "mp_refl_subst", mp1);
  proof(dir, "mp_twice", modus_ponens(d1, mp1));
  AxiomInstance t2{Schema::Taut, parse_fo("(imp (= c c) (or (= c c) (P c)))"), {}, {}, 0, {}, {}};
  proof(dir, "mp_taut", modus_ponens(d1, derive_axiom(t2)));

  MtP k1 = parse_mt("(subst ((v1 v2)) (dia v3 (R v1 v3)))");
  MtP k2 = parse_mt("(subst ((v1 (f v2))) (R v1 v1))");
  proof(dir, "kappa_fwd_dia", derive_kappa(mt_type(k1), k1).fwd);
  proof(dir, "kappa_bwd_dia", derive_kappa(mt_type(k1), k1).bwd);
  proof(dir, "kappa_fwd_rel", derive_kappa(mt_type(k2), k2).fwd);
  MtP a = parse_mt("(and (P v1) (R v1 v1))"), b = parse_mt("(cyl v2 (P v1))");
  proof(dir, "cut_id_and", cut(a, derive_identity(a), derive_identity(a)));
  proof(dir, "cut_id_cyl", cut(b, derive_identity(b), derive_identity(b)));

  // rejected inputs
  proof(dir, "bad_open", Lin(parse_sequent("(P v1) |-{v1} (P v1)")).step(Rule::AtomIntro).hyp());
  std::string t = print_proof(derive_identity(parse_mt("(P v1)")));
  auto at = t.find("|-{v1} (P v1) from:");
  spit(dir / "proofs" / "bad_concl.proof", t.substr(0, at) + "|-{v1} (Q v1) from:" + t.substr(at + 19));
  spit(dir / "proofs" / "bad_dangling.proof", format_header() + "proof\nstep 1 AtomIntro concl: (P v1) |-{v1} (P v1) from: 7\n");
  spit(dir / "proofs" / "bad_header.proof", "dfo-format 2\nproof\n");

  mt_file(dir, "subst_dia", "(subst ((v1 (f v2))) (dia v3 (R v1 v3)))");
  mt_file(dir, "cyl", "(cyl v2 (and (P v1) (R v1 v1)))");
  mt_file(dir, "sdia", "(sdia ((v1 (f v2))) (P v2))");
  mt_file(dir, "nested_subst", "(subst ((v1 v2)) (subst ((v3 (f v1))) (P v3)))");
  mt_file(dir, "subst_imp", "(subst ((v1 v2)) (imp (P v1) (R v1 v1)))");
  mt_file(dir, "box", "(box v2 (or (R v1 v2) (R v2 v1)))");
  mt_file(dir, "top", "(top v1)");
  mt_file(dir, "exclusion", "(excl (P v1) (R v1 v1))");
  mt_file(dir, "dia_subst", "(dia v1 (subst ((v2 v1)) (P v2)))");
  fo_file(dir, "exists", "(exists v3 (R (f v2) v3))", VarSet{2});
  fo_file(dir, "forall_imp", "(forall v1 (imp (P v1) (P (f v1))))");
  fo_file(dir, "eq", "(= (f v1) c)");
  spit(dir / "formulas" / "bad_illtyped.mt", format_header() + "formula mt\n(and (P v1) (bot))\n");
  spit(dir / "formulas" / "bad_syntax.mt", format_header() + "formula mt\n(and (P v1)\n");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: dfo_golden make|record|check DIR\n";
    return 2;
  }
  std::string mode = argv[1];
  fs::path dir = fs::absolute(argv[2]);
  if (mode == "make") {
    make(dir);
    return 0;
  }
  if (mode == "record") {
    fs::current_path(dir);
    for (auto& c : read_cases(dir)) spit(dir / "expected" / (c.name + ".txt"), run_case(c));
    return 0;
  }
  if (mode != "check") {
    std::cerr << "unknown mode " << mode << "\n";
    return 2;
  }
  Summary s = check_corpus(dir);
  for (auto& f : s.failures) std::cout << "FAIL " << f << "\n";
  std::cout << s.cases << " cases, " << s.round_trips << " round trips, " << s.failures.size() << " failures\n";
  return s.failures.empty() ? 0 : 1;
}
