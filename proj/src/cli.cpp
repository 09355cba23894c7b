#include "dfo/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dfo/cutelim.hpp"
#include "dfo/derivations.hpp"
#include "dfo/fuzz.hpp"
#include "dfo/io.hpp"
#include "dfo/translations.hpp"

namespace dfo {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("IOError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string show_path(const std::vector<int>& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s + "]";
}

bool usage_kind(const std::string& k) {
  return k == "ParseError" || k == "DanglingRef" || k == "TypeError" || k == "IOError" || k == "UsageError" ||
         k == "DomainError";
}

struct Opts {
  std::string file;
  std::string calculus = "dfo";
  long budget = -1;
  int domain = 2;
  uint64_t seed = 1;
  long fuzz = 0;
  std::string model;
  std::string schema;
  std::string A, B, C, x, s, t, type;
  bool closure = false;
};

MtP mt_of(const FormulaFile& f, const char* cmd) {
  if (f.is_fo) fail("UsageError", std::string(cmd) + " expects a multi-type formula file");
  if (f.type && *f.type != mt_type(f.mt)) fail("TypeError", "declared type differs from the formula's type");
  return f.mt;
}

int cmd_check(const Opts& o, std::ostream& out) {
  DerivP d = parse_proof(read_file(o.file));
  auto rep = check_derivation(d);
  if (!rep.ok) {
    out << "fail at node " << show_path(rep.fail_path) << ": " << rep.error << "\n";
    return kExitRejected;
  }
  if (rep.dfostar && o.calculus == "dfo") {
    out << "fail: uses rules or connectives of the extended calculus; rerun with --calculus dfostar\n";
    return kExitRejected;
  }
  if (rep.open_hyps > 0) {
    out << "fail: " << rep.open_hyps << " open assumption(s)\n";
    return kExitRejected;
  }
  out << "ok nodes=" << rep.nodes << " height=" << rep.height << " cut=" << (rep.has_cut ? "yes" : "no")
      << " calculus=" << (rep.dfostar ? "dfostar" : "dfo") << "\n";
  return kExitOk;
}

int cmd_translate(const Opts& o, std::ostream& out) {
  MtP a = mt_of(parse_formula_file(read_file(o.file)), "translate");
  FormulaFile r;
  r.is_fo = true;
  r.fo = tau(a);
  r.type = mt_type(a);
  out << print_formula_file(r);
  return kExitOk;
}

int cmd_normalize(const Opts& o, std::ostream& out) {
  MtP a = mt_of(parse_formula_file(read_file(o.file)), "normalize");
  FormulaFile r;
  r.mt = sigma(a);
  out << print_formula_file(r);
  return kExitOk;
}

int cmd_canon(const Opts& o, std::ostream& out) {
  FormulaFile f = parse_formula_file(read_file(o.file));
  VarSet F;
  FoP a;
  if (f.is_fo) {
    a = f.fo;
    if (f.type) F = *f.type;
  } else {
    a = tau(mt_of(f, "canon"));
    F = mt_type(f.mt);
  }
  if (!o.type.empty()) F = parse_varset_token(o.type);
  FormulaFile r;
  r.mt = kappa(F, a);
  out << print_formula_file(r);
  return kExitOk;
}

int cmd_derive_id(const Opts& o, std::ostream& out) {
  MtP a = mt_of(parse_formula_file(read_file(o.file)), "derive-id");
  out << print_proof(derive_identity(a));
  return kExitOk;
}

int cmd_derive_axiom(const Opts& o, std::ostream& out) {
  auto sc = schema_by_name(o.schema);
  if (!sc) fail("UsageError", "unknown schema " + o.schema + " (taut, dist, gen, inst, eqrefl, eqsubst)");
  AxiomInstance ax;
  ax.schema = *sc;
  auto need = [&](const std::string& v, const char* flag) {
    if (v.empty()) fail("UsageError", "schema " + o.schema + " needs --" + flag);
  };
  switch (*sc) {
    case Schema::Taut: need(o.A, "A"); break;
    case Schema::Dist: need(o.B, "B"); need(o.C, "C"); need(o.x, "x"); break;
    case Schema::Gen: need(o.B, "B"); need(o.x, "x"); break;
    case Schema::Inst: need(o.B, "B"); need(o.x, "x"); need(o.t, "t"); break;
    case Schema::EqRefl: need(o.t, "t"); break;
    case Schema::EqSubst: need(o.A, "A"); need(o.x, "x"); need(o.s, "s"); need(o.t, "t"); break;
  }
  if (!o.A.empty()) ax.A = parse_fo(o.A);
  if (!o.B.empty()) ax.B = parse_fo(o.B);
  if (!o.C.empty()) ax.C = parse_fo(o.C);
  if (!o.x.empty() && !is_var_name(o.x, &ax.x)) fail("ParseError", "bad variable " + o.x);
  if (!o.s.empty()) ax.s = parse_term(o.s);
  if (!o.t.empty()) ax.t = parse_term(o.t);
  std::optional<VarSet> F;
  if (!o.type.empty()) F = parse_varset_token(o.type);
  DerivP d = derive_axiom(ax, F);
  if (o.closure) d = universal_closure(d);
  out << "# " << schema_name(ax.schema) << ": " << print_fo(axiom_formula(ax)) << "\n";
  out << print_proof(d);
  return kExitOk;
}

int cmd_cut_elim(const Opts& o, std::ostream& out) {
  DerivP d = parse_proof(read_file(o.file));
  auto rep = check_derivation(d);
  if (!rep.ok) {
    out << "fail at node " << show_path(rep.fail_path) << ": input does not check: " << rep.error << "\n";
    return kExitRejected;
  }
  CutElimResult res;
  try {
    res = eliminate_cuts(d, o.budget);
  } catch (const Error& e) {
    if (e.kind != "StuckError") throw;
    out << "stuck: " << e.what() << "\n";
    return kExitRejected;
  }
  out << print_proof(res.d);
  for (size_t i = 0; i < res.log.size(); ++i) out << "# step " << i + 1 << ": " << res.log[i] << "\n";
  out << "# steps " << res.steps << " of budget " << res.budget << "\n";
  if (!res.complete) {
    out << "# budget exhausted; first remaining cut at " << show_path(res.stuck_at) << "\n";
    return kExitRejected;
  }
  auto sf = subformula_check(res.d);
  out << "# subformula property: "
      << (sf.ok ? std::string("ok") : "violated at " + show_path(sf.node) + " by " + sf.occurrence) << "\n";
  return kExitOk;
}

int cmd_validate(const Opts& o, std::ostream& out) {
  Sequent s = parse_sequent_file(read_file(o.file));
  if (!o.model.empty()) {
    FoModel m = parse_model(read_file(o.model));
    bool v = seq_valid(hetero(m), s);
    out << (v ? "valid" : "invalid") << "\n";
    return v ? kExitOk : kExitRejected;
  }
  if (o.domain < 1 || o.domain > 3) fail("UsageError", "--domain must be 1, 2 or 3 without --model");
  long n = 0;
  std::optional<FoModel> bad;
  for_each_model(o.domain, [&](const FoModel& m) {
    if (bad) return;
    ++n;
    if (!seq_valid(hetero(m), s)) bad = m;
  });
  if (bad) {
    out << "invalid; counter-model:\n" << print_model(*bad);
    return kExitRejected;
  }
  out << "valid in all " << n << " models of size " << o.domain << "\n";
  return kExitOk;
}

int cmd_selfcheck(const Opts& o, std::ostream& out) {
  if (o.domain < 1 || o.domain > 3) fail("UsageError", "--domain must be 1, 2 or 3");
  bool ok = true;
  const VarSet pool{1, 2};
  const std::string suites = "abcdefpji";
  for (int n = 1; n <= o.domain; ++n) {
    std::map<char, SuiteResult> acc;
    long models = 0;
    for_each_model(n, [&](const FoModel& m) {
      ++models;
      for (char w : suites) {
        SuiteResult r = check_identities(m, w, pool);
        auto& a = acc[w];
        a.checked += r.checked;
        if (!r.ok && a.ok) {
          a.ok = false;
          a.counterexample = r.counterexample;
        }
      }
    });
    for (char w : suites) {
      auto& a = acc[w];
      out << "domain " << n << " suite " << w << ": " << a.checked << " checks over " << models << " models, "
          << (a.ok ? "ok" : "counterexample " + a.counterexample) << "\n";
      ok = ok && a.ok;
    }
  }
  if (o.fuzz > 0) {
    FuzzReport f = soundness_fuzz(o.seed, o.fuzz);
    out << "fuzz seed " << o.seed << ": " << f.instances << " instances, " << f.nonvacuous << " non-vacuous, "
        << f.violations << " violations\n";
    if (f.violations) out << "first violation: " << f.first_violation << "\n";
    ok = ok && f.violations == 0;
  }
  out << (ok ? "selfcheck ok" : "selfcheck failed") << "\n";
  return ok ? kExitOk : kExitRejected;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"proof checker and tools for a display calculus of first-order logic", "dfo"};
  app.require_subcommand(1);
  app.fallthrough();
  Opts o;
  app.add_option("--calculus", o.calculus, "dfo or dfostar")->check(CLI::IsMember({"dfo", "dfostar"}));
  app.add_option("--budget", o.budget, "cut elimination step budget (default 10 n^2)");
  app.add_option("--domain", o.domain, "domain size for model enumeration");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--model", o.model, "model file");

  auto file_cmd = [&](const char* name, const char* help, const char* what) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, what)->required();
    return c;
  };
  auto* c_check = file_cmd("check", "check a proof script", "proof file");
  auto* c_tr = file_cmd("translate", "translate a multi-type formula to first-order logic", "formula file");
  auto* c_norm = file_cmd("normalize", "eliminate explicit substitutions", "formula file");
  auto* c_canon = file_cmd("canon", "canonical multi-type form of a formula", "formula file");
  c_canon->add_option("--type", o.type, "type as {v1,v2}");
  auto* c_ax = app.add_subcommand("derive-axiom", "derive a Hilbert axiom instance");
  c_ax->add_option("schema", o.schema, "taut, dist, gen, inst, eqrefl or eqsubst")->required();
  c_ax->add_option("--A", o.A, "formula A");
  c_ax->add_option("--B", o.B, "formula B");
  c_ax->add_option("--C", o.C, "formula C");
  c_ax->add_option("--x", o.x, "variable x");
  c_ax->add_option("--s", o.s, "term s");
  c_ax->add_option("--t", o.t, "term t");
  c_ax->add_option("--type", o.type, "lift to this type, as {v1,v2}");
  c_ax->add_flag("--closure", o.closure, "close universally");
  auto* c_id = file_cmd("derive-id", "derive A |- A", "formula file");
  auto* c_ce = file_cmd("cut-elim", "eliminate cuts from a proof", "proof file");
  auto* c_val = file_cmd("validate", "check a sequent against a model or all small models", "sequent file");
  auto* c_self = app.add_subcommand("selfcheck", "run the algebraic identity suites");
  c_self->add_option("--fuzz", o.fuzz, "also fuzz every rule schema this many times");

  std::vector<std::string> full{"dfo"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : full) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_check->parsed()) return cmd_check(o, out);
    if (c_tr->parsed()) return cmd_translate(o, out);
    if (c_norm->parsed()) return cmd_normalize(o, out);
    if (c_canon->parsed()) return cmd_canon(o, out);
    if (c_ax->parsed()) return cmd_derive_axiom(o, out);
    if (c_id->parsed()) return cmd_derive_id(o, out);
    if (c_ce->parsed()) return cmd_cut_elim(o, out);
    if (c_val->parsed()) return cmd_validate(o, out);
    if (c_self->parsed()) return cmd_selfcheck(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return usage_kind(e.kind) ? kExitUsage : kExitRejected;
  }
  return kExitUsage;
}

}  // namespace dfo
