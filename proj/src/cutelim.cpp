#include "dfo/cutelim.hpp"

#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "dfo/io.hpp"

namespace dfo {

namespace {

[[noreturn]] void stuck(const std::string& m) { fail("StuckError", m); }

// proof of display(concl(pi), q).out from pi
DerivP redisplay(const DerivP& pi, const Path& q) {
  DisplayResult dr = display(pi->concl, q);
  Lin l(dr.out);
  for (size_t i = dr.chain.size(); i-- > 0;) {
    auto& s = dr.chain[i];
    l.step(s.rule, s.dir == Dir::Down ? Dir::Up : Dir::Down, s.b);
  }
  return l.close(pi);
}

// proof of target, given a proof of its display at q
DerivP undisplay(const Sequent& target, const Path& q, const DerivP& top) {
  DisplayResult dr = display(target, q);
  Lin l(target);
  for (auto& s : dr.chain) l.step(s.rule, s.dir, s.b);
  return l.close(top);
}

// pi proves a sequent with formula A at q; side proves X |- A (q antecedent-like)
// or A |- X; result proves the sequent with X at q
DerivP cut_at(const DerivP& pi, const Path& q, const DerivP& side) {
  StP occ = at_path(pi->concl, q);
  if (occ->k != SK::Leaf) fail("InternalError", "cut_at: not a formula occurrence");
  bool pos = pol_at(pi->concl, q) == Pol::Pos;
  StP x = pos ? side->concl.l : side->concl.r;
  Sequent target = replace_at(pi->concl, q, x);
  DerivP shown = redisplay(pi, q);
  DerivP c = pos ? cut(occ->f, side, shown) : cut(occ->f, shown, side);
  return undisplay(target, q, c);
}

Sequent mark(const Sequent& s, const std::vector<Path>& ps, const StP& with) {
  Sequent r = s;
  for (auto& p : ps) r = replace_at(r, p, with);
  return r;
}

void meta_paths(const StP& x, Path& cur, std::vector<Path>& out) {
  if (x->k == SK::Meta) {
    out.push_back(cur);
    return;
  }
  for (int i = 0; i < num_children(x); ++i) {
    cur.push_back(i);
    meta_paths(child(x, i), cur, out);
    cur.pop_back();
  }
}
std::vector<Path> meta_paths(const Sequent& s) {
  std::vector<Path> out;
  Path cur{0};
  meta_paths(s.l, cur, out);
  cur = {1};
  meta_paths(s.r, cur, out);
  return out;
}

std::optional<std::vector<Sequent>> try_premises(const DerivP& d, const std::vector<Path>& ps, const VarSet& F) {
  try {
    return premises_of(d->rule, d->dir, mark(d->concl, ps, st::meta(1, F)), d->b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Belnap substitution: occurrences ps of the cut formula in d are replaced by
// repl; where one is introduced, a new cut against `other` is placed instead
struct Subster {
  MtP A;
  int sd;  // side of d where the formula sits: 1 when d is the left premise
  StP repl;
  DerivP other;

  DerivP run(const DerivP& d, const std::vector<Path>& ps) const {
    if (ps.empty()) return d;
    Sequent changed = mark(d->concl, ps, repl);
    if (d->rule == Rule::Hyp) return make_hyp(changed);
    if (auto pr = try_premises(d, ps, A->type)) {
      if (pr->size() != d->kids.size()) stuck("premise count mismatch at " + rule_name(d->rule));
      std::vector<DerivP> ks;
      for (size_t i = 0; i < pr->size(); ++i) ks.push_back(run(d->kids[i], meta_paths((*pr)[i])));
      return make_node(d->rule, d->dir, d->b, changed, ks);
    }
    std::vector<Path> rest;
    bool intro = false;
    for (auto& p : ps) {
      if (p == Path{sd} && !try_premises(d, {p}, A->type))
        intro = true;
      else
        rest.push_back(p);
    }
    if (!intro) stuck("cut formula ancestor is inspected by " + rule_name(d->rule) + " without being introduced");
    if (!rest.empty() && !try_premises(d, rest, A->type))
      stuck("cut formula ancestors cannot be traced through " + rule_name(d->rule));
    DerivP n = run(d, rest);
    DerivP c = sd == 1 ? cut(A, n, other) : cut(A, other, n);
    if (!seq_eq(c->concl, changed)) stuck("substituted cut does not restore the sequent at " + rule_name(d->rule));
    return c;
  }
};

// memo tables hold the node so its address cannot be reused while cached
template <class T>
using Memo = std::unordered_map<const Deriv*, std::pair<DerivP, T>>;

bool cut_free(const DerivP& d, Memo<bool>& memo) {
  auto it = memo.find(d.get());
  if (it != memo.end()) return it->second.second;
  bool r = d->rule != Rule::Cut;
  for (auto& k : d->kids)
    if (r && !cut_free(k, memo)) r = false;
  memo[d.get()] = {d, r};
  return r;
}

int height(const DerivP& d, Memo<int>& memo) {
  auto it = memo.find(d.get());
  if (it != memo.end()) return it->second.second;
  int h = 0;
  for (auto& k : d->kids) h = std::max(h, height(k, memo));
  memo[d.get()] = {d, h + 1};
  return h + 1;
}

bool first_cut(const DerivP& d, std::vector<int>& path) {
  if (d->rule == Rule::Cut) return true;
  for (size_t i = 0; i < d->kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (first_cut(d->kids[i], path)) return true;
    path.pop_back();
  }
  return false;
}

std::string conn_name(const MtP& a) {
  std::string s = print_mt(a);
  size_t b = s.find_first_not_of('(');
  size_t e = s.find_first_of(" )", b);
  return s.substr(b, e - b);
}

}  // namespace

CutRank cut_rank(const DerivP& c) {
  if (c->rule != Rule::Cut) fail("PreconditionError", "not a cut");
  return {mt_size(c->b.cut), deriv_height(c->kids[0]) + deriv_height(c->kids[1])};
}

bool principal_at(const DerivP& d, int sd) {
  if (d->rule == Rule::Hyp) return false;
  StP occ = sd == 0 ? d->concl.l : d->concl.r;
  if (occ->k != SK::Leaf) return false;
  return !try_premises(d, {Path{sd}}, occ->type).has_value();
}

DerivP principal_reduce(const DerivP& node) {
  if (node->rule != Rule::Cut) fail("NotPrincipal", "not a cut");
  const MtP& A = node->b.cut;
  const DerivP& p1 = node->kids[0];
  const DerivP& p2 = node->kids[1];
  if (!principal_at(p1, 1) || !principal_at(p2, 0)) fail("NotPrincipal", "cut formula is parametric in a premise");
  auto want = [&](Rule r1, Rule r2) {
    if (p1->rule != r1 || p2->rule != r2)
      fail("NotPrincipal", "unexpected introductions " + rule_name(p1->rule) + " / " + rule_name(p2->rule));
  };
  DerivP out;
  switch (A->k) {
    case MK::Rel: want(Rule::Id, Rule::AtomIntro); out = p2->kids[0]; break;
    case MK::Eq: want(Rule::Id_Eq, Rule::AtomIntro_Eq); out = p2->kids[0]; break;
    case MK::Top: want(Rule::Top_R, Rule::Top_L); out = p2->kids[0]; break;
    case MK::Bot: want(Rule::Bot_R, Rule::Bot_L); out = p1->kids[0]; break;
    case MK::And:
      want(Rule::And_R, Rule::And_L);
      out = cut_at(cut_at(p2->kids[0], {0, 0}, p1->kids[0]), {0, 1}, p1->kids[1]);
      break;
    case MK::Or:
      want(Rule::Or_R, Rule::Or_L);
      out = cut_at(cut_at(p1->kids[0], {1, 0}, p2->kids[0]), {1, 1}, p2->kids[1]);
      break;
    case MK::Imp:
      want(Rule::Imp_R, Rule::Imp_L);
      out = cut_at(cut_at(p1->kids[0], {1, 0}, p2->kids[0]), {1, 1}, p2->kids[1]);
      break;
    case MK::Dia: want(Rule::Dia_R, Rule::Dia_L); out = cut_at(p2->kids[0], {0, 0}, p1->kids[0]); break;
    case MK::SDia: want(Rule::SDia_R, Rule::SDia_L); out = cut_at(p2->kids[0], {0, 0}, p1->kids[0]); break;
    case MK::Box: want(Rule::Box_R, Rule::Box_L); out = cut_at(p1->kids[0], {1, 0}, p2->kids[0]); break;
    case MK::SBox: want(Rule::SBox_R, Rule::SBox_L); out = cut_at(p1->kids[0], {1, 0}, p2->kids[0]); break;
    case MK::Cyl: {
      want(Rule::Cyl_R, Rule::Cyl_L);
      Var x = A->v;
      const StP& Y = node->concl.r;
      DerivP side = Lin(make_seq(st::leaf(A->a), st::box(x, Y))).step(Rule::DP_cyl_box).close(p2->kids[0]);
      DerivP inner = cut_at(p1->kids[0], {1, 0}, side);
      out = Lin(node->concl)
                .step(Rule::cadj, Dir::Down, bx(x))
                .step(Rule::DP_cyl_box, Dir::Up)
                .step(Rule::DP_dia_cyl)
                .close(inner);
      break;
    }
    case MK::Sub: {
      want(Rule::Sub_R, Rule::Sub_L);
      const Subst& t = A->s;
      const StP& Y = node->concl.r;
      DerivP side = Lin(make_seq(st::leaf(A->a), st::sbox(t, Y))).step(Rule::DP_sub_sbox).close(p2->kids[0]);
      DerivP inner = cut_at(p1->kids[0], {1, 0}, side);
      out = Lin(node->concl)
                .step(Rule::sadj, Dir::Down, bt(t))
                .step(Rule::DP_sub_sbox, Dir::Up)
                .step(Rule::DP_sdia_sub)
                .close(inner);
      break;
    }
    default: fail("NotPrincipal", "no introduction rules for " + conn_name(A));
  }
  if (!seq_eq(out->concl, node->concl)) fail("InternalError", "principal reduct changed the end sequent");
  return out;
}

DerivP parametric_move(const DerivP& node) {
  if (node->rule != Rule::Cut) fail("PreconditionError", "not a cut");
  const MtP& A = node->b.cut;
  const DerivP& p1 = node->kids[0];
  const DerivP& p2 = node->kids[1];
  DerivP out;
  if (!principal_at(p1, 1))
    out = Subster{A, 1, p2->concl.r, p2}.run(p1, {Path{1}});
  else if (!principal_at(p2, 0))
    out = Subster{A, 0, p1->concl.l, p1}.run(p2, {Path{0}});
  else
    fail("PreconditionError", "cut formula is principal on both sides");
  if (!seq_eq(out->concl, node->concl)) stuck("parametric move changed the end sequent");
  return out;
}

namespace {

struct Driver {
  long budget = 0;
  long steps = 0;
  bool exhausted = false;
  std::vector<std::string> log;
  Memo<bool> cf;
  Memo<int> hs;

  CutRank rank(const DerivP& c) { return {mt_size(c->b.cut), height(c->kids[0], hs) + height(c->kids[1], hs)}; }

  void collect_cuts(const DerivP& d, std::vector<DerivP>& out) {
    if (cut_free(d, cf)) return;
    if (d->rule == Rule::Cut) out.push_back(d);
    for (auto& k : d->kids) collect_cuts(k, out);
  }

  DerivP elim(const DerivP& d) {
    if (cut_free(d, cf)) return d;
    std::vector<DerivP> ks;
    bool same = true;
    for (auto& k : d->kids) {
      ks.push_back(elim(k));
      if (ks.back() != k) same = false;
    }
    DerivP n = same ? d : make_node(d->rule, d->dir, d->b, d->concl, ks);
    if (n->rule != Rule::Cut) return n;
    return reduce(n);
  }

  DerivP reduce(const DerivP& n) {
    if (!cut_free(n->kids[0], cf) || !cut_free(n->kids[1], cf)) return n;  // only after exhaustion
    if (steps >= budget) {
      exhausted = true;
      return n;
    }
    ++steps;
    bool both = principal_at(n->kids[0], 1) && principal_at(n->kids[1], 0);
    DerivP r = both ? principal_reduce(n) : parametric_move(n);
    CutRank before = rank(n);
    std::vector<DerivP> fresh;
    collect_cuts(r, fresh);
    for (auto& c : fresh) {
      CutRank after = rank(c);
      if (!(after < before)) fail("InternalError", "cut rank did not decrease");
      if (!both && after.size != before.size) fail("InternalError", "parametric move changed the cut formula");
    }
    log.push_back(std::string(both ? "principal " : "parametric ") + conn_name(n->b.cut) + " cut on " +
                  print_mt(n->b.cut) + ": " + std::to_string(fresh.size()) + " new cut(s)");
    return elim(r);
  }
};

}  // namespace

CutElimResult eliminate_cuts(const DerivP& d, long budget) {
  auto rep = check_derivation(d);
  if (!rep.ok) fail("PreconditionError", "input does not check: " + rep.error);
  CutElimResult res;
  long n = rep.nodes;
  res.budget = budget < 0 ? 10 * n * n : budget;
  Driver dr;
  dr.budget = res.budget;
  res.d = dr.elim(d);
  res.steps = dr.steps;
  res.log = std::move(dr.log);
  res.complete = !has_cut(res.d);
  if (!res.complete) first_cut(res.d, res.stuck_at);
  return res;
}

// ---------------------------------------------------------------- subformula property

namespace {

struct MtLess {
  bool operator()(const MtP& a, const MtP& b) const { return mt_cmp(a, b) < 0; }
};

// same shape up to a bijective renaming of variables
bool rename_eq(const TermP& a, const TermP& b, std::map<Var, Var>& f, std::map<Var, Var>& g) {
  if (a->k != b->k) return false;
  if (a->k == Term::K::Var) {
    auto i = f.find(a->v), j = g.find(b->v);
    if (i == f.end() && j == g.end()) {
      f[a->v] = b->v;
      g[b->v] = a->v;
      return true;
    }
    return i != f.end() && j != g.end() && i->second == b->v && j->second == a->v;
  }
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!rename_eq(a->args[i], b->args[i], f, g)) return false;
  return true;
}
bool atom_variant(const MtP& a, const MtP& b) {
  if (a->k != b->k || a->name != b->name || a->args.size() != b->args.size()) return false;
  std::map<Var, Var> f, g;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!rename_eq(a->args[i], b->args[i], f, g)) return false;
  return true;
}

// the atom a chain (s1)...(sn)atom stands for, innermost substitution first
MtP flatten_chain(const std::vector<Subst>& prefix, const MtP& core) {
  std::vector<TermP> args = core->args;
  for (size_t i = prefix.size(); i-- > 0;) args = apply_subst(args, prefix[i]);
  return core->k == MK::Eq ? mt::eq(args[0], args[1]) : mt::rel(core->name, args);
}

struct SubCheck {
  std::set<MtP, MtLess> subs;
  std::vector<MtP> atoms;  // atomic subformulas and the atoms of substitution chains

  void add_sub(const MtP& a) {
    if (!subs.insert(a).second) return;
    std::vector<Subst> prefix;
    MtP c = a;
    while (c->k == MK::Sub) {
      prefix.push_back(c->s);
      c = c->a;
    }
    if (c->k == MK::Rel || c->k == MK::Eq) atoms.push_back(flatten_chain(prefix, c));
    if (a->a) add_sub(a->a);
    if (a->b) add_sub(a->b);
  }
  void add_struct_chain(const StP& x) {
    std::vector<Subst> prefix;
    StP c = x;
    while (c->k == SK::Sub) {
      prefix.push_back(c->s);
      c = c->a;
    }
    if (c->k == SK::AtomHat || c->k == SK::EqHat) atoms.push_back(flatten_chain(prefix, interpret(c)));
  }
  bool atom_ok(const StP& x) const {
    MtP f = interpret(x);
    if (subs.count(f)) return true;
    for (auto& a : atoms)
      if (atom_variant(a, f)) return true;
    return false;
  }
  void seed(const StP& x) {
    if (x->k == SK::Leaf) add_sub(x->f);
    if (x->k == SK::Sub) add_struct_chain(x);
    if (x->k == SK::AtomHat || x->k == SK::EqHat) add_sub(interpret(x));
    for (int i = 0; i < num_children(x); ++i) seed(child(x, i));
  }
  std::optional<std::string> scan(const StP& x) const {
    if (x->k == SK::Leaf && !subs.count(x->f)) return print_mt(x->f);
    if ((x->k == SK::AtomHat || x->k == SK::EqHat) && !atom_ok(x)) return print_struct(x);
    for (int i = 0; i < num_children(x); ++i)
      if (auto bad = scan(child(x, i))) return bad;
    return std::nullopt;
  }
  bool walk(const DerivP& d, std::vector<int>& path, SubformulaReport& rep) const {
    auto bad = scan(d->concl.l);
    if (!bad) bad = scan(d->concl.r);
    if (bad) {
      rep.ok = false;
      rep.node = path;
      rep.occurrence = *bad;
      return false;
    }
    for (size_t i = 0; i < d->kids.size(); ++i) {
      path.push_back(static_cast<int>(i));
      if (!walk(d->kids[i], path, rep)) return false;
      path.pop_back();
    }
    return true;
  }
};

}  // namespace

SubformulaReport subformula_check(const DerivP& d) {
  SubCheck sc;
  sc.seed(d->concl.l);
  sc.seed(d->concl.r);
  SubformulaReport rep;
  std::vector<int> path;
  sc.walk(d, path, rep);
  return rep;
}

}  // namespace dfo
