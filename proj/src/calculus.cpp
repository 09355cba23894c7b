#include "dfo/calculus.hpp"

#include <array>
#include <unordered_map>

#include "dfo/io.hpp"

namespace dfo {

namespace {
struct InfoRow {
  Rule r;
  RuleInfo info;
};
#define ROW(id, dl, star, item) {Rule::id, {#id, dl, star, item}}
const InfoRow kRows[] = {
    ROW(Id, false, false, 1), ROW(Id_Eq, false, false, 1), ROW(Cut, false, false, 1),
    ROW(DP_and_imp, true, false, 2), ROW(DP_or_excl, true, false, 2),
    ROW(DP_and_coimp, true, false, 2), ROW(DP_or_coexcl, true, false, 2),
    ROW(DP_dia_cyl, true, false, 3), ROW(DP_cyl_box, true, false, 3),
    ROW(DP_sdia_sub, true, false, 4), ROW(DP_sub_sbox, true, false, 4),
    ROW(cadj, false, false, 5), ROW(sadj, false, false, 5),
    ROW(Nec_cyl_top, true, false, 6), ROW(Nec_cyl_bot, true, false, 6),
    ROW(Nec_sub_top, true, false, 7), ROW(Nec_sub_bot, true, false, 7),
    ROW(AtomRewrite, false, false, 8), ROW(AtomRewrite_Eq, false, false, 8),
    ROW(TopS_L, true, false, 9), ROW(BotS_R, true, false, 9), ROW(E_L, false, false, 9),
    ROW(E_R, false, false, 9), ROW(W_L, false, false, 9), ROW(W_R, false, false, 9),
    ROW(C_L, false, false, 9), ROW(C_R, false, false, 9), ROW(A_L, true, false, 9),
    ROW(A_R, true, false, 9),
    ROW(EqRefl, false, false, 10), ROW(EqRewrite, false, false, 10),
    ROW(AtomIntro, false, false, 11), ROW(AtomIntro_Eq, false, false, 11),
    ROW(Bot_L, false, false, 12), ROW(Bot_R, false, false, 12), ROW(Top_L, false, false, 12),
    ROW(Top_R, false, false, 12), ROW(And_L, false, false, 12), ROW(And_R, false, false, 12),
    ROW(Or_L, false, false, 12), ROW(Or_R, false, false, 12), ROW(Imp_L, false, false, 12),
    ROW(Imp_R, false, false, 12),
    ROW(Gri_L, false, false, 13), ROW(Gri_R, false, false, 13),
    ROW(Dia_L, false, false, 14), ROW(Dia_R, false, false, 14), ROW(Box_L, false, false, 14),
    ROW(Box_R, false, false, 14), ROW(Cyl_L, false, false, 14), ROW(Cyl_R, false, false, 14),
    ROW(Sub_L, false, false, 14), ROW(Sub_R, false, false, 14),
    ROW(SDia_L, false, true, 15), ROW(SDia_R, false, true, 15), ROW(SBox_L, false, true, 15),
    ROW(SBox_R, false, true, 15),
    ROW(Mono_cyl, true, false, 16), ROW(Mono_sub, false, false, 16),
    ROW(Int_cyl_excl_L, true, false, 16), ROW(Int_cyl_imp_R, true, false, 16),
    ROW(Int_cyl_coexcl_L, true, false, 16), ROW(Int_cyl_coimp_R, true, false, 16),
    ROW(Int_cyl_and_L, true, false, 16), ROW(Int_cyl_or_R, true, false, 16),
    ROW(Int_sub_and_L, true, false, 16), ROW(Int_sub_or_R, true, false, 16),
    ROW(Int_sub_excl_L, true, false, 16), ROW(Int_sub_imp_R, true, false, 16),
    ROW(Int_sub_coexcl_L, true, false, 16), ROW(Int_sub_coimp_R, true, false, 16),
    ROW(cq_L, true, false, 17), ROW(cq_R, true, false, 17), ROW(sq_L, true, false, 17),
    ROW(sq_R, true, false, 17), ROW(cc_L, true, false, 17), ROW(cc_R, true, false, 17),
    ROW(ss_L, true, false, 17), ROW(ss_R, true, false, 17), ROW(sc_L, true, false, 17),
    ROW(sc_R, true, false, 17),
    ROW(Hyp, false, false, 0),
};
#undef ROW
}  // namespace

const RuleInfo& rule_info(Rule r) {
  static std::array<RuleInfo, kNumRules + 1> table = [] {
    std::array<RuleInfo, kNumRules + 1> t{};
    for (auto& row : kRows) t[static_cast<int>(row.r)] = row.info;
    return t;
  }();
  return table.at(static_cast<int>(r));
}
std::string rule_name(Rule r) { return rule_info(r).name; }
std::optional<Rule> rule_by_name(const std::string& n) {
  static std::unordered_map<std::string, Rule> m = [] {
    std::unordered_map<std::string, Rule> t;
    for (auto& row : kRows) t[row.info.name] = row.r;
    return t;
  }();
  auto it = m.find(n);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

DerivP make_node(Rule r, Dir d, Bindings b, Sequent concl, std::vector<DerivP> kids) {
  auto n = std::make_shared<Deriv>();
  n->rule = r;
  n->dir = d;
  n->b = std::move(b);
  n->concl = std::move(concl);
  n->kids = std::move(kids);
  return n;
}
DerivP make_hyp(Sequent s) { return make_node(Rule::Hyp, Dir::Down, {}, std::move(s), {}); }

// ---------------------------------------------------------------- matching helpers

namespace {
using namespace st;

[[noreturn]] void mismatch(Rule r, const std::string& what) {
  fail("MatchError", rule_name(r) + ": " + what);
}
void need(bool c, Rule r, const std::string& what) {
  if (!c) mismatch(r, what);
}
void side(bool c, Rule r, const std::string& what) {
  if (!c) fail("SideCondError", rule_name(r) + ": " + what);
}
bool is(const StP& x, SK k) { return x->k == k; }
bool leaf_is(const StP& x, MK k) { return x->k == SK::Leaf && x->f->k == k; }
Sequent seq(StP l, StP r) { return make_seq(std::move(l), std::move(r)); }

// strip a structural substitution prefix down to an atom-like node
struct AtomShape {
  std::vector<Subst> prefix;  // outermost first
  StP core;
};
AtomShape atom_shape(const StP& x) {
  AtomShape a;
  StP c = x;
  while (c->k == SK::Sub) {
    a.prefix.push_back(c->s);
    c = c->a;
  }
  a.core = c;
  return a;
}

// Int rules: wrapper kind, binary connective, side (0 = precedent)
struct IntShape {
  SK wrap;
  SK op;
  int side;
};
std::optional<IntShape> int_shape(Rule r) {
  switch (r) {
    case Rule::Int_cyl_excl_L: return IntShape{SK::Cyl, SK::ExclHat, 0};
    case Rule::Int_cyl_imp_R: return IntShape{SK::Cyl, SK::ImpCheck, 1};
    case Rule::Int_cyl_coexcl_L: return IntShape{SK::Cyl, SK::CoexclHat, 0};
    case Rule::Int_cyl_coimp_R: return IntShape{SK::Cyl, SK::CoimpCheck, 1};
    case Rule::Int_cyl_and_L: return IntShape{SK::Cyl, SK::AndHat, 0};
    case Rule::Int_cyl_or_R: return IntShape{SK::Cyl, SK::OrCheck, 1};
    case Rule::Int_sub_and_L: return IntShape{SK::Sub, SK::AndHat, 0};
    case Rule::Int_sub_or_R: return IntShape{SK::Sub, SK::OrCheck, 1};
    case Rule::Int_sub_excl_L: return IntShape{SK::Sub, SK::ExclHat, 0};
    case Rule::Int_sub_imp_R: return IntShape{SK::Sub, SK::ImpCheck, 1};
    case Rule::Int_sub_coexcl_L: return IntShape{SK::Sub, SK::CoexclHat, 0};
    case Rule::Int_sub_coimp_R: return IntShape{SK::Sub, SK::CoimpCheck, 1};
    default: return std::nullopt;
  }
}
bool same_wrapper(const StP& a, const StP& b) {
  if (a->k != b->k) return false;
  if (a->k == SK::Cyl) return a->v == b->v;
  return subst_eq(a->s, b->s);
}
StP rewrap(const StP& proto, StP x) { return st::unary(proto->k, *proto, std::move(x)); }

Sequent on_side(int sd, const Sequent& c, StP x) {
  return sd == 0 ? seq(std::move(x), c.r) : seq(c.l, std::move(x));
}

// find y with u(y) = z as a variable
Var var_mapped_to(const Subst& u, Var z, Rule r, const std::optional<Var>& hint) {
  if (hint) {
    need(u.has(*hint), r, "bound variable not in substitution domain");
    auto& t = u.at(*hint);
    need(t->k == Term::K::Var && t->v == z, r, "substitution does not send y to z");
    return *hint;
  }
  std::optional<Var> found;
  for (auto& [v, t] : u.m)
    if (t->k == Term::K::Var && t->v == z) {
      need(!found, r, "ambiguous renamed variable, give y explicitly");
      found = v;
    }
  need(found.has_value(), r, "no variable renamed to z");
  return *found;
}

// sc rules: find the split (z~)...(t~)X with zs = FV(s) \ FV(t)
struct ScShape {
  Subst t;
  StP x;
};
ScShape sc_shape(const StP& side_root, const TermP& s, Rule r) {
  StP c = side_root;
  VarSet zs;
  std::vector<Var> order;
  while (true) {
    if (c->k == SK::Sub) {
      VarSet want = set_minus(free_vars(s), c->s.range_fv());
      if (want == zs && std::vector<Var>(want.begin(), want.end()) == order) return {c->s, c->a};
    }
    if (c->k != SK::Cyl) break;
    zs.insert(c->v);
    order.push_back(c->v);
    c = c->a;
  }
  mismatch(r, "expected a cylinder prefix over FV(s)\\FV(t) followed by a substitution");
}

std::vector<Sequent> prem_impl(Rule r, Dir d, const Sequent& c, const Bindings& b) {
  const StP& L = c.l;
  const StP& R = c.r;
  const VarSet& F = c.F;
  if (d == Dir::Up) need(rule_info(r).double_line, r, "rule has no upward direction");
  const bool down = d == Dir::Down;

  if (auto sh = int_shape(r)) {
    const StP& S = sh->side == 0 ? L : R;
    if (down) {
      need(S->k == sh->wrap && S->a->k == sh->op, r, "expected wrapper over connective");
      return {on_side(sh->side, c, st::binary(sh->op, rewrap(S, S->a->a), rewrap(S, S->a->b)))};
    }
    need(S->k == sh->op && S->a->k == sh->wrap && same_wrapper(S->a, S->b), r,
         "expected connective over two equal wrappers");
    return {on_side(sh->side, c, rewrap(S->a, st::binary(sh->op, S->a->a, S->b->a)))};
  }

  switch (r) {
    case Rule::Id:
      need(is(L, SK::AtomHat) && leaf_is(R, MK::Rel), r, "expected R^(t) |- R(t)");
      need(L->name == R->f->name && L->args.size() == R->f->args.size(), r, "relation mismatch");
      for (size_t i = 0; i < L->args.size(); ++i) need(term_eq(L->args[i], R->f->args[i]), r, "argument mismatch");
      return {};
    case Rule::Id_Eq:
      need(is(L, SK::EqHat) && leaf_is(R, MK::Eq), r, "expected s =^ t |- s = t");
      need(term_eq(L->args[0], R->f->args[0]) && term_eq(L->args[1], R->f->args[1]), r, "term mismatch");
      return {};
    case Rule::Cut: {
      need(b.cut != nullptr, r, "cut formula missing");
      need(b.cut->type == F, r, "cut formula has the wrong type");
      StP A = leaf(b.cut);
      return {seq(L, A), seq(A, R)};
    }
    case Rule::DP_and_imp:
      if (down) { need(is(R, SK::ImpCheck), r, "expected Y |- X ->v Z"); return {seq(and_(R->a, L), R->b)}; }
      need(is(L, SK::AndHat), r, "expected X &^ Y |- Z");
      return {seq(L->b, imp(L->a, R))};
    case Rule::DP_or_excl:
      if (down) { need(is(L, SK::ExclHat), r, "expected X >^ Z |- Y"); return {seq(L->b, or_(L->a, R))}; }
      need(is(R, SK::OrCheck), r, "expected Z |- X |v Y");
      return {seq(excl(R->a, L), R->b)};
    case Rule::DP_and_coimp:
      if (down) { need(is(R, SK::CoimpCheck), r, "expected X |- Z <-v Y"); return {seq(and_(L, R->b), R->a)}; }
      need(is(L, SK::AndHat), r, "expected X &^ Y |- Z");
      return {seq(L->a, coimp(R, L->b))};
    case Rule::DP_or_coexcl:
      if (down) { need(is(L, SK::CoexclHat), r, "expected Z -<^ Y |- X"); return {seq(L->a, or_(R, L->b))}; }
      need(is(R, SK::OrCheck), r, "expected Z |- X |v Y");
      return {seq(coexcl(L, R->b), R->a)};
    case Rule::DP_dia_cyl:
      if (down) { need(is(L, SK::DiaHat), r, "expected <x^>X |- Y"); return {seq(L->a, cyl(L->v, R))}; }
      need(is(R, SK::Cyl), r, "expected X |- (x~)Y");
      return {seq(dia(R->v, L), R->a)};
    case Rule::DP_cyl_box:
      if (down) { need(is(R, SK::BoxCheck), r, "expected Y |- [xv]X"); return {seq(cyl(R->v, L), R->a)}; }
      need(is(L, SK::Cyl), r, "expected (x~)Y |- X");
      return {seq(L->a, box(L->v, R))};
    case Rule::DP_sdia_sub:
      if (down) { need(is(L, SK::SDiaHat), r, "expected <t^>Y |- X"); return {seq(L->a, sub(L->s, R))}; }
      need(is(R, SK::Sub), r, "expected Y |- (t~)X");
      return {seq(sdia(R->s, L), R->a)};
    case Rule::DP_sub_sbox:
      if (down) { need(is(R, SK::SBoxCheck), r, "expected X |- [tv]Y"); return {seq(sub(R->s, L), R->a)}; }
      need(is(L, SK::Sub), r, "expected (t~)X |- Y");
      return {seq(L->a, sbox(L->s, R))};
    case Rule::cadj:
      need(b.x.has_value(), r, "variable x missing");
      side(contains(F, *b.x), r, "x must belong to the type");
      return {seq(cyl(*b.x, dia(*b.x, L)), R)};
    case Rule::sadj:
      need(b.t.has_value(), r, "substitution t missing");
      side(b.t->range_fv() == F, r, "FV(t) must equal the type");
      return {seq(sub(*b.t, sdia(*b.t, L)), R)};
    case Rule::Nec_cyl_top:
      if (down) {
        need(is(L, SK::Cyl) && is(L->a, SK::TopHat), r, "expected (x~)T^ |- X");
        return {seq(top(F), R)};
      }
      need(is(L, SK::TopHat) && b.x.has_value(), r, "expected T^ |- X and variable x");
      side(contains(F, *b.x), r, "x must belong to the type");
      return {seq(cyl(*b.x, top(set_without(F, *b.x))), R)};
    case Rule::Nec_cyl_bot:
      if (down) {
        need(is(R, SK::Cyl) && is(R->a, SK::BotCheck), r, "expected X |- (x~)Fv");
        return {seq(L, bot(F))};
      }
      need(is(R, SK::BotCheck) && b.x.has_value(), r, "expected X |- Fv and variable x");
      side(contains(F, *b.x), r, "x must belong to the type");
      return {seq(L, cyl(*b.x, bot(set_without(F, *b.x))))};
    case Rule::Nec_sub_top:
      if (down) {
        need(is(L, SK::Sub) && is(L->a, SK::TopHat), r, "expected (t~)T^ |- X");
        return {seq(top(F), R)};
      }
      need(is(L, SK::TopHat) && b.t.has_value(), r, "expected T^ |- X and substitution t");
      side(b.t->range_fv() == F, r, "FV(t) must equal the type");
      return {seq(sub(*b.t, top(b.t->dom())), R)};
    case Rule::Nec_sub_bot:
      if (down) {
        need(is(R, SK::Sub) && is(R->a, SK::BotCheck), r, "expected X |- (t~)Fv");
        return {seq(L, bot(F))};
      }
      need(is(R, SK::BotCheck) && b.t.has_value(), r, "expected X |- Fv and substitution t");
      side(b.t->range_fv() == F, r, "FV(t) must equal the type");
      return {seq(L, sub(*b.t, bot(b.t->dom())))};
    case Rule::AtomRewrite:
    case Rule::AtomRewrite_Eq: {
      SK core = r == Rule::AtomRewrite ? SK::AtomHat : SK::EqHat;
      need(b.st != nullptr, r, "premise precedent missing");
      AtomShape lo = atom_shape(L), hi = atom_shape(b.st);
      need(lo.core->k == core && hi.core->k == core, r, "expected substitution prefixes over atoms");
      if (core == SK::AtomHat) need(lo.core->name == hi.core->name, r, "relation symbols differ");
      side(b.st->type == F, r, "premise precedent has the wrong type");
      side(side_cond_atom(hi.prefix, hi.core->name, hi.core->args, lo.prefix, lo.core->name, lo.core->args), r,
           "tau images of the atoms differ");
      return {seq(b.st, R)};
    }
    case Rule::TopS_L:
      if (down) { need(is(L, SK::AndHat) && is(L->a, SK::TopHat), r, "expected T^ &^ X |- Y"); return {seq(L->b, R)}; }
      return {seq(and_(top(F), L), R)};
    case Rule::BotS_R:
      if (down) { need(is(R, SK::OrCheck) && is(R->b, SK::BotCheck), r, "expected Y |- X |v Fv"); return {seq(L, R->a)}; }
      return {seq(L, or_(R, bot(F)))};
    case Rule::E_L:
      need(is(L, SK::AndHat), r, "expected X &^ Y |- Z");
      return {seq(and_(L->b, L->a), R)};
    case Rule::E_R:
      need(is(R, SK::OrCheck), r, "expected Z |- Y |v X");
      return {seq(L, or_(R->b, R->a))};
    case Rule::W_L:
      need(is(L, SK::AndHat), r, "expected X &^ Y |- Z");
      return {seq(L->b, R)};
    case Rule::W_R:
      need(is(R, SK::OrCheck), r, "expected Z |- Y |v X");
      return {seq(L, R->a)};
    case Rule::C_L: return {seq(and_(L, L), R)};
    case Rule::C_R: return {seq(L, or_(R, R))};
    case Rule::A_L:
      if (down) {
        need(is(L, SK::AndHat) && is(L->a, SK::AndHat), r, "expected (X &^ Y) &^ Z |- W");
        return {seq(and_(L->a->a, and_(L->a->b, L->b)), R)};
      }
      need(is(L, SK::AndHat) && is(L->b, SK::AndHat), r, "expected X &^ (Y &^ Z) |- W");
      return {seq(and_(and_(L->a, L->b->a), L->b->b), R)};
    case Rule::A_R:
      if (down) {
        need(is(R, SK::OrCheck) && is(R->b, SK::OrCheck), r, "expected W |- Z |v (Y |v X)");
        return {seq(L, or_(or_(R->a, R->b->a), R->b->b))};
      }
      need(is(R, SK::OrCheck) && is(R->a, SK::OrCheck), r, "expected W |- (Z |v Y) |v X");
      return {seq(L, or_(R->a->a, or_(R->a->b, R->b)))};
    case Rule::EqRefl:
      need(b.term.has_value(), r, "term missing");
      side(free_vars(*b.term) == F, r, "FV(t) must equal the type");
      return {seq(and_(eq(*b.term, *b.term), L), R)};
    case Rule::EqRewrite: {
      need(b.y.has_value(), r, "variable y missing");
      Var y = *b.y;
      std::vector<Var> xs;
      StP c = L;
      while (c->k == SK::Cyl) { xs.push_back(c->v); c = c->a; }
      need(c->k == SK::EqHat, r, "expected a cylinder prefix over t =^ s");
      TermP t = c->args[0], s = c->args[1];
      VarSet fts = free_vars(c->args);
      // succedent: (z~)...(s_y, r~)X with zs = FV(t)\FV(s,r)
      StP q = R;
      std::vector<Var> zs;
      while (true) {
        if (q->k == SK::Sub && q->s.has(y) && term_eq(q->s.at(y), s)) {
          Subst rr = q->s.restrict(set_without(q->s.dom(), y));
          VarSet want = set_minus(free_vars(t), set_union(free_vars(s), rr.range_fv()));
          if (std::vector<Var>(want.begin(), want.end()) == zs) break;
        }
        need(q->k == SK::Cyl, r, "expected (z~)...(s_y, r~)X in the succedent");
        zs.push_back(q->v);
        q = q->a;
      }
      Subst rr = q->s.restrict(set_without(q->s.dom(), y));
      VarSet wantx = set_minus(rr.range_fv(), fts);
      side(std::vector<Var>(wantx.begin(), wantx.end()) == xs, r, "precedent prefix must be FV(r)\\FV(t,s)");
      VarSet ys = set_minus(free_vars(s), set_union(free_vars(t), rr.range_fv()));
      return {seq(L, cyl_prefix(ys, sub(rr.with(y, t), q->a)))};
    }
    case Rule::AtomIntro:
      need(leaf_is(L, MK::Rel), r, "expected R(s) |- X");
      return {seq(atom(L->f->name, L->f->args), R)};
    case Rule::AtomIntro_Eq:
      need(leaf_is(L, MK::Eq), r, "expected s = t |- X");
      return {seq(eq(L->f->args[0], L->f->args[1]), R)};
    case Rule::Bot_L:
      need(leaf_is(L, MK::Bot) && is(R, SK::BotCheck), r, "expected F |- Fv");
      return {};
    case Rule::Bot_R:
      need(leaf_is(R, MK::Bot), r, "expected X |- F");
      return {seq(L, bot(F))};
    case Rule::Top_L:
      need(leaf_is(L, MK::Top), r, "expected T |- X");
      return {seq(top(F), R)};
    case Rule::Top_R:
      need(is(L, SK::TopHat) && leaf_is(R, MK::Top), r, "expected T^ |- T");
      return {};
    case Rule::And_L:
      need(leaf_is(L, MK::And), r, "expected A & B |- X");
      return {seq(and_(leaf(L->f->a), leaf(L->f->b)), R)};
    case Rule::And_R:
      need(is(L, SK::AndHat) && leaf_is(R, MK::And), r, "expected X &^ Y |- A & B");
      return {seq(L->a, leaf(R->f->a)), seq(L->b, leaf(R->f->b))};
    case Rule::Or_L:
      need(leaf_is(L, MK::Or) && is(R, SK::OrCheck), r, "expected A | B |- X |v Y");
      return {seq(leaf(L->f->a), R->a), seq(leaf(L->f->b), R->b)};
    case Rule::Or_R:
      need(leaf_is(R, MK::Or), r, "expected X |- A | B");
      return {seq(L, or_(leaf(R->f->a), leaf(R->f->b)))};
    case Rule::Imp_L:
      need(leaf_is(L, MK::Imp) && is(R, SK::ImpCheck), r, "expected A -> B |- X ->v Y");
      return {seq(R->a, leaf(L->f->a)), seq(leaf(L->f->b), R->b)};
    case Rule::Imp_R:
      need(leaf_is(R, MK::Imp), r, "expected X |- A -> B");
      return {seq(L, imp(leaf(R->f->a), leaf(R->f->b)))};
    case Rule::Gri_L:
      need(is(L, SK::AndHat) && is(L->a, SK::ExclHat), r, "expected (X >^ Y) &^ Z |- W");
      return {seq(excl(L->a->a, and_(L->a->b, L->b)), R)};
    case Rule::Gri_R:
      need(is(R, SK::OrCheck) && is(R->a, SK::ImpCheck), r, "expected W |- (X ->v Y) |v Z");
      return {seq(L, imp(R->a->a, or_(R->a->b, R->b)))};
    case Rule::Dia_L:
      need(leaf_is(L, MK::Dia), r, "expected <x>A |- X");
      return {seq(dia(L->f->v, leaf(L->f->a)), R)};
    case Rule::Dia_R:
      need(is(L, SK::DiaHat) && leaf_is(R, MK::Dia) && L->v == R->f->v, r, "expected <x^>X |- <x>A");
      return {seq(L->a, leaf(R->f->a))};
    case Rule::Box_L:
      need(leaf_is(L, MK::Box) && is(R, SK::BoxCheck) && L->f->v == R->v, r, "expected [x]A |- [xv]X");
      return {seq(leaf(L->f->a), R->a)};
    case Rule::Box_R:
      need(leaf_is(R, MK::Box), r, "expected X |- [x]A");
      return {seq(L, box(R->f->v, leaf(R->f->a)))};
    case Rule::Cyl_L:
      need(leaf_is(L, MK::Cyl), r, "expected (x)A |- X");
      return {seq(cyl(L->f->v, leaf(L->f->a)), R)};
    case Rule::Cyl_R:
      need(leaf_is(R, MK::Cyl), r, "expected X |- (x)A");
      return {seq(L, cyl(R->f->v, leaf(R->f->a)))};
    case Rule::Sub_L:
      need(leaf_is(L, MK::Sub), r, "expected (t)A |- X");
      return {seq(sub(L->f->s, leaf(L->f->a)), R)};
    case Rule::Sub_R:
      need(leaf_is(R, MK::Sub), r, "expected X |- (t)A");
      return {seq(L, sub(R->f->s, leaf(R->f->a)))};
    case Rule::SDia_L:
      need(leaf_is(L, MK::SDia), r, "expected <t>A |- X");
      return {seq(sdia(L->f->s, leaf(L->f->a)), R)};
    case Rule::SDia_R:
      need(is(L, SK::SDiaHat) && leaf_is(R, MK::SDia) && subst_eq(L->s, R->f->s), r, "expected <t^>X |- <t>A");
      return {seq(L->a, leaf(R->f->a))};
    case Rule::SBox_L:
      need(leaf_is(L, MK::SBox) && is(R, SK::SBoxCheck) && subst_eq(L->f->s, R->s), r, "expected [t]A |- [tv]X");
      return {seq(leaf(L->f->a), R->a)};
    case Rule::SBox_R:
      need(leaf_is(R, MK::SBox), r, "expected X |- [t]A");
      return {seq(L, sbox(R->f->s, leaf(R->f->a)))};
    case Rule::Mono_cyl:
      if (down) {
        need(is(L, SK::Cyl) && is(R, SK::Cyl) && L->v == R->v, r, "expected (x~)X |- (x~)Y");
        return {seq(L->a, R->a)};
      }
      need(b.x.has_value(), r, "variable x missing");
      side(!contains(F, *b.x), r, "x must be outside the type");
      return {seq(cyl(*b.x, L), cyl(*b.x, R))};
    case Rule::Mono_sub:
      need(is(L, SK::Sub) && is(R, SK::Sub) && subst_eq(L->s, R->s), r, "expected (t~)X |- (t~)Y");
      return {seq(L->a, R->a)};
    case Rule::cq_L:
      if (down) {
        need(is(L, SK::DiaHat) && is(L->a, SK::Cyl), r, "expected <y^>(x~)X |- Y");
        side(L->v != L->a->v, r, "x must differ from y");
        return {seq(cyl(L->a->v, dia(L->v, L->a->a)), R)};
      }
      need(is(L, SK::Cyl) && is(L->a, SK::DiaHat), r, "expected (x~)<y^>X |- Y");
      side(L->v != L->a->v, r, "x must differ from y");
      return {seq(dia(L->a->v, cyl(L->v, L->a->a)), R)};
    case Rule::cq_R:
      if (down) {
        need(is(R, SK::BoxCheck) && is(R->a, SK::Cyl), r, "expected Y |- [yv](x~)X");
        side(R->v != R->a->v, r, "x must differ from y");
        return {seq(L, cyl(R->a->v, box(R->v, R->a->a)))};
      }
      need(is(R, SK::Cyl) && is(R->a, SK::BoxCheck), r, "expected Y |- (x~)[yv]X");
      side(R->v != R->a->v, r, "x must differ from y");
      return {seq(L, box(R->a->v, cyl(R->v, R->a->a)))};
    case Rule::sq_L:
    case Rule::sq_R: {
      bool left = r == Rule::sq_L;
      const StP& S = left ? L : R;
      SK q = left ? SK::DiaHat : SK::BoxCheck;
      if (down) {
        need(S->k == q && is(S->a, SK::Sub), r, "expected a quantifier over a substitution");
        Var z = S->v;
        Var y = var_mapped_to(S->a->s, z, r, b.y);
        Subst t = S->a->s.restrict(set_without(S->a->s.dom(), y));
        side(!contains(set_union(t.range_fv(), t.dom()), z), r, "z must avoid FV(t) and the domain of t");
        StP body = left ? dia(y, S->a->a) : box(y, S->a->a);
        return {on_side(left ? 0 : 1, c, sub(t, body))};
      }
      need(is(S, SK::Sub) && S->a->k == q && b.z.has_value(), r, "expected a substitution over a quantifier and z");
      Var z = *b.z, y = S->a->v;
      const Subst& t = S->s;
      side(!contains(set_union(t.range_fv(), t.dom()), z), r, "z must avoid FV(t) and the domain of t");
      StP inner = sub(t.with(y, tvar(z)), S->a->a);
      StP out = left ? dia(z, inner) : box(z, inner);
      return {on_side(left ? 0 : 1, c, out)};
    }
    case Rule::cc_L:
      need(is(L, SK::Cyl) && is(L->a, SK::Cyl), r, "expected (y~)(x~)X |- Y");
      return {seq(cyl(L->a->v, cyl(L->v, L->a->a)), R)};
    case Rule::cc_R:
      need(is(R, SK::Cyl) && is(R->a, SK::Cyl), r, "expected Y |- (y~)(x~)X");
      return {seq(L, cyl(R->a->v, cyl(R->v, R->a->a)))};
    case Rule::ss_L:
    case Rule::ss_R: {
      int sd = r == Rule::ss_L ? 0 : 1;
      const StP& S = sd == 0 ? L : R;
      if (down) {
        need(is(S, SK::Sub) && b.t && b.s, r, "expected a substitution and the factors t, s");
        side(subst_eq(compose_substs(*b.t, *b.s), S->s), r, "s(t/x) does not equal the given substitution");
        return {on_side(sd, c, sub(*b.t, sub(*b.s, S->a)))};
      }
      need(is(S, SK::Sub) && is(S->a, SK::Sub), r, "expected two nested substitutions");
      return {on_side(sd, c, sub(compose_substs(S->s, S->a->s), S->a->a))};
    }
    case Rule::sc_L:
    case Rule::sc_R: {
      int sd = r == Rule::sc_L ? 0 : 1;
      const StP& S = sd == 0 ? L : R;
      if (down) {
        need(b.y && b.term, r, "variable y and term s missing");
        ScShape sh = sc_shape(S, *b.term, r);
        side(!sh.t.has(*b.y), r, "y must lie outside the domain of t");
        return {on_side(sd, c, sub(sh.t.with(*b.y, *b.term), cyl(*b.y, sh.x)))};
      }
      need(is(S, SK::Sub) && is(S->a, SK::Cyl), r, "expected (s_y, t~)(y~)X");
      Var y = S->a->v;
      TermP s = S->s.at(y);
      Subst t = S->s.restrict(set_without(S->s.dom(), y));
      VarSet zs = set_minus(free_vars(s), t.range_fv());
      return {on_side(sd, c, cyl_prefix(zs, sub(t, S->a->a)))};
    }
    case Rule::Hyp: return {};
    default: break;
  }
  mismatch(r, "unknown rule");
}
}  // namespace

std::vector<Sequent> premises_of(Rule r, Dir d, const Sequent& concl, const Bindings& b) {
  return prem_impl(r, d, concl, b);
}

bool side_cond_atom(const std::vector<Subst>& p1, const std::string& r1, const std::vector<TermP>& a1,
                    const std::vector<Subst>& p2, const std::string& r2, const std::vector<TermP>& a2) {
  auto image = [](const std::vector<Subst>& p, std::vector<TermP> a) {
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      if (!subset(free_vars(a), it->dom())) fail("TypeError", "substitution prefix is not composable");
      a = apply_subst(a, *it);
    }
    return a;
  };
  if (r1 != r2 || a1.size() != a2.size()) return false;
  auto x = image(p1, a1), y = image(p2, a2);
  for (size_t i = 0; i < x.size(); ++i)
    if (!term_eq(x[i], y[i])) return false;
  return true;
}

void check_step(Rule r, Dir d, const Bindings& b, const Sequent& concl, const std::vector<Sequent>& prems) {
  if (r == Rule::Hyp) return;
  auto want = premises_of(r, d, concl, b);
  if (want.size() != prems.size())
    fail("PremiseMismatch", rule_name(r) + ": expected " + std::to_string(want.size()) + " premises, got " +
                                std::to_string(prems.size()));
  for (size_t i = 0; i < want.size(); ++i)
    if (!seq_eq(want[i], prems[i]))
      fail("PremiseMismatch", rule_name(r) + ": premise " + std::to_string(i + 1) + " should be " +
                                  print_sequent(want[i]) + " but is " + print_sequent(prems[i]));
}

namespace {
bool seq_dfostar(const Sequent& s) { return uses_dfostar(s.l) || uses_dfostar(s.r); }
void check_rec(const DerivP& d, std::vector<int>& path, CheckReport& rep, int depth) {
  if (!rep.ok) return;
  rep.nodes++;
  rep.height = std::max(rep.height, depth);
  if (d->rule == Rule::Cut) rep.has_cut = true;
  if (d->rule == Rule::Hyp) rep.open_hyps++;
  if (rule_info(d->rule).dfostar_only || seq_dfostar(d->concl)) rep.dfostar = true;
  try {
    std::vector<Sequent> prems;
    for (auto& k : d->kids) prems.push_back(k->concl);
    check_step(d->rule, d->dir, d->b, d->concl, prems);
  } catch (const Error& e) {
    rep.ok = false;
    rep.fail_path = path;
    rep.error = e.what();
    return;
  }
  for (size_t i = 0; i < d->kids.size(); ++i) {
    path.push_back((int)i);
    check_rec(d->kids[i], path, rep, depth + 1);
    path.pop_back();
    if (!rep.ok) return;
  }
}
}  // namespace

CheckReport check_derivation(const DerivP& d) {
  CheckReport rep;
  std::vector<int> path;
  check_rec(d, path, rep, 1);
  return rep;
}

int deriv_size(const DerivP& d) {
  int n = 1;
  for (auto& k : d->kids) n += deriv_size(k);
  return n;
}
int deriv_height(const DerivP& d) {
  int h = 0;
  for (auto& k : d->kids) h = std::max(h, deriv_height(k));
  return h + 1;
}
bool has_cut(const DerivP& d) {
  if (d->rule == Rule::Cut) return true;
  for (auto& k : d->kids)
    if (has_cut(k)) return true;
  return false;
}

}  // namespace dfo
