#include "dfo/structures.hpp"

#include <algorithm>

#include "dfo/calculus.hpp"

namespace dfo {

namespace st {
static std::shared_ptr<Struct> mk(SK k) {
  auto x = std::make_shared<Struct>();
  x->k = k;
  return x;
}
StP leaf(MtP f) {
  auto x = mk(SK::Leaf);
  x->type = f->type;
  x->f = std::move(f);
  return x;
}
StP atom(const std::string& r, std::vector<TermP> args) {
  auto x = mk(SK::AtomHat);
  x->name = r;
  x->args = std::move(args);
  x->type = free_vars(x->args);
  return x;
}
StP eq(TermP l, TermP r) {
  auto x = mk(SK::EqHat);
  x->args = {std::move(l), std::move(r)};
  x->type = free_vars(x->args);
  return x;
}
StP top(VarSet F) {
  auto x = mk(SK::TopHat);
  x->type = std::move(F);
  return x;
}
StP bot(VarSet F) {
  auto x = mk(SK::BotCheck);
  x->type = std::move(F);
  return x;
}
StP binary(SK k, StP a, StP b) {
  if (!is_binary(k)) fail("TypeError", "not a binary structural connective");
  if (a->type != b->type) fail("TypeError", "binary structure with operands of different types");
  auto x = mk(k);
  x->type = a->type;
  x->a = std::move(a);
  x->b = std::move(b);
  return x;
}
StP and_(StP a, StP b) { return binary(SK::AndHat, std::move(a), std::move(b)); }
StP or_(StP a, StP b) { return binary(SK::OrCheck, std::move(a), std::move(b)); }
StP excl(StP a, StP b) { return binary(SK::ExclHat, std::move(a), std::move(b)); }
StP coexcl(StP a, StP b) { return binary(SK::CoexclHat, std::move(a), std::move(b)); }
StP imp(StP a, StP b) { return binary(SK::ImpCheck, std::move(a), std::move(b)); }
StP coimp(StP a, StP b) { return binary(SK::CoimpCheck, std::move(a), std::move(b)); }
static StP quant(SK k, Var y, StP a) {
  if (!contains(a->type, y)) fail("TypeError", "structural quantifier variable v" + std::to_string(y) + " not in operand type");
  auto x = mk(k);
  x->v = y;
  x->type = set_without(a->type, y);
  x->a = std::move(a);
  return x;
}
StP dia(Var y, StP a) { return quant(SK::DiaHat, y, std::move(a)); }
StP box(Var y, StP a) { return quant(SK::BoxCheck, y, std::move(a)); }
StP cyl(Var v, StP a) {
  if (v < 1) fail("TypeError", "bad variable");
  if (contains(a->type, v)) fail("TypeError", "structural cylinder variable v" + std::to_string(v) + " already in operand type");
  auto x = mk(SK::Cyl);
  x->v = v;
  x->type = set_with(a->type, v);
  x->a = std::move(a);
  return x;
}
StP sub(Subst s, StP a) {
  if (s.dom() != a->type) fail("TypeError", "structural substitution domain differs from operand type");
  auto x = mk(SK::Sub);
  x->type = s.range_fv();
  x->s = std::move(s);
  x->a = std::move(a);
  return x;
}
static StP ssub(SK k, Subst s, StP a) {
  if (s.range_fv() != a->type) fail("TypeError", "structural substitution range differs from operand type");
  auto x = mk(k);
  x->type = s.dom();
  x->s = std::move(s);
  x->a = std::move(a);
  return x;
}
StP sdia(Subst s, StP a) { return ssub(SK::SDiaHat, std::move(s), std::move(a)); }
StP sbox(Subst s, StP a) { return ssub(SK::SBoxCheck, std::move(s), std::move(a)); }
StP meta(int id, VarSet F) {
  auto x = mk(SK::Meta);
  x->meta = id;
  x->type = std::move(F);
  return x;
}
StP unary(SK k, const Struct& proto, StP a) {
  switch (k) {
    case SK::DiaHat: return dia(proto.v, std::move(a));
    case SK::BoxCheck: return box(proto.v, std::move(a));
    case SK::Cyl: return cyl(proto.v, std::move(a));
    case SK::Sub: return sub(proto.s, std::move(a));
    case SK::SDiaHat: return sdia(proto.s, std::move(a));
    case SK::SBoxCheck: return sbox(proto.s, std::move(a));
    default: fail("TypeError", "not a unary structural connective");
  }
}
StP with_children(const StP& x, StP a, StP b) {
  if (is_binary(x->k)) return binary(x->k, std::move(a), std::move(b));
  if (is_unary(x->k)) return unary(x->k, *x, std::move(a));
  return x;
}
StP cyl_prefix(const VarSet& zs, StP a) {
  std::vector<Var> v(zs.begin(), zs.end());
  for (auto it = v.rbegin(); it != v.rend(); ++it) a = cyl(*it, a);
  return a;
}
}  // namespace st

const VarSet& struct_type(const StP& x) { return x->type; }

bool is_binary(SK k) {
  switch (k) {
    case SK::AndHat: case SK::OrCheck: case SK::ExclHat: case SK::CoexclHat:
    case SK::ImpCheck: case SK::CoimpCheck: return true;
    default: return false;
  }
}
bool is_unary(SK k) {
  switch (k) {
    case SK::DiaHat: case SK::BoxCheck: case SK::Cyl: case SK::Sub:
    case SK::SDiaHat: case SK::SBoxCheck: return true;
    default: return false;
  }
}
bool is_hat(SK k) {
  switch (k) {
    case SK::AtomHat: case SK::EqHat: case SK::TopHat: case SK::AndHat: case SK::ExclHat:
    case SK::CoexclHat: case SK::DiaHat: case SK::SDiaHat: return true;
    default: return false;
  }
}
bool is_check(SK k) {
  switch (k) {
    case SK::BotCheck: case SK::OrCheck: case SK::ImpCheck: case SK::CoimpCheck:
    case SK::BoxCheck: case SK::SBoxCheck: return true;
    default: return false;
  }
}

int st_cmp(const StP& a, const StP& b) {
  if (a.get() == b.get()) return 0;
  if (a->k != b->k) return a->k < b->k ? -1 : 1;
  switch (a->k) {
    case SK::Leaf: return mt_cmp(a->f, b->f);
    case SK::AtomHat:
      if (int c = a->name.compare(b->name)) return c;
      [[fallthrough]];
    case SK::EqHat:
      if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (int c = term_cmp(a->args[i], b->args[i])) return c;
      return 0;
    case SK::TopHat:
    case SK::BotCheck:
      if (a->type == b->type) return 0;
      return a->type < b->type ? -1 : 1;
    case SK::Meta:
      if (a->meta != b->meta) return a->meta < b->meta ? -1 : 1;
      if (a->type == b->type) return 0;
      return a->type < b->type ? -1 : 1;
    case SK::DiaHat:
    case SK::BoxCheck:
    case SK::Cyl:
      if (a->v != b->v) return a->v < b->v ? -1 : 1;
      return st_cmp(a->a, b->a);
    case SK::Sub:
    case SK::SDiaHat:
    case SK::SBoxCheck:
      if (int c = subst_cmp(a->s, b->s)) return c;
      return st_cmp(a->a, b->a);
    default:
      if (int c = st_cmp(a->a, b->a)) return c;
      return st_cmp(a->b, b->b);
  }
}
bool st_eq(const StP& a, const StP& b) { return st_cmp(a, b) == 0; }

bool uses_dfostar(const StP& x) {
  if (x->k == SK::Leaf) return uses_dfostar(x->f);
  if (x->a && uses_dfostar(x->a)) return true;
  if (x->b && uses_dfostar(x->b)) return true;
  return false;
}
int st_size(const StP& x) {
  int n = 1;
  if (x->a) n += st_size(x->a);
  if (x->b) n += st_size(x->b);
  return n;
}
int st_depth(const StP& x) {
  int d = 0;
  if (x->a) d = std::max(d, st_depth(x->a));
  if (x->b) d = std::max(d, st_depth(x->b));
  return d + 1;
}
int num_children(const StP& x) {
  if (is_binary(x->k)) return 2;
  if (is_unary(x->k)) return 1;
  return 0;
}
StP child(const StP& x, int i) {
  if (i == 0 && x->a) return x->a;
  if (i == 1 && x->b) return x->b;
  fail("PathError", "no child " + std::to_string(i));
}
Pol child_pol(SK k, int i, Pol p) {
  switch (k) {
    case SK::ExclHat:
    case SK::ImpCheck: return i == 0 ? flip(p) : p;
    case SK::CoexclHat:
    case SK::CoimpCheck: return i == 1 ? flip(p) : p;
    default: return p;
  }
}
bool polarity_ok(const StP& x, Pol p) {
  if (is_hat(x->k) && p != Pol::Pos) return false;
  if (is_check(x->k) && p != Pol::Neg) return false;
  for (int i = 0; i < num_children(x); ++i)
    if (!polarity_ok(child(x, i), child_pol(x->k, i, p))) return false;
  return true;
}

MtP interpret(const StP& x) {
  switch (x->k) {
    case SK::Leaf: return x->f;
    case SK::AtomHat: return mt::rel(x->name, x->args);
    case SK::EqHat: return mt::eq(x->args[0], x->args[1]);
    case SK::TopHat: return mt::top(x->type);
    case SK::BotCheck: return mt::bot(x->type);
    case SK::AndHat: return mt::conj(interpret(x->a), interpret(x->b));
    case SK::OrCheck: return mt::disj(interpret(x->a), interpret(x->b));
    case SK::ExclHat: return mt::excl(interpret(x->a), interpret(x->b));
    // X <̂ Y is X with Y excluded, i.e. Y ⋗ X
    case SK::CoexclHat: return mt::excl(interpret(x->b), interpret(x->a));
    case SK::ImpCheck: return mt::imp(interpret(x->a), interpret(x->b));
    case SK::CoimpCheck: return mt::coimp(interpret(x->a), interpret(x->b));
    case SK::DiaHat: return mt::dia(x->v, interpret(x->a));
    case SK::BoxCheck: return mt::box(x->v, interpret(x->a));
    case SK::Cyl: return mt::cyl(x->v, interpret(x->a));
    case SK::Sub: return mt::sub(x->s, interpret(x->a));
    case SK::SDiaHat: return mt::sdia(x->s, interpret(x->a));
    case SK::SBoxCheck: return mt::sbox(x->s, interpret(x->a));
    case SK::Meta: fail("TypeError", "cannot interpret a placeholder structure");
  }
  fail("TypeError", "bad structure");
}

Sequent make_seq(StP l, StP r) {
  if (l->type != r->type) fail("TypeError", "sequent sides have different types");
  if (!polarity_ok(l, Pol::Pos)) fail("TypeError", "polarity violation in precedent");
  if (!polarity_ok(r, Pol::Neg)) fail("TypeError", "polarity violation in succedent");
  Sequent s;
  s.F = l->type;
  s.l = std::move(l);
  s.r = std::move(r);
  return s;
}
bool seq_eq(const Sequent& a, const Sequent& b) { return a.F == b.F && st_eq(a.l, b.l) && st_eq(a.r, b.r); }

StP at_path(const Sequent& s, const Path& p) {
  if (p.empty() || (p[0] != 0 && p[0] != 1)) fail("PathError", "path must start with 0 or 1");
  StP x = p[0] == 0 ? s.l : s.r;
  for (size_t i = 1; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= num_children(x)) fail("PathError", "path leaves the structure");
    x = child(x, p[i]);
  }
  return x;
}
Pol pol_at(const Sequent& s, const Path& p) {
  if (p.empty() || (p[0] != 0 && p[0] != 1)) fail("PathError", "path must start with 0 or 1");
  StP x = p[0] == 0 ? s.l : s.r;
  Pol pol = p[0] == 0 ? Pol::Pos : Pol::Neg;
  for (size_t i = 1; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= num_children(x)) fail("PathError", "path leaves the structure");
    pol = child_pol(x->k, p[i], pol);
    x = child(x, p[i]);
  }
  return pol;
}
static StP replace_in(const StP& x, const Path& p, size_t i, const StP& repl) {
  if (i == p.size()) return repl;
  if (p[i] < 0 || p[i] >= num_children(x)) fail("PathError", "path leaves the structure");
  if (p[i] == 0) return st::with_children(x, replace_in(x->a, p, i + 1, repl), x->b);
  return st::with_children(x, x->a, replace_in(x->b, p, i + 1, repl));
}
Sequent replace_at(const Sequent& s, const Path& p, StP repl) {
  if (p.empty() || (p[0] != 0 && p[0] != 1)) fail("PathError", "path must start with 0 or 1");
  if (p[0] == 0) return make_seq(replace_in(s.l, p, 1, repl), s.r);
  return make_seq(s.l, replace_in(s.r, p, 1, repl));
}
static void paths_rec(const StP& x, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (int i = 0; i < num_children(x); ++i) {
    cur.push_back(i);
    paths_rec(child(x, i), cur, out);
    cur.pop_back();
  }
}
std::vector<Path> all_paths(const Sequent& s) {
  std::vector<Path> out;
  Path cur{0};
  paths_rec(s.l, cur, out);
  cur = {1};
  paths_rec(s.r, cur, out);
  return out;
}

// one peeling move: which steps isolate child c of the root of side `side`,
// and which side the child ends up on
static std::vector<std::pair<Rule, Dir>> peel(SK k, int side, int c, int& newside) {
  using R = Rule;
  if (side == 0) {
    switch (k) {
      case SK::AndHat: newside = 0; return {{c == 0 ? R::DP_and_coimp : R::DP_and_imp, Dir::Up}};
      case SK::ExclHat:
        if (c == 1) { newside = 0; return {{R::DP_or_excl, Dir::Down}}; }
        newside = 1; return {{R::DP_or_excl, Dir::Down}, {R::DP_or_coexcl, Dir::Up}};
      case SK::CoexclHat:
        if (c == 0) { newside = 0; return {{R::DP_or_coexcl, Dir::Down}}; }
        newside = 1; return {{R::DP_or_coexcl, Dir::Down}, {R::DP_or_excl, Dir::Up}};
      case SK::DiaHat: newside = 0; return {{R::DP_dia_cyl, Dir::Down}};
      case SK::Cyl: newside = 0; return {{R::DP_cyl_box, Dir::Up}};
      case SK::Sub: newside = 0; return {{R::DP_sub_sbox, Dir::Up}};
      case SK::SDiaHat: newside = 0; return {{R::DP_sdia_sub, Dir::Down}};
      default: break;
    }
  } else {
    switch (k) {
      case SK::OrCheck: newside = 1; return {{c == 1 ? R::DP_or_excl : R::DP_or_coexcl, Dir::Up}};
      case SK::ImpCheck:
        if (c == 1) { newside = 1; return {{R::DP_and_imp, Dir::Down}}; }
        newside = 0; return {{R::DP_and_imp, Dir::Down}, {R::DP_and_coimp, Dir::Up}};
      case SK::CoimpCheck:
        if (c == 0) { newside = 1; return {{R::DP_and_coimp, Dir::Down}}; }
        newside = 0; return {{R::DP_and_coimp, Dir::Down}, {R::DP_and_imp, Dir::Up}};
      case SK::Cyl: newside = 1; return {{R::DP_dia_cyl, Dir::Up}};
      case SK::BoxCheck: newside = 1; return {{R::DP_cyl_box, Dir::Down}};
      case SK::Sub: newside = 1; return {{R::DP_sdia_sub, Dir::Up}};
      case SK::SBoxCheck: newside = 1; return {{R::DP_sub_sbox, Dir::Down}};
      default: break;
    }
  }
  fail("PathError", "no display move for this connective");
}

DisplayResult display(const Sequent& s, const Path& p) {
  at_path(s, p);  // validates
  DisplayResult res;
  res.out = s;
  int side = p[0];
  for (size_t i = 1; i < p.size(); ++i) {
    StP root = side == 0 ? res.out.l : res.out.r;
    int ns = 0;
    for (auto [r, d] : peel(root->k, side, p[i], ns)) {
      Step stp{r, d, {}};
      auto prem = premises_of(r, d, res.out, stp.b);
      res.out = prem.at(0);
      res.chain.push_back(stp);
    }
    side = ns;
  }
  return res;
}

}  // namespace dfo
