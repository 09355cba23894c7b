#include "dfo/syntax.hpp"

#include <algorithm>
#include <functional>

namespace dfo {

void fail(const std::string& kind, const std::string& msg) { throw Error(kind, msg); }

VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet r = a;
  r.insert(b.begin(), b.end());
  return r;
}
VarSet set_minus(const VarSet& a, const VarSet& b) {
  VarSet r;
  for (Var v : a)
    if (!b.count(v)) r.insert(v);
  return r;
}
VarSet set_with(VarSet a, Var v) {
  a.insert(v);
  return a;
}
VarSet set_without(VarSet a, Var v) {
  a.erase(v);
  return a;
}
bool subset(const VarSet& a, const VarSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}
bool contains(const VarSet& a, Var v) { return a.count(v) > 0; }
Var fresh_var(const VarSet& avoid) {
  Var v = 1;
  while (avoid.count(v)) ++v;
  return v;
}
std::vector<Var> sorted(const VarSet& s) { return std::vector<Var>(s.begin(), s.end()); }

// ---------------------------------------------------------------- terms

TermP tvar(Var v) {
  if (v < 1) fail("TypeError", "variable index must be >= 1");
  auto t = std::make_shared<Term>();
  t->k = Term::K::Var;
  t->v = v;
  return t;
}
TermP tconst(const std::string& c) {
  auto t = std::make_shared<Term>();
  t->k = Term::K::Const;
  t->name = c;
  return t;
}
TermP tapp(const std::string& f, std::vector<TermP> args) {
  if (args.empty()) fail("TypeError", "function application needs arguments: " + f);
  auto t = std::make_shared<Term>();
  t->k = Term::K::App;
  t->name = f;
  t->args = std::move(args);
  return t;
}

int term_cmp(const TermP& a, const TermP& b) {
  if (a.get() == b.get()) return 0;
  if (a->k != b->k) return a->k < b->k ? -1 : 1;
  switch (a->k) {
    case Term::K::Var: return a->v == b->v ? 0 : (a->v < b->v ? -1 : 1);
    case Term::K::Const: return a->name.compare(b->name);
    case Term::K::App: {
      if (int c = a->name.compare(b->name)) return c;
      if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (int c = term_cmp(a->args[i], b->args[i])) return c;
      return 0;
    }
  }
  return 0;
}
bool term_eq(const TermP& a, const TermP& b) { return term_cmp(a, b) == 0; }

static void fv_into(const TermP& t, VarSet& out) {
  switch (t->k) {
    case Term::K::Var: out.insert(t->v); break;
    case Term::K::Const: break;
    case Term::K::App:
      for (auto& x : t->args) fv_into(x, out);
      break;
  }
}
VarSet free_vars(const TermP& t) {
  VarSet r;
  fv_into(t, r);
  return r;
}
VarSet free_vars(const std::vector<TermP>& ts) {
  VarSet r;
  for (auto& t : ts) fv_into(t, r);
  return r;
}
int term_depth(const TermP& t) {
  if (t->k != Term::K::App) return 0;
  int d = 0;
  for (auto& x : t->args) d = std::max(d, term_depth(x));
  return d + 1;
}

// ---------------------------------------------------------------- substitutions

VarSet Subst::dom() const {
  VarSet r;
  for (auto& [v, t] : m) r.insert(v);
  return r;
}
VarSet Subst::range_fv() const {
  VarSet r;
  for (auto& [v, t] : m) fv_into(t, r);
  return r;
}
const TermP& Subst::at(Var v) const {
  auto it = m.find(v);
  if (it == m.end()) fail("DomainError", "variable v" + std::to_string(v) + " not in substitution domain");
  return it->second;
}
Subst Subst::restrict(const VarSet& d) const {
  Subst r;
  for (Var v : d) r.m[v] = at(v);
  return r;
}
Subst Subst::with(Var v, TermP t) const {
  Subst r = *this;
  r.m[v] = std::move(t);
  return r;
}
Subst Subst::identity(const VarSet& d) {
  Subst r;
  for (Var v : d) r.m[v] = tvar(v);
  return r;
}
bool Subst::is_identity() const {
  for (auto& [v, t] : m)
    if (t->k != Term::K::Var || t->v != v) return false;
  return true;
}
int subst_cmp(const Subst& a, const Subst& b) {
  auto ia = a.m.begin(), ib = b.m.begin();
  for (; ia != a.m.end() && ib != b.m.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (int c = term_cmp(ia->second, ib->second)) return c;
  }
  if (ia != a.m.end()) return 1;
  if (ib != b.m.end()) return -1;
  return 0;
}
bool subst_eq(const Subst& a, const Subst& b) { return subst_cmp(a, b) == 0; }

TermP apply_subst(const TermP& t, const Subst& s) {
  switch (t->k) {
    case Term::K::Var: return s.at(t->v);
    case Term::K::Const: return t;
    case Term::K::App: {
      std::vector<TermP> as;
      for (auto& x : t->args) as.push_back(apply_subst(x, s));
      return tapp(t->name, std::move(as));
    }
  }
  return t;
}
std::vector<TermP> apply_subst(const std::vector<TermP>& ts, const Subst& s) {
  std::vector<TermP> r;
  for (auto& t : ts) r.push_back(apply_subst(t, s));
  return r;
}
Subst compose_substs(const Subst& outer, const Subst& inner) {
  if (!subset(inner.range_fv(), outer.dom()))
    fail("DomainError", "compose_substs: outer domain does not cover inner range");
  Subst r;
  for (auto& [v, t] : inner.m) r.m[v] = apply_subst(t, outer);
  return r;
}

// ---------------------------------------------------------------- FO formulas

namespace fo {
static FoP mk(FK k) {
  auto f = std::make_shared<Fo>();
  f->k = k;
  return f;
}
FoP rel(const std::string& r, std::vector<TermP> args) {
  auto f = std::make_shared<Fo>();
  f->k = FK::Rel;
  f->name = r;
  f->args = std::move(args);
  return f;
}
FoP eq(TermP l, TermP r) {
  auto f = std::make_shared<Fo>();
  f->k = FK::Eq;
  f->args = {std::move(l), std::move(r)};
  return f;
}
FoP top() { return mk(FK::Top); }
FoP bot() { return mk(FK::Bot); }
static FoP bin(FK k, FoP a, FoP b) {
  auto f = std::make_shared<Fo>();
  f->k = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
FoP conj(FoP a, FoP b) { return bin(FK::And, std::move(a), std::move(b)); }
FoP disj(FoP a, FoP b) { return bin(FK::Or, std::move(a), std::move(b)); }
FoP imp(FoP a, FoP b) { return bin(FK::Imp, std::move(a), std::move(b)); }
FoP neg(FoP a) { return imp(std::move(a), bot()); }
static FoP quant(FK k, Var v, FoP a) {
  if (v < 1) fail("TypeError", "bad bound variable");
  auto f = std::make_shared<Fo>();
  f->k = k;
  f->v = v;
  f->a = std::move(a);
  return f;
}
FoP forall(Var v, FoP a) { return quant(FK::Forall, v, std::move(a)); }
FoP exists(Var v, FoP a) { return quant(FK::Exists, v, std::move(a)); }
}  // namespace fo

static void fo_fv(const FoP& a, VarSet& out) {
  switch (a->k) {
    case FK::Rel:
    case FK::Eq:
      for (auto& t : a->args) fv_into(t, out);
      break;
    case FK::Top:
    case FK::Bot: break;
    case FK::And:
    case FK::Or:
    case FK::Imp:
      fo_fv(a->a, out);
      fo_fv(a->b, out);
      break;
    case FK::Forall:
    case FK::Exists: {
      VarSet in;
      fo_fv(a->a, in);
      in.erase(a->v);
      out.insert(in.begin(), in.end());
      break;
    }
  }
}
VarSet free_vars(const FoP& a) {
  VarSet r;
  fo_fv(a, r);
  return r;
}

FoP apply_subst(const FoP& a, const Subst& s) {
  switch (a->k) {
    case FK::Rel: return fo::rel(a->name, apply_subst(a->args, s));
    case FK::Eq: return fo::eq(apply_subst(a->args[0], s), apply_subst(a->args[1], s));
    case FK::Top:
    case FK::Bot: return a;
    case FK::And: return fo::conj(apply_subst(a->a, s), apply_subst(a->b, s));
    case FK::Or: return fo::disj(apply_subst(a->a, s), apply_subst(a->b, s));
    case FK::Imp: return fo::imp(apply_subst(a->a, s), apply_subst(a->b, s));
    case FK::Forall:
    case FK::Exists: {
      VarSet fv = free_vars(a);
      if (!subset(fv, s.dom())) fail("DomainError", "apply_subst: domain does not cover free variables");
      Var z = fresh_var(set_union(s.range_fv(), fv));
      Subst s2 = s.restrict(fv).with(a->v, tvar(z));
      FoP body = apply_subst(a->a, s2);
      return a->k == FK::Forall ? fo::forall(z, body) : fo::exists(z, body);
    }
  }
  return a;
}

static bool fo_eq_impl(const FoP& a, const FoP& b) {
  if (a.get() == b.get()) return true;
  if (a->k != b->k) return false;
  switch (a->k) {
    case FK::Rel:
      if (a->name != b->name) return false;
      [[fallthrough]];
    case FK::Eq:
      if (a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!term_eq(a->args[i], b->args[i])) return false;
      return true;
    case FK::Top:
    case FK::Bot: return true;
    case FK::And:
    case FK::Or:
    case FK::Imp: return fo_eq_impl(a->a, b->a) && fo_eq_impl(a->b, b->b);
    case FK::Forall:
    case FK::Exists: return a->v == b->v && fo_eq_impl(a->a, b->a);
  }
  return false;
}
bool fo_eq(const FoP& a, const FoP& b) { return fo_eq_impl(a, b); }

// bound variables map to binder depth; env stores level per variable on each side
namespace {
struct AlphaEnv {
  std::map<Var, std::vector<int>> l, r;
  int depth = 0;
  int look(const std::map<Var, std::vector<int>>& e, Var v) const {
    auto it = e.find(v);
    if (it == e.end() || it->second.empty()) return -1;
    return it->second.back();
  }
};
bool alpha_term(const TermP& a, const TermP& b, const AlphaEnv& env) {
  if (a->k != b->k) return false;
  switch (a->k) {
    case Term::K::Var: {
      int la = env.look(env.l, a->v), lb = env.look(env.r, b->v);
      if (la != lb) return false;
      return la >= 0 || a->v == b->v;
    }
    case Term::K::Const: return a->name == b->name;
    case Term::K::App:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_term(a->args[i], b->args[i], env)) return false;
      return true;
  }
  return false;
}
bool alpha_impl(const FoP& a, const FoP& b, AlphaEnv& env) {
  if (a->k != b->k) return false;
  switch (a->k) {
    case FK::Rel:
      if (a->name != b->name) return false;
      [[fallthrough]];
    case FK::Eq:
      if (a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_term(a->args[i], b->args[i], env)) return false;
      return true;
    case FK::Top:
    case FK::Bot: return true;
    case FK::And:
    case FK::Or:
    case FK::Imp: return alpha_impl(a->a, b->a, env) && alpha_impl(a->b, b->b, env);
    case FK::Forall:
    case FK::Exists: {
      int d = env.depth++;
      env.l[a->v].push_back(d);
      env.r[b->v].push_back(d);
      bool ok = alpha_impl(a->a, b->a, env);
      env.l[a->v].pop_back();
      env.r[b->v].pop_back();
      env.depth--;
      return ok;
    }
  }
  return false;
}
}  // namespace

bool alpha_eq(const FoP& a, const FoP& b) {
  AlphaEnv env;
  return alpha_impl(a, b, env);
}

int fo_size(const FoP& a) {
  switch (a->k) {
    case FK::And:
    case FK::Or:
    case FK::Imp: return 1 + fo_size(a->a) + fo_size(a->b);
    case FK::Forall:
    case FK::Exists: return 1 + fo_size(a->a);
    default: return 1;
  }
}

// ---------------------------------------------------------------- MT formulas

namespace mt {
static std::shared_ptr<Mt> mk(MK k) {
  auto f = std::make_shared<Mt>();
  f->k = k;
  return f;
}
MtP rel(const std::string& r, std::vector<TermP> args) {
  auto f = mk(MK::Rel);
  f->name = r;
  f->args = std::move(args);
  f->type = free_vars(f->args);
  return f;
}
MtP eq(TermP l, TermP r) {
  auto f = mk(MK::Eq);
  f->args = {std::move(l), std::move(r)};
  f->type = free_vars(f->args);
  return f;
}
MtP top(VarSet F) {
  auto f = mk(MK::Top);
  f->type = std::move(F);
  return f;
}
MtP bot(VarSet F) {
  auto f = mk(MK::Bot);
  f->type = std::move(F);
  return f;
}
MtP binary(MK k, MtP a, MtP b) {
  if (!is_binary(k)) fail("TypeError", "not a binary connective");
  if (a->type != b->type) fail("TypeError", "operands of a binary connective have different types");
  auto f = mk(k);
  f->type = a->type;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
MtP conj(MtP a, MtP b) { return binary(MK::And, std::move(a), std::move(b)); }
MtP disj(MtP a, MtP b) { return binary(MK::Or, std::move(a), std::move(b)); }
MtP imp(MtP a, MtP b) { return binary(MK::Imp, std::move(a), std::move(b)); }
MtP excl(MtP a, MtP b) { return binary(MK::Excl, std::move(a), std::move(b)); }
MtP coimp(MtP a, MtP b) { return binary(MK::CoImp, std::move(a), std::move(b)); }
static MtP quant(MK k, Var y, MtP a) {
  if (!contains(a->type, y)) fail("TypeError", "quantified variable v" + std::to_string(y) + " not in operand type");
  auto f = mk(k);
  f->v = y;
  f->type = set_without(a->type, y);
  f->a = std::move(a);
  return f;
}
MtP box(Var y, MtP a) { return quant(MK::Box, y, std::move(a)); }
MtP dia(Var y, MtP a) { return quant(MK::Dia, y, std::move(a)); }
MtP cyl(Var x, MtP a) {
  if (x < 1) fail("TypeError", "bad variable");
  if (contains(a->type, x)) fail("TypeError", "cylinder variable v" + std::to_string(x) + " already in operand type");
  auto f = mk(MK::Cyl);
  f->v = x;
  f->type = set_with(a->type, x);
  f->a = std::move(a);
  return f;
}
MtP sub(Subst s, MtP a) {
  if (s.dom() != a->type) fail("TypeError", "substitution domain differs from operand type");
  auto f = mk(MK::Sub);
  f->type = s.range_fv();
  f->s = std::move(s);
  f->a = std::move(a);
  return f;
}
static MtP ssub(MK k, Subst s, MtP a) {
  if (s.range_fv() != a->type) fail("TypeError", "substitution range differs from operand type");
  auto f = mk(k);
  f->type = s.dom();
  f->s = std::move(s);
  f->a = std::move(a);
  return f;
}
MtP sdia(Subst s, MtP a) { return ssub(MK::SDia, std::move(s), std::move(a)); }
MtP sbox(Subst s, MtP a) { return ssub(MK::SBox, std::move(s), std::move(a)); }
}  // namespace mt

const VarSet& mt_type(const MtP& a) { return a->type; }

bool is_binary(MK k) {
  return k == MK::And || k == MK::Or || k == MK::Imp || k == MK::Excl || k == MK::CoImp;
}
bool is_atomic(const MtP& a) { return a->k == MK::Rel || a->k == MK::Eq; }
bool is_dfostar_only(MK k) { return k == MK::SDia || k == MK::SBox || k == MK::CoImp; }

int mt_cmp(const MtP& a, const MtP& b) {
  if (a.get() == b.get()) return 0;
  if (a->k != b->k) return a->k < b->k ? -1 : 1;
  switch (a->k) {
    case MK::Rel:
      if (int c = a->name.compare(b->name)) return c;
      [[fallthrough]];
    case MK::Eq:
      if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (int c = term_cmp(a->args[i], b->args[i])) return c;
      return 0;
    case MK::Top:
    case MK::Bot:
      if (a->type == b->type) return 0;
      return a->type < b->type ? -1 : 1;
    case MK::And:
    case MK::Or:
    case MK::Imp:
    case MK::Excl:
    case MK::CoImp:
      if (int c = mt_cmp(a->a, b->a)) return c;
      return mt_cmp(a->b, b->b);
    case MK::Box:
    case MK::Dia:
    case MK::Cyl:
      if (a->v != b->v) return a->v < b->v ? -1 : 1;
      return mt_cmp(a->a, b->a);
    case MK::Sub:
    case MK::SDia:
    case MK::SBox:
      if (int c = subst_cmp(a->s, b->s)) return c;
      return mt_cmp(a->a, b->a);
  }
  return 0;
}
bool mt_eq(const MtP& a, const MtP& b) { return mt_cmp(a, b) == 0; }

bool uses_dfostar(const MtP& a) {
  if (is_dfostar_only(a->k)) return true;
  if (a->a && uses_dfostar(a->a)) return true;
  if (a->b && uses_dfostar(a->b)) return true;
  return false;
}
bool has_subst(const MtP& a) {
  if (a->k == MK::Sub) return true;
  if (a->a && has_subst(a->a)) return true;
  if (a->b && has_subst(a->b)) return true;
  return false;
}
int mt_size(const MtP& a) {
  int n = 1;
  if (a->a) n += mt_size(a->a);
  if (a->b) n += mt_size(a->b);
  return n;
}
int mt_depth(const MtP& a) {
  int d = 0;
  if (a->a) d = std::max(d, mt_depth(a->a));
  if (a->b) d = std::max(d, mt_depth(a->b));
  return d + 1;
}

// ---------------------------------------------------------------- signatures

static void sig_term(const TermP& t, Signature& sig) {
  switch (t->k) {
    case Term::K::Var: break;
    case Term::K::Const:
      if (sig.relations.count(t->name) || sig.functions.count(t->name))
        fail("TypeError", "name used with two roles: " + t->name);
      sig.constants.insert(t->name);
      break;
    case Term::K::App: {
      if (sig.relations.count(t->name) || sig.constants.count(t->name))
        fail("TypeError", "name used with two roles: " + t->name);
      auto it = sig.functions.find(t->name);
      if (it != sig.functions.end() && it->second != (int)t->args.size())
        fail("TypeError", "inconsistent arity for " + t->name);
      sig.functions[t->name] = (int)t->args.size();
      for (auto& x : t->args) sig_term(x, sig);
      break;
    }
  }
}
static void sig_rel(const std::string& r, const std::vector<TermP>& args, Signature& sig) {
  if (sig.functions.count(r) || sig.constants.count(r)) fail("TypeError", "name used with two roles: " + r);
  auto it = sig.relations.find(r);
  if (it != sig.relations.end() && it->second != (int)args.size())
    fail("TypeError", "inconsistent arity for " + r);
  sig.relations[r] = (int)args.size();
  for (auto& t : args) sig_term(t, sig);
}
void collect_signature(const FoP& a, Signature& sig) {
  switch (a->k) {
    case FK::Rel: sig_rel(a->name, a->args, sig); break;
    case FK::Eq:
      for (auto& t : a->args) sig_term(t, sig);
      break;
    default:
      if (a->a) collect_signature(a->a, sig);
      if (a->b) collect_signature(a->b, sig);
  }
}
void collect_signature(const MtP& a, Signature& sig) {
  switch (a->k) {
    case MK::Rel: sig_rel(a->name, a->args, sig); break;
    case MK::Eq:
      for (auto& t : a->args) sig_term(t, sig);
      break;
    default:
      for (auto& [v, t] : a->s.m) sig_term(t, sig);
      if (a->a) collect_signature(a->a, sig);
      if (a->b) collect_signature(a->b, sig);
  }
}

}  // namespace dfo
