#include "dfo/fuzz.hpp"

#include <algorithm>

#include "dfo/io.hpp"

namespace dfo {

int Rng::below(int n) {
  if (n <= 1) return 0;
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(g));
}
bool Rng::coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(g) < p; }

FoModel random_model(Rng& r, int n) {
  FoModel m = default_signature_model(n);
  for (auto& [name, tab] : m.rels)
    for (auto& b : tab) b = r.coin() ? 1 : 0;
  for (auto& [name, tab] : m.funcs)
    for (auto& v : tab) v = r.below(n);
  for (auto& [name, c] : m.consts) c = r.below(n);
  return m;
}

TermP random_term_with(Rng& r, std::optional<Var> v) {
  TermP base = v ? tvar(*v) : tconst("c");
  return r.coin(0.35) ? tapp("f", {base}) : base;
}

namespace {

std::vector<Var> shuffled(Rng& r, const VarSet& s) {
  std::vector<Var> v(s.begin(), s.end());
  std::shuffle(v.begin(), v.end(), r.g);
  return v;
}
std::optional<Var> maybe_var(Rng& r, const VarSet& G) {
  if (G.empty() || r.coin(0.25)) return std::nullopt;
  return r.pick(sorted(G));
}
VarSet pool_set(int pool) {
  VarSet s;
  for (int i = 1; i <= pool; ++i) s.insert(i);
  return s;
}

}  // namespace

std::optional<MtP> random_atom(Rng& r, const VarSet& F) {
  if (F.size() > 2) return std::nullopt;
  std::vector<Var> vs = shuffled(r, F);
  int sym = r.below(F.size() <= 1 ? 3 : 2);  // 0 R, 1 =, 2 P
  if (sym == 2) return mt::rel("P", {random_term_with(r, vs.empty() ? std::nullopt : std::optional<Var>(vs[0]))});
  std::optional<Var> a0, a1;
  if (vs.size() == 2) {
    a0 = vs[0];
    a1 = vs[1];
  } else if (vs.size() == 1) {
    a0 = vs[0];
    if (r.coin()) a1 = vs[0];
    if (r.coin()) std::swap(a0, a1);
  }
  TermP l = random_term_with(r, a0), rt = random_term_with(r, a1);
  return sym == 0 ? mt::rel("R", {l, rt}) : mt::eq(l, rt);
}

std::optional<Subst> random_subst_from(Rng& r, const VarSet& dom, const VarSet& G) {
  if (G.size() > dom.size()) return std::nullopt;
  std::vector<Var> d = shuffled(r, dom);
  std::vector<Var> g = shuffled(r, G);
  Subst s;
  for (size_t i = 0; i < d.size(); ++i) {
    std::optional<Var> v;
    if (i < g.size()) v = g[i];
    else v = maybe_var(r, G);
    s.m[d[i]] = random_term_with(r, v);
  }
  return s;
}

VarSet random_subset(Rng& r, int pool, int max_size) {
  VarSet s;
  int k = r.below(std::min(pool, max_size) + 1);
  std::vector<Var> all = shuffled(r, pool_set(pool));
  for (int i = 0; i < k; ++i) s.insert(all[i]);
  return s;
}

std::optional<Subst> random_subst_onto(Rng& r, const VarSet& G, const GenOpts& o, int max_dom) {
  int lo = static_cast<int>(G.size());
  int hi = std::max(lo, max_dom);
  if (lo > o.pool) return std::nullopt;
  hi = std::min(hi, o.pool);
  int k = lo + r.below(hi - lo + 1);
  std::vector<Var> all = shuffled(r, pool_set(o.pool));
  VarSet dom(all.begin(), all.begin() + k);
  return random_subst_from(r, dom, G);
}

MtP random_mt(Rng& r, const VarSet& F, int depth, const GenOpts& o) {
  if (depth <= 0 || r.coin(o.leaf_bias)) {
    if (F.size() > 2) {
      Var x = r.pick(sorted(F));
      return mt::cyl(x, random_mt(r, set_without(F, x), 0, o));
    }
    int c = r.below(5);
    if (c == 0) return mt::top(F);
    if (c == 1) return mt::bot(F);
    return *random_atom(r, F);
  }
  std::vector<int> kinds = {0, 1, 2, 3};  // and or imp excl
  if (o.dfostar) kinds.push_back(4);
  if (static_cast<int>(F.size()) < o.pool) { kinds.push_back(5); kinds.push_back(6); }
  if (!F.empty()) kinds.push_back(7);
  kinds.push_back(8);
  if (o.dfostar) { kinds.push_back(9); kinds.push_back(10); }
  for (int tries = 0; tries < 8; ++tries) {
    int k = r.pick(kinds);
    switch (k) {
      case 0: case 1: case 2: case 3: case 4: {
        static const MK ops[] = {MK::And, MK::Or, MK::Imp, MK::Excl, MK::CoImp};
        return mt::binary(ops[k], random_mt(r, F, depth - 1, o), random_mt(r, F, depth - 1, o));
      }
      case 5: case 6: {
        Var y = r.pick(sorted(set_minus(pool_set(o.pool), F)));
        MtP in = random_mt(r, set_with(F, y), depth - 1, o);
        return k == 5 ? mt::dia(y, in) : mt::box(y, in);
      }
      case 7: {
        Var x = r.pick(sorted(F));
        return mt::cyl(x, random_mt(r, set_without(F, x), depth - 1, o));
      }
      case 8: {
        auto t = random_subst_onto(r, F, o);
        if (!t) continue;
        return mt::sub(*t, random_mt(r, t->dom(), depth - 1, o));
      }
      case 9: case 10: {
        VarSet G = random_subset(r, o.pool, static_cast<int>(F.size()));
        auto t = random_subst_from(r, F, G);
        if (!t) continue;
        MtP in = random_mt(r, G, depth - 1, o);
        return k == 9 ? mt::sdia(*t, in) : mt::sbox(*t, in);
      }
    }
  }
  return mt::conj(random_mt(r, F, depth - 1, o), random_mt(r, F, depth - 1, o));
}

static StP struct_leaf(Rng& r, const VarSet& F, Pol p, const GenOpts& o) {
  int c = r.below(4);
  if (c == 0) return p == Pol::Pos ? st::top(F) : st::bot(F);
  if (c == 1 && p == Pol::Pos) {
    if (auto a = random_atom(r, F)) {
      if ((*a)->k == MK::Rel) return st::atom((*a)->name, (*a)->args);
      return st::eq((*a)->args[0], (*a)->args[1]);
    }
  }
  return st::leaf(random_mt(r, F, r.below(2), o));
}

StP random_struct(Rng& r, const VarSet& F, Pol p, int depth, const GenOpts& o) {
  if (depth <= 0 || r.coin(o.leaf_bias)) return struct_leaf(r, F, p, o);
  const bool pos = p == Pol::Pos;
  std::vector<int> kinds = {0, 1, 2};  // binary connectives of this polarity
  if (static_cast<int>(F.size()) < o.pool) kinds.push_back(3);
  if (!F.empty()) kinds.push_back(4);
  kinds.push_back(5);
  kinds.push_back(6);
  for (int tries = 0; tries < 8; ++tries) {
    int k = r.pick(kinds);
    switch (k) {
      case 0: case 1: case 2: {
        static const SK posk[] = {SK::AndHat, SK::ExclHat, SK::CoexclHat};
        static const SK negk[] = {SK::OrCheck, SK::ImpCheck, SK::CoimpCheck};
        SK op = pos ? posk[k] : negk[k];
        StP a = random_struct(r, F, child_pol(op, 0, p), depth - 1, o);
        StP b = random_struct(r, F, child_pol(op, 1, p), depth - 1, o);
        return st::binary(op, a, b);
      }
      case 3: {
        Var y = r.pick(sorted(set_minus(pool_set(o.pool), F)));
        StP in = random_struct(r, set_with(F, y), p, depth - 1, o);
        return pos ? st::dia(y, in) : st::box(y, in);
      }
      case 4: {
        Var x = r.pick(sorted(F));
        return st::cyl(x, random_struct(r, set_without(F, x), p, depth - 1, o));
      }
      case 5: {
        auto t = random_subst_onto(r, F, o);
        if (!t) continue;
        return st::sub(*t, random_struct(r, t->dom(), p, depth - 1, o));
      }
      case 6: {
        VarSet G = random_subset(r, o.pool, static_cast<int>(F.size()));
        auto t = random_subst_from(r, F, G);
        if (!t) continue;
        StP in = random_struct(r, G, p, depth - 1, o);
        return pos ? st::sdia(*t, in) : st::sbox(*t, in);
      }
    }
  }
  return struct_leaf(r, F, p, o);
}

Sequent random_sequent(Rng& r, const VarSet& F, int depth, const GenOpts& o) {
  return make_seq(random_struct(r, F, Pol::Pos, depth, o), random_struct(r, F, Pol::Neg, depth, o));
}

FoP random_fo(Rng& r, int depth, const GenOpts& o) {
  VarSet pool = pool_set(o.pool);
  if (depth <= 0 || r.coin(o.leaf_bias)) {
    int c = r.below(6);
    auto term = [&] { return random_term_with(r, maybe_var(r, pool)); };
    if (c == 0) return fo::top();
    if (c == 1) return fo::bot();
    if (c == 2) return fo::rel("P", {term()});
    if (c == 3) return fo::eq(term(), term());
    return fo::rel("R", {term(), term()});
  }
  int k = r.below(5);
  Var v = r.pick(sorted(pool));
  switch (k) {
    case 0: return fo::conj(random_fo(r, depth - 1, o), random_fo(r, depth - 1, o));
    case 1: return fo::disj(random_fo(r, depth - 1, o), random_fo(r, depth - 1, o));
    case 2: return fo::imp(random_fo(r, depth - 1, o), random_fo(r, depth - 1, o));
    case 3: return fo::forall(v, random_fo(r, depth - 1, o));
    default: return fo::exists(v, random_fo(r, depth - 1, o));
  }
}

namespace {

struct Gen {
  Rng& r;
  const GenOpts& o;
  int d;
  StP P(const VarSet& F) { return random_struct(r, F, Pol::Pos, d, o); }
  StP N(const VarSet& F) { return random_struct(r, F, Pol::Neg, d, o); }
  StP S(const VarSet& F, Pol p) { return random_struct(r, F, p, d, o); }
  MtP A(const VarSet& F) { return random_mt(r, F, std::max(d, 1), o); }
  VarSet any() { return random_subset(r, o.pool, o.pool); }
  VarSet upto(int k) { return random_subset(r, o.pool, k); }
  VarSet outside() { return pool_set(o.pool); }
  std::optional<Var> var_in(const VarSet& F) {
    if (F.empty()) return std::nullopt;
    return r.pick(sorted(F));
  }
  std::optional<Var> var_out(const VarSet& F) {
    VarSet rest = set_minus(pool_set(o.pool), F);
    if (rest.empty()) return std::nullopt;
    return r.pick(sorted(rest));
  }
  // F with at most pool-1 variables, so a fresh quantified variable fits
  VarSet small() { return random_subset(r, o.pool, o.pool - 1); }
  MtP atom_of(const VarSet& F, MK k) {
    for (int i = 0; i < 20; ++i) {
      auto a = random_atom(r, F);
      if (a && (*a)->k == k) return *a;
    }
    return nullptr;
  }
};

StP hat_of(const MtP& a) {
  if (a->k == MK::Rel) return st::atom(a->name, a->args);
  return st::eq(a->args[0], a->args[1]);
}

// image of the arguments of an atom under a prefix chain built inside out
struct Chain {
  StP st;
  TermP lhs;
  std::vector<TermP> args;
};
Chain random_chain(Rng& r, MK k, const GenOpts& o) {
  Gen g{r, o, 0};
  VarSet G = g.upto(2);
  MtP a = g.atom_of(G, k);
  if (!a) return {};
  Chain c{hat_of(a), nullptr, a->args};
  VarSet cur = G;
  int layers = r.below(3);
  for (int i = 0; i < layers; ++i) {
    VarSet next = random_subset(r, o.pool, static_cast<int>(cur.size()));
    auto t = random_subst_from(r, cur, next);
    if (!t) break;
    c.st = st::sub(*t, c.st);
    c.args = apply_subst(c.args, *t);
    cur = next;
  }
  return c;
}
// another prefix decomposition with the same image
StP regeneralize(Rng& r, MK k, const std::string& name, const std::vector<TermP>& image) {
  std::vector<TermP> core;
  Subst u;
  Var w = 20;
  bool abstracted = false;
  for (auto& t : image) {
    if (r.coin(0.5)) {
      u.m[w] = t;
      core.push_back(tvar(w));
      ++w;
      abstracted = true;
    } else {
      core.push_back(t);
      for (Var v : free_vars(t)) u.m[v] = tvar(v);
    }
  }
  StP at = k == MK::Rel ? st::atom(name, image) : st::eq(image[0], image[1]);
  if (!abstracted && r.coin()) return at;
  StP c = k == MK::Rel ? st::atom(name, core) : st::eq(core[0], core[1]);
  return st::sub(u, c);
}

}  // namespace

std::optional<RuleInstance> random_instance(Rng& r, Rule rule, Dir dir, int depth, const GenOpts& o) {
  Gen g{r, o, depth};
  const bool down = dir == Dir::Down;
  Bindings b;
  StP L, R;
  auto done = [&]() -> std::optional<RuleInstance> {
    if (!L || !R) return std::nullopt;
    return RuleInstance{rule, dir, b, make_seq(L, R)};
  };
  auto onto = [&](const VarSet& F) { return random_subst_onto(r, F, o); };
  auto from = [&](const VarSet& F, VarSet* G) -> std::optional<Subst> {
    *G = random_subset(r, o.pool, static_cast<int>(F.size()));
    return random_subst_from(r, F, *G);
  };

  {
    static const std::map<Rule, std::tuple<SK, SK, int>> ints = {
        {Rule::Int_cyl_excl_L, {SK::Cyl, SK::ExclHat, 0}}, {Rule::Int_cyl_imp_R, {SK::Cyl, SK::ImpCheck, 1}},
        {Rule::Int_cyl_coexcl_L, {SK::Cyl, SK::CoexclHat, 0}}, {Rule::Int_cyl_coimp_R, {SK::Cyl, SK::CoimpCheck, 1}},
        {Rule::Int_cyl_and_L, {SK::Cyl, SK::AndHat, 0}}, {Rule::Int_cyl_or_R, {SK::Cyl, SK::OrCheck, 1}},
        {Rule::Int_sub_and_L, {SK::Sub, SK::AndHat, 0}}, {Rule::Int_sub_or_R, {SK::Sub, SK::OrCheck, 1}},
        {Rule::Int_sub_excl_L, {SK::Sub, SK::ExclHat, 0}}, {Rule::Int_sub_imp_R, {SK::Sub, SK::ImpCheck, 1}},
        {Rule::Int_sub_coexcl_L, {SK::Sub, SK::CoexclHat, 0}}, {Rule::Int_sub_coimp_R, {SK::Sub, SK::CoimpCheck, 1}},
    };
    auto it = ints.find(rule);
    if (it != ints.end()) {
      auto [wrap, op, sd] = it->second;
      Pol p = sd == 0 ? Pol::Pos : Pol::Neg;
      VarSet F = g.any();
      VarSet inner;
      std::function<StP(StP)> w;
      if (wrap == SK::Cyl) {
        auto x = g.var_in(F);
        if (!x) return std::nullopt;
        inner = set_without(F, *x);
        w = [x](StP s) { return st::cyl(*x, s); };
      } else {
        auto t = onto(F);
        if (!t) return std::nullopt;
        inner = t->dom();
        Subst tt = *t;
        w = [tt](StP s) { return st::sub(tt, s); };
      }
      StP c0 = g.S(inner, child_pol(op, 0, p)), c1 = g.S(inner, child_pol(op, 1, p));
      StP side = down ? w(st::binary(op, c0, c1)) : st::binary(op, w(c0), w(c1));
      if (sd == 0) { L = side; R = g.N(F); } else { L = g.P(F); R = side; }
      return done();
    }
  }

  switch (rule) {
    case Rule::Id:
    case Rule::Id_Eq: {
      MtP a = g.atom_of(g.upto(2), rule == Rule::Id ? MK::Rel : MK::Eq);
      if (!a) return std::nullopt;
      L = hat_of(a);
      R = st::leaf(a);
      return done();
    }
    case Rule::Cut: {
      VarSet F = g.any();
      L = g.P(F); R = g.N(F); b.cut = g.A(F);
      return done();
    }
    case Rule::DP_and_imp: {
      VarSet F = g.any();
      if (down) { L = g.P(F); R = st::imp(g.P(F), g.N(F)); }
      else { L = st::and_(g.P(F), g.P(F)); R = g.N(F); }
      return done();
    }
    case Rule::DP_or_excl: {
      VarSet F = g.any();
      if (down) { L = st::excl(g.N(F), g.P(F)); R = g.N(F); }
      else { L = g.P(F); R = st::or_(g.N(F), g.N(F)); }
      return done();
    }
    case Rule::DP_and_coimp: {
      VarSet F = g.any();
      if (down) { L = g.P(F); R = st::coimp(g.N(F), g.P(F)); }
      else { L = st::and_(g.P(F), g.P(F)); R = g.N(F); }
      return done();
    }
    case Rule::DP_or_coexcl: {
      VarSet F = g.any();
      if (down) { L = st::coexcl(g.P(F), g.N(F)); R = g.N(F); }
      else { L = g.P(F); R = st::or_(g.N(F), g.N(F)); }
      return done();
    }
    case Rule::DP_dia_cyl:
    case Rule::DP_cyl_box: {
      bool dia = rule == Rule::DP_dia_cyl;
      if (down) {
        VarSet F = g.small();
        Var x = *g.var_out(F);
        if (dia) { L = st::dia(x, g.P(set_with(F, x))); R = g.N(F); }
        else { L = g.P(F); R = st::box(x, g.N(set_with(F, x))); }
      } else {
        VarSet F = g.any();
        auto x = g.var_in(F);
        if (!x) return std::nullopt;
        if (dia) { L = g.P(F); R = st::cyl(*x, g.N(set_without(F, *x))); }
        else { L = st::cyl(*x, g.P(set_without(F, *x))); R = g.N(F); }
      }
      return done();
    }
    case Rule::DP_sdia_sub:
    case Rule::DP_sub_sbox: {
      bool dia = rule == Rule::DP_sdia_sub;
      VarSet F = g.any();
      if (down) {
        VarSet G;
        auto t = from(F, &G);
        if (!t) return std::nullopt;
        if (dia) { L = st::sdia(*t, g.P(G)); R = g.N(F); }
        else { L = g.P(F); R = st::sbox(*t, g.N(G)); }
      } else {
        auto t = onto(F);
        if (!t) return std::nullopt;
        if (dia) { L = g.P(F); R = st::sub(*t, g.N(t->dom())); }
        else { L = st::sub(*t, g.P(t->dom())); R = g.N(F); }
      }
      return done();
    }
    case Rule::cadj: {
      VarSet F = g.any();
      b.x = g.var_in(F);
      if (!b.x) return std::nullopt;
      L = g.P(F); R = g.N(F);
      return done();
    }
    case Rule::sadj: {
      VarSet F = g.any();
      b.t = onto(F);
      if (!b.t) return std::nullopt;
      L = g.P(F); R = g.N(F);
      return done();
    }
    case Rule::Nec_cyl_top:
    case Rule::Nec_cyl_bot: {
      bool top = rule == Rule::Nec_cyl_top;
      VarSet F = g.any();
      auto x = g.var_in(F);
      if (!x) return std::nullopt;
      StP wrapped = top ? st::cyl(*x, st::top(set_without(F, *x))) : st::cyl(*x, st::bot(set_without(F, *x)));
      StP plain = top ? st::top(F) : st::bot(F);
      if (!down) b.x = x;
      if (top) { L = down ? wrapped : plain; R = g.N(F); }
      else { L = g.P(F); R = down ? wrapped : plain; }
      return done();
    }
    case Rule::Nec_sub_top:
    case Rule::Nec_sub_bot: {
      bool top = rule == Rule::Nec_sub_top;
      VarSet F = g.any();
      auto t = onto(F);
      if (!t) return std::nullopt;
      StP wrapped = top ? st::sub(*t, st::top(t->dom())) : st::sub(*t, st::bot(t->dom()));
      StP plain = top ? st::top(F) : st::bot(F);
      if (!down) b.t = t;
      if (top) { L = down ? wrapped : plain; R = g.N(F); }
      else { L = g.P(F); R = down ? wrapped : plain; }
      return done();
    }
    case Rule::AtomRewrite:
    case Rule::AtomRewrite_Eq: {
      MK k = rule == Rule::AtomRewrite ? MK::Rel : MK::Eq;
      Chain c = random_chain(r, k, o);
      if (!c.st) return std::nullopt;
      std::string name = k == MK::Rel ? c.args.size() == 1 ? "P" : "R" : "";
      StP other = regeneralize(r, k, name, c.args);
      if (r.coin()) std::swap(c.st, other);
      L = c.st;
      b.st = other;
      R = g.N(L->type);
      return done();
    }
    case Rule::TopS_L: {
      VarSet F = g.any();
      L = down ? st::and_(st::top(F), g.P(F)) : g.P(F);
      R = g.N(F);
      return done();
    }
    case Rule::BotS_R: {
      VarSet F = g.any();
      L = g.P(F);
      R = down ? st::or_(g.N(F), st::bot(F)) : g.N(F);
      return done();
    }
    case Rule::E_L: case Rule::W_L: {
      VarSet F = g.any();
      L = st::and_(g.P(F), g.P(F)); R = g.N(F);
      return done();
    }
    case Rule::E_R: case Rule::W_R: {
      VarSet F = g.any();
      L = g.P(F); R = st::or_(g.N(F), g.N(F));
      return done();
    }
    case Rule::C_L: case Rule::C_R: {
      VarSet F = g.any();
      L = g.P(F); R = g.N(F);
      return done();
    }
    case Rule::A_L: {
      VarSet F = g.any();
      L = down ? st::and_(st::and_(g.P(F), g.P(F)), g.P(F)) : st::and_(g.P(F), st::and_(g.P(F), g.P(F)));
      R = g.N(F);
      return done();
    }
    case Rule::A_R: {
      VarSet F = g.any();
      L = g.P(F);
      R = down ? st::or_(g.N(F), st::or_(g.N(F), g.N(F))) : st::or_(st::or_(g.N(F), g.N(F)), g.N(F));
      return done();
    }
    case Rule::EqRefl: {
      VarSet F = g.upto(1);
      b.term = random_term_with(r, g.var_in(F));
      L = g.P(F); R = g.N(F);
      return done();
    }
    case Rule::EqRewrite: {
      VarSet pool = g.outside();
      Var y = r.pick(sorted(pool));
      VarSet D = random_subset(r, o.pool, 2);
      D.erase(y);
      Subst rr;
      for (Var v : D) rr.m[v] = random_term_with(r, g.var_in(pool));
      TermP t = random_term_with(r, g.var_in(pool)), s = random_term_with(r, g.var_in(pool));
      VarSet fts = set_union(free_vars(t), free_vars(s));
      VarSet xs = set_minus(rr.range_fv(), fts);
      VarSet zs = set_minus(free_vars(t), set_union(free_vars(s), rr.range_fv()));
      L = st::cyl_prefix(xs, st::eq(t, s));
      R = st::cyl_prefix(zs, st::sub(rr.with(y, s), g.N(set_with(D, y))));
      b.y = y;
      return done();
    }
    case Rule::AtomIntro:
    case Rule::AtomIntro_Eq: {
      VarSet F = g.upto(2);
      MtP a = g.atom_of(F, rule == Rule::AtomIntro ? MK::Rel : MK::Eq);
      if (!a) return std::nullopt;
      L = st::leaf(a); R = g.N(F);
      return done();
    }
    case Rule::Bot_L: { VarSet F = g.any(); L = st::leaf(mt::bot(F)); R = st::bot(F); return done(); }
    case Rule::Bot_R: { VarSet F = g.any(); L = g.P(F); R = st::leaf(mt::bot(F)); return done(); }
    case Rule::Top_L: { VarSet F = g.any(); L = st::leaf(mt::top(F)); R = g.N(F); return done(); }
    case Rule::Top_R: { VarSet F = g.any(); L = st::top(F); R = st::leaf(mt::top(F)); return done(); }
    case Rule::And_L: { VarSet F = g.any(); L = st::leaf(mt::conj(g.A(F), g.A(F))); R = g.N(F); return done(); }
    case Rule::And_R: {
      VarSet F = g.any();
      L = st::and_(g.P(F), g.P(F)); R = st::leaf(mt::conj(g.A(F), g.A(F)));
      return done();
    }
    case Rule::Or_L: {
      VarSet F = g.any();
      L = st::leaf(mt::disj(g.A(F), g.A(F))); R = st::or_(g.N(F), g.N(F));
      return done();
    }
    case Rule::Or_R: { VarSet F = g.any(); L = g.P(F); R = st::leaf(mt::disj(g.A(F), g.A(F))); return done(); }
    case Rule::Imp_L: {
      VarSet F = g.any();
      L = st::leaf(mt::imp(g.A(F), g.A(F))); R = st::imp(g.P(F), g.N(F));
      return done();
    }
    case Rule::Imp_R: { VarSet F = g.any(); L = g.P(F); R = st::leaf(mt::imp(g.A(F), g.A(F))); return done(); }
    case Rule::Gri_L: {
      VarSet F = g.any();
      L = st::and_(st::excl(g.N(F), g.P(F)), g.P(F)); R = g.N(F);
      return done();
    }
    case Rule::Gri_R: {
      VarSet F = g.any();
      L = g.P(F); R = st::or_(st::imp(g.P(F), g.N(F)), g.N(F));
      return done();
    }
    case Rule::Dia_L: case Rule::Dia_R: case Rule::Box_L: case Rule::Box_R: {
      VarSet F = g.small();
      Var x = *g.var_out(F);
      VarSet G = set_with(F, x);
      bool dia = rule == Rule::Dia_L || rule == Rule::Dia_R;
      MtP f = dia ? mt::dia(x, g.A(G)) : mt::box(x, g.A(G));
      if (rule == Rule::Dia_L) { L = st::leaf(f); R = g.N(F); }
      if (rule == Rule::Dia_R) { L = st::dia(x, g.P(G)); R = st::leaf(f); }
      if (rule == Rule::Box_L) { L = st::leaf(f); R = st::box(x, g.N(G)); }
      if (rule == Rule::Box_R) { L = g.P(F); R = st::leaf(f); }
      return done();
    }
    case Rule::Cyl_L: case Rule::Cyl_R: {
      VarSet F = g.any();
      auto x = g.var_in(F);
      if (!x) return std::nullopt;
      StP f = st::leaf(mt::cyl(*x, g.A(set_without(F, *x))));
      if (rule == Rule::Cyl_L) { L = f; R = g.N(F); } else { L = g.P(F); R = f; }
      return done();
    }
    case Rule::Sub_L: case Rule::Sub_R: {
      VarSet F = g.any();
      auto t = onto(F);
      if (!t) return std::nullopt;
      StP f = st::leaf(mt::sub(*t, g.A(t->dom())));
      if (rule == Rule::Sub_L) { L = f; R = g.N(F); } else { L = g.P(F); R = f; }
      return done();
    }
    case Rule::SDia_L: case Rule::SDia_R: case Rule::SBox_L: case Rule::SBox_R: {
      GenOpts so = o;
      so.dfostar = true;
      VarSet F = g.any(), G;
      auto t = from(F, &G);
      if (!t) return std::nullopt;
      bool dia = rule == Rule::SDia_L || rule == Rule::SDia_R;
      MtP in = random_mt(r, G, std::max(depth, 1), so);
      MtP f = dia ? mt::sdia(*t, in) : mt::sbox(*t, in);
      if (rule == Rule::SDia_L) { L = st::leaf(f); R = g.N(F); }
      if (rule == Rule::SDia_R) { L = st::sdia(*t, g.P(G)); R = st::leaf(f); }
      if (rule == Rule::SBox_L) { L = st::leaf(f); R = st::sbox(*t, g.N(G)); }
      if (rule == Rule::SBox_R) { L = g.P(F); R = st::leaf(f); }
      return done();
    }
    case Rule::Mono_cyl: {
      if (down) {
        VarSet F = g.any();
        auto x = g.var_in(F);
        if (!x) return std::nullopt;
        VarSet G = set_without(F, *x);
        L = st::cyl(*x, g.P(G)); R = st::cyl(*x, g.N(G));
      } else {
        VarSet F = g.small();
        b.x = g.var_out(F);
        L = g.P(F); R = g.N(F);
      }
      return done();
    }
    case Rule::Mono_sub: {
      VarSet F = g.any();
      auto t = onto(F);
      if (!t) return std::nullopt;
      L = st::sub(*t, g.P(t->dom())); R = st::sub(*t, g.N(t->dom()));
      return done();
    }
    case Rule::cq_L: case Rule::cq_R: {
      bool left = rule == Rule::cq_L;
      Pol p = left ? Pol::Pos : Pol::Neg;
      VarSet F = g.any();
      auto x = g.var_in(F);
      if (!x) return std::nullopt;
      auto y = g.var_out(F);
      if (!y) return std::nullopt;
      VarSet inner = set_with(set_without(F, *x), *y);
      StP X = g.S(inner, p);
      auto q = [&](StP s) { return left ? st::dia(*y, s) : st::box(*y, s); };
      StP side = down ? q(st::cyl(*x, X)) : st::cyl(*x, q(X));
      if (left) { L = side; R = g.N(F); } else { L = g.P(F); R = side; }
      return done();
    }
    case Rule::sq_L: case Rule::sq_R: {
      bool left = rule == Rule::sq_L;
      Pol p = left ? Pol::Pos : Pol::Neg;
      Var y = r.pick(sorted(g.outside()));
      VarSet D = random_subset(r, o.pool, 2);
      D.erase(y);
      VarSet G;
      auto t = from(D, &G);
      if (!t) return std::nullopt;
      Var z = fresh_var(set_union(set_union(G, D), VarSet{y}));
      if (r.coin()) {
        // a variable from the pool when one is free
        VarSet rest = set_minus(g.outside(), set_union(G, D));
        if (!rest.empty()) z = r.pick(sorted(rest));
      }
      StP X = g.S(set_with(D, y), p);
      auto q = [&](Var v, StP s) { return left ? st::dia(v, s) : st::box(v, s); };
      StP side;
      if (down) {
        side = q(z, st::sub(t->with(y, tvar(z)), X));
        b.y = y;
      } else {
        side = st::sub(*t, q(y, X));
        b.z = z;
      }
      if (left) { L = side; R = g.N(G); } else { L = g.P(G); R = side; }
      return done();
    }
    case Rule::cc_L: case Rule::cc_R: {
      bool left = rule == Rule::cc_L;
      VarSet F = g.any();
      if (F.size() < 2) return std::nullopt;
      std::vector<Var> v = shuffled(r, F);
      StP side = st::cyl(v[0], st::cyl(v[1], g.S(set_without(set_without(F, v[0]), v[1]), left ? Pol::Pos : Pol::Neg)));
      if (left) { L = side; R = g.N(F); } else { L = g.P(F); R = side; }
      return done();
    }
    case Rule::ss_L: case Rule::ss_R: {
      bool left = rule == Rule::ss_L;
      VarSet E = g.upto(2), H;
      auto s = from(E, &H);
      if (!s) return std::nullopt;
      VarSet F = random_subset(r, o.pool, static_cast<int>(H.size()));
      auto t = random_subst_from(r, H, F);
      if (!t) return std::nullopt;
      StP X = g.S(E, left ? Pol::Pos : Pol::Neg);
      StP side;
      if (down) {
        side = st::sub(compose_substs(*t, *s), X);
        b.t = t;
        b.s = s;
      } else {
        side = st::sub(*t, st::sub(*s, X));
      }
      if (left) { L = side; R = g.N(F); } else { L = g.P(F); R = side; }
      return done();
    }
    case Rule::sc_L: case Rule::sc_R: {
      bool left = rule == Rule::sc_L;
      Var y = r.pick(sorted(g.outside()));
      VarSet D = random_subset(r, o.pool, 2);
      D.erase(y);
      VarSet G;
      auto t = from(D, &G);
      if (!t) return std::nullopt;
      TermP s = random_term_with(r, g.var_in(g.outside()));
      StP X = g.S(D, left ? Pol::Pos : Pol::Neg);
      StP side;
      if (down) {
        side = st::cyl_prefix(set_minus(free_vars(s), G), st::sub(*t, X));
        b.y = y;
        b.term = s;
      } else {
        side = st::sub(t->with(y, s), st::cyl(y, X));
      }
      VarSet F = side->type;
      if (left) { L = side; R = g.N(F); } else { L = g.P(F); R = side; }
      return done();
    }
    default: return std::nullopt;
  }
}

namespace {

bool all_valid(const HeteroModel& H, const std::vector<Sequent>& ss) {
  for (auto& s : ss)
    if (!seq_valid(H, s)) return false;
  return true;
}

std::string describe(const RuleInstance& in, const FoModel& M) {
  return rule_name(in.rule) + (in.dir == Dir::Up ? ":up " : " ") + print_bindings(in.b) + " " +
         print_sequent(in.concl) + " in\n" + print_model(M);
}

}  // namespace

FuzzReport soundness_fuzz(uint64_t seed, long per_rule_min) {
  FuzzReport rep;
  Rng r(seed);
  const int kTries = 16;
  for (int ri = 0; ri < kNumRules; ++ri) {
    Rule rule = static_cast<Rule>(ri);
    const RuleInfo& info = rule_info(rule);
    std::vector<Dir> dirs = {Dir::Down};
    if (info.double_line) dirs.push_back(Dir::Up);
    long target = (per_rule_min + static_cast<long>(dirs.size()) - 1) / static_cast<long>(dirs.size());
    for (Dir d : dirs) {
      for (long k = 0; k < target; ++k) {
        FoModel M = random_model(r, 1 + r.below(3));
        HeteroModel H = hetero(M);
        GenOpts o;
        o.dfostar = info.dfostar_only || r.coin(0.3);
        // forward: premises valid implies conclusion valid
        // reverse, double-line only: conclusion valid implies premises valid
        for (int pass = 0; pass < (info.double_line ? 2 : 1); ++pass) {
          for (int t = 0; t < kTries; ++t) {
            std::optional<RuleInstance> in;
            std::vector<Sequent> prems;
            try {
              in = random_instance(r, rule, d, r.below(3), o);
              if (!in) continue;
            } catch (const Error&) {
              continue;  // ill-typed draw
            }
            try {
              prems = premises_of(rule, d, in->concl, in->b);
            } catch (const Error& e) {
              if (!rep.rejected++) rep.first_rejection = std::string(e.what()) + "\n" + describe(*in, M);
              break;
            }
            ++rep.instances;
            ++rep.per_rule[rule];
            bool pv = all_valid(H, prems), cv = seq_valid(H, in->concl);
            if (pass == 0) {
              if (pv && !cv && !rep.violations++) rep.first_violation = "unsound: " + describe(*in, M);
              if (pv) { ++rep.nonvacuous; ++rep.per_rule_nonvacuous[rule]; break; }
            } else {
              if (cv && !pv && !rep.violations++) rep.first_violation = "not invertible: " + describe(*in, M);
              if (cv) { ++rep.reverse_checked; break; }
            }
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace dfo
