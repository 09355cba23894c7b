#include "dfo/semantics.hpp"

#include <sstream>

#include "dfo/io.hpp"
#include "dfo/translations.hpp"

namespace dfo {

static size_t ipow(int n, size_t k) {
  size_t r = 1;
  for (size_t i = 0; i < k; ++i) r *= (size_t)n;
  return r;
}
static size_t mixed(const std::vector<int>& args, int n) {
  size_t idx = 0;
  for (int a : args) idx = idx * (size_t)n + (size_t)a;
  return idx;
}

int FoModel::rel_holds(const std::string& r, const std::vector<int>& args) const {
  auto it = rels.find(r);
  if (it == rels.end()) fail("DomainError", "relation " + r + " not interpreted by the model");
  if ((int)args.size() != rel_arity.at(r)) fail("DomainError", "wrong arity for relation " + r);
  return it->second[mixed(args, n)];
}
int FoModel::func_value(const std::string& f, const std::vector<int>& args) const {
  auto it = funcs.find(f);
  if (it == funcs.end()) fail("DomainError", "function " + f + " not interpreted by the model");
  if ((int)args.size() != func_arity.at(f)) fail("DomainError", "wrong arity for function " + f);
  return it->second[mixed(args, n)];
}

void validate_model(const FoModel& m) {
  if (m.n < 1) fail("DomainError", "empty domain");
  for (auto& [c, v] : m.consts) {
    if (v < 0 || v >= m.n) fail("DomainError", "constant " + c + " out of range");
    if (m.rels.count(c) || m.funcs.count(c)) fail("DomainError", "name " + c + " used twice");
  }
  for (auto& [f, tab] : m.funcs) {
    if (!m.func_arity.count(f) || tab.size() != ipow(m.n, m.func_arity.at(f)))
      fail("DomainError", "bad table for function " + f);
    for (int v : tab)
      if (v < 0 || v >= m.n) fail("DomainError", "function " + f + " value out of range");
    if (m.rels.count(f)) fail("DomainError", "name " + f + " used twice");
  }
  for (auto& [r, tab] : m.rels)
    if (!m.rel_arity.count(r) || tab.size() != ipow(m.n, m.rel_arity.at(r)))
      fail("DomainError", "bad table for relation " + r);
}

int eval_term(const FoModel& M, const Assignment& nu, const TermP& t) {
  switch (t->k) {
    case Term::K::Var: {
      auto it = nu.find(t->v);
      if (it == nu.end()) fail("DomainError", "unassigned variable " + print_var(t->v));
      return it->second;
    }
    case Term::K::Const: {
      auto it = M.consts.find(t->name);
      if (it == M.consts.end()) fail("DomainError", "constant " + t->name + " not interpreted");
      return it->second;
    }
    case Term::K::App: {
      std::vector<int> as;
      for (auto& a : t->args) as.push_back(eval_term(M, nu, a));
      return M.func_value(t->name, as);
    }
  }
  return 0;
}

static std::vector<int> eval_args(const FoModel& M, const Assignment& nu, const std::vector<TermP>& ts) {
  std::vector<int> r;
  for (auto& t : ts) r.push_back(eval_term(M, nu, t));
  return r;
}

bool eval_fo(const FoModel& M, const Assignment& nu, const FoP& A) {
  switch (A->k) {
    case FK::Rel: return M.rel_holds(A->name, eval_args(M, nu, A->args));
    case FK::Eq: return eval_term(M, nu, A->args[0]) == eval_term(M, nu, A->args[1]);
    case FK::Top: return true;
    case FK::Bot: return false;
    case FK::And: return eval_fo(M, nu, A->a) && eval_fo(M, nu, A->b);
    case FK::Or: return eval_fo(M, nu, A->a) || eval_fo(M, nu, A->b);
    case FK::Imp: return !eval_fo(M, nu, A->a) || eval_fo(M, nu, A->b);
    case FK::Forall:
    case FK::Exists: {
      Assignment mu = nu;
      bool all = true, some = false;
      for (int d = 0; d < M.n; ++d) {
        mu[A->v] = d;
        bool v = eval_fo(M, mu, A->a);
        all = all && v;
        some = some || v;
      }
      return A->k == FK::Forall ? all : some;
    }
  }
  return false;
}

// ---------------------------------------------------------------- spaces

size_t Space::size() const { return ipow(n, vars.size()); }
std::vector<int> Space::decode(size_t idx) const {
  std::vector<int> v(vars.size());
  for (size_t j = vars.size(); j-- > 0;) {
    v[j] = (int)(idx % (size_t)n);
    idx /= (size_t)n;
  }
  return v;
}
size_t Space::encode(const std::vector<int>& vals) const { return mixed(vals, n); }
Assignment Space::assignment(size_t idx) const {
  auto v = decode(idx);
  Assignment a;
  for (size_t j = 0; j < vars.size(); ++j) a[vars[j]] = v[j];
  return a;
}
Space space(const VarSet& F, int n) { return Space{sorted(F), n}; }

bool pred_eq(const PredSet& a, const PredSet& b) { return a.F == b.F && a.bits == b.bits; }
bool pred_le(const PredSet& a, const PredSet& b) {
  if (a.F != b.F || a.bits.size() != b.bits.size()) fail("TypeError", "comparing predicate sets of different types");
  for (size_t i = 0; i < a.bits.size(); ++i)
    if (a.bits[i] && !b.bits[i]) return false;
  return true;
}

PredSet p_full(const VarSet& F, int n) { return PredSet{F, std::vector<char>(ipow(n, F.size()), 1)}; }
PredSet p_empty(const VarSet& F, int n) { return PredSet{F, std::vector<char>(ipow(n, F.size()), 0)}; }

template <class Op>
static PredSet zip(const PredSet& a, const PredSet& b, Op op) {
  if (a.F != b.F || a.bits.size() != b.bits.size()) fail("TypeError", "mixed-type Boolean operation");
  PredSet r{a.F, std::vector<char>(a.bits.size())};
  for (size_t i = 0; i < a.bits.size(); ++i) r.bits[i] = op(a.bits[i] != 0, b.bits[i] != 0) ? 1 : 0;
  return r;
}
PredSet p_and(const PredSet& a, const PredSet& b) { return zip(a, b, [](bool x, bool y) { return x && y; }); }
PredSet p_or(const PredSet& a, const PredSet& b) { return zip(a, b, [](bool x, bool y) { return x || y; }); }
PredSet p_imp(const PredSet& a, const PredSet& b) { return zip(a, b, [](bool x, bool y) { return !x || y; }); }
PredSet p_excl(const PredSet& a, const PredSet& b) { return zip(a, b, [](bool x, bool y) { return !x && y; }); }
PredSet p_not(const PredSet& a) {
  PredSet r = a;
  for (auto& c : r.bits) c = c ? 0 : 1;
  return r;
}

FMap proj_map(const VarSet& G, Var x, int n) {
  if (!G.count(x)) fail("TypeError", "projection variable outside the type");
  FMap m{G, set_without(G, x), n, {}};
  Space sg = space(G, n), st = space(m.T, n);
  m.f.resize(sg.size());
  for (size_t i = 0; i < sg.size(); ++i) {
    auto v = sg.decode(i);
    std::vector<int> w;
    for (size_t j = 0; j < sg.vars.size(); ++j)
      if (sg.vars[j] != x) w.push_back(v[j]);
    m.f[i] = st.encode(w);
  }
  return m;
}

FMap subst_map(const FoModel& M, const Subst& s) {
  FMap m{s.range_fv(), s.dom(), M.n, {}};
  Space ss = space(m.S, M.n), st = space(m.T, M.n);
  m.f.resize(ss.size());
  for (size_t i = 0; i < ss.size(); ++i) {
    Assignment a = ss.assignment(i);
    std::vector<int> w;
    for (Var v : st.vars) w.push_back(eval_term(M, a, s.at(v)));
    m.f[i] = st.encode(w);
  }
  return m;
}

PredSet op_direct(const FMap& f, const PredSet& B) {
  if (B.F != f.T) fail("TypeError", "inverse image of a predicate set of the wrong type");
  PredSet r{f.S, std::vector<char>(f.f.size())};
  for (size_t i = 0; i < f.f.size(); ++i) r.bits[i] = B.bits[f.f[i]];
  return r;
}
PredSet op_diamond(const FMap& f, const PredSet& A) {
  if (A.F != f.S) fail("TypeError", "direct image of a predicate set of the wrong type");
  PredSet r = p_empty(f.T, f.n);
  for (size_t i = 0; i < f.f.size(); ++i)
    if (A.bits[i]) r.bits[f.f[i]] = 1;
  return r;
}
PredSet op_box(const FMap& f, const PredSet& A) {
  if (A.F != f.S) fail("TypeError", "universal image of a predicate set of the wrong type");
  PredSet r = p_full(f.T, f.n);
  for (size_t i = 0; i < f.f.size(); ++i)
    if (!A.bits[i]) r.bits[f.f[i]] = 0;
  return r;
}

// ---------------------------------------------------------------- multi-type evaluation

HeteroModel hetero(const FoModel& M) { return HeteroModel{&M, {}}; }

PredSet atom_value(const HeteroModel& H, const MtP& atom) {
  if (!H.override_atoms.empty()) {
    auto it = H.override_atoms.find(print_mt(atom));
    if (it != H.override_atoms.end()) return it->second;
  }
  const FoModel& M = *H.M;
  Space sp = space(atom->type, M.n);
  PredSet r{atom->type, std::vector<char>(sp.size())};
  for (size_t i = 0; i < sp.size(); ++i) {
    Assignment a = sp.assignment(i);
    if (atom->k == MK::Eq) r.bits[i] = eval_term(M, a, atom->args[0]) == eval_term(M, a, atom->args[1]);
    else r.bits[i] = (char)M.rel_holds(atom->name, eval_args(M, a, atom->args));
  }
  return r;
}

PredSet eval_mt(const HeteroModel& H, const MtP& A) {
  int n = H.M->n;
  switch (A->k) {
    case MK::Rel: case MK::Eq: return atom_value(H, A);
    case MK::Top: return p_full(A->type, n);
    case MK::Bot: return p_empty(A->type, n);
    case MK::And: return p_and(eval_mt(H, A->a), eval_mt(H, A->b));
    case MK::Or: return p_or(eval_mt(H, A->a), eval_mt(H, A->b));
    case MK::Imp: return p_imp(eval_mt(H, A->a), eval_mt(H, A->b));
    case MK::Excl: return p_excl(eval_mt(H, A->a), eval_mt(H, A->b));
    case MK::CoImp: return p_imp(eval_mt(H, A->b), eval_mt(H, A->a));
    case MK::Box: return op_box(proj_map(A->a->type, A->v, n), eval_mt(H, A->a));
    case MK::Dia: return op_diamond(proj_map(A->a->type, A->v, n), eval_mt(H, A->a));
    case MK::Cyl: return op_direct(proj_map(A->type, A->v, n), eval_mt(H, A->a));
    case MK::Sub: return op_direct(subst_map(*H.M, A->s), eval_mt(H, A->a));
    case MK::SDia: return op_diamond(subst_map(*H.M, A->s), eval_mt(H, A->a));
    case MK::SBox: return op_box(subst_map(*H.M, A->s), eval_mt(H, A->a));
  }
  fail("TypeError", "unknown formula kind");
}

bool seq_valid(const HeteroModel& H, const Sequent& s) {
  return pred_le(eval_mt(H, interpret(s.l)), eval_mt(H, interpret(s.r)));
}

PredSet cylindrify_to(const PredSet& p, const VarSet& U, int n) {
  if (!subset(p.F, U)) fail("TypeError", "cylindrification target does not contain the type");
  Space su = space(U, n), sp = space(p.F, n);
  PredSet r{U, std::vector<char>(su.size())};
  for (size_t i = 0; i < su.size(); ++i) {
    auto v = su.decode(i);
    std::vector<int> w;
    for (size_t j = 0; j < su.vars.size(); ++j)
      if (p.F.count(su.vars[j])) w.push_back(v[j]);
    r.bits[i] = p.bits[sp.encode(w)];
  }
  return r;
}

// ---------------------------------------------------------------- oracle suites

std::vector<TermP> small_terms(const FoModel& M, const VarSet& pool) {
  std::vector<TermP> base;
  for (Var v : pool) base.push_back(tvar(v));
  for (auto& [c, _] : M.consts) base.push_back(tconst(c));
  std::vector<TermP> out = base;
  for (auto& [f, k] : M.func_arity) {
    std::vector<size_t> idx(k, 0);
    while (true) {
      std::vector<TermP> as;
      for (size_t i : idx) as.push_back(base[i]);
      out.push_back(tapp(f, as));
      int j = k - 1;
      while (j >= 0 && ++idx[j] == base.size()) idx[j--] = 0;
      if (j < 0) break;
    }
  }
  return out;
}

static std::vector<PredSet> all_preds(const VarSet& F, int n) {
  size_t sz = ipow(n, F.size());
  std::vector<PredSet> out;
  for (size_t mask = 0; mask < ((size_t)1 << sz); ++mask) {
    PredSet p{F, std::vector<char>(sz)};
    for (size_t i = 0; i < sz; ++i) p.bits[i] = (mask >> i) & 1;
    out.push_back(std::move(p));
  }
  return out;
}

static std::vector<VarSet> subsets(const VarSet& pool) {
  std::vector<Var> vs = sorted(pool);
  std::vector<VarSet> out;
  for (size_t mask = 0; mask < ((size_t)1 << vs.size()); ++mask) {
    VarSet s;
    for (size_t i = 0; i < vs.size(); ++i)
      if ((mask >> i) & 1) s.insert(vs[i]);
    out.push_back(s);
  }
  return out;
}

static std::vector<Subst> substs_over(const VarSet& dom, const std::vector<TermP>& terms) {
  std::vector<Subst> out{Subst{}};
  for (Var v : dom) {
    std::vector<Subst> next;
    for (auto& s : out)
      for (auto& t : terms) next.push_back(s.with(v, t));
    out = std::move(next);
  }
  return out;
}

namespace {
struct Suite {
  SuiteResult r;
  bool expect(bool ok, const std::function<std::string()>& why) {
    ++r.checked;
    if (!ok && r.ok) {
      r.ok = false;
      r.counterexample = why();
    }
    return ok;
  }
};
std::string show(const PredSet& p) {
  std::string s = print_varset(p.F) + ":";
  for (char c : p.bits) s += c ? '1' : '0';
  return s;
}
struct NamedMap {
  std::string name;
  FMap f;
};
}  // namespace

static std::vector<NamedMap> all_maps(const FoModel& M, const VarSet& pool) {
  std::vector<NamedMap> out;
  for (auto& G : subsets(pool))
    for (Var x : G) out.push_back({"pi_" + print_var(x) + " on " + print_varset(G), proj_map(G, x, M.n)});
  auto terms = small_terms(M, pool);
  for (auto& T : subsets(pool))
    for (auto& s : substs_over(T, terms)) out.push_back({"subst " + print_subst(s), subst_map(M, s)});
  return out;
}

SuiteResult check_identities(const FoModel& M, char which, const VarSet& pool) {
  Suite S;
  int n = M.n;
  auto terms = small_terms(M, pool);
  auto sets = subsets(pool);
  std::map<VarSet, std::vector<PredSet>> memo;
  auto preds = [&](const VarSet& F) -> const std::vector<PredSet>& {
    auto it = memo.find(F);
    if (it == memo.end()) it = memo.emplace(F, all_preds(F, n)).first;
    return it->second;
  };
  switch (which) {
    case 'a': case 'b': {
      for (auto& nm : all_maps(M, pool)) {
        auto& ps = preds(nm.f.T);
        for (auto& A : ps)
          for (auto& B : ps) {
            auto why = [&] { return nm.name + " A=" + show(A) + " B=" + show(B); };
            if (which == 'a') {
              S.expect(pred_eq(op_direct(nm.f, p_and(A, B)), p_and(op_direct(nm.f, A), op_direct(nm.f, B))), why);
              S.expect(pred_eq(op_direct(nm.f, p_or(A, B)), p_or(op_direct(nm.f, A), op_direct(nm.f, B))), why);
            } else {
              S.expect(pred_eq(op_direct(nm.f, p_imp(A, B)), p_imp(op_direct(nm.f, A), op_direct(nm.f, B))), why);
              S.expect(pred_eq(op_direct(nm.f, p_excl(A, B)), p_excl(op_direct(nm.f, A), op_direct(nm.f, B))), why);
            }
          }
      }
      break;
    }
    case 'c': {
      // (x)[y]A = [y](x)A and the diamond version, x != y, A over G with y in G, x not in G
      for (auto& G : sets)
        for (Var y : G)
          for (Var x : pool) {
            if (G.count(x)) continue;
            FMap py = proj_map(G, y, n);
            FMap px1 = proj_map(set_with(set_without(G, y), x), x, n);
            FMap px2 = proj_map(set_with(G, x), x, n);
            FMap py2 = proj_map(set_with(G, x), y, n);
            for (auto& A : preds(G)) {
              auto why = [&] { return "x=" + print_var(x) + " y=" + print_var(y) + " A=" + show(A); };
              S.expect(pred_eq(op_direct(px1, op_box(py, A)), op_box(py2, op_direct(px2, A))), why);
              S.expect(pred_eq(op_direct(px1, op_diamond(py, A)), op_diamond(py2, op_direct(px2, A))), why);
            }
          }
      break;
    }
    case 'd': {
      // (t_F)[y]A = [z](z_y, t_F)A, A over F+y, y not in F, z not in FV(t_F) u F
      VarSet zpool = set_with(pool, fresh_var(pool));
      for (auto& G : sets)
        for (Var y : G) {
          VarSet F = set_without(G, y);
          FMap py = proj_map(G, y, n);
          for (auto& t : substs_over(F, terms)) {
            FMap ft = subst_map(M, t);
            for (Var z : zpool) {
              if (t.range_fv().count(z) || F.count(z)) continue;
              Subst zt = t.with(y, tvar(z));
              FMap fzt = subst_map(M, zt);
              FMap pz = proj_map(zt.range_fv(), z, n);
              for (auto& A : preds(G)) {
                auto why = [&] {
                  return "t=" + print_subst(t) + " y=" + print_var(y) + " z=" + print_var(z) + " A=" + show(A);
                };
                S.expect(pred_eq(op_direct(ft, op_box(py, A)), op_box(pz, op_direct(fzt, A))), why);
                S.expect(pred_eq(op_direct(ft, op_diamond(py, A)), op_diamond(pz, op_direct(fzt, A))), why);
              }
            }
          }
        }
      break;
    }
    case 'e': {
      // (x)(y)A = (y)(x)A
      for (auto& G : sets)
        for (Var x : pool)
          for (Var y : pool) {
            if (x == y || G.count(x) || G.count(y)) continue;
            VarSet Gx = set_with(G, x), Gy = set_with(G, y), Gxy = set_with(Gx, y);
            FMap a1 = proj_map(Gy, y, n), a2 = proj_map(Gxy, x, n);
            FMap b1 = proj_map(Gx, x, n), b2 = proj_map(Gxy, y, n);
            for (auto& A : preds(G))
              S.expect(pred_eq(op_direct(a2, op_direct(a1, A)), op_direct(b2, op_direct(b1, A))),
                       [&] { return "x=" + print_var(x) + " y=" + print_var(y) + " A=" + show(A); });
          }
      // (t_F)(s_T)A = (s(t/x)_T)A
      for (auto& T : sets)
        for (auto& s : substs_over(T, terms)) {
          VarSet F = s.range_fv();
          FMap fs = subst_map(M, s);
          for (auto& t : substs_over(F, terms)) {
            FMap ft = subst_map(M, t);
            FMap fc = subst_map(M, compose_substs(t, s));
            for (auto& A : preds(T))
              S.expect(pred_eq(op_direct(ft, op_direct(fs, A)), op_direct(fc, A)),
                       [&] { return "s=" + print_subst(s) + " t=" + print_subst(t) + " A=" + show(A); });
          }
        }
      break;
    }
    case 'f': {
      // (s_y, t_F)(y)A = (z1)...(zk)(t_F)A with zs = FV(s) \ FV(t_F)
      for (auto& F : sets)
        for (Var y : pool) {
          if (F.count(y)) continue;
          FMap py = proj_map(set_with(F, y), y, n);
          for (auto& t : substs_over(F, terms)) {
            FMap ft = subst_map(M, t);
            for (auto& sy : terms) {
              Subst st = t.with(y, sy);
              FMap fst = subst_map(M, st);
              VarSet U = st.range_fv();
              for (auto& A : preds(F)) {
                PredSet lhs = op_direct(fst, op_direct(py, A));
                PredSet rhs = cylindrify_to(op_direct(ft, A), U, n);
                S.expect(pred_eq(lhs, rhs), [&] {
                  return "t=" + print_subst(t) + " y=" + print_var(y) + " s=" + print_term(sy) + " A=" + show(A);
                });
              }
            }
          }
        }
      break;
    }
    case 'p': {
      for (auto& nm : all_maps(M, pool)) {
        auto& ps = preds(nm.f.S);
        const FMap& f = nm.f;
        for (auto& A : ps)
          for (auto& B : ps) {
            auto why = [&] { return nm.name + " A=" + show(A) + " B=" + show(B); };
            S.expect(pred_le(p_or(op_box(f, A), op_box(f, B)), op_box(f, p_or(A, B))), why);
            S.expect(pred_le(op_diamond(f, p_and(A, B)), p_and(op_diamond(f, A), op_diamond(f, B))), why);
            S.expect(pred_le(p_imp(op_diamond(f, A), op_box(f, B)), op_box(f, p_imp(A, B))), why);
            S.expect(pred_le(op_diamond(f, p_excl(A, B)), p_excl(op_box(f, A), op_diamond(f, B))), why);
          }
      }
      break;
    }
    case 'j': {
      for (auto& nm : all_maps(M, pool)) {
        const FMap& f = nm.f;
        for (auto& A : preds(f.S))
          for (auto& B : preds(f.T)) {
            auto why = [&] { return nm.name + " A=" + show(A) + " B=" + show(B); };
            S.expect(pred_le(op_diamond(f, A), B) == pred_le(A, op_direct(f, B)), why);
            S.expect(pred_le(op_direct(f, B), A) == pred_le(B, op_box(f, A)), why);
          }
      }
      break;
    }
    case 'i': {
      for (auto& G : sets)
        for (Var x : G) {
          FMap px = proj_map(G, x, n);
          auto& ps = preds(px.T);
          for (size_t i = 0; i < ps.size(); ++i)
            for (size_t j = i + 1; j < ps.size(); ++j)
              S.expect(!pred_eq(op_direct(px, ps[i]), op_direct(px, ps[j])),
                       [&] { return "pi_" + print_var(x) + " A=" + show(ps[i]) + " B=" + show(ps[j]); });
        }
      break;
    }
    default: fail("PreconditionError", std::string("unknown identity suite '") + which + "'");
  }
  return S.r;
}

SuiteResult check_valuation(const HeteroModel& H, const VarSet& pool) {
  Suite S;
  const FoModel& M = *H.M;
  int n = M.n;
  auto terms = small_terms(M, pool);
  struct Sym {
    std::string name;
    int k;
    bool eq;
  };
  std::vector<Sym> syms;
  for (auto& [r, k] : M.rel_arity) syms.push_back({r, k, false});
  syms.push_back({"=", 2, true});
  auto mk = [](const Sym& p, std::vector<TermP> as) {
    return p.eq ? mt::eq(as[0], as[1]) : mt::rel(p.name, std::move(as));
  };
  auto tuples = [&](int k) {
    std::vector<std::vector<TermP>> out{{}};
    for (int i = 0; i < k; ++i) {
      std::vector<std::vector<TermP>> next;
      for (auto& tu : out)
        for (auto& t : terms) {
          auto c = tu;
          c.push_back(t);
          next.push_back(c);
        }
      out = std::move(next);
    }
    return out;
  };
  // 1: V(P(t)) = (t)V(P(x))
  for (auto& p : syms) {
    std::vector<TermP> xs;
    for (int i = 1; i <= p.k; ++i) xs.push_back(tvar(i));
    PredSet base = atom_value(H, mk(p, xs));
    for (auto& tu : tuples(p.k)) {
      Subst s;
      for (int i = 0; i < p.k; ++i) s.m[i + 1] = tu[i];
      MtP atom = mk(p, tu);
      S.expect(pred_eq(atom_value(H, atom), op_direct(subst_map(M, s), base)),
               [&] { return "condition 1 fails at " + print_mt(atom); });
    }
  }
  // 2: V(r = r) = top
  for (auto& r : terms) {
    MtP atom = mt::eq(r, r);
    S.expect(pred_eq(atom_value(H, atom), p_full(atom->type, n)),
             [&] { return "condition 2 fails at " + print_mt(atom); });
  }
  // 3: equality congruence in the first argument
  for (auto& p : syms) {
    if (p.k < 1) continue;
    auto rests = tuples(p.k - 1);
    for (auto& r : terms)
      for (auto& s : terms)
        for (auto& rest : rests) {
          std::vector<TermP> ar{r}, as{s};
          ar.insert(ar.end(), rest.begin(), rest.end());
          as.insert(as.end(), rest.begin(), rest.end());
          MtP e = mt::eq(r, s), pr = mk(p, ar), ps = mk(p, as);
          VarSet U = set_union(e->type, set_union(pr->type, ps->type));
          PredSet lhs = p_and(cylindrify_to(atom_value(H, e), U, n), cylindrify_to(atom_value(H, pr), U, n));
          PredSet rhs = cylindrify_to(atom_value(H, ps), U, n);
          S.expect(pred_le(lhs, rhs), [&] {
            return "condition 3 fails at " + print_mt(e) + ", " + print_mt(pr) + ", " + print_mt(ps);
          });
        }
  }
  // prefix lemma spot check: equal tau images give equal values
  std::map<std::string, std::vector<MtP>> cls;
  for (auto& p : syms) {
    if (p.k > 1 && !p.eq) continue;
    for (auto& tu : tuples(p.k)) {
      MtP atom = mk(p, tu);
      cls[print_fo(tau(atom))].push_back(atom);
      for (auto& s : substs_over(atom->type, terms)) {
        MtP pre = mt::sub(s, atom);
        cls[print_fo(tau(pre))].push_back(pre);
      }
    }
  }
  for (auto& [key, v] : cls) {
    PredSet first = eval_mt(H, v[0]);
    for (size_t i = 1; i < v.size() && i < 8; ++i)
      S.expect(pred_eq(first, eval_mt(H, v[i])),
               [&] { return "prefix lemma fails: " + print_mt(v[0]) + " vs " + print_mt(v[i]); });
  }
  return S.r;
}

bool check_faithfulness(const FoModel& M, const MtP& A) {
  HeteroModel H = hetero(M);
  PredSet p = eval_mt(H, A);
  FoP t = tau(A);
  Space sp = space(A->type, M.n);
  for (size_t i = 0; i < sp.size(); ++i)
    if (eval_fo(M, sp.assignment(i), t) != p.has(i)) return false;
  return true;
}

static FoModel signature_skeleton(int n) {
  FoModel m;
  m.n = n;
  m.rel_arity = {{"P", 1}, {"R", 2}};
  m.func_arity = {{"f", 1}};
  m.consts = {{"c", 0}};
  m.rels["P"] = std::vector<char>(n, 0);
  m.rels["R"] = std::vector<char>((size_t)n * n, 0);
  m.funcs["f"] = std::vector<int>(n, 0);
  return m;
}

void for_each_model(int n, const std::function<void(const FoModel&)>& fn) {
  FoModel m = signature_skeleton(n);
  size_t np = (size_t)1 << n, nr = (size_t)1 << (n * n), nf = ipow(n, n);
  for (size_t pm = 0; pm < np; ++pm)
    for (size_t rm = 0; rm < nr; ++rm)
      for (int c = 0; c < n; ++c)
        for (size_t fm = 0; fm < nf; ++fm) {
          for (int i = 0; i < n; ++i) m.rels["P"][i] = (pm >> i) & 1;
          for (int i = 0; i < n * n; ++i) m.rels["R"][i] = (rm >> i) & 1;
          m.consts["c"] = c;
          size_t x = fm;
          for (int i = 0; i < n; ++i) {
            m.funcs["f"][i] = (int)(x % n);
            x /= n;
          }
          fn(m);
        }
}

FoModel default_signature_model(int n) {
  FoModel m = signature_skeleton(n);
  m.rels["P"][0] = 1;
  if (n > 1) m.rels["R"][1] = 1;  // R(0,1)
  else m.rels["R"][0] = 1;
  for (int i = 0; i < n; ++i) m.funcs["f"][i] = (i + 1) % n;
  return m;
}

}  // namespace dfo
