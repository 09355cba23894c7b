#include "dfo/translations.hpp"

namespace dfo {

MtP cyl_prefix_mt(const VarSet& zs, MtP a) {
  auto v = sorted(zs);
  for (size_t i = v.size(); i-- > 0;) a = mt::cyl(v[i], a);
  return a;
}

namespace {

// fresh variables replacing FV(range t) in the expansion of <t>/[t]
struct Expansion {
  std::vector<Var> src, dst;
  Subst rho;  // src -> dst
};
Expansion expansion_vars(const Subst& t) {
  Expansion e;
  VarSet S = t.range_fv();
  VarSet avoid = set_union(S, t.dom());
  for (Var s : S) {
    Var z = fresh_var(avoid);
    avoid.insert(z);
    e.src.push_back(s);
    e.dst.push_back(z);
    e.rho.m[s] = tvar(z);
  }
  return e;
}

}  // namespace

FoP tau(const MtP& a) {
  switch (a->k) {
    case MK::Rel: return fo::rel(a->name, a->args);
    case MK::Eq: return fo::eq(a->args[0], a->args[1]);
    case MK::Top: return fo::top();
    case MK::Bot: return fo::bot();
    case MK::And: return fo::conj(tau(a->a), tau(a->b));
    case MK::Or: return fo::disj(tau(a->a), tau(a->b));
    case MK::Imp: return fo::imp(tau(a->a), tau(a->b));
    case MK::Excl: return fo::conj(fo::neg(tau(a->a)), tau(a->b));
    case MK::CoImp: return fo::imp(tau(a->b), tau(a->a));
    case MK::Box: return fo::forall(a->v, tau(a->a));
    case MK::Dia: return fo::exists(a->v, tau(a->a));
    case MK::Cyl: return tau(a->a);
    case MK::Sub: return apply_subst(tau(a->a), a->s);
    case MK::SDia:
    case MK::SBox: {
      // <t>C = exists z (x = t_x(z) & C(z)), [t]C = forall z (x = t_x(z) -> C(z))
      Expansion e = expansion_vars(a->s);
      FoP body = apply_subst(tau(a->a), e.rho);
      FoP eqs;
      for (auto& [x, tx] : a->s.m) {
        FoP q = fo::eq(tvar(x), apply_subst(tx, e.rho));
        eqs = eqs ? fo::conj(eqs, q) : q;
      }
      if (eqs) body = a->k == MK::SDia ? fo::conj(eqs, body) : fo::imp(eqs, body);
      for (size_t i = e.dst.size(); i-- > 0;)
        body = a->k == MK::SDia ? fo::exists(e.dst[i], body) : fo::forall(e.dst[i], body);
      return body;
    }
  }
  fail("TypeError", "unknown formula kind");
}

static MtP expand_modal_subst(const MtP& a) {
  // a = <t>C or [t]C, C already substitution free
  Expansion e = expansion_vars(a->s);
  VarSet T = a->s.dom();
  VarSet Z(e.dst.begin(), e.dst.end());
  VarSet U = set_union(T, Z);
  MtP body = cyl_prefix_mt(T, sigma_sub(e.rho, a->a));
  MtP eqs;
  for (auto& [x, tx] : a->s.m) {
    MtP q = mt::eq(tvar(x), apply_subst(tx, e.rho));
    q = cyl_prefix_mt(set_minus(U, q->type), q);
    eqs = eqs ? mt::conj(eqs, q) : q;
  }
  if (eqs) body = a->k == MK::SDia ? mt::conj(eqs, body) : mt::imp(eqs, body);
  for (size_t i = e.dst.size(); i-- > 0;)
    body = a->k == MK::SDia ? mt::dia(e.dst[i], body) : mt::box(e.dst[i], body);
  return body;
}

MtP sigma_sub(const Subst& s, const MtP& b) {
  switch (b->k) {
    case MK::Rel: return mt::rel(b->name, apply_subst(b->args, s));
    case MK::Eq: return mt::eq(apply_subst(b->args[0], s), apply_subst(b->args[1], s));
    case MK::Top: return mt::top(s.range_fv());
    case MK::Bot: return mt::bot(s.range_fv());
    case MK::And: case MK::Or: case MK::Imp: case MK::Excl: case MK::CoImp:
      return mt::binary(b->k, sigma_sub(s, b->a), sigma_sub(s, b->b));
    case MK::Box:
    case MK::Dia: {
      VarSet avoid = set_union(set_union(s.dom(), s.range_fv()), b->a->type);
      Var z = fresh_var(avoid);
      MtP inner = sigma_sub(s.with(b->v, tvar(z)), b->a);
      return b->k == MK::Box ? mt::box(z, inner) : mt::dia(z, inner);
    }
    case MK::Cyl: {
      Var y = b->v;
      Subst rest = s.restrict(set_without(s.dom(), y));
      VarSet zs = set_minus(free_vars(s.at(y)), rest.range_fv());
      return cyl_prefix_mt(zs, sigma_sub(rest, b->a));
    }
    case MK::Sub: return sigma_sub(compose_substs(s, b->s), b->a);
    case MK::SDia:
    case MK::SBox: return sigma_sub(s, sigma(b));
  }
  fail("TypeError", "unknown formula kind");
}

MtP sigma(const MtP& a) {
  switch (a->k) {
    case MK::Rel: case MK::Eq: case MK::Top: case MK::Bot: return a;
    case MK::And: case MK::Or: case MK::Imp: case MK::Excl: case MK::CoImp:
      return mt::binary(a->k, sigma(a->a), sigma(a->b));
    case MK::Box: return mt::box(a->v, sigma(a->a));
    case MK::Dia: return mt::dia(a->v, sigma(a->a));
    case MK::Cyl: return mt::cyl(a->v, sigma(a->a));
    case MK::Sub: return sigma_sub(a->s, a->a);
    case MK::SDia:
    case MK::SBox: return expand_modal_subst(a->k == MK::SDia ? mt::sdia(a->s, sigma(a->a)) : mt::sbox(a->s, sigma(a->a)));
  }
  fail("TypeError", "unknown formula kind");
}

MtP kappa(const VarSet& F, const FoP& a) {
  switch (a->k) {
    case FK::Rel: {
      MtP at = mt::rel(a->name, a->args);
      return cyl_prefix_mt(set_minus(F, at->type), at);
    }
    case FK::Eq: {
      MtP at = mt::eq(a->args[0], a->args[1]);
      return cyl_prefix_mt(set_minus(F, at->type), at);
    }
    case FK::Top: return mt::top(F);
    case FK::Bot: return mt::bot(F);
    case FK::And: case FK::Or: case FK::Imp: {
      MtP l = kappa(set_union(F, free_vars(a->b)), a->a);
      MtP r = kappa(set_union(F, free_vars(a->a)), a->b);
      MK k = a->k == FK::And ? MK::And : a->k == FK::Or ? MK::Or : MK::Imp;
      return mt::binary(k, l, r);
    }
    case FK::Exists:
    case FK::Forall: {
      Var x = a->v;
      bool ex = a->k == FK::Exists;
      if (F.count(x)) {
        MtP in = kappa(F, a->a);
        return mt::cyl(x, ex ? mt::dia(x, in) : mt::box(x, in));
      }
      MtP in = kappa(set_with(F, x), a->a);
      return ex ? mt::dia(x, in) : mt::box(x, in);
    }
  }
  fail("TypeError", "unknown formula kind");
}

}  // namespace dfo
