#include "dfo/derivations.hpp"

#include <algorithm>
#include <map>

#include "dfo/translations.hpp"

namespace dfo {

namespace {

[[noreturn]] void pre(const std::string& m) { fail("PreconditionError", m); }
StP lf(const MtP& a) { return st::leaf(a); }
Sequent sq(StP l, StP r) { return make_seq(std::move(l), std::move(r)); }
Path zeros(int side, int k) { return extend(Path{side}, 0, k); }
Tac lit(DerivP d) {
  return [d](const Sequent&) { return d; };
}
// a few steps, then a ready-made proof
Tac then(std::function<void(Lin&)> steps, std::function<DerivP()> rest) {
  return [steps, rest](const Sequent& g) {
    Lin l(g);
    steps(l);
    return l.close(rest());
  };
}

void rcadj(Lin& l, Var x) {
  l.step(Rule::cadj, Dir::Down, bx(x)).step(Rule::DP_cyl_box, Dir::Up).step(Rule::DP_dia_cyl, Dir::Down);
}
void rsadj(Lin& l, const Subst& s) {
  l.step(Rule::sadj, Dir::Down, bt(s)).step(Rule::DP_sub_sbox, Dir::Up).step(Rule::DP_sdia_sub, Dir::Down);
}

StP cyls(const std::vector<Var>& xs, StP in) {
  for (size_t i = xs.size(); i-- > 0;) in = st::cyl(xs[i], in);
  return in;
}

void refuse_unprovable(const MtP& a) {
  switch (a->k) {
    case MK::Excl: pre("no rule introduces the exclusion formula");
    case MK::CoImp: pre("no rule introduces the co-implication formula");
    default: break;
  }
}

// ---------------------------------------------------------------- substitution
// sub_left: (s~)P |- Q and sub_right: Q |- (s~)P, where Q is sigma((s)P) up to
// the names of its binders, which are taken from Q

DerivP sub_right(const Subst& s, const MtP& P, const MtP& Q);

DerivP sub_left(const Subst& s, const MtP& P, const MtP& Q) {
  Lin l(sq(st::sub(s, lf(P)), lf(Q)));
  const Path in{0, 0};
  switch (P->k) {
    case MK::Rel:
      l.at(in, Rule::AtomIntro).step(Rule::AtomRewrite, Dir::Down, bst(st::atom(Q->name, Q->args)));
      return l.fin(Rule::Id);
    case MK::Eq:
      l.at(in, Rule::AtomIntro_Eq).step(Rule::AtomRewrite_Eq, Dir::Down, bst(st::eq(Q->args[0], Q->args[1])));
      return l.fin(Rule::Id_Eq);
    case MK::Top:
      l.at(in, Rule::Top_L).step(Rule::Nec_sub_top);
      return l.fin(Rule::Top_R);
    case MK::Bot:
      l.step(Rule::Bot_R).step(Rule::Nec_sub_bot, Dir::Up, bt(s)).step(Rule::Mono_sub);
      return l.fin(Rule::Bot_L);
    case MK::And:
      l.at(in, Rule::And_L).step(Rule::Int_sub_and_L);
      return l.fin(Rule::And_R, Dir::Down, {}, {lit(sub_left(s, P->a, Q->a)), lit(sub_left(s, P->b, Q->b))});
    case MK::Or: {
      l.step(Rule::Or_R);
      l.at({1, 0}, [&](Lin& m) { rsadj(m, s); }).at({1, 1}, [&](Lin& m) { rsadj(m, s); });
      l.step(Rule::Int_sub_or_R, Dir::Up).step(Rule::Mono_sub);
      auto down = [](Lin& m) { m.step(Rule::DP_sub_sbox); };
      return l.fin(Rule::Or_L, Dir::Down, {},
                   {then(down, [&] { return sub_left(s, P->a, Q->a); }),
                    then(down, [&] { return sub_left(s, P->b, Q->b); })});
    }
    case MK::Imp: {
      l.step(Rule::Imp_R);
      l.at({1, 0}, Rule::sadj, Dir::Down, bt(s)).at({1, 1}, [&](Lin& m) { rsadj(m, s); });
      l.step(Rule::Int_sub_imp_R, Dir::Up).step(Rule::Mono_sub);
      return l.fin(Rule::Imp_L, Dir::Down, {},
                   {then([](Lin& m) { m.step(Rule::DP_sdia_sub); }, [&] { return sub_right(s, P->a, Q->a); }),
                    then([](Lin& m) { m.step(Rule::DP_sub_sbox); }, [&] { return sub_left(s, P->b, Q->b); })});
    }
    case MK::Dia: {
      if (Q->k != MK::Dia) pre("substitution target has the wrong shape");
      Subst u = s.with(P->v, tvar(Q->v));
      l.at(in, Rule::Dia_L).step(Rule::sq_L, Dir::Up, bz(Q->v)).step(Rule::Dia_R);
      return l.close(sub_left(u, P->a, Q->a));
    }
    case MK::Box: {
      if (Q->k != MK::Box) pre("substitution target has the wrong shape");
      Subst u = s.with(P->v, tvar(Q->v));
      l.step(Rule::Box_R).step(Rule::DP_cyl_box).step(Rule::sc_L, Dir::Down, byterm(P->v, tvar(Q->v)));
      l.step(Rule::DP_sub_sbox, Dir::Up).step(Rule::DP_cyl_box, Dir::Up).step(Rule::Box_L).step(Rule::DP_sub_sbox);
      return l.close(sub_left(u, P->a, Q->a));
    }
    case MK::Cyl: {
      Var y = P->v;
      Subst rest = s.restrict(set_without(s.dom(), y));
      auto zs = sorted(set_minus(free_vars(s.at(y)), rest.range_fv()));
      MtP q = Q;
      l.at(in, Rule::Cyl_L);
      for (size_t i = 0; i < zs.size(); ++i) {
        if (q->k != MK::Cyl || q->v != zs[i]) pre("substitution target has the wrong cylinder prefix");
        l.at(zeros(1, static_cast<int>(i)), Rule::Cyl_R);
        q = q->a;
      }
      l.step(Rule::sc_L, Dir::Up);
      for (size_t i = 0; i < zs.size(); ++i) l.step(Rule::Mono_cyl);
      return l.close(sub_left(rest, P->a, q));
    }
    case MK::Sub:
      l.at(in, Rule::Sub_L).step(Rule::ss_L, Dir::Up);
      return l.close(sub_left(compose_substs(s, P->s), P->a, Q));
    default: break;
  }
  refuse_unprovable(P);
  pre("substitution over a D.FO* connective is not handled");
}

DerivP sub_right(const Subst& s, const MtP& P, const MtP& Q) {
  Lin l(sq(lf(Q), st::sub(s, lf(P))));
  const Path in{1, 0};
  switch (P->k) {
    case MK::Rel:
      l.step(Rule::AtomIntro).step(Rule::AtomRewrite, Dir::Down, bst(st::sub(s, st::atom(P->name, P->args))));
      l.step(Rule::Mono_sub);
      return l.fin(Rule::Id);
    case MK::Eq:
      l.step(Rule::AtomIntro_Eq).step(Rule::AtomRewrite_Eq, Dir::Down, bst(st::sub(s, st::eq(P->args[0], P->args[1]))));
      l.step(Rule::Mono_sub);
      return l.fin(Rule::Id_Eq);
    case MK::Top:
      l.step(Rule::Top_L).step(Rule::Nec_sub_top, Dir::Up, bt(s)).step(Rule::Mono_sub);
      return l.fin(Rule::Top_R);
    case MK::Bot:
      l.at(in, Rule::Bot_R).step(Rule::Nec_sub_bot);
      return l.fin(Rule::Bot_L);
    case MK::And: {
      l.step(Rule::And_L);
      l.at({0, 0}, Rule::sadj, Dir::Down, bt(s)).at({0, 1}, Rule::sadj, Dir::Down, bt(s));
      l.step(Rule::Int_sub_and_L, Dir::Up).step(Rule::Mono_sub);
      auto down = [](Lin& m) { m.step(Rule::DP_sdia_sub); };
      return l.fin(Rule::And_R, Dir::Down, {},
                   {then(down, [&] { return sub_right(s, P->a, Q->a); }),
                    then(down, [&] { return sub_right(s, P->b, Q->b); })});
    }
    case MK::Or:
      l.at(in, Rule::Or_R).step(Rule::Int_sub_or_R);
      return l.fin(Rule::Or_L, Dir::Down, {}, {lit(sub_right(s, P->a, Q->a)), lit(sub_right(s, P->b, Q->b))});
    case MK::Imp:
      l.at(in, Rule::Imp_R).step(Rule::Int_sub_imp_R);
      return l.fin(Rule::Imp_L, Dir::Down, {}, {lit(sub_left(s, P->a, Q->a)), lit(sub_right(s, P->b, Q->b))});
    case MK::Dia: {
      if (Q->k != MK::Dia) pre("substitution target has the wrong shape");
      Var y = P->v, z = Q->v;
      Subst u = s.with(y, tvar(z));
      l.step(Rule::Dia_L).step(Rule::DP_dia_cyl).step(Rule::sc_R, Dir::Down, byterm(y, tvar(z)));
      l.step(Rule::DP_sdia_sub, Dir::Up).step(Rule::DP_dia_cyl, Dir::Up).step(Rule::Dia_R).step(Rule::DP_sdia_sub);
      return l.close(sub_right(u, P->a, Q->a));
    }
    case MK::Box: {
      if (Q->k != MK::Box) pre("substitution target has the wrong shape");
      Subst u = s.with(P->v, tvar(Q->v));
      l.at(in, Rule::Box_R).step(Rule::sq_R, Dir::Up, bz(Q->v)).step(Rule::Box_L);
      return l.close(sub_right(u, P->a, Q->a));
    }
    case MK::Cyl: {
      Var y = P->v;
      Subst rest = s.restrict(set_without(s.dom(), y));
      auto zs = sorted(set_minus(free_vars(s.at(y)), rest.range_fv()));
      MtP q = Q;
      for (size_t i = 0; i < zs.size(); ++i) {
        if (q->k != MK::Cyl || q->v != zs[i]) pre("substitution target has the wrong cylinder prefix");
        l.at(zeros(0, static_cast<int>(i)), Rule::Cyl_L);
        q = q->a;
      }
      l.at(in, Rule::Cyl_R).step(Rule::sc_R, Dir::Up);
      for (size_t i = 0; i < zs.size(); ++i) l.step(Rule::Mono_cyl);
      return l.close(sub_right(rest, P->a, q));
    }
    case MK::Sub:
      l.at(in, Rule::Sub_R).step(Rule::ss_R, Dir::Up);
      return l.close(sub_right(compose_substs(s, P->s), P->a, Q));
    default: break;
  }
  refuse_unprovable(P);
  pre("substitution over a D.FO* connective is not handled");
}

// A |- Q and Q |- A for Q = sigma(A) up to binder names
DerivP sig_right(const MtP& A, const MtP& Q);
DerivP sig_left(const MtP& A, const MtP& Q) {
  if (!has_subst(A)) {
    if (!mt_eq(A, Q)) pre("substitution target has the wrong shape");
    return derive_identity(A);
  }
  Lin l(sq(lf(A), lf(Q)));
  switch (A->k) {
    case MK::And:
      l.step(Rule::And_L);
      return l.fin(Rule::And_R, Dir::Down, {}, {lit(sig_left(A->a, Q->a)), lit(sig_left(A->b, Q->b))});
    case MK::Or:
      l.step(Rule::Or_R);
      return l.fin(Rule::Or_L, Dir::Down, {}, {lit(sig_left(A->a, Q->a)), lit(sig_left(A->b, Q->b))});
    case MK::Imp:
      l.step(Rule::Imp_R);
      return l.fin(Rule::Imp_L, Dir::Down, {}, {lit(sig_right(A->a, Q->a)), lit(sig_left(A->b, Q->b))});
    case MK::Dia:
      l.step(Rule::Dia_L).step(Rule::Dia_R);
      return l.close(sig_left(A->a, Q->a));
    case MK::Box:
      l.step(Rule::Box_R).step(Rule::Box_L);
      return l.close(sig_left(A->a, Q->a));
    case MK::Cyl:
      l.step(Rule::Cyl_L).step(Rule::Cyl_R).step(Rule::Mono_cyl);
      return l.close(sig_left(A->a, Q->a));
    case MK::Sub:
      l.step(Rule::Sub_L);
      return l.close(sub_left(A->s, A->a, Q));
    default: break;
  }
  refuse_unprovable(A);
  pre("D.FO* connectives are not handled");
}

DerivP sig_right(const MtP& A, const MtP& Q) {
  if (!has_subst(A)) {
    if (!mt_eq(A, Q)) pre("substitution target has the wrong shape");
    return derive_identity(A);
  }
  Lin l(sq(lf(Q), lf(A)));
  switch (A->k) {
    case MK::And:
      l.step(Rule::And_L);
      return l.fin(Rule::And_R, Dir::Down, {}, {lit(sig_right(A->a, Q->a)), lit(sig_right(A->b, Q->b))});
    case MK::Or:
      l.step(Rule::Or_R);
      return l.fin(Rule::Or_L, Dir::Down, {}, {lit(sig_right(A->a, Q->a)), lit(sig_right(A->b, Q->b))});
    case MK::Imp:
      l.step(Rule::Imp_R);
      return l.fin(Rule::Imp_L, Dir::Down, {}, {lit(sig_left(A->a, Q->a)), lit(sig_right(A->b, Q->b))});
    case MK::Dia:
      l.step(Rule::Dia_L).step(Rule::Dia_R);
      return l.close(sig_right(A->a, Q->a));
    case MK::Box:
      l.step(Rule::Box_R).step(Rule::Box_L);
      return l.close(sig_right(A->a, Q->a));
    case MK::Cyl:
      l.step(Rule::Cyl_L).step(Rule::Cyl_R).step(Rule::Mono_cyl);
      return l.close(sig_right(A->a, Q->a));
    case MK::Sub:
      l.step(Rule::Sub_R);
      return l.close(sub_right(A->s, A->a, Q));
    default: break;
  }
  refuse_unprovable(A);
  pre("D.FO* connectives are not handled");
}

// ---------------------------------------------------------------- canonical form
// kl: (xs~)B |- kappa(F, tau B) and kr: the converse, B substitution free,
// F = type(B) + xs, xs listed outermost first

VarSet with_all(VarSet F, const std::vector<Var>& xs) {
  for (Var x : xs) F.insert(x);
  return F;
}

// swap cylinder j of the prefix on `side` to the front
void front_cyl(Lin& l, int side, std::vector<Var>& xs, Var x) {
  auto it = std::find(xs.begin(), xs.end(), x);
  if (it == xs.end()) pre("cylinder variable missing from the prefix");
  int j = static_cast<int>(it - xs.begin());
  for (int i = j - 1; i >= 0; --i) l.at(zeros(side, i), side == 0 ? Rule::cc_L : Rule::cc_R);
  xs.erase(it);
  xs.insert(xs.begin(), x);
}

DerivP kr(std::vector<Var> xs, const MtP& B);

DerivP kl(std::vector<Var> xs, const MtP& B) {
  VarSet F = with_all(B->type, xs);
  MtP K = kappa(F, tau(B));
  Lin l(sq(cyls(xs, lf(B)), lf(K)));
  const int k = static_cast<int>(xs.size());
  const Path in = zeros(0, k);
  switch (B->k) {
    case MK::Rel: case MK::Eq:
      while (K->k == MK::Cyl) {
        l.step(Rule::Cyl_R);
        front_cyl(l, 0, xs, K->v);
        l.step(Rule::Mono_cyl);
        xs.erase(xs.begin());
        K = K->a;
      }
      if (!xs.empty()) pre("canonical atom misses a cylinder");
      return l.close(derive_identity(B));
    case MK::Top:
      l.at(in, Rule::Top_L);
      for (int i = k - 1; i >= 0; --i) l.at(zeros(0, i), Rule::Nec_cyl_top);
      return l.fin(Rule::Top_R);
    case MK::Bot:
      l.step(Rule::Bot_R);
      for (int i = 0; i < k; ++i) l.at(zeros(1, i), Rule::Nec_cyl_bot, Dir::Up, bx(xs[i]));
      for (int i = 0; i < k; ++i) l.step(Rule::Mono_cyl);
      return l.fin(Rule::Bot_L);
    case MK::And:
      l.at(in, Rule::And_L);
      for (int i = k - 1; i >= 0; --i) l.at(zeros(0, i), Rule::Int_cyl_and_L);
      return l.fin(Rule::And_R, Dir::Down, {}, {lit(kl(xs, B->a)), lit(kl(xs, B->b))});
    case MK::Or: {
      l.step(Rule::Or_R);
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < k; ++i) l.at(extend(Path{1, c}, 0, i), [&](Lin& m) { rcadj(m, xs[i]); });
      for (int i = 0; i < k; ++i) l.at(zeros(1, i), Rule::Int_cyl_or_R, Dir::Up);
      for (int i = 0; i < k; ++i) l.step(Rule::Mono_cyl);
      auto down = [k](Lin& m) {
        for (int i = 0; i < k; ++i) m.step(Rule::DP_cyl_box);
      };
      return l.fin(Rule::Or_L, Dir::Down, {},
                   {then(down, [&] { return kl(xs, B->a); }), then(down, [&] { return kl(xs, B->b); })});
    }
    case MK::Imp: {
      l.step(Rule::Imp_R);
      for (int i = 0; i < k; ++i) l.at(extend(Path{1, 0}, 0, i), Rule::cadj, Dir::Down, bx(xs[i]));
      for (int i = 0; i < k; ++i) l.at(extend(Path{1, 1}, 0, i), [&](Lin& m) { rcadj(m, xs[i]); });
      for (int i = 0; i < k; ++i) l.at(zeros(1, i), Rule::Int_cyl_imp_R, Dir::Up);
      for (int i = 0; i < k; ++i) l.step(Rule::Mono_cyl);
      return l.fin(Rule::Imp_L, Dir::Down, {},
                   {then([k](Lin& m) { for (int i = 0; i < k; ++i) m.step(Rule::DP_dia_cyl); },
                         [&] { return kr(xs, B->a); }),
                    then([k](Lin& m) { for (int i = 0; i < k; ++i) m.step(Rule::DP_cyl_box); },
                         [&] { return kl(xs, B->b); })});
    }
    case MK::Dia:
    case MK::Box: {
      Var x = B->v;
      bool dia = B->k == MK::Dia;
      if (std::find(xs.begin(), xs.end(), x) != xs.end()) {
        l.step(Rule::Cyl_R);
        front_cyl(l, 0, xs, x);
        l.step(Rule::Mono_cyl);
        xs.erase(xs.begin());
        return l.close(kl(xs, B));
      }
      if (dia) {
        l.at(in, Rule::Dia_L);
        for (int i = k - 1; i >= 0; --i) l.at(zeros(0, i), Rule::cq_L, Dir::Up);
        l.step(Rule::Dia_R);
      } else {
        l.step(Rule::Box_R).step(Rule::DP_cyl_box);
        for (int i = 0; i < k; ++i) l.at(zeros(0, i), Rule::cc_L);
        for (int i = 0; i <= k; ++i) l.step(Rule::DP_cyl_box, Dir::Up);
        l.step(Rule::Box_L);
        for (int i = 0; i < k; ++i) l.step(Rule::DP_cyl_box);
      }
      return l.close(kl(xs, B->a));
    }
    case MK::Cyl:
      l.at(in, Rule::Cyl_L);
      xs.push_back(B->v);
      return l.close(kl(xs, B->a));
    default: break;
  }
  refuse_unprovable(B);
  pre("canonical form generator expects a substitution-free D.FO formula");
}

DerivP kr(std::vector<Var> xs, const MtP& B) {
  VarSet F = with_all(B->type, xs);
  MtP K = kappa(F, tau(B));
  Lin l(sq(lf(K), cyls(xs, lf(B))));
  const int k = static_cast<int>(xs.size());
  const Path in = zeros(1, k);
  switch (B->k) {
    case MK::Rel: case MK::Eq:
      while (K->k == MK::Cyl) {
        l.step(Rule::Cyl_L);
        front_cyl(l, 1, xs, K->v);
        l.step(Rule::Mono_cyl);
        xs.erase(xs.begin());
        K = K->a;
      }
      if (!xs.empty()) pre("canonical atom misses a cylinder");
      return l.close(derive_identity(B));
    case MK::Top:
      l.step(Rule::Top_L);
      for (int i = 0; i < k; ++i) l.at(zeros(0, i), Rule::Nec_cyl_top, Dir::Up, bx(xs[i]));
      for (int i = 0; i < k; ++i) l.step(Rule::Mono_cyl);
      return l.fin(Rule::Top_R);
    case MK::Bot:
      l.at(in, Rule::Bot_R);
      for (int i = k - 1; i >= 0; --i) l.at(zeros(1, i), Rule::Nec_cyl_bot);
      return l.fin(Rule::Bot_L);
    case MK::And: {
      l.step(Rule::And_L);
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < k; ++i) l.at(extend(Path{0, c}, 0, i), Rule::cadj, Dir::Down, bx(xs[i]));
      for (int i = 0; i < k; ++i) l.at(zeros(0, i), Rule::Int_cyl_and_L, Dir::Up);
      for (int i = 0; i < k; ++i) l.step(Rule::Mono_cyl);
      auto down = [k](Lin& m) {
        for (int i = 0; i < k; ++i) m.step(Rule::DP_dia_cyl);
      };
      return l.fin(Rule::And_R, Dir::Down, {},
                   {then(down, [&] { return kr(xs, B->a); }), then(down, [&] { return kr(xs, B->b); })});
    }
    case MK::Or:
      l.at(in, Rule::Or_R);
      for (int i = k - 1; i >= 0; --i) l.at(zeros(1, i), Rule::Int_cyl_or_R);
      return l.fin(Rule::Or_L, Dir::Down, {}, {lit(kr(xs, B->a)), lit(kr(xs, B->b))});
    case MK::Imp:
      l.at(in, Rule::Imp_R);
      for (int i = k - 1; i >= 0; --i) l.at(zeros(1, i), Rule::Int_cyl_imp_R);
      return l.fin(Rule::Imp_L, Dir::Down, {}, {lit(kl(xs, B->a)), lit(kr(xs, B->b))});
    case MK::Dia:
    case MK::Box: {
      Var x = B->v;
      bool dia = B->k == MK::Dia;
      if (std::find(xs.begin(), xs.end(), x) != xs.end()) {
        l.step(Rule::Cyl_L);
        front_cyl(l, 1, xs, x);
        l.step(Rule::Mono_cyl);
        xs.erase(xs.begin());
        return l.close(kr(xs, B));
      }
      if (dia) {
        l.step(Rule::Dia_L).step(Rule::DP_dia_cyl);
        for (int i = 0; i < k; ++i) l.at(zeros(1, i), Rule::cc_R);
        for (int i = 0; i <= k; ++i) l.step(Rule::DP_dia_cyl, Dir::Up);
        l.step(Rule::Dia_R);
        for (int i = 0; i < k; ++i) l.step(Rule::DP_dia_cyl);
      } else {
        l.at(in, Rule::Box_R);
        for (int i = k - 1; i >= 0; --i) l.at(zeros(1, i), Rule::cq_R, Dir::Up);
        l.step(Rule::Box_L);
      }
      return l.close(kr(xs, B->a));
    }
    case MK::Cyl:
      l.at(in, Rule::Cyl_R);
      xs.push_back(B->v);
      return l.close(kr(xs, B->a));
    default: break;
  }
  refuse_unprovable(B);
  pre("canonical form generator expects a substitution-free D.FO formula");
}

// ---------------------------------------------------------------- renaming bridge

Var max_var(const MtP& a);
Var max_var_terms(const std::vector<TermP>& ts) {
  Var m = 0;
  for (Var v : free_vars(ts)) m = std::max(m, v);
  return m;
}
Var max_var(const MtP& a) {
  Var m = a->v;
  for (Var v : a->type) m = std::max(m, v);
  m = std::max(m, max_var_terms(a->args));
  for (auto& [x, t] : a->s.m) m = std::max({m, x, max_var_terms({t})});
  if (a->a) m = std::max(m, max_var(a->a));
  if (a->b) m = std::max(m, max_var(a->b));
  return m;
}

// rename every binder to a fresh variable, numbered in preorder from `next`
MtP fresh_rename(const MtP& a, const std::map<Var, Var>& env, Var& next) {
  auto mv = [&](Var v) {
    auto it = env.find(v);
    return it == env.end() ? v : it->second;
  };
  Subst rho;
  for (auto& [v, w] : env) rho.m[v] = tvar(w);
  auto terms = [&](const std::vector<TermP>& ts) {
    Subst r = rho;
    for (Var v : free_vars(ts))
      if (!r.has(v)) r.m[v] = tvar(v);
    return apply_subst(ts, r);
  };
  auto vars = [&](const VarSet& s) {
    VarSet o;
    for (Var v : s) o.insert(mv(v));
    return o;
  };
  switch (a->k) {
    case MK::Rel: return mt::rel(a->name, terms(a->args));
    case MK::Eq: {
      auto ts = terms(a->args);
      return mt::eq(ts[0], ts[1]);
    }
    case MK::Top: return mt::top(vars(a->type));
    case MK::Bot: return mt::bot(vars(a->type));
    case MK::And: case MK::Or: case MK::Imp: case MK::Excl: case MK::CoImp: {
      MtP l = fresh_rename(a->a, env, next);
      return mt::binary(a->k, l, fresh_rename(a->b, env, next));
    }
    case MK::Dia: case MK::Box: {
      Var z = next++;
      auto e2 = env;
      e2[a->v] = z;
      MtP in = fresh_rename(a->a, e2, next);
      return a->k == MK::Dia ? mt::dia(z, in) : mt::box(z, in);
    }
    case MK::Cyl: return mt::cyl(mv(a->v), fresh_rename(a->a, env, next));
    default: break;
  }
  pre("renaming expects a substitution-free D.FO formula");
}

// P |- N and N |- P for N the fresh renaming of P
DerivP alpha_right(const MtP& P, const MtP& N) {
  Subst id = Subst::identity(N->type);
  MtP mid = mt::sub(id, N);
  DerivP l = Lin(sq(lf(P), lf(mid))).step(Rule::Sub_R).apply(lit(sub_right(id, N, P)));
  DerivP r = Lin(sq(lf(mid), lf(N))).step(Rule::Sub_L).apply(lit(sub_left(id, N, N)));
  return cut(mid, l, r);
}
DerivP alpha_left(const MtP& N, const MtP& P) {
  Subst id = Subst::identity(N->type);
  MtP mid = mt::sub(id, N);
  DerivP l = Lin(sq(lf(N), lf(mid))).step(Rule::Sub_R).apply(lit(sub_right(id, N, N)));
  DerivP r = Lin(sq(lf(mid), lf(P))).step(Rule::Sub_L).apply(lit(sub_left(id, N, P)));
  return cut(mid, l, r);
}

}  // namespace

// ---------------------------------------------------------------- identity

DerivP derive_identity(const MtP& a) {
  Lin l(sq(lf(a), lf(a)));
  auto id2 = [&](Rule r) {
    return l.fin(r, Dir::Down, {}, {lit(derive_identity(a->a)), lit(derive_identity(a->b))});
  };
  switch (a->k) {
    case MK::Rel: return l.step(Rule::AtomIntro).fin(Rule::Id);
    case MK::Eq: return l.step(Rule::AtomIntro_Eq).fin(Rule::Id_Eq);
    case MK::Top: return l.step(Rule::Top_L).fin(Rule::Top_R);
    case MK::Bot: return l.step(Rule::Bot_R).fin(Rule::Bot_L);
    case MK::And: l.step(Rule::And_L); return id2(Rule::And_R);
    case MK::Or: l.step(Rule::Or_R); return id2(Rule::Or_L);
    case MK::Imp: l.step(Rule::Imp_R); return id2(Rule::Imp_L);
    case MK::Dia: return l.step(Rule::Dia_L).step(Rule::Dia_R).close(derive_identity(a->a));
    case MK::Box: return l.step(Rule::Box_R).step(Rule::Box_L).close(derive_identity(a->a));
    case MK::Cyl:
      return l.step(Rule::Cyl_L).step(Rule::Cyl_R).step(Rule::Mono_cyl).close(derive_identity(a->a));
    case MK::Sub:
      return l.step(Rule::Sub_L).step(Rule::Sub_R).step(Rule::Mono_sub).close(derive_identity(a->a));
    case MK::SDia: return l.step(Rule::SDia_L).step(Rule::SDia_R).close(derive_identity(a->a));
    case MK::SBox: return l.step(Rule::SBox_R).step(Rule::SBox_L).close(derive_identity(a->a));
    default: break;
  }
  refuse_unprovable(a);
  pre("unknown formula kind");
}

// ---------------------------------------------------------------- interchange

DerivPair derive_sigma(const MtP& a) {
  MtP q = sigma(a);
  return {sig_left(a, q), sig_right(a, q)};
}

DerivPair derive_kappa(const VarSet& F, const MtP& a) {
  if (mt_type(a) != F) pre("formula type differs from the requested type");
  MtP s = sigma(a);
  if (mt_eq(s, a)) return {kl({}, a), kr({}, a)};
  return {cut(s, sig_left(a, s), kl({}, s)), cut(s, kr({}, s), sig_right(a, s))};
}

DerivP derive_interchange(const MtP& a, const MtP& b) {
  if (mt_type(a) != mt_type(b)) pre("formulas have different types");
  if (!alpha_eq(tau(a), tau(b))) pre("first-order images are not alpha-equivalent");
  if (mt_eq(a, b)) return derive_identity(a);
  MtP sa = sigma(a), sb = sigma(b);
  Var base = std::max({max_var(a), max_var(b), max_var(sa), max_var(sb)}) + 1;
  Var na_next = base, nb_next = base;
  MtP na = fresh_rename(sa, {}, na_next);
  MtP nb = fresh_rename(sb, {}, nb_next);
  if (!fo_eq(tau(na), tau(nb))) pre("renamed first-order images differ");
  std::vector<DerivP> chain;
  if (!mt_eq(a, sa)) chain.push_back(sig_left(a, sa));
  chain.push_back(alpha_right(sa, na));
  chain.push_back(kl({}, na));
  chain.push_back(kr({}, nb));
  chain.push_back(alpha_left(nb, sb));
  if (!mt_eq(b, sb)) chain.push_back(sig_right(b, sb));
  return cut_chain(chain);
}

// ---------------------------------------------------------------- derived rules

std::optional<DerivedRule> derived_rule_by_name(const std::string& n) {
  static const std::map<std::string, DerivedRule> m{
      {"dist_excl", DerivedRule::Excl},     {"dist_imp", DerivedRule::Imp}, {"dist_coexcl", DerivedRule::Coexcl},
      {"dist_coimp", DerivedRule::Coimp},   {"dist_and", DerivedRule::And}, {"dist_or", DerivedRule::Or}};
  auto it = m.find(n);
  if (it == m.end()) return std::nullopt;
  return it->second;
}
std::string derived_rule_name(DerivedRule r) {
  switch (r) {
    case DerivedRule::Excl: return "dist_excl";
    case DerivedRule::Imp: return "dist_imp";
    case DerivedRule::Coexcl: return "dist_coexcl";
    case DerivedRule::Coimp: return "dist_coimp";
    case DerivedRule::And: return "dist_and";
    case DerivedRule::Or: return "dist_or";
  }
  return "?";
}

DerivP derived_rule(DerivedRule r, const Sequent& concl) {
  bool left = r == DerivedRule::Excl || r == DerivedRule::Coexcl || r == DerivedRule::And;
  const StP& S = left ? concl.l : concl.r;
  SK want_x = left ? SK::DiaHat : SK::BoxCheck, want_s = left ? SK::SDiaHat : SK::SBoxCheck;
  if (S->k != want_x && S->k != want_s) pre("conclusion does not have the shape of the derived rule");
  bool var = S->k == want_x;
  SK inner = r == DerivedRule::Excl ? SK::ExclHat : r == DerivedRule::Imp ? SK::ImpCheck
           : r == DerivedRule::Coexcl ? SK::CoexclHat : r == DerivedRule::Coimp ? SK::CoimpCheck
           : r == DerivedRule::And ? SK::AndHat : SK::OrCheck;
  if (S->a->k != inner) pre("conclusion does not have the shape of the derived rule");
  Var x = S->v;
  Subst s = S->s;
  int side = left ? 0 : 1;
  // positive slots get the left adjunction, negative ones the right
  auto adj = [&](Lin& l) {
    if (var) l.step(Rule::cadj, Dir::Down, bx(x));
    else l.step(Rule::sadj, Dir::Down, bt(s));
  };
  auto radj = [&](Lin& l) {
    if (var) rcadj(l, x);
    else rsadj(l, s);
  };
  Lin l(concl);
  if (left) l.step(var ? Rule::DP_dia_cyl : Rule::DP_sdia_sub);
  else l.step(var ? Rule::DP_cyl_box : Rule::DP_sub_sbox);
  Path p0{side, 0}, p1{side, 1};
  Rule intr = Rule::Int_cyl_and_L;
  switch (r) {
    case DerivedRule::Excl: l.at(p0, radj).at(p1, adj); intr = var ? Rule::Int_cyl_excl_L : Rule::Int_sub_excl_L; break;
    case DerivedRule::Imp: l.at(p0, adj).at(p1, radj); intr = var ? Rule::Int_cyl_imp_R : Rule::Int_sub_imp_R; break;
    case DerivedRule::Coexcl: l.at(p0, adj).at(p1, radj); intr = var ? Rule::Int_cyl_coexcl_L : Rule::Int_sub_coexcl_L; break;
    case DerivedRule::Coimp: l.at(p0, radj).at(p1, adj); intr = var ? Rule::Int_cyl_coimp_R : Rule::Int_sub_coimp_R; break;
    case DerivedRule::And: l.at(p0, adj).at(p1, adj); intr = var ? Rule::Int_cyl_and_L : Rule::Int_sub_and_L; break;
    case DerivedRule::Or: l.at(p0, radj).at(p1, radj); intr = var ? Rule::Int_cyl_or_R : Rule::Int_sub_or_R; break;
  }
  l.step(intr, Dir::Up).step(var ? Rule::Mono_cyl : Rule::Mono_sub);
  return l.hyp();
}

Sequent derived_premise(DerivedRule r, const Sequent& concl) {
  DerivP d = derived_rule(r, concl);
  while (d->rule != Rule::Hyp) d = d->kids.at(0);
  return d->concl;
}

// ---------------------------------------------------------------- axioms

namespace {

// top_F |- P -> Q  to  P |- Q
void opening(Lin& l) { l.step(Rule::Imp_R).step(Rule::DP_and_imp).step(Rule::E_L).step(Rule::TopS_L); }

// classical sequent prover over Pos(g) |- Neg(d); compound formulas other than
// the propositional connectives are atoms
struct G3 {
  VarSet F;
  StP pos(const std::vector<MtP>& g) const {
    StP acc = st::top(F);
    for (size_t i = g.size(); i-- > 0;) acc = st::and_(lf(g[i]), acc);
    return acc;
  }
  StP neg(const std::vector<MtP>& d) const {
    StP acc = st::bot(F);
    for (size_t i = d.size(); i-- > 0;) acc = st::or_(lf(d[i]), acc);
    return acc;
  }
  static void front_left(Lin& l, std::vector<MtP>& g, size_t i) {
    for (size_t k = i; k-- > 0;)
      l.at(extend(Path{0}, 1, static_cast<int>(k)), [](Lin& m) {
        m.step(Rule::A_L, Dir::Up).at({0, 0}, Rule::E_L).step(Rule::A_L);
      });
    std::rotate(g.begin(), g.begin() + static_cast<long>(i), g.begin() + static_cast<long>(i) + 1);
  }
  static void front_right(Lin& l, std::vector<MtP>& d, size_t j) {
    for (size_t k = j; k-- > 0;)
      l.at(extend(Path{1}, 1, static_cast<int>(k)), [](Lin& m) {
        m.step(Rule::A_R).at({1, 0}, Rule::E_R).step(Rule::A_R, Dir::Up);
      });
    std::rotate(d.begin(), d.begin() + static_cast<long>(j), d.begin() + static_cast<long>(j) + 1);
  }

  DerivP prove(std::vector<MtP> g, std::vector<MtP> d) const {
    Lin l(sq(pos(g), neg(d)));
    for (size_t i = 0; i < g.size(); ++i)
      for (size_t j = 0; j < d.size(); ++j)
        if (mt_eq(g[i], d[j])) {
          front_left(l, g, i);
          front_right(l, d, j);
          l.step(Rule::E_L).step(Rule::W_L).step(Rule::W_R);
          return l.close(derive_identity(g[0]));
        }
    for (size_t i = 0; i < g.size(); ++i)
      if (g[i]->k == MK::Bot) {
        front_left(l, g, i);
        l.step(Rule::E_L).step(Rule::W_L);
        for (size_t j = 0; j < d.size(); ++j) l.step(Rule::E_R).step(Rule::W_R);
        return l.fin(Rule::Bot_L);
      }
    for (size_t j = 0; j < d.size(); ++j)
      if (d[j]->k == MK::Top) {
        front_right(l, d, j);
        l.step(Rule::W_R);
        for (size_t i = 0; i < g.size(); ++i) l.step(Rule::W_L);
        return l.fin(Rule::Top_R);
      }
    for (size_t i = 0; i < g.size(); ++i) {
      MK k = g[i]->k;
      if (k == MK::Top) {
        front_left(l, g, i);
        l.step(Rule::W_L);
        g.erase(g.begin());
        return l.close(prove(g, d));
      }
      if (k == MK::And) {
        front_left(l, g, i);
        l.at({0, 0}, Rule::And_L).step(Rule::A_L);
        MtP a = g[0];
        g[0] = a->b;
        g.insert(g.begin(), a->a);
        return l.close(prove(g, d));
      }
    }
    for (size_t j = 0; j < d.size(); ++j) {
      MK k = d[j]->k;
      if (k == MK::Bot) {
        front_right(l, d, j);
        l.step(Rule::E_R).step(Rule::W_R);
        d.erase(d.begin());
        return l.close(prove(g, d));
      }
      if (k == MK::Or) {
        front_right(l, d, j);
        l.at({1, 0}, Rule::Or_R).step(Rule::A_R, Dir::Up);
        MtP a = d[0];
        d[0] = a->b;
        d.insert(d.begin(), a->a);
        return l.close(prove(g, d));
      }
      if (k == MK::Imp) {
        front_right(l, d, j);
        l.at({1, 0}, Rule::Imp_R).step(Rule::Gri_R).step(Rule::DP_and_imp);
        MtP a = d[0];
        d[0] = a->b;
        g.insert(g.begin(), a->a);
        return l.close(prove(g, d));
      }
    }
    for (size_t i = 0; i < g.size(); ++i) {
      MK k = g[i]->k;
      if (k == MK::Or) {
        front_left(l, g, i);
        l.step(Rule::E_L).step(Rule::DP_and_imp, Dir::Up).step(Rule::C_R);
        MtP a = g[0];
        std::vector<MtP> rest(g.begin() + 1, g.end());
        auto branch = [&](const MtP& x) {
          return then([](Lin& m) { m.step(Rule::DP_and_imp).step(Rule::E_L); },
                      [=, this] {
                        auto g2 = rest;
                        g2.insert(g2.begin(), x);
                        return prove(g2, d);
                      });
        };
        return l.fin(Rule::Or_L, Dir::Down, {}, {branch(a->a), branch(a->b)});
      }
      if (k == MK::Imp) {
        front_left(l, g, i);
        l.step(Rule::BotS_R, Dir::Up).step(Rule::DP_or_excl, Dir::Up).step(Rule::C_L).step(Rule::Gri_L);
        l.step(Rule::DP_or_excl).step(Rule::BotS_R).step(Rule::A_L).step(Rule::E_L).step(Rule::A_L);
        l.step(Rule::DP_and_imp, Dir::Up).step(Rule::DP_and_imp, Dir::Up);
        MtP w = g[0];
        std::vector<MtP> rest(g.begin() + 1, g.end());
        Tac t1 = then([](Lin& m) { m.step(Rule::DP_or_excl).step(Rule::W_L).step(Rule::E_R); },
                      [=, this] {
                        auto d2 = d;
                        d2.insert(d2.begin(), w->a);
                        return prove(rest, d2);
                      });
        Tac t2 = then([](Lin& m) { m.step(Rule::DP_and_imp).step(Rule::E_L); },
                      [=, this] {
                        auto g2 = rest;
                        g2.insert(g2.begin(), w->b);
                        return prove(g2, d);
                      });
        return l.fin(Rule::Imp_L, Dir::Down, {}, {t1, t2});
      }
    }
    for (size_t j = 0; j < d.size(); ++j)
      if (d[j]->k == MK::And) {
        front_right(l, d, j);
        l.step(Rule::E_R).step(Rule::DP_or_excl, Dir::Up).step(Rule::C_L);
        MtP a = d[0];
        std::vector<MtP> rest(d.begin() + 1, d.end());
        auto branch = [&](const MtP& x) {
          return then([](Lin& m) { m.step(Rule::DP_or_excl).step(Rule::E_R); },
                      [=, this] {
                        auto d2 = rest;
                        d2.insert(d2.begin(), x);
                        return prove(g, d2);
                      });
        };
        return l.fin(Rule::And_R, Dir::Down, {}, {branch(a->a), branch(a->b)});
      }
    pre("not a propositional tautology");
  }
};

Subst inst_subst(const FoP& b, Var x, const TermP& t) {
  return Subst::identity(set_without(free_vars(b), x)).with(x, t);
}

}  // namespace

std::optional<Schema> schema_by_name(const std::string& n) {
  static const std::map<std::string, Schema> m{{"taut", Schema::Taut},       {"dist", Schema::Dist},
                                               {"gen", Schema::Gen},         {"inst", Schema::Inst},
                                               {"eqrefl", Schema::EqRefl},   {"eqsubst", Schema::EqSubst}};
  auto it = m.find(n);
  if (it == m.end()) return std::nullopt;
  return it->second;
}
std::string schema_name(Schema s) {
  switch (s) {
    case Schema::Taut: return "taut";
    case Schema::Dist: return "dist";
    case Schema::Gen: return "gen";
    case Schema::Inst: return "inst";
    case Schema::EqRefl: return "eqrefl";
    case Schema::EqSubst: return "eqsubst";
  }
  return "?";
}

FoP axiom_formula(const AxiomInstance& ax) {
  auto need = [](bool ok, const char* what) {
    if (!ok) pre(std::string("axiom instance lacks ") + what);
  };
  switch (ax.schema) {
    case Schema::Taut: need(ax.A != nullptr, "A"); return ax.A;
    case Schema::Dist:
      need(ax.B && ax.C && ax.x > 0, "B, C or x");
      return fo::imp(fo::forall(ax.x, fo::imp(ax.B, ax.C)), fo::imp(fo::forall(ax.x, ax.B), fo::forall(ax.x, ax.C)));
    case Schema::Gen:
      need(ax.B && ax.x > 0, "B or x");
      if (contains(free_vars(ax.B), ax.x)) pre("generalised variable occurs free in B");
      return fo::imp(ax.B, fo::forall(ax.x, ax.B));
    case Schema::Inst:
      need(ax.B && ax.x > 0 && ax.t, "B, x or t");
      return fo::imp(fo::forall(ax.x, ax.B), apply_subst(ax.B, inst_subst(ax.B, ax.x, ax.t)));
    case Schema::EqRefl: need(ax.t != nullptr, "t"); return fo::eq(ax.t, ax.t);
    case Schema::EqSubst:
      need(ax.A && ax.x > 0 && ax.s && ax.t, "A, x, s or t");
      return fo::imp(fo::eq(ax.s, ax.t), fo::imp(apply_subst(ax.A, inst_subst(ax.A, ax.x, ax.s)),
                                                  apply_subst(ax.A, inst_subst(ax.A, ax.x, ax.t))));
  }
  pre("unknown schema");
}

DerivP derive_axiom(const AxiomInstance& ax, std::optional<VarSet> Fopt) {
  FoP inst = axiom_formula(ax);
  VarSet F0 = free_vars(inst);
  DerivP d;
  switch (ax.schema) {
    case Schema::Taut: {
      MtP K = kappa(F0, ax.A);
      Lin l(sq(st::top(F0), lf(K)));
      l.step(Rule::BotS_R, Dir::Up);
      d = l.close(G3{F0}.prove({}, {K}));
      break;
    }
    case Schema::Dist: {
      VarSet G = set_with(F0, ax.x);
      MtP D = kappa(G, ax.B), E = kappa(G, ax.C);
      Var x = ax.x;
      MtP end = mt::imp(mt::box(x, mt::imp(D, E)), mt::imp(mt::box(x, D), mt::box(x, E)));
      Lin l(sq(st::top(F0), lf(end)));
      opening(l);
      l.step(Rule::Imp_R).step(Rule::DP_and_imp).step(Rule::Box_R).step(Rule::DP_cyl_box).step(Rule::Int_cyl_and_L);
      l.step(Rule::DP_and_imp, Dir::Up).step(Rule::DP_cyl_box, Dir::Up).step(Rule::Box_L);
      Tac boxd = then([](Lin& m) { m.step(Rule::DP_cyl_box, Dir::Up).step(Rule::Box_L); },
                      [&] { return derive_identity(D); });
      d = l.fin(Rule::Imp_L, Dir::Down, {}, {boxd, lit(derive_identity(E))});
      break;
    }
    case Schema::Gen: {
      MtP C = kappa(F0, ax.B);
      Var x = ax.x;
      Lin l(sq(st::top(F0), lf(mt::imp(C, mt::box(x, mt::cyl(x, C))))));
      opening(l);
      l.step(Rule::Box_R).step(Rule::DP_cyl_box).step(Rule::Cyl_R).step(Rule::Mono_cyl);
      d = l.close(derive_identity(C));
      break;
    }
    case Schema::Inst: {
      Var x = ax.x;
      VarSet fb = free_vars(ax.B);
      if (!contains(fb, x)) {
        MtP C = kappa(F0, ax.B);
        Lin l(sq(st::top(F0), lf(mt::imp(mt::box(x, mt::cyl(x, C)), C))));
        opening(l);
        l.step(Rule::Mono_cyl, Dir::Up, bx(x)).step(Rule::DP_cyl_box, Dir::Up).step(Rule::Box_L);
        l.step(Rule::Cyl_L).step(Rule::Mono_cyl);
        d = l.close(derive_identity(C));
        break;
      }
      MtP C = kappa(fb, ax.B);
      VarSet Y = set_without(fb, x);
      Subst u = Subst::identity(Y).with(x, ax.t);
      VarSet zs = set_minus(free_vars(ax.t), Y);
      MtP lhs = cyl_prefix_mt(zs, mt::sub(Subst::identity(Y), mt::box(x, C)));
      Lin l(sq(st::top(F0), lf(mt::imp(lhs, mt::sub(u, C)))));
      opening(l);
      int k = static_cast<int>(zs.size());
      for (int i = 0; i < k; ++i) l.at(zeros(0, i), Rule::Cyl_L);
      l.at(zeros(0, k), Rule::Sub_L).step(Rule::Sub_R).step(Rule::sc_L, Dir::Down, byterm(x, ax.t));
      l.step(Rule::Mono_sub).step(Rule::DP_cyl_box, Dir::Up).step(Rule::Box_L);
      d = l.close(derive_identity(C));
      break;
    }
    case Schema::EqRefl: {
      Lin l(sq(st::top(F0), lf(mt::eq(ax.t, ax.t))));
      l.step(Rule::EqRefl, Dir::Down, bterm(ax.t)).step(Rule::E_L).step(Rule::TopS_L);
      d = l.fin(Rule::Id_Eq);
      break;
    }
    case Schema::EqSubst: {
      Var v = ax.x;
      FoP A = ax.A;
      VarSet fst = set_union(free_vars(ax.s), free_vars(ax.t));
      if (contains(fst, v)) {
        Var w = fresh_var(set_union(set_with(free_vars(A), v), fst));
        A = apply_subst(A, Subst::identity(free_vars(A)).with(v, tvar(w)));
        v = w;
      }
      VarSet H = set_with(set_union(free_vars(A), fst), v);
      MtP B = kappa(H, A);
      VarSet K = set_without(H, v);
      Subst ss = Subst::identity(K).with(v, ax.s), tt = Subst::identity(K).with(v, ax.t);
      VarSet ws = set_minus(K, fst);
      MtP E = cyl_prefix_mt(ws, mt::eq(ax.s, ax.t));
      MtP end = mt::imp(E, mt::imp(mt::sub(ss, B), mt::sub(tt, B)));
      Lin l(sq(st::top(K), lf(end)));
      opening(l);
      int k = static_cast<int>(ws.size());
      for (int i = 0; i < k; ++i) l.at(zeros(0, i), Rule::Cyl_L);
      l.at(zeros(0, k), Rule::AtomIntro_Eq);
      l.step(Rule::Imp_R).at({1, 0}, Rule::Sub_L).at({1, 1}, Rule::Sub_R);
      Subst idK = Subst::identity(K);
      l.at({1, 0}, [&](Lin& m) {
        m.step(Rule::ss_L, Dir::Down, bts(idK, ss)).step(Rule::sc_L, Dir::Down, byterm(v, ax.t));
      });
      l.step(Rule::Int_sub_imp_R, Dir::Up).step(Rule::EqRewrite, Dir::Down, by(v)).step(Rule::Int_sub_imp_R);
      l.at({1, 0}, [](Lin& m) { m.step(Rule::sc_L, Dir::Up).step(Rule::ss_L, Dir::Up); });
      l.step(Rule::DP_and_imp).step(Rule::E_L).step(Rule::W_L).step(Rule::Mono_sub);
      d = l.close(derive_identity(B));
      break;
    }
  }
  if (Fopt) d = lift_to(d, *Fopt);
  return d;
}

MtP theorem_of(const DerivP& d) {
  if (d->concl.l->k != SK::TopHat || d->concl.r->k != SK::Leaf) pre("derivation does not end in a theorem");
  return d->concl.r->f;
}

DerivP lift_to(const DerivP& d, const VarSet& F) {
  MtP a = theorem_of(d);
  const VarSet& G = d->concl.F;
  if (!subset(G, F)) pre("lift target type must contain the theorem's type");
  Lin l(sq(st::top(F), lf(cyl_prefix_mt(set_minus(F, G), a))));
  for (Var z : sorted(set_minus(F, G))) l.step(Rule::Cyl_R).step(Rule::Nec_cyl_top, Dir::Up, bx(z)).step(Rule::Mono_cyl);
  return l.close(d);
}

DerivP necessitate(const DerivP& d, Var x) {
  MtP a = theorem_of(d);
  const VarSet& F = d->concl.F;
  if (contains(F, x)) {
    Lin l(sq(st::top(set_without(F, x)), lf(mt::box(x, a))));
    l.step(Rule::Box_R).step(Rule::DP_cyl_box).step(Rule::Nec_cyl_top);
    return l.close(d);
  }
  Lin l(sq(st::top(F), lf(mt::box(x, mt::cyl(x, a)))));
  l.step(Rule::Box_R).step(Rule::DP_cyl_box).step(Rule::Cyl_R).step(Rule::Mono_cyl);
  return l.close(d);
}

DerivP universal_closure(const DerivP& d) {
  DerivP out = d;
  for (Var x : sorted(d->concl.F)) out = necessitate(out, x);
  return out;
}

DerivP modus_ponens(const DerivP& d_a, const DerivP& d_imp) {
  MtP a = theorem_of(d_a), c = theorem_of(d_imp);
  if (c->k != MK::Imp) pre("second premise is not an implication");
  if (d_a->concl.F != d_imp->concl.F) pre("premises have different types");
  DerivP to_ante = mt_eq(a, c->a) ? d_a : cut(a, d_a, derive_interchange(a, c->a));
  Lin l(sq(st::top(d_a->concl.F), lf(c->b)));
  l.step(Rule::C_L).step(Rule::DP_and_imp, Dir::Up);
  Lin r(sq(lf(c), l.goal().r));
  DerivP right = r.fin(Rule::Imp_L, Dir::Down, {}, {lit(to_ante), lit(derive_identity(c->b))});
  return l.close(cut(c, d_imp, right));
}

}  // namespace dfo
