#include "dfo/tactics.hpp"

namespace dfo {

Lin::Lin(Sequent goal) : cur_(std::move(goal)) {}

Lin& Lin::step(Rule r, Dir d, Bindings b) {
  auto prem = premises_of(r, d, cur_, b);
  if (prem.size() != 1) fail("PreconditionError", "tactic step " + rule_name(r) + " is not single-premise");
  done_.push_back({r, d, std::move(b), cur_});
  cur_ = prem[0];
  return *this;
}

Lin& Lin::at(const Path& p, const std::function<void(Lin&)>& f) {
  Sequent orig = cur_;
  DisplayResult dr = display(orig, p);
  for (auto& s : dr.chain) step(s.rule, s.dir, s.b);
  bool pos = pol_at(orig, p) == Pol::Pos;
  StP ctx = pos ? cur_.r : cur_.l;
  f(*this);
  if (!st_eq(pos ? cur_.r : cur_.l, ctx)) fail("PreconditionError", "tactic changed the display context");
  Sequent g2 = replace_at(orig, p, pos ? cur_.l : cur_.r);
  DisplayResult back = display(g2, p);
  if (!seq_eq(back.out, cur_)) fail("PreconditionError", "tactic result does not redisplay");
  for (size_t i = back.chain.size(); i-- > 0;) {
    auto& s = back.chain[i];
    step(s.rule, s.dir == Dir::Down ? Dir::Up : Dir::Down, s.b);
  }
  if (!seq_eq(cur_, g2)) fail("PreconditionError", "inverse display chain went astray");
  return *this;
}

Lin& Lin::at(const Path& p, Rule r, Dir d, Bindings b) {
  return at(p, [&](Lin& l) { l.step(r, d, b); });
}

DerivP Lin::close(const DerivP& top) const {
  if (!seq_eq(top->concl, cur_)) fail("PreconditionError", "subproof ends in the wrong sequent");
  DerivP node = top;
  for (size_t i = done_.size(); i-- > 0;) node = make_node(done_[i].r, done_[i].d, done_[i].b, done_[i].concl, {node});
  return node;
}

DerivP Lin::fin(Rule r, Dir d, const Bindings& b, const std::vector<Tac>& kids) const {
  auto prem = premises_of(r, d, cur_, b);
  if (prem.size() != kids.size()) fail("PreconditionError", "wrong number of subproofs for " + rule_name(r));
  std::vector<DerivP> ks;
  for (size_t i = 0; i < prem.size(); ++i) {
    DerivP k = kids[i](prem[i]);
    if (!seq_eq(k->concl, prem[i])) fail("PreconditionError", "subproof for " + rule_name(r) + " ends wrongly");
    ks.push_back(k);
  }
  return close(make_node(r, d, b, cur_, ks));
}

Bindings bx(Var x) { Bindings b; b.x = x; return b; }
Bindings by(Var y) { Bindings b; b.y = y; return b; }
Bindings bz(Var z) { Bindings b; b.z = z; return b; }
Bindings bt(const Subst& t) { Bindings b; b.t = t; return b; }
Bindings bts(const Subst& t, const Subst& s) { Bindings b; b.t = t; b.s = s; return b; }
Bindings byterm(Var y, TermP term) { Bindings b; b.y = y; b.term = std::move(term); return b; }
Bindings bterm(TermP term) { Bindings b; b.term = std::move(term); return b; }
Bindings bst(StP st) { Bindings b; b.st = std::move(st); return b; }
Bindings bcut(MtP a) { Bindings b; b.cut = std::move(a); return b; }

DerivP cut(const MtP& a, const DerivP& left, const DerivP& right) {
  Sequent c = make_seq(left->concl.l, right->concl.r);
  auto prem = premises_of(Rule::Cut, Dir::Down, c, bcut(a));
  if (!seq_eq(prem[0], left->concl) || !seq_eq(prem[1], right->concl))
    fail("PreconditionError", "cut premises do not meet in the cut formula");
  return make_node(Rule::Cut, Dir::Down, bcut(a), c, {left, right});
}

DerivP cut_chain(const std::vector<DerivP>& ds) {
  if (ds.empty()) fail("PreconditionError", "empty cut chain");
  DerivP acc = ds[0];
  for (size_t i = 1; i < ds.size(); ++i) {
    const StP& mid = acc->concl.r;
    if (mid->k != SK::Leaf) fail("PreconditionError", "cut chain link is not a formula");
    acc = cut(mid->f, acc, ds[i]);
  }
  return acc;
}

Path path_of(std::initializer_list<int> p) { return Path(p); }
Path extend(Path p, int child, int times) {
  for (int i = 0; i < times; ++i) p.push_back(child);
  return p;
}

}  // namespace dfo
