#pragma once
// backward proof construction helpers shared by the generators and the cut rewriter

#include <functional>

#include "dfo/calculus.hpp"

namespace dfo {

using Tac = std::function<DerivP(const Sequent&)>;

// a linear run of single-premise steps, read backwards from a goal
class Lin {
 public:
  explicit Lin(Sequent goal);
  const Sequent& goal() const { return cur_; }
  Lin& step(Rule r, Dir d = Dir::Down, Bindings b = {});
  // display the occurrence at p, run f on the displayed sequent, put it back
  Lin& at(const Path& p, const std::function<void(Lin&)>& f);
  Lin& at(const Path& p, Rule r, Dir d = Dir::Down, Bindings b = {});
  DerivP close(const DerivP& top) const;
  DerivP fin(Rule r, Dir d, const Bindings& b, const std::vector<Tac>& kids) const;
  DerivP fin(Rule r, Dir d = Dir::Down, const Bindings& b = {}) const { return fin(r, d, b, {}); }
  DerivP apply(const Tac& t) const { return close(t(cur_)); }
  DerivP hyp() const { return close(make_hyp(cur_)); }

 private:
  struct Done {
    Rule r;
    Dir d;
    Bindings b;
    Sequent concl;
  };
  std::vector<Done> done_;
  Sequent cur_;
};

Bindings bx(Var x);
Bindings by(Var y);
Bindings bz(Var z);
Bindings bt(const Subst& t);
Bindings bts(const Subst& t, const Subst& s);
Bindings byterm(Var y, TermP term);
Bindings bterm(TermP term);
Bindings bst(StP st);
Bindings bcut(MtP a);

// cut on a formula; the two derivations must end in L |- A and A |- R
DerivP cut(const MtP& a, const DerivP& left, const DerivP& right);
// drop the Cut wrapper: chain of formula-to-formula derivations A0 |- A1 |- ... |- An
DerivP cut_chain(const std::vector<DerivP>& ds);

Path path_of(std::initializer_list<int> p);
Path extend(Path p, int child, int times = 1);

}  // namespace dfo
