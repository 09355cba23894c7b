#pragma once
// rule schemas, premise computation, derivation checking

#include <vector>

#include "dfo/rules.hpp"
#include "dfo/structures.hpp"

namespace dfo {

struct Deriv;
using DerivP = std::shared_ptr<const Deriv>;
struct Deriv {
  Rule rule;
  Dir dir = Dir::Down;
  Bindings b;
  Sequent concl;
  std::vector<DerivP> kids;
};
DerivP make_node(Rule r, Dir d, Bindings b, Sequent concl, std::vector<DerivP> kids);
DerivP make_hyp(Sequent s);

// backward reading: the premises of a rule instance with the given conclusion
std::vector<Sequent> premises_of(Rule r, Dir d, const Sequent& concl, const Bindings& b);

// item 8 side condition: compose each prefix, apply to the atom, compare
bool side_cond_atom(const std::vector<Subst>& prefix1, const std::string& rel1, const std::vector<TermP>& args1,
                    const std::vector<Subst>& prefix2, const std::string& rel2, const std::vector<TermP>& args2);

// throws Error (MatchError / SideCondError / TypeError / PremiseMismatch)
void check_step(Rule r, Dir d, const Bindings& b, const Sequent& concl, const std::vector<Sequent>& prems);

struct CheckReport {
  bool ok = true;
  std::vector<int> fail_path;  // child indices from the root to the failing node
  std::string error;
  bool has_cut = false;
  bool dfostar = false;  // uses D.FO*-only schemas or connectives
  int nodes = 0;
  int open_hyps = 0;
  int height = 0;
};
CheckReport check_derivation(const DerivP& d);

int deriv_size(const DerivP& d);
int deriv_height(const DerivP& d);
bool has_cut(const DerivP& d);

}  // namespace dfo
