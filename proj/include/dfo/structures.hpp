#pragma once
// structures, sequents, typing, interpretation, display

#include <vector>

#include "dfo/rules.hpp"
#include "dfo/syntax.hpp"

namespace dfo {

enum class SK {
  Leaf, AtomHat, EqHat, TopHat, BotCheck,
  AndHat, OrCheck, ExclHat, CoexclHat, ImpCheck, CoimpCheck,
  DiaHat, BoxCheck, Cyl, Sub, SDiaHat, SBoxCheck,
  Meta  // placeholder used by rewriting, never printed in checked proofs
};

struct Struct {
  SK k;
  MtP f;                    // Leaf
  std::string name;         // AtomHat relation
  std::vector<TermP> args;  // AtomHat / EqHat
  StP a, b;
  Var v = 0;
  Subst s;
  VarSet type;
  int meta = 0;
};

enum class Pol { Pos, Neg };  // precedent / succedent
inline Pol flip(Pol p) { return p == Pol::Pos ? Pol::Neg : Pol::Pos; }

namespace st {
StP leaf(MtP f);
StP atom(const std::string& r, std::vector<TermP> args);
StP eq(TermP l, TermP r);
StP top(VarSet F);
StP bot(VarSet F);
StP and_(StP a, StP b);
StP or_(StP a, StP b);
StP excl(StP a, StP b);
StP coexcl(StP a, StP b);
StP imp(StP a, StP b);
StP coimp(StP a, StP b);
StP dia(Var y, StP a);
StP box(Var y, StP a);
StP cyl(Var x, StP a);
StP sub(Subst s, StP a);
StP sdia(Subst s, StP a);
StP sbox(Subst s, StP a);
StP meta(int id, VarSet F);
StP binary(SK k, StP a, StP b);
StP unary(SK k, const Struct& proto, StP a);  // rebuild a unary node with a new child
StP with_children(const StP& x, StP a, StP b);
// cylinder prefix over a set, smallest index outermost
StP cyl_prefix(const VarSet& zs, StP a);
}  // namespace st

const VarSet& struct_type(const StP& x);
bool st_eq(const StP& a, const StP& b);
int st_cmp(const StP& a, const StP& b);
bool is_binary(SK k);
bool is_unary(SK k);
bool is_hat(SK k);
bool is_check(SK k);
bool uses_dfostar(const StP& x);
int st_size(const StP& x);
int st_depth(const StP& x);
int num_children(const StP& x);
StP child(const StP& x, int i);
Pol child_pol(SK k, int i, Pol parent);
bool polarity_ok(const StP& x, Pol p);
MtP interpret(const StP& x);

struct Sequent {
  StP l, r;
  VarSet F;
};
Sequent make_seq(StP l, StP r);  // checks typing and polarity
bool seq_eq(const Sequent& a, const Sequent& b);

// path: first element 0 (precedent) or 1 (succedent), then child indices
using Path = std::vector<int>;
StP at_path(const Sequent& s, const Path& p);
Pol pol_at(const Sequent& s, const Path& p);
Sequent replace_at(const Sequent& s, const Path& p, StP repl);
// enumerate all substructure occurrences
std::vector<Path> all_paths(const Sequent& s);

struct DisplayResult {
  Sequent out;
  std::vector<Step> chain;  // backward steps from the input to out
};
DisplayResult display(const Sequent& s, const Path& p);

}  // namespace dfo
