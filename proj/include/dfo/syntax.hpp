#pragma once
// terms, first-order formulas, multi-type formulas

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfo {

struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};
[[noreturn]] void fail(const std::string& kind, const std::string& msg);

using Var = int;  // v_index, index >= 1
using VarSet = std::set<Var>;

VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_minus(const VarSet& a, const VarSet& b);
VarSet set_with(VarSet a, Var v);
VarSet set_without(VarSet a, Var v);
bool subset(const VarSet& a, const VarSet& b);
bool contains(const VarSet& a, Var v);
Var fresh_var(const VarSet& avoid);

struct Signature {
  std::map<std::string, int> relations;
  std::map<std::string, int> functions;
  std::set<std::string> constants;
};

// ---- terms
struct Term;
using TermP = std::shared_ptr<const Term>;
struct Term {
  enum class K { Var, Const, App };
  K k;
  Var v = 0;
  std::string name;
  std::vector<TermP> args;
};
TermP tvar(Var v);
TermP tconst(const std::string& c);
TermP tapp(const std::string& f, std::vector<TermP> args);
bool term_eq(const TermP& a, const TermP& b);
int term_cmp(const TermP& a, const TermP& b);
VarSet free_vars(const TermP& t);
VarSet free_vars(const std::vector<TermP>& ts);
int term_depth(const TermP& t);

// ---- simultaneous substitutions
struct Subst {
  std::map<Var, TermP> m;
  VarSet dom() const;
  VarSet range_fv() const;
  const TermP& at(Var v) const;
  bool has(Var v) const { return m.count(v) > 0; }
  Subst restrict(const VarSet& d) const;
  Subst with(Var v, TermP t) const;
  static Subst identity(const VarSet& d);
  bool is_identity() const;
};
bool subst_eq(const Subst& a, const Subst& b);
int subst_cmp(const Subst& a, const Subst& b);
TermP apply_subst(const TermP& t, const Subst& s);
std::vector<TermP> apply_subst(const std::vector<TermP>& ts, const Subst& s);
// result(v) = apply_subst(inner(v), outer)
Subst compose_substs(const Subst& outer, const Subst& inner);

// ---- first-order formulas
struct Fo;
using FoP = std::shared_ptr<const Fo>;
enum class FK { Rel, Eq, Top, Bot, And, Or, Imp, Forall, Exists };
struct Fo {
  FK k;
  std::string name;           // Rel
  std::vector<TermP> args;    // Rel arguments; Eq: {lhs, rhs}
  FoP a, b;
  Var v = 0;                  // bound variable
};
namespace fo {
FoP rel(const std::string& r, std::vector<TermP> args);
FoP eq(TermP l, TermP r);
FoP top();
FoP bot();
FoP conj(FoP a, FoP b);
FoP disj(FoP a, FoP b);
FoP imp(FoP a, FoP b);
FoP neg(FoP a);
FoP forall(Var v, FoP a);
FoP exists(Var v, FoP a);
}  // namespace fo
VarSet free_vars(const FoP& a);
FoP apply_subst(const FoP& a, const Subst& s);
bool fo_eq(const FoP& a, const FoP& b);
bool alpha_eq(const FoP& a, const FoP& b);
int fo_size(const FoP& a);

// ---- multi-type formulas
struct Mt;
using MtP = std::shared_ptr<const Mt>;
enum class MK { Rel, Eq, Top, Bot, And, Or, Imp, Excl, CoImp, Box, Dia, Cyl, Sub, SDia, SBox };
struct Mt {
  MK k;
  std::string name;
  std::vector<TermP> args;
  MtP a, b;
  Var v = 0;
  Subst s;
  VarSet type;  // cached, computed at construction
};
namespace mt {
MtP rel(const std::string& r, std::vector<TermP> args);
MtP eq(TermP l, TermP r);
MtP top(VarSet F);
MtP bot(VarSet F);
MtP conj(MtP a, MtP b);
MtP disj(MtP a, MtP b);
MtP imp(MtP a, MtP b);
MtP excl(MtP a, MtP b);
MtP coimp(MtP a, MtP b);
MtP box(Var y, MtP a);
MtP dia(Var y, MtP a);
MtP cyl(Var x, MtP a);
MtP sub(Subst s, MtP a);
MtP sdia(Subst s, MtP a);
MtP sbox(Subst s, MtP a);
MtP binary(MK k, MtP a, MtP b);
}  // namespace mt
const VarSet& mt_type(const MtP& a);
bool mt_eq(const MtP& a, const MtP& b);
int mt_cmp(const MtP& a, const MtP& b);
bool is_atomic(const MtP& a);  // Rel or Eq
bool is_binary(MK k);
bool is_dfostar_only(MK k);
bool uses_dfostar(const MtP& a);
bool has_subst(const MtP& a);
int mt_size(const MtP& a);
int mt_depth(const MtP& a);
std::vector<Var> sorted(const VarSet& s);

// collect names appearing in a formula; fails on inconsistent arities
void collect_signature(const FoP& a, Signature& sig);
void collect_signature(const MtP& a, Signature& sig);

}  // namespace dfo
