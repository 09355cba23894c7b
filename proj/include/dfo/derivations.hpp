#pragma once
// proof generators: identities, substitution and canonical-form interchange,
// derived rules, first-order axioms and inference rules

#include <optional>
#include <string>

#include "dfo/tactics.hpp"

namespace dfo {

struct DerivPair {
  DerivP fwd;  // A |- B
  DerivP bwd;  // B |- A
};

// A |- A; no rule introduces >- or <-, so formulas containing them are refused
DerivP derive_identity(const MtP& a);

// A |- sigma(A) and back
DerivPair derive_sigma(const MtP& a);
// A |- kappa(F, tau(sigma A)) and back, for A of type F
DerivPair derive_kappa(const VarSet& F, const MtP& a);
// A |- B whenever tau(A) and tau(B) are alpha-equivalent and the types agree
DerivP derive_interchange(const MtP& a, const MtP& b);

// rules derivable via the adjunctions; the modal operator (variable or
// substitution) is read off the conclusion
enum class DerivedRule { Excl, Imp, Coexcl, Coimp, And, Or };
std::optional<DerivedRule> derived_rule_by_name(const std::string& n);
std::string derived_rule_name(DerivedRule r);
// the open leaf is the premise of the derived rule
DerivP derived_rule(DerivedRule r, const Sequent& concl);
Sequent derived_premise(DerivedRule r, const Sequent& concl);

// Hilbert axioms. Taut: A is a propositional tautology. Dist: forall x (B -> C)
// -> (forall x B -> forall x C). Gen: B -> forall x B, x not free in B.
// Inst: forall x B -> B(t/x). EqRefl: t = t. EqSubst: s = t -> (A(s/x) -> A(t/x)).
enum class Schema { Taut, Dist, Gen, Inst, EqRefl, EqSubst };
std::optional<Schema> schema_by_name(const std::string& n);
std::string schema_name(Schema s);
struct AxiomInstance {
  Schema schema = Schema::Taut;
  FoP A, B, C;
  Var x = 0;
  TermP s, t;
};
FoP axiom_formula(const AxiomInstance& ax);
// top_F |- A' with tau(A') alpha-equal to the instance; F defaults to FV(instance)
DerivP derive_axiom(const AxiomInstance& ax, std::optional<VarSet> F = std::nullopt);

// top_G |- A  to  top_F |- (zs)A for F a superset of G
DerivP lift_to(const DerivP& d, const VarSet& F);
// top_F |- A  to  a proof of [x]A, or [x](x)A when x is not in F
DerivP necessitate(const DerivP& d, Var x);
// closes every type variable, smallest index first
DerivP universal_closure(const DerivP& d);
// from top |- A and top |- A'' -> B with tau(A) ~ tau(A''), a proof of top |- B
DerivP modus_ponens(const DerivP& d_a, const DerivP& d_imp);

// the formula proved by a derivation ending in top |- A
MtP theorem_of(const DerivP& d);

}  // namespace dfo
