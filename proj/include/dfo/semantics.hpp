#pragma once
// finite models, powerset algebras, evaluation, oracle checks

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dfo/structures.hpp"
#include "dfo/syntax.hpp"

namespace dfo {

struct FoModel {
  int n = 1;  // domain {0, ..., n-1}
  std::map<std::string, int> rel_arity, func_arity;
  std::map<std::string, std::vector<char>> rels;   // mixed-radix indexed truth table
  std::map<std::string, std::vector<int>> funcs;   // mixed-radix indexed value table
  std::map<std::string, int> consts;
  int rel_holds(const std::string& r, const std::vector<int>& args) const;
  int func_value(const std::string& f, const std::vector<int>& args) const;
};
void validate_model(const FoModel& m);  // throws DomainError

using Assignment = std::map<Var, int>;
int eval_term(const FoModel& M, const Assignment& nu, const TermP& t);
bool eval_fo(const FoModel& M, const Assignment& nu, const FoP& A);

// M^F with a fixed enumeration order (smallest variable most significant)
struct Space {
  std::vector<Var> vars;
  int n = 1;
  size_t size() const;
  std::vector<int> decode(size_t idx) const;
  size_t encode(const std::vector<int>& vals) const;
  Assignment assignment(size_t idx) const;
};
Space space(const VarSet& F, int n);

struct PredSet {
  VarSet F;
  std::vector<char> bits;
  bool has(size_t i) const { return bits[i] != 0; }
};
bool pred_eq(const PredSet& a, const PredSet& b);
bool pred_le(const PredSet& a, const PredSet& b);

// a map f : M^S -> M^T given pointwise on indices
struct FMap {
  VarSet S, T;
  int n = 1;
  std::vector<size_t> f;
};
FMap proj_map(const VarSet& G, Var x, int n);             // pi_x : M^G -> M^(G\{x})
FMap subst_map(const FoModel& M, const Subst& s);          // t : M^FV(t) -> M^dom(t)
PredSet op_direct(const FMap& f, const PredSet& B);        // inverse image, type S
PredSet op_diamond(const FMap& f, const PredSet& A);       // direct image, type T
PredSet op_box(const FMap& f, const PredSet& A);           // universal image, type T

struct HeteroModel {
  const FoModel* M = nullptr;
  std::map<std::string, PredSet> override_atoms;  // keyed by printed atom
};
HeteroModel hetero(const FoModel& M);
PredSet atom_value(const HeteroModel& H, const MtP& atom);
PredSet eval_mt(const HeteroModel& H, const MtP& A);
bool seq_valid(const HeteroModel& H, const Sequent& s);
PredSet cylindrify_to(const PredSet& p, const VarSet& U, int n);

// Boolean operations on predicate sets of the same type
PredSet p_full(const VarSet& F, int n);
PredSet p_empty(const VarSet& F, int n);
PredSet p_and(const PredSet& a, const PredSet& b);
PredSet p_or(const PredSet& a, const PredSet& b);
PredSet p_imp(const PredSet& a, const PredSet& b);
PredSet p_excl(const PredSet& a, const PredSet& b);  // not a and b
PredSet p_not(const PredSet& a);

// enumerated oracle suites; which: a-f identities, 'p' inclusions, 'j' adjunctions, 'i' injectivity
struct SuiteResult {
  bool ok = true;
  long checked = 0;
  std::string counterexample;
};
SuiteResult check_identities(const FoModel& M, char which, const VarSet& pool);
SuiteResult check_valuation(const HeteroModel& H, const VarSet& pool);
bool check_faithfulness(const FoModel& M, const MtP& A);

// terms of depth <= 1 over the pool and the model's constants and functions
std::vector<TermP> small_terms(const FoModel& M, const VarSet& pool);
// all models over a fixed small signature: relation P/1, R/2, constant c, function f/1
void for_each_model(int n, const std::function<void(const FoModel&)>& fn);
FoModel default_signature_model(int n);

}  // namespace dfo
