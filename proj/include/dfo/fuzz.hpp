#pragma once
// random generators and the rule soundness fuzzer

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "dfo/calculus.hpp"
#include "dfo/semantics.hpp"
#include "dfo/structures.hpp"

namespace dfo {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(uint64_t seed) : g(seed) {}
  int below(int n);             // uniform in [0, n)
  bool coin(double p = 0.5);
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(static_cast<int>(v.size()))]; }
};

// generator settings; the signature is always P/1, R/2, c, f/1
struct GenOpts {
  int pool = 3;          // variables v1..v_pool
  bool dfostar = false;  // allow D.FO*-only connectives
  double leaf_bias = 0.3;
};

FoModel random_model(Rng& r, int n);
TermP random_term_with(Rng& r, std::optional<Var> v);  // one variable or ground
std::optional<MtP> random_atom(Rng& r, const VarSet& F);
// substitution t with dom(t) over the pool and FV(range t) = G
std::optional<Subst> random_subst_onto(Rng& r, const VarSet& G, const GenOpts& o, int max_dom = 2);
// substitution with a given domain and FV(range) = G
std::optional<Subst> random_subst_from(Rng& r, const VarSet& dom, const VarSet& G);
VarSet random_subset(Rng& r, int pool, int max_size);
MtP random_mt(Rng& r, const VarSet& F, int depth, const GenOpts& o);
StP random_struct(Rng& r, const VarSet& F, Pol p, int depth, const GenOpts& o);
Sequent random_sequent(Rng& r, const VarSet& F, int depth, const GenOpts& o);
FoP random_fo(Rng& r, int depth, const GenOpts& o);

struct RuleInstance {
  Rule rule;
  Dir dir;
  Bindings b;
  Sequent concl;
};
// conclusion generator for one schema and direction; nullopt if the draw failed
std::optional<RuleInstance> random_instance(Rng& r, Rule rule, Dir d, int depth, const GenOpts& o);

struct FuzzReport {
  long instances = 0;
  long nonvacuous = 0;        // all premises valid in the drawn model
  long reverse_checked = 0;   // double-line rules with a valid conclusion
  long violations = 0;
  long rejected = 0;          // generated instance refused by the schema matcher
  std::map<Rule, long> per_rule;
  std::map<Rule, long> per_rule_nonvacuous;
  std::string first_violation;
  std::string first_rejection;
};
FuzzReport soundness_fuzz(uint64_t seed, long per_rule_min);

}  // namespace dfo
