#pragma once
// rule identifiers and instance parameters

#include <optional>
#include <string>

#include "dfo/syntax.hpp"

namespace dfo {

struct Struct;
using StP = std::shared_ptr<const Struct>;

enum class Rule {
  Id, Id_Eq, Cut,
  DP_and_imp, DP_or_excl, DP_and_coimp, DP_or_coexcl,
  DP_dia_cyl, DP_cyl_box, DP_sdia_sub, DP_sub_sbox,
  cadj, sadj,
  Nec_cyl_top, Nec_cyl_bot, Nec_sub_top, Nec_sub_bot,
  AtomRewrite, AtomRewrite_Eq,
  TopS_L, BotS_R, E_L, E_R, W_L, W_R, C_L, C_R, A_L, A_R,
  EqRefl, EqRewrite,
  AtomIntro, AtomIntro_Eq,
  Bot_L, Bot_R, Top_L, Top_R, And_L, And_R, Or_L, Or_R, Imp_L, Imp_R,
  Gri_L, Gri_R,
  Dia_L, Dia_R, Box_L, Box_R, Cyl_L, Cyl_R, Sub_L, Sub_R,
  SDia_L, SDia_R, SBox_L, SBox_R,
  Mono_cyl, Mono_sub,
  Int_cyl_excl_L, Int_cyl_imp_R, Int_cyl_coexcl_L, Int_cyl_coimp_R, Int_cyl_and_L, Int_cyl_or_R,
  Int_sub_and_L, Int_sub_or_R, Int_sub_excl_L, Int_sub_imp_R, Int_sub_coexcl_L, Int_sub_coimp_R,
  cq_L, cq_R, sq_L, sq_R, cc_L, cc_R, ss_L, ss_R, sc_L, sc_R,
  Hyp,  // open assumption in a derivation fragment, not a rule of the calculus
  COUNT_
};
constexpr int kNumRules = static_cast<int>(Rule::Hyp);

// Down: conclusion is the lower sequent as printed. Up: only for double-line
// rules, conclusion is the upper sequent.
enum class Dir { Down, Up };

struct RuleInfo {
  const char* name;
  bool double_line;
  bool dfostar_only;
  int item;  // block of the catalogue the rule belongs to
};
const RuleInfo& rule_info(Rule r);
std::string rule_name(Rule r);
std::optional<Rule> rule_by_name(const std::string& n);

struct Bindings {
  std::optional<Var> x, y, z;
  std::optional<Subst> t, s;
  std::optional<TermP> term;
  MtP cut;  // cut formula
  StP st;   // explicit structure (AtomRewrite premise precedent)
  bool empty() const { return !x && !y && !z && !t && !s && !term && !cut && !st; }
};

struct Step {
  Rule rule;
  Dir dir = Dir::Down;
  Bindings b;
};

}  // namespace dfo
