#pragma once
// tau: multi-type -> first-order; sigma: substitution elimination; kappa: canonical form

#include "dfo/syntax.hpp"

namespace dfo {

FoP tau(const MtP& a);
MtP sigma(const MtP& a);
MtP kappa(const VarSet& F, const FoP& a);
// sigma of (s)B
MtP sigma_sub(const Subst& s, const MtP& b);
// (z1)...(zk)A, smallest variable outermost
MtP cyl_prefix_mt(const VarSet& zs, MtP a);

}  // namespace dfo
