#pragma once
// cut elimination: principal reducts, parametric moves, driver, subformula check

#include <string>
#include <vector>

#include "dfo/tactics.hpp"

namespace dfo {

// rank of a single cut: formula size, then the summed heights of its premises
struct CutRank {
  int size = 0;
  int heights = 0;
  bool operator<(const CutRank& o) const { return size != o.size ? size < o.size : heights < o.heights; }
};
CutRank cut_rank(const DerivP& cut_node);

// is the occurrence at the root of side sd (0 precedent, 1 succedent) introduced
// by the last rule of d
bool principal_at(const DerivP& d, int sd);

// both premises introduce the cut formula; throws NotPrincipal otherwise.
// The result may contain new cuts, all on proper subformulas.
DerivP principal_reduce(const DerivP& cut_node);

// the cut formula is parametric in the left (or else the right) premise: trace
// its ancestors upward, put the other premise's context in their place and cut
// only where the formula is introduced. Premises must be cut-free. Throws
// StuckError if an ancestor can be neither traced nor cut off.
DerivP parametric_move(const DerivP& cut_node);

struct CutElimResult {
  DerivP d;
  bool complete = false;  // false: budget ran out, d is a partial rewrite
  long steps = 0;
  long budget = 0;
  std::vector<std::string> log;
  std::vector<int> stuck_at;  // child indices to the first remaining cut
};
// budget < 0 means 10 * n^2 for n the node count of d
CutElimResult eliminate_cuts(const DerivP& d, long budget = -1);

struct SubformulaReport {
  bool ok = true;
  std::vector<int> node;  // child indices to the offending node
  std::string occurrence;
};
// every formula leaf must be a subformula of the end sequent. A structural
// atom must be one too, or match up to a bijective renaming of variables
// either an atomic subformula or the atom that a substitution chain over an
// atom in the end sequent denotes under tau.
SubformulaReport subformula_check(const DerivP& d);

}  // namespace dfo
