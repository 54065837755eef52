#pragma once

#include <optional>
#include <vector>

#include "rcc5/behaviour.hpp"
#include "rcc5/network.hpp"
#include "rcc5/relations.hpp"

namespace rcc5 {

// A constraint language given by named relations over the base structure;
// the five basic relations are always implicitly present.
struct ExpansionSpec {
  std::vector<RelationSpec> relations;
};

// Soundness check for behaviour realizability (arity 2..4):
// well-formedness, every consistent-triangle tuple maps cell-wise to a
// consistent triangle, and every relation lift (binary and ternary,
// including the implicit basics) is preserved.  Acceptance of the converse
// direction is a documented modeling assumption.
bool is_realizable(const Behaviour& b, const ExpansionSpec& e);

// Backtracking searches over behaviour tables with triangle-tuple
// propagation; deterministic (smallest domain first, index and tag-order
// tie-breaks).  Return the first surviving table or nullopt.
std::optional<Behaviour> find_wedge_behaviour(const ExpansionSpec& e);
std::optional<Behaviour> find_cyclic_rho(const ExpansionSpec& e);

// Arity 3: composed from the wedge and cyclic witnesses (a cyclic table is
// one-off-diagonal constant), with a direct table search as fallback.
// Arity 4: S(S(x,y),S(z,w)) for a behaviour S whose unordered projection
// is symmetric.  Returns a behaviour whose unordered projection satisfies
// the near-unanimity equalities, or nullopt.
std::optional<Behaviour> find_wnu_behaviour(const ExpansionSpec& e, int arity);

struct ClassifyReport {
  bool tractable = false;  // wedge and cyclic witnesses both exist
  std::optional<Behaviour> wedge;
  std::optional<Behaviour> cyclic_rho;
  std::optional<Behaviour> wnu3;
  bool wnu_alarm = false;  // tractable but the arity-3 witness search failed
};

ClassifyReport classify(const ExpansionSpec& e);

}  // namespace rcc5
