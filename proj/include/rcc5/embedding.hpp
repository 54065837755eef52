#pragma once

#include <cstdint>
#include <vector>

#include "rcc5/network.hpp"
#include "rcc5/ordered_age.hpp"

namespace rcc5 {

// Element of a finite Boolean algebra 2^I, one bit per atom.
using DynBits = std::vector<uint64_t>;

// Family of overlap cliques: every nonempty point set whose pairs are all
// PO-labeled (singletons included), sorted ascending by the sqsubset order
// (X before Y iff the order-least point of the symmetric difference is in X).
struct OverlapFamily {
  std::vector<std::vector<int>> members;  // point index sets, each sorted
  int size() const { return int(members.size()); }
};

// The algebra 2^I with atoms in sqsubset order; elements compare by the
// antilexicographic rule: S precedes T iff the highest differing atom is
// in T.
struct BoolAlgebraRep {
  int atoms = 0;
  int words() const { return (atoms + 63) / 64; }
  DynBits empty_element() const { return DynBits(size_t(words()), 0); }
  DynBits full_element() const;
  bool antilex_less(const DynBits& s, const DynBits& t) const;
};

DynBits bits_and(const DynBits& a, const DynBits& b);
DynBits bits_or(const DynBits& a, const DynBits& b);
DynBits bits_not(const BoolAlgebraRep& rep, const DynBits& a);
bool bits_empty(const DynBits& a);
bool bits_subset(const DynBits& a, const DynBits& b);
bool bits_get(const DynBits& a, int i);
void bits_set(DynBits& a, int i);

struct BoolEmbedding {
  OverlapFamily family;
  BoolAlgebraRep rep;
  std::vector<DynBits> f;  // per structure point, element of 2^I
};

// Embeds s into the finite Boolean algebra over its overlap family:
// f(a) = {X : some a' in X satisfies a' = a or PP(a',a)}.  Requires m to
// realize s's labels (checked, invalid_argument otherwise).  Post-verifies
// that f preserves all five labels and the order (antilex), and that each
// X is the sqsubset-largest member of the intersection of f over X.
BoolEmbedding boolean_embed(const OrderedStructure& s, const SetModel& m);

// Intersection-containment predicate on raw token sets:
// true iff the intersection of as is contained in the union of bs.
bool eval_Rkl(const std::vector<TokenSet>& as, const std::vector<TokenSet>& bs);

// Same predicate inside a finite algebra.
bool eval_Rkl(const BoolAlgebraRep& rep, const std::vector<DynBits>& as,
              const std::vector<DynBits>& bs);

// Twisted-intersection order predicate: intersect a_i (complemented where
// the twist bit is 1) for d and for e, compare antilexicographically.
bool eval_Okde(const BoolAlgebraRep& rep, const std::vector<DynBits>& as,
               const std::vector<int>& d, const std::vector<int>& e);

}  // namespace rcc5
