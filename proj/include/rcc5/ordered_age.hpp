#pragma once

#include <string>
#include <vector>

#include "rcc5/network.hpp"
#include "rcc5/relations.hpp"

namespace rcc5 {

// A finite labeled structure together with a linear order on its points.
// Membership in the ordered age additionally requires the order to extend
// PP and all triangles to be consistent (check_ordered_age).
struct OrderedStructure {
  std::vector<std::string> points;
  std::vector<Rel> label;  // n×n row-major, EQ on the diagonal
  std::vector<int> order;  // point indices, ≺-ascending

  int n() const { return int(points.size()); }
  Rel at(int i, int j) const { return label[size_t(i) * points.size() + j]; }
  void set(int i, int j, Rel r);
  int point_index(const std::string& name) const;
  // position of point i in the order; -1 if the order is not a permutation
  std::vector<int> positions() const;
  bool before(int i, int j) const;  // i ≺ j
  Orbit orbit_at(int i, int j) const;

  static OrderedStructure make(std::vector<std::string> names);
};

// True iff order is a permutation of the points, labels are converse
// coherent with EQ exactly on the diagonal, order extends PP, and every
// triangle is consistent.
bool check_ordered_age(const OrderedStructure& s);

// One-point amalgamation: B1 = A + b1, B2 = A + b2, both in the ordered age
// and agreeing on A.  Returns the completion on A + {b1,b2}: the label for
// (b1,b2) is the first of DR > PO > PPI > PP that is triangle-consistent
// through every a in A, where PP additionally needs a witness a with
// PP(b1,a) and PP(a,b2) (and symmetrically for PPI); the order inserts b1
// and b2 by their predecessor prefixes in A, b1 first on ties.
// Throws std::invalid_argument on malformed inputs, VerificationError if
// the completion fails its own age check.
OrderedStructure amalgamate_one_point(const OrderedStructure& a,
                                      const OrderedStructure& b1,
                                      const OrderedStructure& b2);

// Antilexicographic comparison of finite token sets: x precedes y iff the
// largest token of the symmetric difference lies in y.
bool antilex_less(const TokenSet& x, const TokenSet& y);

// Realizes s's order on top of a model g of its unordered labels: fresh
// pairwise-disjoint singleton tokens v_1 < ... < v_k (numbered past every
// g token, in ≺ order) are added by b(u) := g(u) ∪ {v_i : u_i = u or
// PP(u_i,u)}.  The result realizes the labels and antilex_less realizes
// the order; both are post-verified.
// Throws std::invalid_argument if g fails to realize the labels or s is
// not in the ordered age.
SetModel order_realize(const OrderedStructure& s, const SetModel& g);

}  // namespace rcc5
