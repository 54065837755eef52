#pragma once

#include <optional>
#include <vector>

#include "rcc5/relations.hpp"

namespace rcc5 {

// Total table over ordered-orbit tuples.  Index layout: the first argument
// is the most significant digit base 7.
struct Behaviour {
  int arity = 0;
  std::vector<Orbit> table;  // size 7^arity

  static int table_size(int k);
  int index(const std::vector<Orbit>& in) const;
  Orbit at(const std::vector<Orbit>& in) const { return table[index(in)]; }
  Orbit at2(Orbit a, Orbit b) const { return table[int(a) * 7 + int(b)]; }
  Orbit at3(Orbit a, Orbit b, Orbit c) const {
    return table[(int(a) * 7 + int(b)) * 7 + int(c)];
  }

  static Behaviour projection(int k, int i);  // i is 0-based
  bool operator==(const Behaviour&) const = default;
};

// Total table over unordered-orbit tuples, same layout base 5.
struct UnorderedBehaviour {
  int arity = 0;
  std::vector<Rel> table;  // size 5^arity
  Rel at(const std::vector<Rel>& in) const;
  bool operator==(const UnorderedBehaviour&) const = default;
};

struct BooleanOp {
  int arity = 0;
  std::vector<uint8_t> table;  // size 2^arity, input bits packed msb-first

  uint8_t at(const std::vector<int>& in) const;
  bool is_and() const;         // binary meet
  bool is_cyclic() const;      // invariant under argument rotation
  bool is_projection() const;  // equals some coordinate projection
  bool is_majority() const;
  bool is_maltsev() const;
  bool is_max() const;  // binary join
  bool operator==(const BooleanOp&) const = default;
};

// EQ-diagonal and converse equivariance, the well-formedness conditions of
// the type.
bool behaviour_well_formed(const Behaviour& b);

// Restriction of b to inputs from {PP, DR_LT, PO_LT} quotiented by the two
// classes 0 = {DR_LT, PO_LT}, 1 = {PP}; nullopt when the restriction
// escapes those orbits or is not constant on a class pattern.
std::optional<BooleanOp> eta(const Behaviour& b);

// Restriction of b to inputs from {DR_LT, PO_LT} with 0 = DR_LT,
// 1 = PO_LT.  Throws std::invalid_argument if some cell escapes.
BooleanOp rho(const Behaviour& b);

// outer(inners[0](x...), ..., inners[k-1](x...)); all inners share arity.
Behaviour compose_behaviours(const Behaviour& outer,
                             const std::vector<Behaviour>& inners);

// The orbit-forgetting projection: defined only when every tuple of lifts
// of an unordered input tuple maps to a single unordered output.
std::optional<UnorderedBehaviour> unordered_projection(const Behaviour& b);

bool is_wnu(const UnorderedBehaviour& w);

// The three-stage composition h(x,y,z) = g(g(x,y),z),
// h'(x,y,z) = h(h(x,y,z),h(y,z,x),h(z,x,y)),
// h''(x,y,z) = f(h'(x,y,z),h'(y,z,x),h'(z,x,y)).
// Requires eta(g) to be the meet and rho(f) cyclic (invalid_argument);
// post-verifies that the unordered projection of the result exists, is
// cyclic, and fixes every diagonal (VerificationError).
Behaviour build_h_cyclic(const Behaviour& g, const Behaviour& f);

}  // namespace rcc5
