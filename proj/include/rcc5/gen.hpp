#pragma once

#include <cstdint>

#include "rcc5/network.hpp"
#include "rcc5/search.hpp"

namespace rcc5 {

// Seeded random instance on variables v0..v{vars-1}: each unordered pair,
// in lexicographic order, is constrained with probability density.  Without
// an expansion the label is a uniformly chosen nonempty union of basic
// relations; with one it is a uniformly chosen binary relation of the
// expansion (named in the constraint).  Identical (seed, parameters) give
// identical instances.
// Throws std::invalid_argument on vars < 1, density outside [0,1], or an
// expansion without binary relations.
Instance generate_instance(int vars, double density, uint64_t seed,
                           const ExpansionSpec* expansion = nullptr);

}  // namespace rcc5
