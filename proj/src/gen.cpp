#include "rcc5/gen.hpp"

#include <stdexcept>
#include <string>

#include "rcc5/rng.hpp"

namespace rcc5 {

Instance generate_instance(int vars, double density, uint64_t seed,
                           const ExpansionSpec* expansion) {
  if (vars < 1) throw std::invalid_argument("vars must be at least 1");
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("density must lie in [0,1]");

  std::vector<const RelationSpec*> binary;
  if (expansion) {
    for (const auto& r : expansion->relations)
      if (r.arity == 2) binary.push_back(&r);
    if (binary.empty())
      throw std::invalid_argument("expansion has no binary relations");
  }

  Instance inst;
  for (int i = 0; i < vars; ++i)
    inst.variables.push_back("v" + std::to_string(i));

  Rng rng(seed);
  for (int i = 0; i < vars; ++i)
    for (int j = i + 1; j < vars; ++j) {
      if (!rng.chance(density)) continue;
      Constraint c;
      c.args = {i, j};
      if (expansion) {
        const RelationSpec& r = *binary[size_t(rng.below(binary.size()))];
        c.name = r.name;
        c.orbits = r.orbits;
      } else {
        c.orbits = RelSet{uint8_t(1 + rng.below(31))};
      }
      inst.constraints.push_back(std::move(c));
    }
  return inst;
}

}  // namespace rcc5
