// Exact algebra of the five RCC5 basic relations and of the seven ordered
// 2-orbits: composition, converse, triangle consistency, orbit enumeration.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rcc5 {

enum class Rel : uint8_t { EQ = 0, PP = 1, PPI = 2, DR = 3, PO = 4 };
inline constexpr int kNumRel = 5;

// Fixed tag order for ordered orbits: EQ, PP, PPI, DR_LT, DR_GT, PO_LT, PO_GT.
enum class Orbit : uint8_t {
  EQ = 0, PP = 1, PPI = 2, DR_LT = 3, DR_GT = 4, PO_LT = 5, PO_GT = 6
};
inline constexpr int kNumOrbit = 7;

// Subset of the five basic relations; the 32 elements of the RCC5 algebra.
struct RelSet {
  uint8_t bits = 0;
  constexpr bool contains(Rel r) const { return (bits >> unsigned(r)) & 1u; }
  constexpr bool empty() const { return bits == 0; }
  constexpr int count() const { return __builtin_popcount(bits); }
  friend constexpr bool operator==(RelSet a, RelSet b) { return a.bits == b.bits; }
  friend constexpr RelSet operator|(RelSet a, RelSet b) { return {uint8_t(a.bits | b.bits)}; }
  friend constexpr RelSet operator&(RelSet a, RelSet b) { return {uint8_t(a.bits & b.bits)}; }
};

struct OrbitSet {
  uint8_t bits = 0;
  constexpr bool contains(Orbit o) const { return (bits >> unsigned(o)) & 1u; }
  constexpr bool empty() const { return bits == 0; }
  constexpr int count() const { return __builtin_popcount(bits); }
  friend constexpr bool operator==(OrbitSet a, OrbitSet b) { return a.bits == b.bits; }
  friend constexpr OrbitSet operator|(OrbitSet a, OrbitSet b) { return {uint8_t(a.bits | b.bits)}; }
  friend constexpr OrbitSet operator&(OrbitSet a, OrbitSet b) { return {uint8_t(a.bits & b.bits)}; }
};

constexpr RelSet rel_bit(Rel r) { return {uint8_t(1u << unsigned(r))}; }
constexpr OrbitSet orbit_bit(Orbit o) { return {uint8_t(1u << unsigned(o))}; }
inline constexpr RelSet kAllRels{0x1f};
inline constexpr OrbitSet kAllOrbits{0x7f};
// DR | PO: the incomparability relation.
inline constexpr RelSet kIncomparable = rel_bit(Rel::DR) | rel_bit(Rel::PO);

constexpr Rel converse(Rel r) {
  switch (r) {
    case Rel::PP:  return Rel::PPI;
    case Rel::PPI: return Rel::PP;
    default:       return r;
  }
}

constexpr RelSet converse(RelSet s) {
  uint8_t b = s.bits;
  uint8_t pp = (b >> unsigned(Rel::PP)) & 1u, ppi = (b >> unsigned(Rel::PPI)) & 1u;
  b &= uint8_t(~((1u << unsigned(Rel::PP)) | (1u << unsigned(Rel::PPI))));
  b |= uint8_t(pp << unsigned(Rel::PPI)) | uint8_t(ppi << unsigned(Rel::PP));
  return {b};
}

constexpr Orbit converse(Orbit o) {
  switch (o) {
    case Orbit::PP:    return Orbit::PPI;
    case Orbit::PPI:   return Orbit::PP;
    case Orbit::DR_LT: return Orbit::DR_GT;
    case Orbit::DR_GT: return Orbit::DR_LT;
    case Orbit::PO_LT: return Orbit::PO_GT;
    case Orbit::PO_GT: return Orbit::PO_LT;
    default:           return Orbit::EQ;
  }
}

constexpr OrbitSet converse(OrbitSet s) {
  OrbitSet out{};
  for (int i = 0; i < kNumOrbit; ++i)
    if (s.contains(Orbit(i))) out = out | orbit_bit(converse(Orbit(i)));
  return out;
}

constexpr Rel unordered(Orbit o) {
  switch (o) {
    case Orbit::EQ:  return Rel::EQ;
    case Orbit::PP:  return Rel::PP;
    case Orbit::PPI: return Rel::PPI;
    case Orbit::DR_LT: case Orbit::DR_GT: return Rel::DR;
    default: return Rel::PO;
  }
}

constexpr RelSet unordered(OrbitSet s) {
  RelSet out{};
  for (int i = 0; i < kNumOrbit; ++i)
    if (s.contains(Orbit(i))) out = out | rel_bit(unordered(Orbit(i)));
  return out;
}

// The order ≺ is a linear extension of PP, so PP sits on the ≺ side and PPI
// on the ≻ side; EQ is on neither.
constexpr bool prec_side(Orbit o) {
  return o == Orbit::PP || o == Orbit::DR_LT || o == Orbit::PO_LT;
}
constexpr bool succ_side(Orbit o) {
  return o == Orbit::PPI || o == Orbit::DR_GT || o == Orbit::PO_GT;
}
inline constexpr OrbitSet kPrecOrbits =
    orbit_bit(Orbit::PP) | orbit_bit(Orbit::DR_LT) | orbit_bit(Orbit::PO_LT);
inline constexpr OrbitSet kSuccOrbits =
    orbit_bit(Orbit::PPI) | orbit_bit(Orbit::DR_GT) | orbit_bit(Orbit::PO_GT);
// ⪱ = (DR ∪ PO) ∩ ≺.
inline constexpr OrbitSet kPrecnsim = orbit_bit(Orbit::DR_LT) | orbit_bit(Orbit::PO_LT);

// Both ordered variants of each member relation; EQ, PP, PPI lift to themselves.
constexpr OrbitSet full_lift(RelSet s) {
  OrbitSet out{};
  if (s.contains(Rel::EQ))  out = out | orbit_bit(Orbit::EQ);
  if (s.contains(Rel::PP))  out = out | orbit_bit(Orbit::PP);
  if (s.contains(Rel::PPI)) out = out | orbit_bit(Orbit::PPI);
  if (s.contains(Rel::DR))  out = out | orbit_bit(Orbit::DR_LT) | orbit_bit(Orbit::DR_GT);
  if (s.contains(Rel::PO))  out = out | orbit_bit(Orbit::PO_LT) | orbit_bit(Orbit::PO_GT);
  return out;
}
constexpr OrbitSet prec_lift(RelSet s) { return full_lift(s) & kPrecOrbits; }
constexpr OrbitSet succ_lift(RelSet s) { return full_lift(s) & kSuccOrbits; }

namespace detail {
// Hard-coded basic composition table, row-major [r1][r2].  Bits by Rel index:
// EQ=1, PP=2, PPI=4, DR=8, PO=16.
inline constexpr uint8_t kComposeBits[kNumRel][kNumRel] = {
    //            EQ  PP  PPI DR  PO
    /* EQ  */ {    1,  2,  4,  8, 16},
    /* PP  */ {    2,  2, 31,  8, 26},
    /* PPI */ {    4, 23,  4, 28, 20},
    /* DR  */ {    8, 26,  8, 31, 26},
    /* PO  */ {   16, 18, 28, 28, 31},
};

// Exact composition of ordered orbits.  EQ composes as the identity; two
// orbits on the same side of ≺ compose inside that side; mixed sides lift
// the basic composition in full.
constexpr OrbitSet compose_orbit(Orbit a, Orbit b) {
  if (a == Orbit::EQ) return orbit_bit(b);
  if (b == Orbit::EQ) return orbit_bit(a);
  RelSet s{kComposeBits[unsigned(unordered(a))][unsigned(unordered(b))]};
  if (prec_side(a) && prec_side(b)) return prec_lift(s);
  if (succ_side(a) && succ_side(b)) return succ_lift(s);
  return full_lift(s);
}

struct OrbitTable {
  uint8_t m[kNumOrbit][kNumOrbit] = {};
};
constexpr OrbitTable make_orbit_table() {
  OrbitTable t;
  for (int a = 0; a < kNumOrbit; ++a)
    for (int b = 0; b < kNumOrbit; ++b)
      t.m[a][b] = compose_orbit(Orbit(a), Orbit(b)).bits;
  return t;
}
inline constexpr OrbitTable kOrbitTable = make_orbit_table();
}  // namespace detail

constexpr RelSet compose(Rel a, Rel b) {
  return {detail::kComposeBits[unsigned(a)][unsigned(b)]};
}

constexpr RelSet compose(RelSet a, RelSet b) {
  RelSet out{};
  for (int i = 0; i < kNumRel; ++i)
    if (a.contains(Rel(i)))
      for (int j = 0; j < kNumRel; ++j)
        if (b.contains(Rel(j))) out = out | compose(Rel(i), Rel(j));
  return out;
}

constexpr OrbitSet compose(Orbit a, Orbit b) {
  return {detail::kOrbitTable.m[unsigned(a)][unsigned(b)]};
}

constexpr OrbitSet compose(OrbitSet a, OrbitSet b) {
  OrbitSet out{};
  for (int i = 0; i < kNumOrbit; ++i)
    if (a.contains(Orbit(i)))
      for (int j = 0; j < kNumOrbit; ++j)
        if (b.contains(Orbit(j))) out = out | compose(Orbit(i), Orbit(j));
  return out;
}

// Triangle on points (1,2,3): o12, o23 and o13 as in the composition reading
// o13 ∈ o12 ∘ o23.
struct RelTriangle {
  Rel o12, o23, o13;
  friend constexpr bool operator==(RelTriangle a, RelTriangle b) {
    return a.o12 == b.o12 && a.o23 == b.o23 && a.o13 == b.o13;
  }
};
struct OrbitTriangle {
  Orbit o12, o23, o13;
  friend constexpr bool operator==(OrbitTriangle a, OrbitTriangle b) {
    return a.o12 == b.o12 && a.o23 == b.o23 && a.o13 == b.o13;
  }
};

constexpr bool triangle_consistent(RelTriangle t) {
  return compose(t.o12, t.o23).contains(t.o13);
}
constexpr bool triangle_consistent(OrbitTriangle t) {
  return compose(t.o12, t.o23).contains(t.o13);
}

// All consistent triangles, in lexicographic (o12, o23, o13) tag order.
// EQ labels denote repeated points.
std::vector<RelTriangle> consistent_rel_triangles(bool injective_only = false);
std::vector<OrbitTriangle> consistent_orbit_triangles(bool injective_only = false);

// Orbit descriptors of k-tuples: one label for k=2, [o12,o23,o13] for k=3.
std::vector<std::vector<std::string>> enumerate_orbits(int k, bool ordered);

const std::string& to_string(Rel r);
const std::string& to_string(Orbit o);
std::string to_string(RelSet s);    // comma-joined in tag order
std::string to_string(OrbitSet s);
Rel parse_rel(const std::string& name);
Orbit parse_orbit(const std::string& name);
RelSet parse_rel_set(const std::string& names);    // comma-separated
OrbitSet parse_orbit_set(const std::string& names);

}  // namespace rcc5
