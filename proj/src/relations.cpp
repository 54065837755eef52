#include "rcc5/relations.hpp"

#include <sstream>
#include <stdexcept>

#include "rcc5/errors.hpp"

namespace rcc5 {

namespace {
const std::string kRelNames[kNumRel] = {"EQ", "PP", "PPI", "DR", "PO"};
const std::string kOrbitNames[kNumOrbit] = {"EQ",    "PP",    "PPI",  "DR_LT",
                                            "DR_GT", "PO_LT", "PO_GT"};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::stringstream in(s);
  while (std::getline(in, cur, ',')) parts.push_back(cur);
  return parts;
}
}  // namespace

std::vector<RelTriangle> consistent_rel_triangles(bool injective_only) {
  std::vector<RelTriangle> out;
  for (int a = 0; a < kNumRel; ++a)
    for (int b = 0; b < kNumRel; ++b)
      for (int c = 0; c < kNumRel; ++c) {
        RelTriangle t{Rel(a), Rel(b), Rel(c)};
        if (!triangle_consistent(t)) continue;
        if (injective_only && (t.o12 == Rel::EQ || t.o23 == Rel::EQ || t.o13 == Rel::EQ))
          continue;
        out.push_back(t);
      }
  return out;
}

std::vector<OrbitTriangle> consistent_orbit_triangles(bool injective_only) {
  std::vector<OrbitTriangle> out;
  for (int a = 0; a < kNumOrbit; ++a)
    for (int b = 0; b < kNumOrbit; ++b)
      for (int c = 0; c < kNumOrbit; ++c) {
        OrbitTriangle t{Orbit(a), Orbit(b), Orbit(c)};
        if (!triangle_consistent(t)) continue;
        if (injective_only &&
            (t.o12 == Orbit::EQ || t.o23 == Orbit::EQ || t.o13 == Orbit::EQ))
          continue;
        out.push_back(t);
      }
  return out;
}

std::vector<std::vector<std::string>> enumerate_orbits(int k, bool ordered) {
  if (k != 2 && k != 3) throw std::invalid_argument("enumerate_orbits: k must be 2 or 3");
  std::vector<std::vector<std::string>> out;
  if (k == 2) {
    if (ordered)
      for (int i = 0; i < kNumOrbit; ++i) out.push_back({kOrbitNames[i]});
    else
      for (int i = 0; i < kNumRel; ++i) out.push_back({kRelNames[i]});
    return out;
  }
  if (ordered) {
    for (OrbitTriangle t : consistent_orbit_triangles())
      out.push_back({to_string(t.o12), to_string(t.o23), to_string(t.o13)});
  } else {
    for (RelTriangle t : consistent_rel_triangles())
      out.push_back({to_string(t.o12), to_string(t.o23), to_string(t.o13)});
  }
  return out;
}

const std::string& to_string(Rel r) { return kRelNames[unsigned(r)]; }
const std::string& to_string(Orbit o) { return kOrbitNames[unsigned(o)]; }

std::string to_string(RelSet s) {
  std::string out;
  for (int i = 0; i < kNumRel; ++i)
    if (s.contains(Rel(i))) {
      if (!out.empty()) out += ',';
      out += kRelNames[i];
    }
  return out;
}

std::string to_string(OrbitSet s) {
  std::string out;
  for (int i = 0; i < kNumOrbit; ++i)
    if (s.contains(Orbit(i))) {
      if (!out.empty()) out += ',';
      out += kOrbitNames[i];
    }
  return out;
}

Rel parse_rel(const std::string& name) {
  for (int i = 0; i < kNumRel; ++i)
    if (name == kRelNames[i]) return Rel(i);
  throw ParseError("unknown basic relation: '" + name + "'");
}

Orbit parse_orbit(const std::string& name) {
  for (int i = 0; i < kNumOrbit; ++i)
    if (name == kOrbitNames[i]) return Orbit(i);
  throw ParseError("unknown ordered orbit: '" + name + "'");
}

RelSet parse_rel_set(const std::string& names) {
  RelSet out{};
  for (const std::string& part : split_commas(names)) out = out | rel_bit(parse_rel(part));
  return out;
}

OrbitSet parse_orbit_set(const std::string& names) {
  OrbitSet out{};
  for (const std::string& part : split_commas(names)) out = out | orbit_bit(parse_orbit(part));
  return out;
}

}  // namespace rcc5
