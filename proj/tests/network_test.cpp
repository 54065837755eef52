#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "rcc5/errors.hpp"
#include "rcc5/network.hpp"
#include "rcc5/relations.hpp"
#include "rcc5/rng.hpp"
#include "support/oracle.hpp"

using namespace rcc5;

namespace {

TokenSet tokens_of(uint32_t mask) {
  TokenSet s;
  for (int b = 0; b < 32; ++b)
    if (mask & (1u << b)) s.push_back(uint32_t(b));
  return s;
}

bool subset(RelSet a, RelSet b) { return (a.bits & ~b.bits) == 0; }

PairMatrix random_matrix(Rng& rng, int n) {
  PairMatrix m = PairMatrix::full(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, RelSet{uint8_t(1 + rng.below(31))});
  return m;
}

// Independent fixed-point computation with the sweep order reversed; the
// largest fixed point is unique, so any order must land on the same matrix.
std::optional<PairMatrix> naive_closure(PairMatrix m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) m.set(i, j, m.at(i, j) & converse(m.at(j, i)));
  for (const RelSet& c : m.cell)
    if (c.empty()) return std::nullopt;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = m.n - 1; i >= 0; --i)
      for (int j = m.n - 1; j >= 0; --j)
        for (int k = m.n - 1; k >= 0; --k) {
          RelSet r = m.at(i, j) & compose(m.at(i, k), m.at(k, j));
          if (r.empty()) return std::nullopt;
          if (!(r == m.at(i, j))) {
            m.set(i, j, r);
            changed = true;
          }
        }
  }
  return m;
}

bool same_matrix(const PairMatrix& a, const PairMatrix& b) {
  if (a.n != b.n || a.cell.size() != b.cell.size()) return false;
  for (size_t i = 0; i < a.cell.size(); ++i)
    if (!(a.cell[i] == b.cell[i])) return false;
  return true;
}

Instance atomic_instance(Rel xy, Rel yz, Rel xz) {
  Instance inst;
  inst.variables = {"x", "y", "z"};
  inst.constraints.push_back({"", {0, 1}, rel_bit(xy), {}});
  inst.constraints.push_back({"", {1, 2}, rel_bit(yz), {}});
  inst.constraints.push_back({"", {0, 2}, rel_bit(xz), {}});
  return inst;
}

Instance random_instance(uint64_t seed, int n, double density, bool atomic_labels) {
  Rng rng(seed);
  Instance inst;
  for (int i = 0; i < n; ++i) inst.variables.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!rng.chance(density)) continue;
      RelSet s = atomic_labels ? rel_bit(Rel(rng.below(5)))
                               : RelSet{uint8_t(1 + rng.below(31))};
      inst.constraints.push_back({"", {i, j}, s, {}});
    }
  return inst;
}

int mask_popcount(const std::array<uint64_t, 2>& m) {
  return std::popcount(m[0]) + std::popcount(m[1]);
}

bool mask_bit(const std::array<uint64_t, 2>& m, Rel a, Rel b, Rel c) {
  int bit = int(a) * 25 + int(b) * 5 + int(c);
  return (m[size_t(bit >> 6)] >> (bit & 63)) & 1u;
}

}  // namespace

TEST_CASE("evaluate returns the unique basic relation of two token sets") {
  CHECK(evaluate({1}, {1, 2}) == Rel::PP);
  CHECK(evaluate({1, 2}, {2, 3}) == Rel::PO);
  CHECK(evaluate({1}, {2}) == Rel::DR);
  CHECK(evaluate({4, 9}, {4, 9}) == Rel::EQ);
  CHECK(evaluate({1, 2, 5}, {2, 5}) == Rel::PPI);
  CHECK_THROWS_AS(evaluate(TokenSet{}, TokenSet{1}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(TokenSet{1}, TokenSet{}), std::invalid_argument);
}

TEST_CASE("evaluate agrees with the oracle on every subset pair of a 7-token ground set") {
  for (uint32_t x = 1; x < 128; ++x) {
    TokenSet sx = tokens_of(x);
    for (uint32_t y = 1; y < 128; ++y)
      CHECK(int(evaluate(sx, tokens_of(y))) == oracle::rel_code(x, y));
  }
}

TEST_CASE("evaluate by variable name and lookup errors") {
  SetModel m;
  m.variables = {"a", "b"};
  m.sets = {{1}, {1, 2}};
  CHECK(evaluate(m, "a", "b") == Rel::PP);
  CHECK(evaluate(m, "b", "a") == Rel::PPI);
  CHECK(m.var_index("a") == 0);
  CHECK(m.var_index("zz") == -1);
  CHECK_THROWS_AS(m.at("zz"), std::invalid_argument);
}

TEST_CASE("path consistency refutes a chain whose composition misses the direct cell") {
  PairMatrix m = PairMatrix::full(3);
  m.set(0, 1, rel_bit(Rel::PP));
  m.set(1, 2, rel_bit(Rel::PP));
  m.set(0, 2, rel_bit(Rel::DR) | rel_bit(Rel::PO));
  CHECK(!path_consistency(m).has_value());
}

TEST_CASE("path consistency leaves closed atomic networks unchanged") {
  PairMatrix chain = PairMatrix::full(3);
  chain.set(0, 1, rel_bit(Rel::PP));
  chain.set(1, 2, rel_bit(Rel::PP));
  chain.set(0, 2, rel_bit(Rel::PP));
  auto c = path_consistency(chain);
  REQUIRE(c.has_value());
  CHECK(same_matrix(*c, chain));

  PairMatrix scatter = PairMatrix::full(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) scatter.set(i, j, rel_bit(Rel::DR));
  auto d = path_consistency(scatter);
  REQUIRE(d.has_value());
  CHECK(same_matrix(*d, scatter));
}

TEST_CASE("path consistency refines an unconstrained cell through a chain") {
  PairMatrix m = PairMatrix::full(3);
  m.set(0, 1, rel_bit(Rel::PP));
  m.set(1, 2, rel_bit(Rel::DR));
  auto c = path_consistency(m);
  REQUIRE(c.has_value());
  CHECK(c->at(0, 2) == rel_bit(Rel::DR));
  CHECK(c->at(2, 0) == rel_bit(Rel::DR));
}

TEST_CASE("path consistency reconciles converse-incoherent input cells") {
  PairMatrix m = PairMatrix::full(2);
  m.cell[1] = rel_bit(Rel::PP);  // cell (0,1)
  m.cell[2] = rel_bit(Rel::PP);  // cell (1,0), demands PPI on (0,1)
  CHECK(!path_consistency(m).has_value());
}

TEST_CASE("path consistency is idempotent, order-independent, and converse-coherent") {
  Rng seeds(2024);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + int(seeds.next() % 4);
    Rng rng(seeds.next());
    PairMatrix m = random_matrix(rng, n);
    auto lib = path_consistency(m);
    auto ref = naive_closure(m);
    CHECK(lib.has_value() == ref.has_value());
    if (!lib || !ref) continue;
    CHECK(same_matrix(*lib, *ref));
    auto again = path_consistency(*lib);
    REQUIRE(again.has_value());
    CHECK(same_matrix(*again, *lib));
    for (int i = 0; i < n; ++i) {
      CHECK(lib->at(i, i) == rel_bit(Rel::EQ));
      for (int j = 0; j < n; ++j) CHECK(lib->at(i, j) == converse(lib->at(j, i)));
    }
  }
}

TEST_CASE("path consistency is monotone: refining the input refines the output") {
  Rng seeds(77);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + int(seeds.next() % 3);
    Rng rng(seeds.next());
    PairMatrix coarse = random_matrix(rng, n);
    PairMatrix fine = coarse;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.chance(0.5))
          fine.set(i, j, fine.at(i, j) & RelSet{uint8_t(1 + rng.below(31))});
    auto c = path_consistency(coarse);
    auto f = path_consistency(fine);
    if (!c) {
      CHECK(!f.has_value());
      continue;
    }
    if (!f) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(subset(f->at(i, j), c->at(i, j)));
  }
}

TEST_CASE("solve_atomic on the canonical three-variable labelings") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
  a.set(0, 1, Rel::PP);
  a.set(1, 2, Rel::PP);
  a.set(0, 2, Rel::PP);
  CHECK(solve_atomic(a));
  a.set(0, 2, Rel::PPI);
  CHECK(!solve_atomic(a));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) a.set(i, j, Rel::DR);
  CHECK(solve_atomic(a));
}

TEST_CASE("solve_atomic agrees with exhaustive set search on all atomic triangles") {
  for (int x = 0; x < kNumRel; ++x)
    for (int y = 0; y < kNumRel; ++y)
      for (int z = 0; z < kNumRel; ++z) {
        AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
        a.set(0, 1, Rel(x));
        a.set(1, 2, Rel(y));
        a.set(0, 2, Rel(z));
        auto w = oracle::brute_sat3({uint8_t(1 << x), uint8_t(1 << y), uint8_t(1 << z)});
        CHECK(solve_atomic(a) == w.has_value());
        if (w) {
          CHECK(oracle::rel_code(w->at(0), w->at(1)) == x);
          CHECK(oracle::rel_code(w->at(1), w->at(2)) == y);
          CHECK(oracle::rel_code(w->at(0), w->at(2)) == z);
        }
      }
}

TEST_CASE("solve_atomic resolves EQ labels by identification") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
  a.set(0, 1, Rel::EQ);
  a.set(1, 2, Rel::PP);
  a.set(0, 2, Rel::PP);
  CHECK(solve_atomic(a));
  a.set(0, 2, Rel::DR);  // x = y but x and y relate to z differently
  CHECK(!solve_atomic(a));
}

TEST_CASE("eq_collapse merges classes and maps variables to representatives") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
  a.set(0, 1, Rel::EQ);
  a.set(1, 2, Rel::PP);
  a.set(0, 2, Rel::PP);
  auto col = eq_collapse(a);
  REQUIRE(col.has_value());
  CHECK(col->net.n() == 2);
  CHECK(col->net.vars == std::vector<std::string>{"x", "z"});
  CHECK(col->cls == std::vector<int>{0, 0, 1});
  CHECK(col->net.at(0, 1) == Rel::PP);
  CHECK(col->net.at(1, 0) == Rel::PPI);
}

TEST_CASE("eq_collapse rejects labelings where EQ is not a congruence") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
  a.set(0, 1, Rel::EQ);
  a.set(1, 2, Rel::PP);
  a.set(0, 2, Rel::DR);
  CHECK(!eq_collapse(a).has_value());

  AtomicNetwork b = AtomicNetwork::make({"w", "x", "y"});
  b.set(0, 1, Rel::EQ);
  b.set(0, 2, Rel::PP);
  b.set(1, 2, Rel::PO);
  CHECK(!eq_collapse(b).has_value());

  // identified endpoints whose own pair carries a non-EQ label
  AtomicNetwork c = AtomicNetwork::make({"x", "y", "z"});
  c.set(0, 1, Rel::EQ);
  c.set(1, 2, Rel::EQ);
  c.set(0, 2, Rel::PO);
  CHECK(!eq_collapse(c).has_value());
}

TEST_CASE("build_model realizes a containment edge with nested token sets") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y"});
  a.set(0, 1, Rel::PP);
  SetModel m = build_model(a);
  CHECK(m.at("x") == TokenSet{0});
  CHECK(m.at("y") == TokenSet{0, 1});
}

TEST_CASE("build_model realizes an overlap edge with a shared witness token") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y"});
  a.set(0, 1, Rel::PO);
  SetModel m = build_model(a);
  CHECK(m.at("x") == TokenSet{0, 2});
  CHECK(m.at("y") == TokenSet{1, 2});
}

TEST_CASE("build_model distributes overlap tokens to enclosing sets only") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
  a.set(0, 1, Rel::PP);
  a.set(0, 2, Rel::PP);
  a.set(1, 2, Rel::PO);
  SetModel m = build_model(a);
  // the y,z overlap token joins y and z themselves, not the common part x
  CHECK(m.at("x") == TokenSet{0});
  CHECK(m.at("y") == TokenSet{0, 1, 3});
  CHECK(m.at("z") == TokenSet{0, 2, 3});
  CHECK(evaluate(m, "y", "z") == Rel::PO);
}

TEST_CASE("build_model numbers tokens by sorted variable name") {
  AtomicNetwork a = AtomicNetwork::make({"b", "a"});
  a.set(0, 1, Rel::PP);  // b inside a
  SetModel m = build_model(a);
  CHECK(m.at("b") == TokenSet{1});
  CHECK(m.at("a") == TokenSet{0, 1});
}

TEST_CASE("build_model rejects uncollapsed or inconsistent input") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y"});
  a.set(0, 1, Rel::EQ);
  CHECK_THROWS_AS(build_model(a), std::invalid_argument);

  AtomicNetwork b = AtomicNetwork::make({"x", "y", "z"});
  b.set(0, 1, Rel::PP);
  b.set(1, 2, Rel::PP);
  b.set(0, 2, Rel::PPI);
  CHECK_THROWS_AS(build_model(b), std::invalid_argument);
}

TEST_CASE("build_model reproduces every consistent EQ-free labeling on 3 and 4 variables") {
  int three = 0;
  for (int x = 1; x < kNumRel; ++x)
    for (int y = 1; y < kNumRel; ++y)
      for (int z = 1; z < kNumRel; ++z) {
        AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
        a.set(0, 1, Rel(x));
        a.set(1, 2, Rel(y));
        a.set(0, 2, Rel(z));
        if (!solve_atomic(a)) continue;
        ++three;
        SetModel m = build_model(a);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(evaluate(m.sets[i], m.sets[j]) == a.at(i, j));
      }
  CHECK(three == 41);

  int four = 0;
  bool all_ok = true;
  std::array<std::pair<int, int>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  std::array<int, 6> lab{};
  for (int code = 0; code < 4096; ++code) {
    int c = code;
    for (int p = 0; p < 6; ++p, c /= 4) lab[p] = 1 + c % 4;  // EQ skipped by construction
    AtomicNetwork a = AtomicNetwork::make({"p", "q", "r", "s"});
    for (int p = 0; p < 6; ++p) a.set(pairs[p].first, pairs[p].second, Rel(lab[p]));
    if (!solve_atomic(a)) continue;
    ++four;
    SetModel m = build_model(a);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j && evaluate(m.sets[i], m.sets[j]) != a.at(i, j)) all_ok = false;
  }
  CHECK(all_ok);
  CHECK(four > 100);
}

TEST_CASE("type CSP reduction: a single binary constraint pins one pair domain") {
  Instance inst;
  inst.variables = {"x", "y"};
  inst.constraints.push_back({"", {0, 1}, rel_bit(Rel::PP), {}});
  TypeCsp csp = reduce_to_type_csp(inst);
  CHECK(csp.n == 2);
  CHECK(csp.pairs.size() == 1);
  CHECK(csp.triples.empty());
  CHECK(csp.domain[0] == rel_bit(Rel::PP));
  CHECK(!csp.trivially_unsat);
}

TEST_CASE("type CSP reduction: unconstrained triple gets the full triangle table") {
  Instance inst;
  inst.variables = {"x", "y", "z"};
  TypeCsp csp = reduce_to_type_csp(inst);
  CHECK(csp.pairs.size() == 3);
  CHECK(csp.triples.size() == 1);
  for (const RelSet& d : csp.domain) CHECK(d == kAllRels);
  CHECK(mask_popcount(csp.triples[0].allowed) == 54);
}

TEST_CASE("type CSP reduction: ternary constraints restrict their triple verbatim") {
  Instance inst;
  inst.variables = {"x", "y", "z"};
  Constraint c;
  c.args = {0, 1, 2};
  c.triangles = {{Rel::PP, Rel::PP, Rel::PP}, {Rel::DR, Rel::DR, Rel::DR}};
  inst.constraints.push_back(c);
  TypeCsp csp = reduce_to_type_csp(inst);
  REQUIRE(csp.triples.size() == 1);
  CHECK(mask_popcount(csp.triples[0].allowed) == 2);
  CHECK(mask_bit(csp.triples[0].allowed, Rel::PP, Rel::PP, Rel::PP));
  CHECK(mask_bit(csp.triples[0].allowed, Rel::DR, Rel::DR, Rel::DR));
}

TEST_CASE("type CSP reduction reorients constraints given in reverse argument order") {
  Instance inst;
  inst.variables = {"x", "y"};
  inst.constraints.push_back({"", {1, 0}, rel_bit(Rel::PP), {}});
  TypeCsp csp = reduce_to_type_csp(inst);
  CHECK(csp.domain[0] == rel_bit(Rel::PPI));

  // ternary constraint with arguments rotated out of index order
  Instance t;
  t.variables = {"x", "y", "z"};
  Constraint c;
  c.args = {2, 0, 1};  // labels: rel(z,x)=PP, rel(x,y)=PP, rel(z,y)=PP
  c.triangles = {{Rel::PP, Rel::PP, Rel::PP}};
  t.constraints.push_back(c);
  TypeCsp csp2 = reduce_to_type_csp(t);
  REQUIRE(csp2.triples.size() == 1);
  CHECK(mask_popcount(csp2.triples[0].allowed) == 1);
  CHECK(mask_bit(csp2.triples[0].allowed, Rel::PP, Rel::PPI, Rel::PPI));
}

TEST_CASE("type CSP reduction handles repeated arguments") {
  Instance self;
  self.variables = {"x", "y"};
  self.constraints.push_back({"", {0, 0}, rel_bit(Rel::PP), {}});
  CHECK(reduce_to_type_csp(self).trivially_unsat);
  self.constraints[0].orbits = rel_bit(Rel::EQ) | rel_bit(Rel::PP);
  CHECK(!reduce_to_type_csp(self).trivially_unsat);

  // (u,u,w): only triangles with an EQ first edge and agreeing far edges apply
  Instance uuw;
  uuw.variables = {"x", "y"};
  Constraint c;
  c.args = {0, 0, 1};
  c.triangles = {{Rel::EQ, Rel::PP, Rel::PP}, {Rel::PO, Rel::PP, Rel::PP}};
  uuw.constraints.push_back(c);
  CHECK(reduce_to_type_csp(uuw).domain[0] == rel_bit(Rel::PP));

  // (u,w,w)
  Instance uww;
  uww.variables = {"x", "y"};
  Constraint c2;
  c2.args = {0, 1, 1};
  c2.triangles = {{Rel::DR, Rel::EQ, Rel::DR}};
  uww.constraints.push_back(c2);
  CHECK(reduce_to_type_csp(uww).domain[0] == rel_bit(Rel::DR));

  // (u,w,u): the two edges at w must be converses
  Instance uwu;
  uwu.variables = {"x", "y"};
  Constraint c3;
  c3.args = {0, 1, 0};
  c3.triangles = {{Rel::PP, Rel::PPI, Rel::EQ}, {Rel::PP, Rel::PP, Rel::EQ}};
  uwu.constraints.push_back(c3);
  CHECK(reduce_to_type_csp(uwu).domain[0] == rel_bit(Rel::PP));

  // (u,u,u)
  Instance uuu;
  uuu.variables = {"x"};
  Constraint c4;
  c4.args = {0, 0, 0};
  c4.triangles = {{Rel::PP, Rel::PP, Rel::PP}};
  uuu.constraints.push_back(c4);
  CHECK(reduce_to_type_csp(uuu).trivially_unsat);
  c4.triangles.push_back({Rel::EQ, Rel::EQ, Rel::EQ});
  uuu.constraints[0] = c4;
  CHECK(!reduce_to_type_csp(uuu).trivially_unsat);
}

TEST_CASE("type CSP pair indexing is a lexicographic bijection") {
  Instance inst;
  for (int i = 0; i < 6; ++i) inst.variables.push_back("v" + std::to_string(i));
  TypeCsp csp = reduce_to_type_csp(inst);
  CHECK(csp.pairs.size() == 15);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      int p = csp.pair_index(i, j);
      CHECK(csp.pair_index(j, i) == p);
      CHECK(csp.pairs[size_t(p)] == std::make_pair(i, j));
    }
}

TEST_CASE("solve: containment edge, cyclic containment, scattered points") {
  Instance pp;
  pp.variables = {"x", "y"};
  pp.constraints.push_back({"", {0, 1}, rel_bit(Rel::PP), {}});
  SolveResult r = solve(pp);
  REQUIRE(r.sat);
  CHECK(r.model.at("x") == TokenSet{0});
  CHECK(r.model.at("y") == TokenSet{0, 1});

  Instance cyc;
  cyc.variables = {"x", "y", "z"};
  cyc.constraints.push_back({"", {0, 1}, rel_bit(Rel::PP), {}});
  cyc.constraints.push_back({"", {1, 2}, rel_bit(Rel::PP), {}});
  cyc.constraints.push_back({"", {2, 0}, rel_bit(Rel::PP), {}});
  CHECK(!solve(cyc).sat);

  Instance dr;
  dr.variables = {"x", "y", "z"};
  dr.constraints.push_back({"", {0, 1}, rel_bit(Rel::DR), {}});
  dr.constraints.push_back({"", {1, 2}, rel_bit(Rel::DR), {}});
  dr.constraints.push_back({"", {0, 2}, rel_bit(Rel::DR), {}});
  auto s = solve(dr);
  REQUIRE(s.sat);
  CHECK(model_satisfies(dr, s.model));
}

TEST_CASE("solve agrees with solve_atomic on every complete atomic 3-variable network") {
  for (int x = 0; x < kNumRel; ++x)
    for (int y = 0; y < kNumRel; ++y)
      for (int z = 0; z < kNumRel; ++z) {
        Instance inst = atomic_instance(Rel(x), Rel(y), Rel(z));
        AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
        a.set(0, 1, Rel(x));
        a.set(1, 2, Rel(y));
        a.set(0, 2, Rel(z));
        SolveResult r = solve(inst);
        CHECK(r.sat == solve_atomic(a));
        if (r.sat) CHECK(model_satisfies(inst, r.model));
      }
}

TEST_CASE("solve agrees with the refinement oracle on seeded 4-variable instances") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Instance inst = random_instance(seed, 4, 0.7, false);
    auto expected = oracle::refinement_sat(inst);
    SolveResult r = solve(inst);
    INFO("seed ", seed);
    CHECK(r.sat == expected.has_value());
    if (r.sat) CHECK(model_satisfies(inst, r.model));
  }
}

TEST_CASE("solve is deterministic and insensitive to constraint order") {
  Instance inst = random_instance(41, 5, 0.6, false);
  SolveResult a = solve(inst);
  SolveResult b = solve(inst);
  Instance rev = inst;
  std::reverse(rev.constraints.begin(), rev.constraints.end());
  SolveResult c = solve(rev);
  CHECK(a.sat == b.sat);
  CHECK(a.sat == c.sat);
  if (a.sat) {
    CHECK(a.model.sets == b.model.sets);
    CHECK(a.model.sets == c.model.sets);
  }
}

TEST_CASE("solve handles ternary constraints") {
  Instance chain;
  chain.variables = {"x", "y", "z"};
  Constraint c;
  c.args = {0, 1, 2};
  c.triangles = {{Rel::PP, Rel::PP, Rel::PP}};
  chain.constraints.push_back(c);
  SolveResult r = solve(chain);
  REQUIRE(r.sat);
  CHECK(evaluate(r.model, "x", "y") == Rel::PP);
  CHECK(evaluate(r.model, "y", "z") == Rel::PP);
  CHECK(evaluate(r.model, "x", "z") == Rel::PP);
  CHECK(model_satisfies(chain, r.model));

  // the same triple constraint contradicted on one edge
  chain.constraints.push_back({"", {0, 2}, rel_bit(Rel::DR), {}});
  CHECK(!solve(chain).sat);
}

TEST_CASE("solve edge cases: no variables, one variable, explicit identification") {
  Instance empty;
  CHECK(solve(empty).sat);

  Instance one;
  one.variables = {"x"};
  SolveResult r = solve(one);
  REQUIRE(r.sat);
  CHECK(r.model.at("x") == TokenSet{0});

  Instance eq;
  eq.variables = {"x", "y"};
  eq.constraints.push_back({"", {0, 1}, rel_bit(Rel::EQ), {}});
  SolveResult s = solve(eq);
  REQUIRE(s.sat);
  CHECK(s.model.at("x") == s.model.at("y"));
  CHECK(model_satisfies(eq, s.model));
}

TEST_CASE("pc_decide refutes chain contradictions and same-pair clashes") {
  Instance chain;
  chain.variables = {"x", "y", "z"};
  chain.constraints.push_back({"", {0, 1}, rel_bit(Rel::PP), {}});
  chain.constraints.push_back({"", {1, 2}, rel_bit(Rel::PP), {}});
  chain.constraints.push_back({"", {0, 2}, rel_bit(Rel::DR), {}});
  CHECK(pc_decide(chain) == PcVerdict::REFUTED);

  Instance clash;
  clash.variables = {"x", "y"};
  clash.constraints.push_back({"", {0, 1}, rel_bit(Rel::PP), {}});
  clash.constraints.push_back({"", {0, 1}, rel_bit(Rel::PPI), {}});
  CHECK(pc_decide(clash) == PcVerdict::REFUTED);

  Instance sat = atomic_instance(Rel::PP, Rel::PP, Rel::PP);
  CHECK(pc_decide(sat) == PcVerdict::UNDECIDED);

  Instance loose;
  loose.variables = {"x", "y", "z"};
  CHECK(pc_decide(loose) == PcVerdict::UNDECIDED);

  Instance self;
  self.variables = {"x"};
  CHECK(pc_decide(self) == PcVerdict::UNDECIDED);
  self.constraints.push_back({"", {0, 0}, rel_bit(Rel::DR), {}});
  CHECK(pc_decide(self) == PcVerdict::REFUTED);
}

TEST_CASE("pc_decide is sound everywhere and complete on atomic-label corpora") {
  Rng seeds(555);
  int refuted = 0, unsat = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + int(seeds.next() % 4);
    Instance inst = random_instance(seeds.next(), n, 0.6, true);
    PcVerdict v = pc_decide(inst);
    bool sat = solve(inst).sat;
    INFO("trial ", trial, " vars ", n);
    if (v == PcVerdict::REFUTED) {
      ++refuted;
      CHECK(!sat);
    }
    if (!sat) {
      ++unsat;
      CHECK(v == PcVerdict::REFUTED);
    }
  }
  CHECK(refuted == unsat);
  CHECK(unsat > 10);  // the corpus must actually exercise refutation
}

TEST_CASE("pc_decide soundness on union-labeled corpora") {
  Rng seeds(556);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 4 + int(seeds.next() % 3);
    Instance inst = random_instance(seeds.next(), n, 0.8, false);
    if (pc_decide(inst) == PcVerdict::REFUTED) {
      INFO("trial ", trial);
      CHECK(!solve(inst).sat);
    }
  }
}

TEST_CASE("independent_copies doubles tokens to even and odd lanes") {
  SetModel m;
  m.variables = {"b"};
  m.sets = {{1, 3}};
  auto [c1, c2] = independent_copies(m);
  CHECK(c1.at("b") == TokenSet{2, 6});
  CHECK(c2.at("b") == TokenSet{3, 7});
}

TEST_CASE("independent_copies: cross pairs are disjoint, each copy mirrors the original") {
  AtomicNetwork a = AtomicNetwork::make({"x", "y", "z"});
  a.set(0, 1, Rel::PP);
  a.set(0, 2, Rel::PP);
  a.set(1, 2, Rel::PO);
  SetModel m = build_model(a);
  auto [c1, c2] = independent_copies(m);
  for (size_t i = 0; i < m.sets.size(); ++i)
    for (size_t j = 0; j < m.sets.size(); ++j) {
      CHECK(evaluate(c1.sets[i], c2.sets[j]) == Rel::DR);
      if (i != j) {
        CHECK(evaluate(c1.sets[i], c1.sets[j]) == evaluate(m.sets[i], m.sets[j]));
        CHECK(evaluate(c2.sets[i], c2.sets[j]) == evaluate(m.sets[i], m.sets[j]));
      }
    }
}

TEST_CASE("model_satisfies checks binary and ternary constraints extensionally") {
  SetModel m;
  m.variables = {"x", "y", "z"};
  m.sets = {{1}, {1, 2}, {1, 2, 3}};

  Instance inst;
  inst.variables = m.variables;
  inst.constraints.push_back({"", {0, 1}, rel_bit(Rel::PP), {}});
  CHECK(model_satisfies(inst, m));
  inst.constraints.push_back({"", {0, 1}, rel_bit(Rel::DR), {}});
  CHECK(!model_satisfies(inst, m));
  inst.constraints.pop_back();

  Constraint t;
  t.args = {0, 1, 2};
  t.triangles = {{Rel::PP, Rel::PP, Rel::PP}};
  inst.constraints.push_back(t);
  CHECK(model_satisfies(inst, m));
  inst.constraints.back().triangles = {{Rel::PP, Rel::PP, Rel::DR}};
  CHECK(!model_satisfies(inst, m));
}
