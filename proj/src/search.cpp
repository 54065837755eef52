#include "rcc5/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <deque>
#include <functional>
#include <stdexcept>

namespace rcc5 {

namespace {

constexpr uint8_t kAllMask = 0x7f;

uint8_t orbit_lift_mask(RelSet rels) {
  uint8_t m = 0;
  for (int o = 0; o < kNumOrbit; ++o)
    if (rels.contains(unordered(Orbit(o)))) m |= uint8_t(1u << o);
  return m;
}

uint8_t converse_mask(uint8_t m) {
  uint8_t out = 0;
  for (int o = 0; o < kNumOrbit; ++o)
    if (m & (1u << o)) out |= uint8_t(1u << int(converse(Orbit(o))));
  return out;
}

uint8_t unordered_mask(uint8_t m) {  // 5-bit relation mask
  uint8_t out = 0;
  for (int o = 0; o < kNumOrbit; ++o)
    if (m & (1u << o)) out |= uint8_t(1u << int(unordered(Orbit(o))));
  return out;
}

uint8_t class_lift_mask(uint8_t cls) {  // 5-bit relation mask to 7-bit orbit mask
  uint8_t out = 0;
  for (int o = 0; o < kNumOrbit; ++o)
    if (cls & (1u << int(unordered(Orbit(o))))) out |= uint8_t(1u << o);
  return out;
}

struct TriangleTables {
  std::vector<OrbitTriangle> list;     // the consistent ordered triangles
  int tri_id[7][7][7];                 // -1 when inconsistent
  // relation-lift membership: bit r set iff the triangle's unordered
  // reduct is listed for ternary relation r
  std::vector<uint8_t> rel_mem;
};

TriangleTables build_triangle_tables(const ExpansionSpec& e) {
  TriangleTables t;
  t.list = consistent_orbit_triangles();
  for (auto& row : t.tri_id)
    for (auto& col : row) std::fill(std::begin(col), std::end(col), -1);
  for (size_t i = 0; i < t.list.size(); ++i) {
    const OrbitTriangle& tr = t.list[i];
    t.tri_id[int(tr.o12)][int(tr.o23)][int(tr.o13)] = int(i);
  }
  std::vector<const RelationSpec*> ternary;
  for (const RelationSpec& r : e.relations)
    if (r.arity == 3) ternary.push_back(&r);
  if (ternary.size() > 8) throw std::invalid_argument("too many ternary relations");
  t.rel_mem.assign(t.list.size(), 0);
  for (size_t i = 0; i < t.list.size(); ++i) {
    RelTriangle u{unordered(t.list[i].o12), unordered(t.list[i].o23),
                  unordered(t.list[i].o13)};
    for (size_t r = 0; r < ternary.size(); ++r)
      for (const RelTriangle& allowed : ternary[r]->triangles)
        if (allowed == u) {
          t.rel_mem[i] |= uint8_t(1u << r);
          break;
        }
  }
  return t;
}

// binary lifts: implicit basics first, then the declared binary relations
std::vector<uint8_t> binary_lift_masks(const ExpansionSpec& e) {
  std::vector<uint8_t> lifts;
  for (int r = 0; r < kNumRel; ++r) lifts.push_back(orbit_lift_mask(rel_bit(Rel(r))));
  for (const RelationSpec& r : e.relations)
    if (r.arity == 2) lifts.push_back(orbit_lift_mask(r.orbits));
  return lifts;
}

// ---- engine ----------------------------------------------------------

struct Group {  // per distinct allowed triple set: directional or-tables
  uint8_t row[7][128];  // row[u][vmask] = allowed w's
  uint8_t col[7][128];  // col[v][umask] = allowed w's
};

struct Engine {
  int k = 2;
  int ncells = 49;
  std::vector<uint8_t> init_dom;
  std::vector<uint16_t> conv_cell;
  std::vector<int> cell_group;  // class-group id or -1
  std::vector<std::vector<uint16_t>> groups;
  uint8_t init_cls = 0x1f;

  struct Inst {
    uint16_t a, b, c;
    uint8_t g;
  };
  std::vector<Inst> insts;
  std::vector<uint32_t> adj;
  std::vector<uint32_t> adj_off;
  std::vector<Group> gtables;

  std::vector<uint32_t> stamp;
  uint32_t epoch = 0;

  struct State {
    std::vector<uint8_t> dom;
    std::vector<uint8_t> cls;  // per class-group 5-bit mask
  };

  bool set_dom(State& st, int cell, uint8_t nd, std::deque<uint32_t>& work);
  bool propagate(State& st, std::deque<uint32_t>& work);
  std::optional<std::vector<uint8_t>> solve(
      const std::function<bool(const std::vector<uint8_t>&)>& accept);
};

bool Engine::set_dom(State& st, int cell, uint8_t nd, std::deque<uint32_t>& work) {
  nd &= st.dom[cell];
  if (nd == st.dom[cell]) return true;
  if (nd == 0) return false;
  st.dom[cell] = nd;
  for (uint32_t i = adj_off[cell]; i < adj_off[cell + 1]; ++i) {
    uint32_t inst = adj[i];
    if (stamp[inst] != epoch) {
      stamp[inst] = epoch;
      work.push_back(inst);
    }
  }
  int conv = conv_cell[cell];
  if (conv != cell && !set_dom(st, conv, converse_mask(nd), work)) return false;
  int g = cell_group[cell];
  if (g >= 0) {
    uint8_t nc = st.cls[g] & unordered_mask(nd);
    if (nc != st.cls[g]) {
      if (nc == 0) return false;
      st.cls[g] = nc;
      uint8_t lift = class_lift_mask(nc);
      for (uint16_t member : groups[g])
        if (!set_dom(st, member, lift, work)) return false;
    }
  }
  return true;
}

bool Engine::propagate(State& st, std::deque<uint32_t>& work) {
  while (!work.empty()) {
    uint32_t ii = work.front();
    work.pop_front();
    stamp[ii] = 0;
    const Inst& in = insts[ii];
    const Group& g = gtables[in.g];
    uint8_t da = st.dom[in.a], db = st.dom[in.b], dc = st.dom[in.c];
    uint8_t wa = 0, na = 0, nb = 0;
    for (int u = 0; u < kNumOrbit; ++u) {
      if (!(da & (1u << u))) continue;
      uint8_t w = g.row[u][db];
      wa |= w;
      if (w & dc) na |= uint8_t(1u << u);
    }
    for (int v = 0; v < kNumOrbit; ++v) {
      if (!(db & (1u << v))) continue;
      if (g.col[v][da] & dc) nb |= uint8_t(1u << v);
    }
    if (!set_dom(st, in.c, wa, work)) return false;
    if (!set_dom(st, in.a, na, work)) return false;
    if (!set_dom(st, in.b, nb, work)) return false;
  }
  return true;
}

std::optional<std::vector<uint8_t>> Engine::solve(
    const std::function<bool(const std::vector<uint8_t>&)>& accept) {
  State root{init_dom, std::vector<uint8_t>(groups.size(), init_cls)};
  {
    std::deque<uint32_t> work;
    ++epoch;
    // converse coherence and class-group masks over the seeded domains
    for (int c = 0; c < ncells; ++c)
      if (!set_dom(root, c, converse_mask(root.dom[conv_cell[c]]), work))
        return std::nullopt;
    for (size_t g = 0; g < groups.size(); ++g) {
      for (uint16_t m : groups[g]) root.cls[g] &= unordered_mask(root.dom[m]);
      if (root.cls[g] == 0) return std::nullopt;
      uint8_t lift = class_lift_mask(root.cls[g]);
      for (uint16_t m : groups[g])
        if (!set_dom(root, m, lift, work)) return std::nullopt;
    }
    for (uint32_t i = 0; i < insts.size(); ++i)
      if (stamp[i] != epoch) {
        stamp[i] = epoch;
        work.push_back(i);
      }
    if (!propagate(root, work)) return std::nullopt;
  }

  std::optional<std::vector<uint8_t>> found;
  auto dfs = [&](auto&& self, const State& st) -> bool {
    int pick = -1, best = 8;
    for (int c = 0; c < ncells; ++c) {
      int n = std::popcount(st.dom[c]);
      if (n > 1 && n < best) {
        best = n;
        pick = c;
      }
    }
    if (pick < 0) {
      if (!accept(st.dom)) return false;
      found = st.dom;
      return true;
    }
    for (int o = 0; o < kNumOrbit; ++o) {
      if (!(st.dom[pick] & (1u << o))) continue;
      State child = st;
      std::deque<uint32_t> work;
      ++epoch;
      if (!set_dom(child, pick, uint8_t(1u << o), work)) continue;
      if (!propagate(child, work)) continue;
      if (self(self, child)) return true;
    }
    return false;
  };
  dfs(dfs, root);
  return found;
}

// Builds the instance set over all k-tuples of consistent triangles.  The
// allowed triple set for a tuple is the consistent-triangle table cut to
// the lifts of every ternary relation containing the whole tuple.
Engine build_engine(const ExpansionSpec& e, int k, const TriangleTables& tt) {
  Engine eng;
  eng.k = k;
  eng.ncells = Behaviour::table_size(k);
  eng.init_dom.assign(size_t(eng.ncells), kAllMask);
  eng.cell_group.assign(size_t(eng.ncells), -1);

  // converse pairing
  eng.conv_cell.resize(size_t(eng.ncells));
  for (int c = 0; c < eng.ncells; ++c) {
    int rest = c, conv = 0, digits[4];
    for (int p = k - 1; p >= 0; --p) {
      digits[p] = rest % kNumOrbit;
      rest /= kNumOrbit;
    }
    for (int p = 0; p < k; ++p) conv = conv * kNumOrbit + int(converse(Orbit(digits[p])));
    eng.conv_cell[c] = uint16_t(conv);
  }

  // EQ diagonal
  int diag = 0;
  for (int p = 0; p < k; ++p) diag = diag * kNumOrbit + int(Orbit::EQ);
  eng.init_dom[diag] = uint8_t(1u << int(Orbit::EQ));

  // binary lifts (including implicit basics): cells inside a lift stay in it
  for (uint8_t lift : binary_lift_masks(e)) {
    for (int c = 0; c < eng.ncells; ++c) {
      int rest = c;
      bool inside = true;
      for (int p = 0; p < k; ++p) {
        if (!(lift & (1u << (rest % kNumOrbit)))) inside = false;
        rest /= kNumOrbit;
      }
      if (inside) eng.init_dom[c] &= lift;
    }
  }

  // group tables per subset of ternary relations
  int nrel3 = 0;
  for (const RelationSpec& r : e.relations)
    if (r.arity == 3) ++nrel3;
  int ngroups = 1 << nrel3;
  eng.gtables.resize(size_t(ngroups));
  for (int gs = 0; gs < ngroups; ++gs) {
    bool allowed[7][7][7] = {};
    for (size_t i = 0; i < tt.list.size(); ++i)
      if ((tt.rel_mem[i] & gs) == gs)
        allowed[int(tt.list[i].o12)][int(tt.list[i].o23)][int(tt.list[i].o13)] = true;
    Group& g = eng.gtables[gs];
    for (int u = 0; u < kNumOrbit; ++u)
      for (int vm = 0; vm < 128; ++vm) {
        uint8_t w = 0;
        for (int v = 0; v < kNumOrbit; ++v)
          if (vm & (1 << v))
            for (int c = 0; c < kNumOrbit; ++c)
              if (allowed[u][v][c]) w |= uint8_t(1u << c);
        g.row[u][vm] = w;
      }
    for (int v = 0; v < kNumOrbit; ++v)
      for (int um = 0; um < 128; ++um) {
        uint8_t w = 0;
        for (int u = 0; u < kNumOrbit; ++u)
          if (um & (1 << u))
            for (int c = 0; c < kNumOrbit; ++c)
              if (allowed[u][v][c]) w |= uint8_t(1u << c);
        g.col[v][um] = w;
      }
  }

  // instances over tuple space
  int nt = int(tt.list.size());
  size_t total = 1;
  for (int p = 0; p < k; ++p) total *= size_t(nt);
  eng.insts.reserve(total);
  std::vector<int> idx(size_t(k), 0);
  while (true) {
    int a = 0, b = 0, c = 0;
    uint8_t mem = uint8_t(ngroups - 1);
    for (int p = 0; p < k; ++p) {
      const OrbitTriangle& tr = tt.list[size_t(idx[size_t(p)])];
      a = a * kNumOrbit + int(tr.o12);
      b = b * kNumOrbit + int(tr.o23);
      c = c * kNumOrbit + int(tr.o13);
      mem &= tt.rel_mem[size_t(idx[size_t(p)])];
    }
    eng.insts.push_back({uint16_t(a), uint16_t(b), uint16_t(c), mem});
    int p = k - 1;
    while (p >= 0 && ++idx[size_t(p)] == nt) idx[size_t(p--)] = 0;
    if (p < 0) break;
  }

  // adjacency
  eng.adj_off.assign(size_t(eng.ncells) + 1, 0);
  for (const Engine::Inst& in : eng.insts) {
    ++eng.adj_off[in.a + 1];
    ++eng.adj_off[in.b + 1];
    ++eng.adj_off[in.c + 1];
  }
  for (int c = 0; c < eng.ncells; ++c) eng.adj_off[c + 1] += eng.adj_off[c];
  eng.adj.resize(eng.adj_off.back());
  std::vector<uint32_t> cursor(eng.adj_off.begin(), eng.adj_off.end() - 1);
  for (uint32_t i = 0; i < eng.insts.size(); ++i) {
    const Engine::Inst& in = eng.insts[i];
    eng.adj[cursor[in.a]++] = i;
    eng.adj[cursor[in.b]++] = i;
    eng.adj[cursor[in.c]++] = i;
  }
  eng.stamp.assign(eng.insts.size(), 0);
  return eng;
}

Behaviour to_behaviour(int k, const std::vector<uint8_t>& dom) {
  Behaviour b;
  b.arity = k;
  b.table.resize(dom.size());
  for (size_t c = 0; c < dom.size(); ++c) b.table[c] = Orbit(std::countr_zero(dom[c]));
  return b;
}

}  // namespace

bool is_realizable(const Behaviour& b, const ExpansionSpec& e) {
  if (b.arity < 2 || b.arity > 4) return false;
  if (!behaviour_well_formed(b)) return false;
  const int k = b.arity;

  for (uint8_t lift : binary_lift_masks(e)) {
    for (int c = 0; c < int(b.table.size()); ++c) {
      int rest = c;
      bool inside = true;
      for (int p = 0; p < k; ++p) {
        if (!(lift & (1u << (rest % kNumOrbit)))) inside = false;
        rest /= kNumOrbit;
      }
      if (inside && !(lift & (1u << int(b.table[c])))) return false;
    }
  }

  TriangleTables tt = build_triangle_tables(e);
  int nt = int(tt.list.size());
  std::vector<int> pa(tt.list.size()), pb(tt.list.size()), pc(tt.list.size());
  for (int i = 0; i < nt; ++i) {
    pa[size_t(i)] = int(tt.list[size_t(i)].o12);
    pb[size_t(i)] = int(tt.list[size_t(i)].o23);
    pc[size_t(i)] = int(tt.list[size_t(i)].o13);
  }

  std::vector<int> idx(size_t(k), 0);
  while (true) {
    int a = 0, bb = 0, c = 0;
    uint8_t mem = 0xff;
    for (int p = 0; p < k; ++p) {
      int t = idx[size_t(p)];
      a = a * kNumOrbit + pa[size_t(t)];
      bb = bb * kNumOrbit + pb[size_t(t)];
      c = c * kNumOrbit + pc[size_t(t)];
      mem &= tt.rel_mem[size_t(t)];
    }
    int img = tt.tri_id[int(b.table[size_t(a)])][int(b.table[size_t(bb)])]
                       [int(b.table[size_t(c)])];
    if (img < 0) return false;
    if ((mem & ~tt.rel_mem[size_t(img)]) != 0) return false;
    int p = k - 1;
    while (p >= 0 && ++idx[size_t(p)] == nt) idx[size_t(p--)] = 0;
    if (p < 0) break;
  }
  return true;
}

namespace {

std::optional<Behaviour> run_search(
    const ExpansionSpec& e, int k,
    const std::function<void(Engine&)>& seed,
    const std::function<bool(const Behaviour&)>& target) {
  TriangleTables tt = build_triangle_tables(e);
  Engine eng = build_engine(e, k, tt);
  seed(eng);
  auto accept = [&](const std::vector<uint8_t>& dom) {
    Behaviour b = to_behaviour(k, dom);
    return target(b) && is_realizable(b, e);
  };
  auto dom = eng.solve(accept);
  if (!dom) return std::nullopt;
  return to_behaviour(k, *dom);
}

int cell2(Orbit a, Orbit b) { return int(a) * kNumOrbit + int(b); }
int cell3(Orbit a, Orbit b, Orbit c) {
  return (int(a) * kNumOrbit + int(b)) * kNumOrbit + int(c);
}

constexpr uint8_t bito(Orbit o) { return uint8_t(1u << int(o)); }

}  // namespace

std::optional<Behaviour> find_wedge_behaviour(const ExpansionSpec& e) {
  const uint8_t zero = bito(Orbit::DR_LT) | bito(Orbit::PO_LT);
  auto seed = [&](Engine& eng) {
    const Orbit pre[3] = {Orbit::PP, Orbit::DR_LT, Orbit::PO_LT};
    for (Orbit a : pre)
      for (Orbit b : pre) {
        bool both_pp = a == Orbit::PP && b == Orbit::PP;
        eng.init_dom[cell2(a, b)] &= both_pp ? bito(Orbit::PP) : zero;
      }
  };
  auto target = [](const Behaviour& b) {
    auto et = eta(b);
    return et && et->is_and();
  };
  return run_search(e, 2, seed, target);
}

std::optional<Behaviour> find_cyclic_rho(const ExpansionSpec& e) {
  const uint8_t base = bito(Orbit::DR_LT) | bito(Orbit::PO_LT);
  auto seed = [&](Engine& eng) {
    const Orbit two[2] = {Orbit::DR_LT, Orbit::PO_LT};
    for (Orbit a : two)
      for (Orbit b : two)
        for (Orbit c : two) eng.init_dom[cell3(a, b, c)] &= base;
    auto add_cycle = [&](Orbit a, Orbit b, Orbit c) {
      int g = int(eng.groups.size());
      eng.groups.push_back({uint16_t(cell3(a, b, c)), uint16_t(cell3(b, c, a)),
                            uint16_t(cell3(c, a, b))});
      for (uint16_t m : eng.groups.back()) eng.cell_group[m] = g;
    };
    add_cycle(Orbit::DR_LT, Orbit::DR_LT, Orbit::PO_LT);
    add_cycle(Orbit::PO_LT, Orbit::PO_LT, Orbit::DR_LT);
  };
  auto target = [](const Behaviour& b) { return rho(b).is_cyclic(); };
  return run_search(e, 3, seed, target);
}

namespace {

// direct search for a ternary behaviour with a well-defined unordered
// projection satisfying the one-off-diagonal equalities
std::optional<Behaviour> find_wnu3_direct(const ExpansionSpec& e) {
  auto seed = [&](Engine& eng) {
    // one class group per unordered input triple, one-off-diagonal triples
    // merged per unordered pair
    std::vector<int> gid(125, -1);
    auto uid = [](Rel a, Rel b, Rel c) {
      return (int(a) * kNumRel + int(b)) * kNumRel + int(c);
    };
    for (int a = 0; a < kNumRel; ++a)
      for (int b = 0; b < kNumRel; ++b) {
        if (a == b) continue;
        int g = int(eng.groups.size());
        eng.groups.push_back({});
        gid[uid(Rel(b), Rel(a), Rel(a))] = g;
        gid[uid(Rel(a), Rel(b), Rel(a))] = g;
        gid[uid(Rel(a), Rel(a), Rel(b))] = g;
      }
    for (int u = 0; u < 125; ++u)
      if (gid[u] < 0) {
        gid[u] = int(eng.groups.size());
        eng.groups.push_back({});
      }
    for (int c = 0; c < eng.ncells; ++c) {
      int rest = c, d[3];
      for (int p = 2; p >= 0; --p) {
        d[p] = rest % kNumOrbit;
        rest /= kNumOrbit;
      }
      int u = uid(unordered(Orbit(d[0])), unordered(Orbit(d[1])), unordered(Orbit(d[2])));
      eng.cell_group[c] = gid[u];
      eng.groups[gid[u]].push_back(uint16_t(c));
    }
  };
  auto target = [](const Behaviour& b) {
    auto w = unordered_projection(b);
    return w && is_wnu(*w);
  };
  return run_search(e, 3, seed, target);
}

// binary behaviour whose unordered projection is well-defined and symmetric
std::optional<Behaviour> find_symmetric_binary(const ExpansionSpec& e) {
  auto seed = [&](Engine& eng) {
    std::vector<int> gid(25, -1);
    for (int a = 0; a < kNumRel; ++a)
      for (int b = 0; b < kNumRel; ++b) {
        int u = a * kNumRel + b, v = b * kNumRel + a;
        if (gid[v] >= 0) gid[u] = gid[v];
        else {
          gid[u] = int(eng.groups.size());
          eng.groups.push_back({});
        }
      }
    for (int c = 0; c < eng.ncells; ++c) {
      int a = c / kNumOrbit, b = c % kNumOrbit;
      int u = int(unordered(Orbit(a))) * kNumRel + int(unordered(Orbit(b)));
      eng.cell_group[c] = gid[u];
      eng.groups[gid[u]].push_back(uint16_t(c));
    }
  };
  auto target = [](const Behaviour& b) {
    auto w = unordered_projection(b);
    if (!w) return false;
    for (int a = 0; a < kNumRel; ++a)
      for (int c = 0; c < kNumRel; ++c)
        if (w->at({Rel(a), Rel(c)}) != w->at({Rel(c), Rel(a)})) return false;
    return true;
  };
  return run_search(e, 2, seed, target);
}

}  // namespace

std::optional<Behaviour> find_wnu_behaviour(const ExpansionSpec& e, int arity) {
  if (arity != 3 && arity != 4)
    throw std::invalid_argument("find_wnu_behaviour: arity must be 3 or 4");
  if (arity == 3) {
    auto g = find_wedge_behaviour(e);
    auto f = g ? find_cyclic_rho(e) : std::nullopt;
    if (g && f) {
      Behaviour h = build_h_cyclic(*g, *f);
      auto w = unordered_projection(h);
      if (w && is_wnu(*w) && is_realizable(h, e)) return h;
    }
    return find_wnu3_direct(e);
  }
  auto s = find_symmetric_binary(e);
  if (!s) return std::nullopt;
  auto p = [](int i) { return Behaviour::projection(4, i); };
  Behaviour left = compose_behaviours(*s, {p(0), p(1)});
  Behaviour right = compose_behaviours(*s, {p(2), p(3)});
  Behaviour w4 = compose_behaviours(*s, {left, right});
  auto w = unordered_projection(w4);
  if (!w || !is_wnu(*w) || !is_realizable(w4, e)) return std::nullopt;
  return w4;
}

ClassifyReport classify(const ExpansionSpec& e) {
  ClassifyReport r;
  r.wedge = find_wedge_behaviour(e);
  r.cyclic_rho = find_cyclic_rho(e);
  r.tractable = r.wedge.has_value() && r.cyclic_rho.has_value();
  if (r.tractable) {
    r.wnu3 = find_wnu_behaviour(e, 3);
    r.wnu_alarm = !r.wnu3.has_value();
  }
  return r;
}

}  // namespace rcc5
