#include "rcc5/network.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "rcc5/errors.hpp"

namespace rcc5 {

int Instance::var_index(const std::string& name) const {
  for (size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return int(i);
  return -1;
}

int SetModel::var_index(const std::string& name) const {
  for (size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return int(i);
  return -1;
}

const TokenSet& SetModel::at(const std::string& name) const {
  int i = var_index(name);
  if (i < 0) throw std::invalid_argument("unassigned variable: " + name);
  return sets[i];
}

void AtomicNetwork::set(int i, int j, Rel r) {
  label[size_t(i) * vars.size() + j] = r;
  label[size_t(j) * vars.size() + i] = converse(r);
}

AtomicNetwork AtomicNetwork::make(std::vector<std::string> names) {
  AtomicNetwork a;
  a.vars = std::move(names);
  a.label.assign(a.vars.size() * a.vars.size(), Rel::EQ);
  return a;
}

Rel evaluate(const TokenSet& x, const TokenSet& y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("evaluate: empty set");
  if (x == y) return Rel::EQ;
  bool x_in_y = std::includes(y.begin(), y.end(), x.begin(), x.end());
  bool y_in_x = std::includes(x.begin(), x.end(), y.begin(), y.end());
  if (x_in_y) return Rel::PP;
  if (y_in_x) return Rel::PPI;
  // disjointness via merge walk
  size_t i = 0, j = 0;
  bool meet = false;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) { meet = true; break; }
    if (x[i] < y[j]) ++i; else ++j;
  }
  return meet ? Rel::PO : Rel::DR;
}

Rel evaluate(const SetModel& m, const std::string& x, const std::string& y) {
  return evaluate(m.at(x), m.at(y));
}

void PairMatrix::set(int i, int j, RelSet s) {
  cell[size_t(i) * n + j] = s;
  cell[size_t(j) * n + i] = converse(s);
}

PairMatrix PairMatrix::full(int n_) {
  PairMatrix m;
  m.n = n_;
  m.cell.assign(size_t(n_) * n_, kAllRels);
  for (int i = 0; i < n_; ++i) m.cell[size_t(i) * n_ + i] = rel_bit(Rel::EQ);
  return m;
}

std::optional<PairMatrix> path_consistency(const PairMatrix& input) {
  PairMatrix m = input;
  // enforce converse coherence up front
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) m.set(i, j, m.at(i, j) & converse(m.at(j, i)));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m.at(i, j).empty()) return std::nullopt;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j)
        for (int k = 0; k < m.n; ++k) {
          RelSet refined = m.at(i, j) & compose(m.at(i, k), m.at(k, j));
          if (!(refined == m.at(i, j))) {
            m.set(i, j, refined);
            changed = true;
          }
          if (refined.empty()) return std::nullopt;
        }
  }
  return m;
}

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace

std::optional<CollapsedNetwork> eq_collapse(const AtomicNetwork& a) {
  int n = a.n();
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a.at(i, j) == Rel::EQ) uf.unite(i, j);
  // classes in order of smallest member
  std::vector<int> cls(n, -1), reps;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (cls[r] < 0) {
      cls[r] = int(reps.size());
      reps.push_back(i);
    }
    cls[i] = cls[r];
  }
  int m = int(reps.size());
  std::vector<Rel> rep_label(size_t(m) * m, Rel::EQ);
  std::vector<bool> seen(size_t(m) * m, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int ci = cls[i], cj = cls[j];
      Rel l = a.at(i, j);
      if (ci == cj) {
        if (l != Rel::EQ) return std::nullopt;  // identified vars disagree
        continue;
      }
      if (l == Rel::EQ) return std::nullopt;  // EQ not closed under the merge
      size_t idx = size_t(ci) * m + cj;
      if (seen[idx] && rep_label[idx] != l) return std::nullopt;
      seen[idx] = true;
      rep_label[idx] = l;
    }
  CollapsedNetwork out;
  std::vector<std::string> names;
  names.reserve(reps.size());
  for (int r : reps) names.push_back(a.vars[r]);
  out.net = AtomicNetwork::make(std::move(names));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) out.net.label[size_t(i) * m + j] = rep_label[size_t(i) * m + j];
  out.cls = std::move(cls);
  return out;
}

bool solve_atomic(const AtomicNetwork& a) {
  auto col = eq_collapse(a);
  if (!col) return false;
  const AtomicNetwork& c = col->net;
  int m = c.n();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        if (!triangle_consistent({c.at(i, j), c.at(j, k), c.at(i, k)})) return false;
  return true;
}

SetModel build_model(const AtomicNetwork& a) {
  int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a.at(i, j) == Rel::EQ)
        throw std::invalid_argument("build_model: network not EQ-collapsed");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (!triangle_consistent({a.at(i, j), a.at(j, k), a.at(i, k)}))
          throw std::invalid_argument("build_model: inconsistent triangle");

  // token numbering: t_i = name-sorted position of variable i, p_{ij} (i<j
  // name-sorted positions) numbered after all t tokens in lexicographic order
  std::vector<int> by_name(n);
  std::iota(by_name.begin(), by_name.end(), 0);
  std::sort(by_name.begin(), by_name.end(),
            [&](int x, int y) { return a.vars[x] < a.vars[y]; });
  std::vector<uint32_t> t_tok(n);
  for (int pos = 0; pos < n; ++pos) t_tok[by_name[pos]] = uint32_t(pos);

  std::vector<std::pair<int, int>> po_pairs;  // (sorted-pos i < sorted-pos j)
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (a.at(v, w) == Rel::PO)
        po_pairs.emplace_back(std::min(t_tok[v], t_tok[w]), std::max(t_tok[v], t_tok[w]));
  std::sort(po_pairs.begin(), po_pairs.end());
  auto p_tok = [&](int v, int w) {
    std::pair<int, int> key{std::min(t_tok[v], t_tok[w]), std::max(t_tok[v], t_tok[w])};
    auto it = std::lower_bound(po_pairs.begin(), po_pairs.end(), key);
    return uint32_t(n + (it - po_pairs.begin()));
  };

  SetModel m;
  m.variables = a.vars;
  m.sets.resize(n);
  auto below = [&](int v, int u) { return v == u || a.at(v, u) == Rel::PP; };
  for (int u = 0; u < n; ++u) {
    TokenSet s;
    for (int v = 0; v < n; ++v)
      if (below(v, u)) s.push_back(t_tok[v]);
    for (int v = 0; v < n; ++v)
      for (int w = v + 1; w < n; ++w)
        if (a.at(v, w) == Rel::PO && (below(v, u) || below(w, u)))
          s.push_back(p_tok(v, w));
    std::sort(s.begin(), s.end());
    m.sets[u] = std::move(s);
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && evaluate(m.sets[i], m.sets[j]) != a.at(i, j))
        throw VerificationError("build_model: token model failed evaluate check");
  return m;
}

namespace {

// bitset over label triples a*25 + b*5 + c
using TripleMask = std::array<uint64_t, 2>;

constexpr int triple_bit(Rel a, Rel b, Rel c) {
  return int(a) * 25 + int(b) * 5 + int(c);
}
inline void mask_set(TripleMask& m, int bit) { m[bit >> 6] |= uint64_t(1) << (bit & 63); }
inline bool mask_get(const TripleMask& m, int bit) {
  return (m[bit >> 6] >> (bit & 63)) & 1u;
}
inline bool mask_empty(const TripleMask& m) { return m[0] == 0 && m[1] == 0; }
inline TripleMask mask_and(const TripleMask& a, const TripleMask& b) {
  return {a[0] & b[0], a[1] & b[1]};
}

TripleMask base_triangle_mask() {
  static const TripleMask mask = [] {
    TripleMask m{};
    for (int a = 0; a < kNumRel; ++a)
      for (int b = 0; b < kNumRel; ++b)
        for (int c = 0; c < kNumRel; ++c)
          if (triangle_consistent({Rel(a), Rel(b), Rel(c)}))
            mask_set(m, triple_bit(Rel(a), Rel(b), Rel(c)));
    return m;
  }();
  return mask;
}

// Labels a ternary constraint's listed triangle imposes on its argument
// slots; nullopt if the triangle cannot match the (possibly repeating)
// argument pattern.
struct SlotLabels {
  // label for each unordered slot pair as rel(args[lo], args[hi])
  Rel l01, l12, l02;
};

}  // namespace

int TypeCsp::pair_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // pairs are enumerated lexicographically: index = offset(i) + (j - i - 1)
  // offset(i) = sum_{t<i} (n-1-t)
  int off = i * (2 * n - i - 1) / 2;
  return off + (j - i - 1);
}

TypeCsp reduce_to_type_csp(const Instance& inst) {
  TypeCsp csp;
  int n = int(inst.variables.size());
  csp.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      csp.pairs.emplace_back(i, j);
      csp.domain.push_back(kAllRels);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        TypeCsp::Triple t;
        t.i = i; t.j = j; t.k = k;
        t.pij = csp.pair_index(i, j);
        t.pjk = csp.pair_index(j, k);
        t.pik = csp.pair_index(i, k);
        t.allowed = base_triangle_mask();
        csp.triples.push_back(t);
      }

  auto restrict_pair = [&](int x, int y, RelSet allowed) {
    // allowed is for rel(x,y); store in sorted orientation
    if (x > y) { std::swap(x, y); allowed = converse(allowed); }
    int p = csp.pair_index(x, y);
    csp.domain[p] = csp.domain[p] & allowed;
  };

  for (const Constraint& c : inst.constraints) {
    if (c.arity() == 2) {
      int x = c.args[0], y = c.args[1];
      if (x == y) {
        if (!c.orbits.contains(Rel::EQ)) csp.trivially_unsat = true;
        continue;
      }
      restrict_pair(x, y, c.orbits);
      continue;
    }
    // ternary
    int x = c.args[0], y = c.args[1], z = c.args[2];
    if (x != y && y != z && x != z) {
      int vi[3] = {x, y, z};
      TripleMask mask{};
      for (const RelTriangle& tr : c.triangles) {
        // labels on arg slot pairs, oriented (lo slot, hi slot)
        Rel slot[3][3] = {};
        slot[0][1] = tr.o12; slot[1][2] = tr.o23; slot[0][2] = tr.o13;
        // map to the sorted variable triple
        int order[3] = {0, 1, 2};
        std::sort(order, order + 3, [&](int a, int b) { return vi[a] < vi[b]; });
        auto lab = [&](int sa, int sb) {  // rel(vi[sa], vi[sb]) for sa<sb slots
          if (sa < sb) return slot[sa][sb];
          return converse(slot[sb][sa]);
        };
        Rel a = lab(order[0], order[1]);
        Rel b = lab(order[1], order[2]);
        Rel cc = lab(order[0], order[2]);
        mask_set(mask, triple_bit(a, b, cc));
      }
      int s0 = std::min({x, y, z}), s2 = std::max({x, y, z});
      int s1 = x + y + z - s0 - s2;
      for (TypeCsp::Triple& t : csp.triples)
        if (t.i == s0 && t.j == s1 && t.k == s2) t.allowed = mask_and(t.allowed, mask);
      continue;
    }
    if (x == y && y == z) {
      bool ok = false;
      for (const RelTriangle& tr : c.triangles)
        if (tr.o12 == Rel::EQ && tr.o23 == Rel::EQ && tr.o13 == Rel::EQ) ok = true;
      if (!ok) csp.trivially_unsat = true;
      continue;
    }
    // exactly two distinct args: collapses to a binary restriction
    RelSet allowed{};  // allowed rel(u,w) for the distinct pair below
    for (const RelTriangle& tr : c.triangles) {
      Rel s01 = tr.o12, s12 = tr.o23, s02 = tr.o13;
      if (x == y) {  // (u,u,w)
        if (s01 == Rel::EQ && s12 == s02) allowed = allowed | rel_bit(s12);
      } else if (y == z) {  // (u,w,w)
        if (s12 == Rel::EQ && s01 == s02) allowed = allowed | rel_bit(s01);
      } else {  // x == z: (u,w,u)
        if (s02 == Rel::EQ && s12 == converse(s01)) allowed = allowed | rel_bit(s01);
      }
    }
    int u = (x == y || x == z) ? x : y;
    int w = (x == y) ? z : y;
    restrict_pair(u, w, allowed);
  }
  return csp;
}

namespace {

struct PropState {
  std::vector<RelSet> dom;
  std::vector<TripleMask> tmask;
};

// Generalized arc consistency between pair domains and triple tables.
// Returns false on wipeout.
bool propagate(const TypeCsp& csp, PropState& st,
               const std::vector<std::vector<int>>& pair_triples,
               std::deque<int> work) {
  std::vector<bool> queued(csp.triples.size(), false);
  for (int t : work) queued[t] = true;
  while (!work.empty()) {
    int ti = work.front();
    work.pop_front();
    queued[ti] = false;
    const TypeCsp::Triple& t = csp.triples[ti];
    TripleMask& m = st.tmask[ti];
    RelSet da = st.dom[t.pij], db = st.dom[t.pjk], dc = st.dom[t.pik];
    RelSet na{}, nb{}, nc{};
    TripleMask refined{};
    for (int a = 0; a < kNumRel; ++a) {
      if (!da.contains(Rel(a))) continue;
      for (int b = 0; b < kNumRel; ++b) {
        if (!db.contains(Rel(b))) continue;
        for (int c = 0; c < kNumRel; ++c) {
          if (!dc.contains(Rel(c))) continue;
          int bit = triple_bit(Rel(a), Rel(b), Rel(c));
          if (!mask_get(m, bit)) continue;
          mask_set(refined, bit);
          na = na | rel_bit(Rel(a));
          nb = nb | rel_bit(Rel(b));
          nc = nc | rel_bit(Rel(c));
        }
      }
    }
    m = refined;
    if (mask_empty(m)) return false;
    int touched[3] = {t.pij, t.pjk, t.pik};
    RelSet nd[3] = {na, nb, nc};
    for (int s = 0; s < 3; ++s) {
      if (nd[s] == st.dom[touched[s]]) continue;
      st.dom[touched[s]] = nd[s];
      if (nd[s].empty()) return false;
      for (int other : pair_triples[touched[s]])
        if (!queued[other]) {
          queued[other] = true;
          work.push_back(other);
        }
    }
  }
  return true;
}

std::vector<std::vector<int>> build_pair_triples(const TypeCsp& csp) {
  std::vector<std::vector<int>> out(csp.pairs.size());
  for (size_t ti = 0; ti < csp.triples.size(); ++ti) {
    const auto& t = csp.triples[ti];
    out[t.pij].push_back(int(ti));
    out[t.pjk].push_back(int(ti));
    out[t.pik].push_back(int(ti));
  }
  return out;
}

bool model_matches_labels(const SetModel& m, const AtomicNetwork& a) {
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (i != j && evaluate(m.sets[i], m.sets[j]) != a.at(i, j)) return false;
  return true;
}

}  // namespace

SolveResult solve(const Instance& inst) {
  TypeCsp csp = reduce_to_type_csp(inst);
  SolveResult res;
  if (csp.trivially_unsat) return res;

  int n = csp.n;
  auto finish = [&](const std::vector<RelSet>& dom) -> SetModel {
    AtomicNetwork a = AtomicNetwork::make(inst.variables);
    for (size_t p = 0; p < csp.pairs.size(); ++p) {
      Rel r = Rel::EQ;
      for (int v = 0; v < kNumRel; ++v)
        if (dom[p].contains(Rel(v))) { r = Rel(v); break; }
      a.set(csp.pairs[p].first, csp.pairs[p].second, r);
    }
    if (!solve_atomic(a))
      throw VerificationError("solve: search produced an inconsistent labeling");
    auto col = eq_collapse(a);
    SetModel core = build_model(col->net);
    SetModel full;
    full.variables = inst.variables;
    full.sets.resize(n);
    for (int i = 0; i < n; ++i) full.sets[i] = core.sets[col->cls[i]];
    if (n > 0 && !model_matches_labels(full, a))
      throw VerificationError("solve: model does not match the atomic labeling");
    return full;
  };

  if (n == 0) {
    res.sat = true;
    return res;
  }

  PropState root;
  root.dom = csp.domain;
  for (const auto& t : csp.triples) root.tmask.push_back(t.allowed);
  for (const RelSet& d : root.dom)
    if (d.empty()) return res;
  auto pair_triples = build_pair_triples(csp);
  std::deque<int> all(csp.triples.size());
  std::iota(all.begin(), all.end(), 0);
  if (!propagate(csp, root, pair_triples, all)) return res;

  // iterative DFS, smallest-domain-first, values in tag order
  std::vector<PropState> stack{std::move(root)};
  while (!stack.empty()) {
    PropState st = std::move(stack.back());
    stack.pop_back();
    int pick = -1, best = 6;
    for (size_t p = 0; p < st.dom.size(); ++p) {
      int c = st.dom[p].count();
      if (c > 1 && c < best) {
        best = c;
        pick = int(p);
      }
    }
    if (pick < 0) {
      res.sat = true;
      res.model = finish(st.dom);
      if (!model_satisfies(inst, res.model))
        throw VerificationError("solve: model fails an instance constraint");
      return res;
    }
    // push children in reverse tag order so the lowest tag is tried first
    for (int v = kNumRel - 1; v >= 0; --v) {
      if (!st.dom[pick].contains(Rel(v))) continue;
      PropState child = st;
      child.dom[pick] = rel_bit(Rel(v));
      if (propagate(csp, child, pair_triples,
                    std::deque<int>(pair_triples[pick].begin(), pair_triples[pick].end())))
        stack.push_back(std::move(child));
    }
  }
  return res;
}

PcVerdict pc_decide(const Instance& inst) {
  TypeCsp csp = reduce_to_type_csp(inst);
  if (csp.trivially_unsat) return PcVerdict::REFUTED;
  if (csp.n < 2) return PcVerdict::UNDECIDED;

  // pair-level algebraic closure first
  PairMatrix pm = PairMatrix::full(csp.n);
  for (size_t p = 0; p < csp.pairs.size(); ++p)
    pm.set(csp.pairs[p].first, csp.pairs[p].second, csp.domain[p]);
  auto closed = path_consistency(pm);
  if (!closed) return PcVerdict::REFUTED;

  PropState st;
  st.dom.resize(csp.pairs.size());
  for (size_t p = 0; p < csp.pairs.size(); ++p)
    st.dom[p] = closed->at(csp.pairs[p].first, csp.pairs[p].second);
  for (const auto& t : csp.triples) st.tmask.push_back(t.allowed);
  auto pair_triples = build_pair_triples(csp);
  std::deque<int> all(csp.triples.size());
  std::iota(all.begin(), all.end(), 0);
  if (!propagate(csp, st, pair_triples, all)) return PcVerdict::REFUTED;
  return PcVerdict::UNDECIDED;
}

std::pair<SetModel, SetModel> independent_copies(const SetModel& m) {
  SetModel a = m, b = m;
  for (auto& s : a.sets)
    for (auto& t : s) t = 2 * t;
  for (auto& s : b.sets)
    for (auto& t : s) t = 2 * t + 1;
  return {a, b};
}

bool model_satisfies(const Instance& inst, const SetModel& m) {
  for (const Constraint& c : inst.constraints) {
    if (c.arity() == 2) {
      Rel r = evaluate(m.sets[c.args[0]], m.sets[c.args[1]]);
      if (!c.orbits.contains(r)) return false;
    } else {
      Rel l01 = evaluate(m.sets[c.args[0]], m.sets[c.args[1]]);
      Rel l12 = evaluate(m.sets[c.args[1]], m.sets[c.args[2]]);
      Rel l02 = evaluate(m.sets[c.args[0]], m.sets[c.args[2]]);
      bool hit = false;
      for (const RelTriangle& t : c.triangles)
        if (t.o12 == l01 && t.o23 == l12 && t.o13 == l02) { hit = true; break; }
      if (!hit) return false;
    }
  }
  return true;
}

}  // namespace rcc5
