#include "rcc5/ordered_age.hpp"

#include <algorithm>
#include <stdexcept>

#include "rcc5/errors.hpp"

namespace rcc5 {

void OrderedStructure::set(int i, int j, Rel r) {
  label[size_t(i) * points.size() + j] = r;
  label[size_t(j) * points.size() + i] = converse(r);
}

int OrderedStructure::point_index(const std::string& name) const {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i] == name) return int(i);
  return -1;
}

std::vector<int> OrderedStructure::positions() const {
  std::vector<int> pos(points.size(), -1);
  for (size_t p = 0; p < order.size(); ++p) {
    int v = order[p];
    if (v < 0 || v >= n() || pos[v] >= 0) return {};
    pos[v] = int(p);
  }
  if (order.size() != points.size()) return {};
  return pos;
}

bool OrderedStructure::before(int i, int j) const {
  auto pos = positions();
  return !pos.empty() && pos[i] < pos[j];
}

Orbit OrderedStructure::orbit_at(int i, int j) const {
  Rel r = at(i, j);
  bool lt = before(i, j);
  switch (r) {
    case Rel::EQ: return Orbit::EQ;
    case Rel::PP: return Orbit::PP;
    case Rel::PPI: return Orbit::PPI;
    case Rel::DR: return lt ? Orbit::DR_LT : Orbit::DR_GT;
    case Rel::PO: return lt ? Orbit::PO_LT : Orbit::PO_GT;
  }
  return Orbit::EQ;
}

OrderedStructure OrderedStructure::make(std::vector<std::string> names) {
  OrderedStructure s;
  s.points = std::move(names);
  s.label.assign(s.points.size() * s.points.size(), Rel::EQ);
  s.order.resize(s.points.size());
  for (size_t i = 0; i < s.order.size(); ++i) s.order[i] = int(i);
  return s;
}

bool check_ordered_age(const OrderedStructure& s) {
  int n = s.n();
  auto pos = s.positions();
  if (n > 0 && pos.empty()) return false;
  for (int i = 0; i < n; ++i) {
    if (s.at(i, i) != Rel::EQ) return false;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (s.at(i, j) == Rel::EQ) return false;  // distinct points, distinct sets
      if (s.at(j, i) != converse(s.at(i, j))) return false;
      if (s.at(i, j) == Rel::PP && pos[i] > pos[j]) return false;  // order extends PP
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (!triangle_consistent({s.at(i, j), s.at(j, k), s.at(i, k)})) return false;
  return true;
}

namespace {

// index of the single point of b not in a; -1 unless b = a + one point and
// b agrees with a on labels and order
int extension_point(const OrderedStructure& a, const OrderedStructure& b) {
  if (b.n() != a.n() + 1) return -1;
  std::vector<int> into_b(a.n());
  for (int i = 0; i < a.n(); ++i) {
    int j = b.point_index(a.points[i]);
    if (j < 0) return -1;
    into_b[i] = j;
  }
  int extra = -1;
  for (int j = 0; j < b.n(); ++j)
    if (std::find(into_b.begin(), into_b.end(), j) == into_b.end()) extra = j;
  if (extra < 0) return -1;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (b.at(into_b[i], into_b[j]) != a.at(i, j)) return -1;
  auto pa = a.positions(), pb = b.positions();
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if ((pa[i] < pa[j]) != (pb[into_b[i]] < pb[into_b[j]])) return -1;
  return extra;
}

}  // namespace

OrderedStructure amalgamate_one_point(const OrderedStructure& a,
                                      const OrderedStructure& b1,
                                      const OrderedStructure& b2) {
  if (!check_ordered_age(a) || !check_ordered_age(b1) || !check_ordered_age(b2))
    throw std::invalid_argument("amalgamate_one_point: input not in the ordered age");
  int x1 = extension_point(a, b1);
  int x2 = extension_point(a, b2);
  if (x1 < 0 || x2 < 0)
    throw std::invalid_argument("amalgamate_one_point: inputs disagree on the base");
  if (b1.points[x1] == b2.points[x2])
    throw std::invalid_argument("amalgamate_one_point: extension points share a name");

  int m = a.n();
  std::vector<int> a_in_b1(m), a_in_b2(m);
  for (int i = 0; i < m; ++i) {
    a_in_b1[i] = b1.point_index(a.points[i]);
    a_in_b2[i] = b2.point_index(a.points[i]);
  }

  auto l1 = [&](int i) { return b1.at(x1, a_in_b1[i]); };  // rel(b1, a_i)
  auto l2 = [&](int i) { return b2.at(a_in_b2[i], x2); };  // rel(a_i, b2)

  bool pp_witness = false, ppi_witness = false;
  for (int i = 0; i < m; ++i) {
    if (l1(i) == Rel::PP && l2(i) == Rel::PP) pp_witness = true;
    if (l1(i) == Rel::PPI && l2(i) == Rel::PPI) ppi_witness = true;
  }

  const Rel prefs[4] = {Rel::DR, Rel::PO, Rel::PPI, Rel::PP};
  Rel chosen = Rel::EQ;
  bool found = false;
  for (Rel cand : prefs) {
    if (cand == Rel::PP && !pp_witness) continue;
    if (cand == Rel::PPI && !ppi_witness) continue;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      ok = triangle_consistent({l1(i), l2(i), cand});
    if (ok) {
      chosen = cand;
      found = true;
      break;
    }
  }
  if (!found)
    throw VerificationError("amalgamate_one_point: no consistent completion label");

  // predecessor prefixes of b1, b2 within a's order
  auto pa = a.positions();
  auto p1 = b1.positions();
  auto p2 = b2.positions();
  int pre1 = 0, pre2 = 0;
  for (int i = 0; i < m; ++i) {
    if (p1[a_in_b1[i]] < p1[x1]) ++pre1;
    if (p2[a_in_b2[i]] < p2[x2]) ++pre2;
  }

  OrderedStructure c = OrderedStructure::make(a.points);
  c.points.push_back(b1.points[x1]);
  c.points.push_back(b2.points[x2]);
  int n = m + 2;
  int i1 = m, i2 = m + 1;
  c.label.assign(size_t(n) * n, Rel::EQ);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c.label[size_t(i) * n + j] = a.at(i, j);
  for (int i = 0; i < m; ++i) {
    c.label[size_t(i1) * n + i] = l1(i);
    c.label[size_t(i) * n + i1] = converse(l1(i));
    c.label[size_t(i2) * n + i] = converse(l2(i));
    c.label[size_t(i) * n + i2] = l2(i);
  }
  c.label[size_t(i1) * n + i2] = chosen;
  c.label[size_t(i2) * n + i1] = converse(chosen);

  // a's order with b1 inserted after its prefix and b2 after its prefix;
  // equal prefixes put b1 immediately before b2
  std::vector<int> base(m);
  for (int i = 0; i < m; ++i) base[pa[i]] = i;
  c.order.clear();
  for (int p = 0; p <= m; ++p) {
    if (p == pre1) c.order.push_back(i1);
    if (p == pre2) c.order.push_back(i2);
    if (p < m) c.order.push_back(base[p]);
  }
  if (!check_ordered_age(c))
    throw VerificationError("amalgamate_one_point: completion failed the age check");
  auto pc = c.positions();
  for (const OrderedStructure* b : {&b1, &b2})
    for (int i = 0; i < b->n(); ++i)
      for (int j = 0; j < b->n(); ++j) {
        int ci = c.point_index(b->points[i]);
        int cj = c.point_index(b->points[j]);
        auto pb = b->positions();
        if (c.at(ci, cj) != b->at(i, j) || (i != j && (pc[ci] < pc[cj]) != (pb[i] < pb[j])))
          throw VerificationError("amalgamate_one_point: completion does not extend an input");
      }
  return c;
}

bool antilex_less(const TokenSet& x, const TokenSet& y) {
  auto ix = x.rbegin(), iy = y.rbegin();
  while (ix != x.rend() && iy != y.rend()) {
    if (*ix == *iy) { ++ix; ++iy; continue; }
    return *ix < *iy;  // larger differing token decides, owner comes later
  }
  return ix == x.rend() && iy != y.rend();
}

SetModel order_realize(const OrderedStructure& s, const SetModel& g) {
  if (!check_ordered_age(s))
    throw std::invalid_argument("order_realize: structure not in the ordered age");
  int n = s.n();
  if (int(g.variables.size()) != n)
    throw std::invalid_argument("order_realize: model and structure disagree");
  std::vector<int> gi(n);
  for (int i = 0; i < n; ++i) {
    gi[i] = g.var_index(s.points[i]);
    if (gi[i] < 0) throw std::invalid_argument("order_realize: missing point " + s.points[i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && evaluate(g.sets[gi[i]], g.sets[gi[j]]) != s.at(i, j))
        throw std::invalid_argument("order_realize: model does not realize the labels");

  uint32_t fresh = 0;
  for (const TokenSet& t : g.sets)
    for (uint32_t v : t) fresh = std::max(fresh, v + 1);
  auto pos = s.positions();  // v token for point u: fresh + pos[u]

  SetModel b;
  b.variables = s.points;
  b.sets.resize(n);
  for (int u = 0; u < n; ++u) {
    TokenSet out = g.sets[gi[u]];
    for (int i = 0; i < n; ++i)
      if (i == u || s.at(i, u) == Rel::PP) out.push_back(fresh + uint32_t(pos[i]));
    std::sort(out.begin(), out.end());
    b.sets[u] = std::move(out);
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (evaluate(b.sets[i], b.sets[j]) != s.at(i, j))
        throw VerificationError("order_realize: labels broken by the fresh tokens");
      if (pos[i] < pos[j] && !antilex_less(b.sets[i], b.sets[j]))
        throw VerificationError("order_realize: order not realized");
    }
  return b;
}

}  // namespace rcc5
