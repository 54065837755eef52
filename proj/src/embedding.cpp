#include "rcc5/embedding.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rcc5/errors.hpp"

namespace rcc5 {

DynBits BoolAlgebraRep::full_element() const {
  DynBits b(size_t(words()), ~uint64_t(0));
  if (atoms % 64 != 0 && !b.empty()) b.back() = (uint64_t(1) << (atoms % 64)) - 1;
  return b;
}

bool BoolAlgebraRep::antilex_less(const DynBits& s, const DynBits& t) const {
  for (int w = words() - 1; w >= 0; --w) {
    uint64_t diff = s[w] ^ t[w];
    if (diff == 0) continue;
    int bit = 63 - std::countl_zero(diff);
    return (t[w] >> bit) & 1u;
  }
  return false;
}

DynBits bits_and(const DynBits& a, const DynBits& b) {
  DynBits r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

DynBits bits_or(const DynBits& a, const DynBits& b) {
  DynBits r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] | b[i];
  return r;
}

DynBits bits_not(const BoolAlgebraRep& rep, const DynBits& a) {
  DynBits full = rep.full_element();
  for (size_t i = 0; i < a.size(); ++i) full[i] &= ~a[i];
  return full;
}

bool bits_empty(const DynBits& a) {
  for (uint64_t w : a)
    if (w) return false;
  return true;
}

bool bits_subset(const DynBits& a, const DynBits& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool bits_get(const DynBits& a, int i) { return (a[size_t(i) / 64] >> (i % 64)) & 1u; }
void bits_set(DynBits& a, int i) { a[size_t(i) / 64] |= uint64_t(1) << (i % 64); }

namespace {

// all nonempty PO-cliques, grown by ascending point index
void grow_cliques(const OrderedStructure& s, std::vector<int>& cur, int next,
                  std::vector<std::vector<int>>& out) {
  for (int v = next; v < s.n(); ++v) {
    bool ok = true;
    for (int u : cur)
      if (s.at(u, v) != Rel::PO) { ok = false; break; }
    if (!ok) continue;
    cur.push_back(v);
    out.push_back(cur);
    grow_cliques(s, cur, v + 1, out);
    cur.pop_back();
  }
}

Rel bits_relation(const DynBits& a, const DynBits& b) {
  if (a == b) return Rel::EQ;
  if (bits_subset(a, b)) return Rel::PP;
  if (bits_subset(b, a)) return Rel::PPI;
  return bits_empty(bits_and(a, b)) ? Rel::DR : Rel::PO;
}

}  // namespace

BoolEmbedding boolean_embed(const OrderedStructure& s, const SetModel& m) {
  if (!check_ordered_age(s))
    throw std::invalid_argument("boolean_embed: structure not in the ordered age");
  int n = s.n();
  if (int(m.variables.size()) != n)
    throw std::invalid_argument("boolean_embed: model and structure disagree");
  std::vector<int> mi(n);
  for (int i = 0; i < n; ++i) {
    mi[i] = m.var_index(s.points[i]);
    if (mi[i] < 0) throw std::invalid_argument("boolean_embed: missing point " + s.points[i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && evaluate(m.sets[mi[i]], m.sets[mi[j]]) != s.at(i, j))
        throw std::invalid_argument("boolean_embed: model does not realize the labels");

  BoolEmbedding e;
  std::vector<int> cur;
  grow_cliques(s, cur, 0, e.family.members);

  // sqsubset: compare by the order-least point of the symmetric difference
  auto pos = s.positions();
  auto sqsub = [&](const std::vector<int>& x, const std::vector<int>& y) {
    int best = -1, owner = 0;
    for (int v : x)
      if (!std::binary_search(y.begin(), y.end(), v) && (best < 0 || pos[v] < best)) {
        best = pos[v];
        owner = 0;
      }
    for (int v : y)
      if (!std::binary_search(x.begin(), x.end(), v) && (best < 0 || pos[v] < best)) {
        best = pos[v];
        owner = 1;
      }
    return best >= 0 && owner == 0;
  };
  std::sort(e.family.members.begin(), e.family.members.end(), sqsub);
  for (int i = 0; i + 1 < e.family.size(); ++i)
    if (!sqsub(e.family.members[i], e.family.members[i + 1]))
      throw VerificationError("boolean_embed: clique order is not total");

  e.rep.atoms = e.family.size();
  auto below = [&](int v, int u) { return v == u || s.at(v, u) == Rel::PP; };
  e.f.assign(n, e.rep.empty_element());
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < e.family.size(); ++x)
      for (int v : e.family.members[x])
        if (below(v, a)) { bits_set(e.f[a], x); break; }

  // each clique is the sqsubset-largest member of the meet of its images
  for (int x = 0; x < e.family.size(); ++x) {
    DynBits meet = e.rep.full_element();
    for (int v : e.family.members[x]) meet = bits_and(meet, e.f[v]);
    int largest = -1;
    for (int y = 0; y < e.family.size(); ++y)
      if (bits_get(meet, y)) largest = y;  // ascending scan keeps the last
    if (largest != x)
      throw VerificationError("boolean_embed: clique is not the top of its meet");
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (bits_relation(e.f[i], e.f[j]) != s.at(i, j))
        throw VerificationError("boolean_embed: labels not preserved");
      if (pos[i] < pos[j] && !e.rep.antilex_less(e.f[i], e.f[j]))
        throw VerificationError("boolean_embed: order not preserved");
    }
  return e;
}

bool eval_Rkl(const std::vector<TokenSet>& as, const std::vector<TokenSet>& bs) {
  if (as.empty()) throw std::invalid_argument("eval_Rkl: no intersection side");
  for (const TokenSet& t : as)
    if (t.empty()) throw std::invalid_argument("eval_Rkl: empty set");
  for (const TokenSet& t : bs)
    if (t.empty()) throw std::invalid_argument("eval_Rkl: empty set");
  TokenSet meet = as[0];
  for (size_t i = 1; i < as.size(); ++i) {
    TokenSet next;
    std::set_intersection(meet.begin(), meet.end(), as[i].begin(), as[i].end(),
                          std::back_inserter(next));
    meet = std::move(next);
  }
  for (uint32_t v : meet) {
    bool covered = false;
    for (const TokenSet& b : bs)
      if (std::binary_search(b.begin(), b.end(), v)) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

bool eval_Rkl(const BoolAlgebraRep& rep, const std::vector<DynBits>& as,
              const std::vector<DynBits>& bs) {
  DynBits meet = rep.full_element();
  for (const DynBits& a : as) meet = bits_and(meet, a);
  DynBits join = rep.empty_element();
  for (const DynBits& b : bs) join = bits_or(join, b);
  return bits_subset(meet, join);
}

bool eval_Okde(const BoolAlgebraRep& rep, const std::vector<DynBits>& as,
               const std::vector<int>& d, const std::vector<int>& e) {
  if (d.size() != as.size() || e.size() != as.size())
    throw std::invalid_argument("eval_Okde: twist dimension mismatch");
  DynBits left = rep.full_element(), right = rep.full_element();
  for (size_t i = 0; i < as.size(); ++i) {
    left = bits_and(left, d[i] ? bits_not(rep, as[i]) : as[i]);
    right = bits_and(right, e[i] ? bits_not(rep, as[i]) : as[i]);
  }
  return rep.antilex_less(left, right);
}

}  // namespace rcc5
