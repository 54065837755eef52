#include "rcc5/behaviour.hpp"

#include <stdexcept>

#include "rcc5/errors.hpp"

namespace rcc5 {

int Behaviour::table_size(int k) {
  int s = 1;
  for (int i = 0; i < k; ++i) s *= kNumOrbit;
  return s;
}

int Behaviour::index(const std::vector<Orbit>& in) const {
  int idx = 0;
  for (Orbit o : in) idx = idx * kNumOrbit + int(o);
  return idx;
}

Behaviour Behaviour::projection(int k, int i) {
  Behaviour b;
  b.arity = k;
  b.table.resize(size_t(table_size(k)));
  for (int idx = 0; idx < int(b.table.size()); ++idx) {
    int digits[8];
    int rest = idx;
    for (int p = k - 1; p >= 0; --p) {
      digits[p] = rest % kNumOrbit;
      rest /= kNumOrbit;
    }
    b.table[idx] = Orbit(digits[i]);
  }
  return b;
}

Rel UnorderedBehaviour::at(const std::vector<Rel>& in) const {
  int idx = 0;
  for (Rel r : in) idx = idx * kNumRel + int(r);
  return table[idx];
}

uint8_t BooleanOp::at(const std::vector<int>& in) const {
  int idx = 0;
  for (int b : in) idx = idx * 2 + (b ? 1 : 0);
  return table[idx];
}

bool BooleanOp::is_and() const {
  return arity == 2 && table == std::vector<uint8_t>{0, 0, 0, 1};
}

bool BooleanOp::is_max() const {
  return arity == 2 && table == std::vector<uint8_t>{0, 1, 1, 1};
}

bool BooleanOp::is_cyclic() const {
  int size = 1 << arity;
  for (int idx = 0; idx < size; ++idx) {
    // rotate input bits left by one
    int hi = (idx >> (arity - 1)) & 1;
    int rot = ((idx << 1) & (size - 1)) | hi;
    if (table[idx] != table[rot]) return false;
  }
  return true;
}

bool BooleanOp::is_projection() const {
  int size = 1 << arity;
  for (int i = 0; i < arity; ++i) {
    bool match = true;
    for (int idx = 0; idx < size && match; ++idx)
      match = table[idx] == ((idx >> (arity - 1 - i)) & 1);
    if (match) return true;
  }
  return false;
}

bool BooleanOp::is_majority() const {
  if (arity != 3) return false;
  for (int idx = 0; idx < 8; ++idx) {
    int ones = ((idx >> 2) & 1) + ((idx >> 1) & 1) + (idx & 1);
    if (table[idx] != (ones >= 2 ? 1 : 0)) return false;
  }
  return true;
}

bool BooleanOp::is_maltsev() const {
  if (arity != 3) return false;
  // m(x,y,y) = m(y,y,x) = x over {0,1}
  for (int x = 0; x <= 1; ++x)
    for (int y = 0; y <= 1; ++y) {
      if (table[x * 4 + y * 2 + y] != x) return false;
      if (table[y * 4 + y * 2 + x] != x) return false;
    }
  return true;
}

namespace {

void decode(int idx, int k, Orbit* out) {
  for (int p = k - 1; p >= 0; --p) {
    out[p] = Orbit(idx % kNumOrbit);
    idx /= kNumOrbit;
  }
}

int encode(const Orbit* in, int k) {
  int idx = 0;
  for (int p = 0; p < k; ++p) idx = idx * kNumOrbit + int(in[p]);
  return idx;
}

}  // namespace

bool behaviour_well_formed(const Behaviour& b) {
  if (b.arity < 1 || int(b.table.size()) != Behaviour::table_size(b.arity)) return false;
  int diag = 0;
  for (int p = 0; p < b.arity; ++p) diag = diag * kNumOrbit + int(Orbit::EQ);
  if (b.table[diag] != Orbit::EQ) return false;
  Orbit in[8], conv[8];
  for (int idx = 0; idx < int(b.table.size()); ++idx) {
    decode(idx, b.arity, in);
    for (int p = 0; p < b.arity; ++p) conv[p] = converse(in[p]);
    if (b.table[encode(conv, b.arity)] != converse(b.table[idx])) return false;
  }
  return true;
}

std::optional<BooleanOp> eta(const Behaviour& b) {
  const Orbit zero_class[2] = {Orbit::DR_LT, Orbit::PO_LT};
  BooleanOp out;
  out.arity = b.arity;
  out.table.assign(size_t(1) << b.arity, 0);
  for (int pat = 0; pat < (1 << b.arity); ++pat) {
    int cls = -1;
    int combos = 1;
    for (int p = 0; p < b.arity; ++p)
      if (!((pat >> (b.arity - 1 - p)) & 1)) combos *= 2;
    for (int c = 0; c < combos; ++c) {
      Orbit in[8];
      int pick = c;
      for (int p = 0; p < b.arity; ++p) {
        int bit = (pat >> (b.arity - 1 - p)) & 1;
        if (bit) {
          in[p] = Orbit::PP;
        } else {
          in[p] = zero_class[pick % 2];
          pick /= 2;
        }
      }
      Orbit o = b.table[encode(in, b.arity)];
      int v;
      if (o == Orbit::PP) v = 1;
      else if (o == Orbit::DR_LT || o == Orbit::PO_LT) v = 0;
      else return std::nullopt;  // escapes the restricted orbits
      if (cls < 0) cls = v;
      else if (cls != v) return std::nullopt;  // not constant on the class
    }
    out.table[pat] = uint8_t(cls);
  }
  return out;
}

BooleanOp rho(const Behaviour& b) {
  BooleanOp out;
  out.arity = b.arity;
  out.table.assign(size_t(1) << b.arity, 0);
  for (int pat = 0; pat < (1 << b.arity); ++pat) {
    Orbit in[8];
    for (int p = 0; p < b.arity; ++p)
      in[p] = ((pat >> (b.arity - 1 - p)) & 1) ? Orbit::PO_LT : Orbit::DR_LT;
    Orbit o = b.table[encode(in, b.arity)];
    if (o == Orbit::DR_LT) out.table[pat] = 0;
    else if (o == Orbit::PO_LT) out.table[pat] = 1;
    else throw std::invalid_argument("rho: table leaves the two base orbits");
  }
  return out;
}

Behaviour compose_behaviours(const Behaviour& outer,
                             const std::vector<Behaviour>& inners) {
  if (int(inners.size()) != outer.arity)
    throw std::invalid_argument("compose_behaviours: inner count != outer arity");
  int m = inners.empty() ? 0 : inners[0].arity;
  for (const Behaviour& in : inners)
    if (in.arity != m) throw std::invalid_argument("compose_behaviours: inner arity mismatch");
  Behaviour r;
  r.arity = m;
  r.table.resize(size_t(Behaviour::table_size(m)));
  Orbit mid[8];
  for (int idx = 0; idx < int(r.table.size()); ++idx) {
    for (size_t i = 0; i < inners.size(); ++i) mid[i] = inners[i].table[idx];
    r.table[idx] = outer.table[encode(mid, outer.arity)];
  }
  return r;
}

std::optional<UnorderedBehaviour> unordered_projection(const Behaviour& b) {
  UnorderedBehaviour w;
  w.arity = b.arity;
  int usize = 1;
  for (int i = 0; i < b.arity; ++i) usize *= kNumRel;
  w.table.assign(size_t(usize), Rel::EQ);
  std::vector<bool> seen(size_t(usize), false);
  Orbit in[8];
  for (int idx = 0; idx < int(b.table.size()); ++idx) {
    decode(idx, b.arity, in);
    int uidx = 0;
    for (int p = 0; p < b.arity; ++p) uidx = uidx * kNumRel + int(unordered(in[p]));
    Rel out = unordered(b.table[idx]);
    if (!seen[uidx]) {
      seen[uidx] = true;
      w.table[uidx] = out;
    } else if (w.table[uidx] != out) {
      return std::nullopt;
    }
  }
  return w;
}

bool is_wnu(const UnorderedBehaviour& w) {
  for (int a = 0; a < kNumRel; ++a)
    for (int b = 0; b < kNumRel; ++b) {
      if (a == b) continue;
      Rel first = Rel::EQ;
      for (int slot = 0; slot < w.arity; ++slot) {
        std::vector<Rel> in(size_t(w.arity), Rel(a));
        in[slot] = Rel(b);
        Rel v = w.at(in);
        if (slot == 0) first = v;
        else if (v != first) return false;
      }
    }
  return true;
}

Behaviour build_h_cyclic(const Behaviour& g, const Behaviour& f) {
  auto eg = eta(g);
  if (g.arity != 2 || !eg || !eg->is_and())
    throw std::invalid_argument("build_h_cyclic: first operand is not a meet behaviour");
  if (f.arity != 3 || !rho(f).is_cyclic())
    throw std::invalid_argument("build_h_cyclic: second operand has no cyclic base");

  auto p = [](int i) { return Behaviour::projection(3, i); };
  Behaviour gxy = compose_behaviours(g, {p(0), p(1)});
  Behaviour h = compose_behaviours(g, {gxy, p(2)});
  auto rot = [&](const Behaviour& t) { return compose_behaviours(t, {p(1), p(2), p(0)}); };
  Behaviour h_r = rot(h), h_rr = rot(h_r);
  Behaviour hp = compose_behaviours(h, {h, h_r, h_rr});
  Behaviour hp_r = rot(hp), hp_rr = rot(hp_r);
  Behaviour hpp = compose_behaviours(f, {hp, hp_r, hp_rr});

  auto w = unordered_projection(hpp);
  if (!w) throw VerificationError("build_h_cyclic: unordered projection undefined");
  for (int a = 0; a < kNumRel; ++a)
    for (int b = 0; b < kNumRel; ++b)
      for (int c = 0; c < kNumRel; ++c)
        if (w->at({Rel(a), Rel(b), Rel(c)}) != w->at({Rel(b), Rel(c), Rel(a)}))
          throw VerificationError("build_h_cyclic: projection not cyclic");
  for (int a = 0; a < kNumRel; ++a)
    if (w->at({Rel(a), Rel(a), Rel(a)}) != Rel(a))
      throw VerificationError("build_h_cyclic: diagonal not fixed");
  return hpp;
}

}  // namespace rcc5
