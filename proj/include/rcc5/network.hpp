// Satisfiability and model construction for constraint networks over
// first-order expansions of RCC5 (constraint arity at most 3): atomic
// networks, token models, the finite type-CSP reduction, backtracking
// search, and a sound (2,3)-consistency refutation procedure.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcc5/relations.hpp"

namespace rcc5 {

// A relation of an expansion: a union of 2-orbits (arity 2) or a set of
// consistent unordered triangles (arity 3).  Unary relations are rejected
// at parse time.
struct RelationSpec {
  std::string name;
  int arity = 2;
  RelSet orbits{};                      // arity 2
  std::vector<RelTriangle> triangles;   // arity 3, each consistent
};

struct Constraint {
  std::string name;          // optional, empty if unnamed
  std::vector<int> args;     // indices into Instance::variables, length 2 or 3
  RelSet orbits{};           // arity 2
  std::vector<RelTriangle> triangles;  // arity 3
  int arity() const { return int(args.size()); }
};

struct Instance {
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;
  int var_index(const std::string& name) const;  // -1 if absent
};

// Complete atomic labeling of all pairs; EQ permitted off the diagonal and
// interpreted as variable identification.
struct AtomicNetwork {
  std::vector<std::string> vars;
  std::vector<Rel> label;  // n*n row-major, converse-coherent, EQ diagonal
  int n() const { return int(vars.size()); }
  Rel at(int i, int j) const { return label[size_t(i) * vars.size() + j]; }
  void set(int i, int j, Rel r);
  static AtomicNetwork make(std::vector<std::string> vars);
};

using TokenSet = std::vector<uint32_t>;  // sorted ascending, nonempty

struct SetModel {
  std::vector<std::string> variables;
  std::vector<TokenSet> sets;  // parallel to variables
  int var_index(const std::string& name) const;
  const TokenSet& at(const std::string& name) const;
};

// The unique basic relation holding between two nonempty token sets.
Rel evaluate(const TokenSet& x, const TokenSet& y);
Rel evaluate(const SetModel& m, const std::string& x, const std::string& y);

// Square matrix of Rcc5Sets with EQ on the diagonal, converse-coherent.
struct PairMatrix {
  int n = 0;
  std::vector<RelSet> cell;  // n*n row-major
  RelSet at(int i, int j) const { return cell[size_t(i) * n + j]; }
  void set(int i, int j, RelSet s);
  static PairMatrix full(int n);
};

// Largest fixed point of C_ij <- C_ij ∩ (C_ik ∘ C_kj); nullopt iff a cell
// becomes empty.
std::optional<PairMatrix> path_consistency(const PairMatrix& input);

// SAT iff every triangle of labels is consistent after EQ-collapse.
bool solve_atomic(const AtomicNetwork& a);

// EQ-collapse: merge EQ-labeled variables.  Returns nullopt if EQ labels do
// not form a congruence (the network is unsatisfiable).  The collapsed
// network has no off-diagonal EQ; cls maps original vars to collapsed index.
struct CollapsedNetwork {
  AtomicNetwork net;
  std::vector<int> cls;
};
std::optional<CollapsedNetwork> eq_collapse(const AtomicNetwork& a);

// Token construction for a complete, EQ-collapsed, triangle-consistent
// network: one token t_v per variable, one token p_vw per PO-labeled pair;
// s_u collects t_v for v = u or PP(v,u) and p_vw for PO pairs {v,w} with
// v or w below-or-equal u.  Post-verified with evaluate.
SetModel build_model(const AtomicNetwork& a);

// Finite type CSP: one variable per unordered pair of instance variables
// (domain: basic relations), one extensional constraint per variable triple
// (allowed label triples: consistent triangles, cut down by any ternary
// instance constraints on that triple).
struct TypeCsp {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // lexicographic, i < j
  std::vector<RelSet> domain;              // per pair
  struct Triple {
    int i, j, k;          // i < j < k
    int pij, pjk, pik;    // pair variable indices
    std::array<uint64_t, 2> allowed{};  // bitset over a*25 + b*5 + c
  };
  std::vector<Triple> triples;
  bool trivially_unsat = false;
  int pair_index(int i, int j) const;  // unordered lookup
};
TypeCsp reduce_to_type_csp(const Instance& i);

struct SolveResult {
  bool sat = false;
  SetModel model;  // verified witness when sat
};
// Exhaustive backtracking with forward checking over the type CSP;
// deterministic: smallest-domain-first pair selection (ties by pair order),
// values in tag order.
SolveResult solve(const Instance& i);

enum class PcVerdict { REFUTED, UNDECIDED };
// (2,3)-consistency on the type CSP: path consistency on pair domains plus
// triple-table propagation.  REFUTED implies UNSAT; never claims SAT.
PcVerdict pc_decide(const Instance& i);

// Two disjoint copies: tokens doubled to 2n and 2n+1.  Cross pairs evaluate
// to DR; each copy evaluates identically to the original.
std::pair<SetModel, SetModel> independent_copies(const SetModel& m);

// Checks every instance constraint against the model by evaluate.
bool model_satisfies(const Instance& inst, const SetModel& m);

}  // namespace rcc5
