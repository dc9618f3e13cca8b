#pragma once

#include <optional>
#include <vector>

#include "gg/group.hpp"
#include "gg/rational.hpp"

namespace gg {

// AB = {ab : a in A, b in B}; same parent required.
ElementSet product_set(const ElementSet& a, const ElementSet& b);
ElementSet inverse_set(const ElementSet& a);
ElementSet translate_left(const ElementSet& a, uint32_t g);   // gA
ElementSet translate_right(const ElementSet& a, uint32_t g);  // Ag

// |A^n| for n = 1.. until the first repeat (recorded) or the cap.
struct GrowthTrace {
  std::vector<uint64_t> sizes;
  std::optional<uint32_t> stabilization_index;  // smallest n with |A^n| = |A^(n+1)|
  std::optional<std::pair<uint32_t, Subgroup>> terminal_witness;  // A^n = gH = Hg
};

GrowthTrace power_trace(const ElementSet& a, uint32_t cap = 0);  // cap 0 -> 2|G|

// (g, H) with S = gH = Hg, if S is a coset both ways of one subgroup;
// g is the smallest element of S.
std::optional<std::pair<uint32_t, Subgroup>> is_left_right_coset(const ElementSet& s);

// S_R(A) = {g : Ag = A}
Subgroup right_stabilizer(const ElementSet& a);

// Structure exactly when |AB| = |A|: A is a union of left cosets of
// H = S_R(A) and B sits inside the right coset H b0.
struct SmallProductStructure {
  Subgroup h;
  std::vector<uint32_t> left_coset_reps;  // smallest element of each coset of A
  uint32_t right_coset_rep;               // b0 = smallest element of B
};
std::optional<SmallProductStructure> small_product_structure(const ElementSet& a,
                                                             const ElementSet& b);

// Multiplicative Ruzsa data, exact. left_sq = |AB^-1|^2/(|A||B|), right_sq =
// |A^-1B|^2/(|A||B|), double_mult = |AB^-1||A^-1B|/(|A||B|). Logs are for
// display only.
struct RuzsaValue {
  uint64_t size_ab_inv = 0;  // |AB^-1|
  uint64_t size_a_inv_b = 0; // |A^-1B|
  Rational left_sq, right_sq, double_mult;
};
RuzsaValue ruzsa(const ElementSet& a, const ElementSet& b);

struct CosetPairWitness {
  uint32_t g, gamma;
  Subgroup h;
};
// Witness iff d(A,B) = 0: A = gH and B = gammaH.
std::optional<CosetPairWitness> ruzsa_zero_left(const ElementSet& a, const ElementSet& b);
// Witness iff dd(A,B) = 0: additionally gamma^-1 g normalizes H.
std::optional<CosetPairWitness> ruzsa_zero_double(const ElementSet& a, const ElementSet& b);

struct ExpansionResult {
  bool expands;  // some A^n equals the whole group
  std::optional<std::pair<uint32_t, Subgroup>> witness;  // A in gH = Hg, H proper
};
ExpansionResult expands_to_group(const ElementSet& a);

// Thm-style non-expanding generating sets: a coset of a normal subgroup with
// nontrivial cyclic quotient (exists iff G is not perfect), and the
// symmetric variant (the odd coset of an index-2 subgroup, when one exists).
std::optional<ElementSet> non_expanding_generating_set(const GroupPtr& g,
                                                       uint32_t lattice_cap = kDefaultLatticeCap);
std::optional<ElementSet> non_expanding_symmetric_generating_set(
    const GroupPtr& g, uint32_t lattice_cap = kDefaultLatticeCap);

// min over d | n of (ceil(r/d) + ceil(s/d) - 1) d, for abelian G.
uint64_t mu_abelian(const GroupPtr& g, uint64_t r, uint64_t s);

}  // namespace gg
