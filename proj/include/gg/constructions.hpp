#pragma once

#include <optional>

#include "gg/group.hpp"
#include "gg/rational.hpp"

namespace gg {

// Odd order 2k+1: one element from each inverse pair (the smaller index),
// giving |A| = k with the identity missing from A^2.
ElementSet half_set_odd(const GroupPtr& g);

// Odd order 2k+1 outside {C3, C5, C3xC3}: |A| = k with |A^2| = 2k exactly.
// Cyclic groups use the odd-powers-plus-identity pattern; other groups
// recurse through a normal subgroup, patching the small troublesome kernels.
// `used_fallback`, when given, reports whether the construction had to fall
// back to exhaustive search (it never should; the flag is a discrepancy hook).
ElementSet exact_doubling_odd(const GroupPtr& g, bool* used_fallback = nullptr);

// Even order 2k: symmetric S with |S| = k, complement T = gS, and g (in fact
// every odd power of g) outside S^2.
struct HalfSetWitness {
  ElementSet s;
  uint32_t g = 0;
  uint32_t m = 0;        // order of g
  ElementSet missing;    // complement of S^2
  HalfSetWitness(ElementSet s_, uint32_t g_, uint32_t m_, ElementSet miss)
      : s(std::move(s_)), g(g_), m(m_), missing(std::move(miss)) {}
};
HalfSetWitness half_set_even(const GroupPtr& g);

// |G| - |S^2|, asserted >= m/2 via the odd powers of g.
uint64_t missing_count(const HalfSetWitness& w);

// Freiman structure at doubling < 3/2: A inside a left right coset gH = Hg
// with |A| > (2/3)|H| and A^2 = g^2 H exactly.
struct FreimanCertificate {
  ElementSet a;
  Subgroup h;
  uint32_t g = 0;
  bool in_lr_coset = false;
  bool big_enough = false;
  bool square_is_coset = false;
  FreimanCertificate(ElementSet a_, Subgroup h_, uint32_t g_)
      : a(std::move(a_)), h(std::move(h_)), g(g_) {}
  bool all() const { return in_lr_coset && big_enough && square_is_coset; }
};
std::optional<FreimanCertificate> freiman_structure(const ElementSet& a);

// A with |A^2| <= (7/4)|A| whose square is not a coset of any subgroup.
// Defined for every group except cyclic of order <= 3 and C2xC2.
ElementSet seven_quarters_set(const GroupPtr& g);

// The (C2)^d set of size 2^(d-1): final coordinate zero, with (1,..,1,0)
// swapped for (0,..,0,1). For d >= 3 its square has 2^d - 1 elements.
std::pair<GroupPtr, ElementSet> hypercube_set(uint32_t d);

// Pull the hypercube set back through G --> G/(G' sq(G)) for a 2-group G
// whose elementary abelian quotient has rank >= 2.
struct Pullback2Group {
  uint32_t rank = 0;
  GroupPtr quotient;
  ElementSet b;  // hypercube set in the quotient
  ElementSet a;  // its preimage in G
  Pullback2Group(uint32_t r, GroupPtr q, ElementSet b_, ElementSet a_)
      : rank(r), quotient(std::move(q)), b(std::move(b_)), a(std::move(a_)) {}
};
Pullback2Group pullback_2group(const GroupPtr& g);

// n / (1 + n^2/(m r s)) as an exact rational.
Rational bnp_bound(uint64_t n, uint64_t m, uint64_t r, uint64_t s);

// Whether m >= 2(lambda+mu)/(lambda mu); requires lambda, mu > 0 and
// lambda + mu <= 1/2.
bool small_sumsets_violation(uint64_t m, const Rational& lambda, const Rational& mu);

}  // namespace gg
