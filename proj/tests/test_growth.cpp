#include <random>

#include "doctest.h"
#include "gg/catalog.hpp"
#include "gg/growth.hpp"

using namespace gg;

namespace {

Catalog& cat() {
  static Catalog c = Catalog::with_builtins();
  return c;
}

ElementSet by_names(const GroupPtr& g, std::initializer_list<const char*> names) {
  ElementSet s(g);
  for (const char* n : names) {
    int i = g->element_by_name(n);
    REQUIRE(i >= 0);
    s.set((uint32_t)i);
  }
  return s;
}

}  // namespace

TEST_CASE("product sets") {
  auto s3 = cat().get("S3");
  ElementSet b = by_names(s3, {"(0 1)", "(0 1 2)"});
  CHECK(product_set(ElementSet::of(s3, {0}), b) == b);

  ElementSet a = by_names(s3, {"(0 1)", "(0 2)"});
  ElementSet sq = product_set(a, a);
  CHECK(sq == by_names(s3, {"()", "(0 1 2)", "(0 2 1)"}));
}

TEST_CASE("power traces") {
  auto c5 = cat().get("C5");
  GrowthTrace tr = power_trace(ElementSet::of(c5, {0, 1}));
  CHECK(tr.sizes == std::vector<uint64_t>{2, 3, 4, 5, 5});
  CHECK(tr.stabilization_index == 4);
  REQUIRE(tr.terminal_witness.has_value());
  CHECK(tr.terminal_witness->second.order() == 5);  // terminal set is all of C5

  // a coset of a subgroup is constant from the start
  auto s3 = cat().get("S3");
  ElementSet coset = by_names(s3, {"(0 1)", "(0 1 2)", "(0 2 1)"});  // wrong on purpose? no:
  // (0 1)A3 = all odd permutations
  coset = by_names(s3, {"(0 1)", "(0 2)", "(1 2)"});
  GrowthTrace tr2 = power_trace(coset);
  CHECK(tr2.sizes[0] == 3);
  CHECK(tr2.sizes[1] == 3);
  CHECK(tr2.stabilization_index == 1);

  // Prop 4.3 cyclic pattern at k=3 in C7
  auto c7 = cat().get("C7");
  ElementSet a = ElementSet::of(c7, {0, 1, 3});
  CHECK(product_set(a, a).count() == 6);

  // monotone sizes on random subsets
  std::mt19937_64 rng(7);
  auto d6 = cat().get("D6");
  for (int t = 0; t < 50; ++t) {
    ElementSet s(d6);
    for (uint32_t i = 0; i < d6->order(); ++i)
      if (rng() % 3 == 0) s.set(i);
    if (s.empty()) s.set((uint32_t)(rng() % d6->order()));
    GrowthTrace g = power_trace(s);
    for (size_t i = 1; i < g.sizes.size(); ++i) CHECK(g.sizes[i] >= g.sizes[i - 1]);
    REQUIRE(g.stabilization_index.has_value());
    CHECK(g.terminal_witness.has_value());
  }
}

TEST_CASE("left right coset recognition") {
  auto s3 = cat().get("S3");
  ElementSet a3 = by_names(s3, {"()", "(0 1 2)", "(0 2 1)"});
  auto w = is_left_right_coset(a3);
  REQUIRE(w.has_value());
  CHECK(w->first == 0);
  CHECK(w->second.members() == a3);

  ElementSet odd = by_names(s3, {"(0 1)", "(0 2)", "(1 2)"});
  auto w2 = is_left_right_coset(odd);
  REQUIRE(w2.has_value());
  CHECK(w2->second.members() == a3);

  CHECK(!is_left_right_coset(by_names(s3, {"(0 1)", "(0 2)"})).has_value());

  // a left-only coset: <(0 1)> shifted by a 3-cycle in S3 is gH with gH != Hg
  int g3 = s3->element_by_name("(0 1 2)");
  ElementSet h2 = subgroup_closure(by_names(s3, {"(0 1)"})).members();
  ElementSet gh = translate_left(h2, (uint32_t)g3);
  ElementSet hg = translate_right(h2, (uint32_t)g3);
  CHECK(!(gh == hg));
  CHECK(!is_left_right_coset(gh).has_value());
}

TEST_CASE("right stabilizer and Prop 3.1 structure") {
  auto s3 = cat().get("S3");

  // A = union of two left cosets of H = <(0 1)>, B inside a right coset of H
  ElementSet h = subgroup_closure(by_names(s3, {"(0 1)"})).members();
  int c = s3->element_by_name("(0 1 2)");
  ElementSet a = h;
  a |= translate_left(h, (uint32_t)c);
  ElementSet b = translate_right(ElementSet::of(s3, {0}), (uint32_t)c);
  b |= translate_right(by_names(s3, {"(0 1)"}), (uint32_t)c);  // B = H c
  CHECK(product_set(a, b).count() == a.count());
  auto st = small_product_structure(a, b);
  REQUIRE(st.has_value());
  CHECK(st->h.members() == h);
  CHECK(st->left_coset_reps.size() == 2);
  CHECK(st->right_coset_rep == (uint32_t)b.first());

  // B = {identity} always gives |AB| = |A|
  ElementSet any = by_names(s3, {"(0 1)", "(0 1 2)"});
  CHECK(small_product_structure(any, ElementSet::of(s3, {0})).has_value());

  // and a failing case
  ElementSet a1 = by_names(s3, {"(0 1)"});
  ElementSet b2 = by_names(s3, {"(0 1)", "(0 2)"});
  CHECK(!small_product_structure(a1, b2).has_value());
}

TEST_CASE("ruzsa values and zero classification") {
  auto s3 = cat().get("S3");
  ElementSet a3 = by_names(s3, {"()", "(0 1 2)", "(0 2 1)"});
  RuzsaValue v = ruzsa(a3, a3);
  CHECK(v.left_sq == Rational(1));
  auto w = ruzsa_zero_left(a3, a3);
  REQUIRE(w.has_value());
  CHECK(w->g == 0);
  CHECK(w->gamma == 0);
  CHECK(w->h.members() == a3);

  // A = {e, g} with g of order >= 4: AA^-1 = {e, g, g^-1}
  auto c6 = cat().get("C6");
  ElementSet eg = ElementSet::of(c6, {0, 1});
  RuzsaValue v2 = ruzsa(eg, eg);
  CHECK(v2.size_ab_inv == 3);
  CHECK(v2.left_sq == Rational(9, 4));
  CHECK(!ruzsa_zero_left(eg, eg).has_value());

  // cosets of one subgroup at distance zero, double witness needs normalizer
  ElementSet odd = by_names(s3, {"(0 1)", "(0 2)", "(1 2)"});
  auto wd = ruzsa_zero_double(a3, odd);
  REQUIRE(wd.has_value());
  CHECK(wd->h.members() == a3);
}

TEST_CASE("Sym(6) quantitative example: |AA^-1| = 22, |A^-1A| = 42") {
  auto s6 = cat().get("S6");
  Subgroup h = subgroup_closure(by_names(s6, {"(0 1)", "(1 2)"}));
  CHECK(h.order() == 6);
  int x = s6->element_by_name("(0 3)(1 4)(2 5)");
  REQUIRE(x >= 0);
  ElementSet a = h.members();
  a |= translate_left(h.members(), (uint32_t)x);
  CHECK(a.count() == 12);
  RuzsaValue v = ruzsa(a, a);
  CHECK(v.size_ab_inv == 22);   // 4 n! - 2 at n = 3
  CHECK(v.size_a_inv_b == 42);  // (n!)^2 + n! at n = 3
}

TEST_CASE("expansion dichotomy") {
  auto s3 = cat().get("S3");
  ElementSet gen = by_names(s3, {"()", "(0 1)", "(0 1 2)"});
  CHECK(expands_to_group(gen).expands);

  ElementSet odd = by_names(s3, {"(0 1)", "(0 2)", "(1 2)"});
  auto r = expands_to_group(odd);
  CHECK(!r.expands);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->second.order() == 3);

  auto a4 = cat().get("A4");
  int t = a4->element_by_name("(0 1 2)");
  auto r2 = expands_to_group(ElementSet::of(a4, {(uint32_t)t}));
  CHECK(!r2.expands);  // powers cycle inside the cyclic closure
  REQUIRE(r2.witness.has_value());
  CHECK(r2.witness->second.order() == 1);  // singleton = coset of the trivial subgroup
}

TEST_CASE("non-expanding generating sets (Thm 3.10)") {
  auto a5 = cat().get("A5");
  CHECK(!non_expanding_generating_set(a5).has_value());
  CHECK(!non_expanding_symmetric_generating_set(a5).has_value());

  auto s3 = cat().get("S3");
  auto s = non_expanding_generating_set(s3);
  REQUIRE(s.has_value());
  CHECK(*s == by_names(s3, {"(0 1)", "(0 2)", "(1 2)"}));
  auto ss = non_expanding_symmetric_generating_set(s3);
  REQUIRE(ss.has_value());
  CHECK(*ss == *s);

  auto c4 = cat().get("C4");
  auto sc = non_expanding_symmetric_generating_set(c4);
  REQUIRE(sc.has_value());
  CHECK(*sc == ElementSet::of(c4, {1, 3}));
  auto pc = non_expanding_generating_set(c4);
  REQUIRE(pc.has_value());
  GrowthTrace tr = power_trace(*pc);
  CHECK(tr.sizes.back() < 4);

  // A4 has no index-2 subgroup but is not perfect
  auto a4 = cat().get("A4");
  CHECK(non_expanding_generating_set(a4).has_value());
  CHECK(!non_expanding_symmetric_generating_set(a4).has_value());
}

TEST_CASE("mu for abelian groups (closed form)") {
  CHECK(mu_abelian(cat().get("C6"), 2, 2) == 2);
  CHECK(mu_abelian(cat().get("C6"), 6, 6) == 6);
  CHECK(mu_abelian(cat().get("C7"), 3, 3) == 5);  // Cauchy-Davenport r+s-1
  CHECK(mu_abelian(cat().get("C12"), 12, 12) == 12);
  CHECK_THROWS_AS(mu_abelian(cat().get("S3"), 2, 2), Error);
  CHECK_THROWS_AS(mu_abelian(cat().get("C6"), 0, 2), Error);
}

TEST_CASE("ruzsa symmetry and triangle inequality, randomized") {
  std::mt19937_64 rng(99);
  for (const char* name : {"C16", "D8", "SL23"}) {
    auto g = cat().get(name);
    for (int t = 0; t < 200; ++t) {
      auto rand_set = [&] {
        ElementSet s(g);
        for (uint32_t i = 0; i < g->order(); ++i)
          if (rng() & 1) s.set(i);
        if (s.empty()) s.set((uint32_t)(rng() % g->order()));
        return s;
      };
      ElementSet a = rand_set(), b = rand_set(), c = rand_set();
      RuzsaValue ab = ruzsa(a, b), ba = ruzsa(b, a);
      CHECK(ab.size_ab_inv == ba.size_ab_inv);  // |AB^-1| = |BA^-1|
      // d(A,B) <= d(A,C) + d(C,B) multiplicatively: |AB'||C| <= |AC'||CB'|
      RuzsaValue ac = ruzsa(a, c), cb = ruzsa(c, b);
      CHECK((__int128)ab.size_ab_inv * c.count() <=
            (__int128)ac.size_ab_inv * cb.size_ab_inv);
    }
  }
}
