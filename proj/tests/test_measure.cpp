#include <random>

#include "doctest.h"
#include "gg/catalog.hpp"
#include "gg/growth.hpp"
#include "gg/measure.hpp"

using namespace gg;

namespace {

Catalog& cat() {
  static Catalog c = Catalog::with_builtins();
  return c;
}

FgGroupPtr zsource() {
  static FgGroupPtr z = make_fg_group({"t"});
  return z;
}

ChartPtr zmod(uint32_t n, uint16_t image_of_t = 1) {
  return make_chart(zsource(), Catalog::cyclic(n), {image_of_t});
}

}  // namespace

TEST_CASE("epimorphism construction validates surjectivity") {
  CHECK_THROWS_AS(make_chart(zsource(), Catalog::cyclic(4), {2}), Error);  // <2> is proper
  CHECK_NOTHROW(make_chart(zsource(), Catalog::cyclic(4), {3}));
  auto f2 = make_fg_group({"a", "b"});
  auto s3 = cat().get("S3");
  CHECK_NOTHROW(make_chart(f2, s3, {(uint16_t)s3->element_by_name("(0 1)"),
                                    (uint16_t)s3->element_by_name("(0 1 2)")}));
}

TEST_CASE("refine: Z -> C2 with Z -> C3 lands in C6") {
  auto q2 = zmod(2), q3 = zmod(3);
  Refinement r = refine(q2, q3);
  CHECK(r.chart->target()->order() == 6);
  CHECK(r.proj1.surjective());
  CHECK(r.proj2.surjective());
  // memo returns the identical chart object
  CHECK(refine(q2, q3).chart->id() == r.chart->id());
}

TEST_CASE("refine of a chart with itself is itself") {
  auto q = zmod(6);
  Refinement r = refine(q, q);
  CHECK(r.chart->id() == q->id());
  CHECK(r.chart->target()->order() == 6);
}

TEST_CASE("refine: F2 onto S3 and the sign chart") {
  auto f2 = make_fg_group({"a", "b"});
  auto s3 = cat().get("S3");
  auto q1 = make_chart(f2, s3, {(uint16_t)s3->element_by_name("(0 1)"),
                                (uint16_t)s3->element_by_name("(0 1 2)")});
  auto q2 = make_chart(f2, Catalog::cyclic(2), {1, 0});
  Refinement r = refine(q1, q2);
  // the sign of the S3 image determines the C2 coordinate
  CHECK(r.chart->target()->order() == 6);
}

TEST_CASE("measure is popcount over order, reduced") {
  auto q2 = zmod(2);
  MeasurableSet evens(q2, ElementSet::of(q2->target(), {0}));
  CHECK(evens.measure() == Rational(1, 2));
  MeasurableSet nothing(q2, ElementSet(q2->target()));
  CHECK(nothing.measure() == Rational(0));
  auto q6 = zmod(6);
  MeasurableSet two(q6, ElementSet::of(q6->target(), {0, 3}));
  CHECK(two.measure() == Rational(1, 3));
}

TEST_CASE("boolean algebra through refinement") {
  auto q2 = zmod(2), q3 = zmod(3);
  MeasurableSet odd(q2, ElementSet::of(q2->target(), {1}));
  CHECK(munion(odd, mcomplement(odd)).measure() == Rational(1));

  MeasurableSet evens(q2, ElementSet::of(q2->target(), {0}));
  MeasurableSet div3(q3, ElementSet::of(q3->target(), {0}));
  CHECK(mintersect(evens, div3).measure() == Rational(1, 6));

  // disjoint union adds exactly
  MeasurableSet ones(q3, ElementSet::of(q3->target(), {1}));
  MeasurableSet rest = mdifference(MeasurableSet(q3, ElementSet::full(q3->target())), ones);
  CHECK(munion(ones, rest).measure() == Rational(1));
  CHECK(ones.measure() + rest.measure() == Rational(1));
}

TEST_CASE("translation and inversion invariance") {
  auto q6 = zmod(6);
  MeasurableSet a(q6, ElementSet::of(q6->target(), {1, 2, 4}));
  Word w = Word::parse(*zsource(), "t t t'");
  CHECK(mtranslate_left(a, w).measure() == a.measure());
  CHECK(mtranslate_right(a, w).measure() == a.measure());
  CHECK(minvert(a).measure() == a.measure());
  Word empty = Word::parse(*zsource(), "");
  CHECK(msets_equal(mtranslate_left(a, empty), a));

  // inversion fixes a subgroup body
  MeasurableSet sub(q6, ElementSet::of(q6->target(), {0, 2, 4}));
  CHECK(msets_equal(minvert(sub), sub));
}

TEST_CASE("products of measurable sets") {
  auto q2 = zmod(2);
  MeasurableSet evens(q2, ElementSet::of(q2->target(), {0}));
  CHECK(msets_equal(mproduct(evens, evens), evens));  // subgroup squared

  // odd residues times 1 mod 3: the two charts force everything mod 6
  auto q3 = zmod(3);
  MeasurableSet odd(q2, ElementSet::of(q2->target(), {1}));
  MeasurableSet one3(q3, ElementSet::of(q3->target(), {1}));
  MeasurableSet prod = mproduct(odd, one3);
  CHECK(prod.measure() == Rational(1));
}

TEST_CASE("sets_equal across charts describing one preimage") {
  auto q2 = zmod(2), q6 = zmod(6);
  MeasurableSet odd2(q2, ElementSet::of(q2->target(), {1}));
  MeasurableSet odd6(q6, ElementSet::of(q6->target(), {1, 3, 5}));
  CHECK(msets_equal(odd2, odd6));
  CHECK(!msets_equal(odd2, mcomplement(odd6)));

  // a subgroup body differs from its translate by a non-member
  MeasurableSet sub(q6, ElementSet::of(q6->target(), {0, 3}));
  Word t = Word::parse(*zsource(), "t");
  CHECK(!msets_equal(sub, mtranslate_left(sub, t)));
}

TEST_CASE("chart independence of measure under recharting") {
  auto q2 = zmod(2), q6 = zmod(6);
  MeasurableSet odd2(q2, ElementSet::of(q2->target(), {1}));
  MeasurableSet lifted = rechart(odd2, q6);
  CHECK(lifted.measure() == odd2.measure());
  // closure of (1,1) inside C2 x C6 is cyclic of order lcm(2,6)
  CHECK(lifted.chart()->target()->order() == 6);
}

TEST_CASE("monotone rigidity: equal measure of nested sets forces equality") {
  auto q2 = zmod(2), q6 = zmod(6);
  MeasurableSet odd2(q2, ElementSet::of(q2->target(), {1}));
  MeasurableSet odd6(q6, ElementSet::of(q6->target(), {1, 3, 5}));
  // odd6 is contained in odd2 with the same measure, hence equal as preimages
  CHECK(mdifference(odd6, odd2).measure() == Rational(0));
  CHECK(odd2.measure() == odd6.measure());
  CHECK(msets_equal(odd2, odd6));

  MeasurableSet strict(q6, ElementSet::of(q6->target(), {1, 3}));
  CHECK(strict.measure() < odd2.measure());
}

TEST_CASE("randomized measure axioms over assorted charts") {
  std::mt19937_64 rng(20240811);
  std::vector<ChartPtr> charts;
  for (uint32_t n : {2, 3, 4, 5, 6, 12, 30, 60}) charts.push_back(zmod(n));
  auto f2 = make_fg_group({"a", "b"});
  auto s3 = cat().get("S3");
  auto s4 = cat().get("S4");
  charts.push_back(make_chart(f2, s3, {(uint16_t)s3->element_by_name("(0 1)"),
                                       (uint16_t)s3->element_by_name("(1 2)")}));
  charts.push_back(make_chart(f2, s4, {(uint16_t)s4->element_by_name("(0 1)"),
                                       (uint16_t)s4->element_by_name("(0 1 2 3)")}));

  auto random_body = [&](const ChartPtr& ch) {
    ElementSet s(ch->target());
    for (uint32_t i = 0; i < ch->target()->order(); ++i)
      if (rng() & 1) s.set(i);
    return s;
  };

  for (int trial = 0; trial < 300; ++trial) {
    const auto& ch = charts[rng() % charts.size()];
    if (ch->source() != charts[0]->source() && ch->source() != f2) continue;
    MeasurableSet a(ch, random_body(ch));
    MeasurableSet b(ch, random_body(ch));
    // additivity on a disjoint split
    MeasurableSet inter = mintersect(a, b);
    CHECK(munion(a, b).measure() + inter.measure() == a.measure() + b.measure());
    MeasurableSet disj = mdifference(b, a);
    CHECK(munion(a, disj).measure() == a.measure() + disj.measure());
    // subadditivity
    CHECK(munion(a, b).measure() <= a.measure() + b.measure());
  }
}

TEST_CASE("quotient registry file format and set literals") {
  QuotientRegistry reg(&cat());
  reg.load_text(
      "# quotients over the integers\n"
      "quotient mod2 : C2 ; images t=1\n"
      "quotient mod3 : C3 ; images t=1\n"
      "quotient sgn : S3 ; images a=(0 1), b=(1 2)\n");
  CHECK(reg.names().size() == 3);
  CHECK(reg.chart("mod2")->target()->order() == 2);
  CHECK_THROWS_AS((void)reg.chart("nope"), Error);

  MeasurableSet odd = reg.parse_set("chart mod2 ; elements {1}");
  CHECK(odd.measure() == Rational(1, 2));

  MeasurableSet coset = reg.parse_set("chart mod3 ; coset {0} * t");
  CHECK(coset.measure() == Rational(1, 3));
  CHECK(coset.body().test(1));

  // mod2 and mod3 share the source named by generator "t"
  CHECK(reg.chart("mod2")->source() == reg.chart("mod3")->source());
  CHECK(reg.chart("sgn")->source() != reg.chart("mod2")->source());

  CHECK_THROWS_AS(reg.parse_set("chart mod3 ; coset {1} * t"), Error);  // {1} not a subgroup
}
