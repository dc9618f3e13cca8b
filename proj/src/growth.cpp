#include "gg/growth.hpp"

#include <algorithm>

namespace gg {

ElementSet product_set(const ElementSet& a, const ElementSet& b) {
  check_same_parent(a, b);
  const auto& g = *a.parent();
  ElementSet out(a.parent());
  a.for_each([&](uint32_t x) {
    const uint16_t* row = g.row(x);
    b.for_each([&](uint32_t y) { out.set(row[y]); });
  });
  return out;
}

ElementSet inverse_set(const ElementSet& a) {
  const auto& g = *a.parent();
  ElementSet out(a.parent());
  a.for_each([&](uint32_t x) { out.set(g.inv(x)); });
  return out;
}

ElementSet translate_left(const ElementSet& a, uint32_t g) {
  const auto& t = *a.parent();
  ElementSet out(a.parent());
  const uint16_t* row = t.row(g);
  a.for_each([&](uint32_t x) { out.set(row[x]); });
  return out;
}

ElementSet translate_right(const ElementSet& a, uint32_t g) {
  const auto& t = *a.parent();
  ElementSet out(a.parent());
  a.for_each([&](uint32_t x) { out.set(t.mul(x, g)); });
  return out;
}

GrowthTrace power_trace(const ElementSet& a, uint32_t cap) {
  require(!a.empty(), Errc::domain_error, "power trace of the empty set");
  if (cap == 0) cap = 2 * a.parent()->order();
  GrowthTrace tr;
  ElementSet p = a;
  tr.sizes.push_back(p.count());
  while (tr.sizes.size() < cap && !tr.stabilization_index) {
    ElementSet next = product_set(p, a);
    tr.sizes.push_back(next.count());
    if (next.count() == p.count()) {
      tr.stabilization_index = (uint32_t)tr.sizes.size() - 1;  // 1-based index of A^n
      tr.terminal_witness = is_left_right_coset(p);
    }
    p = std::move(next);
  }
  return tr;
}

std::optional<std::pair<uint32_t, Subgroup>> is_left_right_coset(const ElementSet& s) {
  require(!s.empty(), Errc::domain_error, "empty set is not a coset");
  const auto& g = *s.parent();
  uint32_t x = (uint32_t)s.first();
  ElementSet h = translate_left(s, g.inv(x));  // x^-1 S
  // subgroup check: closed under products (inverses follow in a finite group)
  if (!h.test(0)) return std::nullopt;
  bool closed = true;
  h.for_each([&](uint32_t p) {
    if (!closed) return;
    const uint16_t* row = g.row(p);
    h.for_each([&](uint32_t q) {
      if (closed && !h.test(row[q])) closed = false;
    });
  });
  if (!closed) return std::nullopt;
  if (!(translate_right(h, x) == s)) return std::nullopt;  // S = Hx too
  return std::make_pair(x, Subgroup(std::move(h), Subgroup::unchecked_t{}));
}

Subgroup right_stabilizer(const ElementSet& a) {
  const auto& g = *a.parent();
  ElementSet out(a.parent());
  for (uint32_t x = 0; x < g.order(); ++x)
    if (translate_right(a, x) == a) out.set(x);
  return {std::move(out), Subgroup::unchecked_t{}};
}

std::optional<SmallProductStructure> small_product_structure(const ElementSet& a,
                                                             const ElementSet& b) {
  require(!a.empty() && !b.empty(), Errc::domain_error, "empty operand");
  check_same_parent(a, b);
  if (product_set(a, b).count() != a.count()) return std::nullopt;
  const auto& g = *a.parent();
  Subgroup h = right_stabilizer(a);
  uint32_t b0 = (uint32_t)b.first();
  require(b.is_subset_of(translate_right(h.members(), b0)), Errc::structure_violation,
          "small product without right-coset containment");
  // A decomposes into left cosets of H; record the smallest member of each.
  SmallProductStructure out{std::move(h), {}, b0};
  ElementSet rest = a;
  while (!rest.empty()) {
    uint32_t r = (uint32_t)rest.first();
    out.left_coset_reps.push_back(r);
    ElementSet coset = translate_left(out.h.members(), r);
    require(coset.is_subset_of(a), Errc::structure_violation,
            "A is not a union of left cosets of its right stabilizer");
    rest -= coset;
  }
  return out;
}

RuzsaValue ruzsa(const ElementSet& a, const ElementSet& b) {
  require(!a.empty() && !b.empty(), Errc::domain_error, "Ruzsa distance needs nonempty sets");
  check_same_parent(a, b);
  RuzsaValue v;
  v.size_ab_inv = product_set(a, inverse_set(b)).count();
  v.size_a_inv_b = product_set(inverse_set(a), b).count();
  long long na = a.count(), nb = b.count();
  v.left_sq = Rational((long long)(v.size_ab_inv * v.size_ab_inv), na * nb);
  v.right_sq = Rational((long long)(v.size_a_inv_b * v.size_a_inv_b), na * nb);
  v.double_mult = Rational((long long)(v.size_ab_inv * v.size_a_inv_b), na * nb);
  return v;
}

namespace {

// A = gH and B = gammaH for one subgroup H, if so structured.
std::optional<CosetPairWitness> common_left_coset(const ElementSet& a, const ElementSet& b) {
  if (a.count() != b.count()) return std::nullopt;
  const auto& g = *a.parent();
  uint32_t ga = (uint32_t)a.first(), gb = (uint32_t)b.first();
  ElementSet h = translate_left(a, g.inv(ga));
  if (!h.test(0)) return std::nullopt;
  bool closed = true;
  h.for_each([&](uint32_t p) {
    if (!closed) return;
    const uint16_t* row = g.row(p);
    h.for_each([&](uint32_t q) {
      if (closed && !h.test(row[q])) closed = false;
    });
  });
  if (!closed) return std::nullopt;
  if (!(translate_left(h, gb) == b)) return std::nullopt;
  return CosetPairWitness{ga, gb, Subgroup(std::move(h), Subgroup::unchecked_t{})};
}

}  // namespace

std::optional<CosetPairWitness> ruzsa_zero_left(const ElementSet& a, const ElementSet& b) {
  RuzsaValue v = ruzsa(a, b);
  bool zero = v.left_sq == Rational(1);
  auto w = common_left_coset(a, b);
  require(zero == w.has_value(), Errc::structure_violation,
          "left Ruzsa zero classification out of step with coset structure");
  if (!zero) return std::nullopt;
  return w;
}

std::optional<CosetPairWitness> ruzsa_zero_double(const ElementSet& a, const ElementSet& b) {
  RuzsaValue v = ruzsa(a, b);
  bool zero = v.double_mult == Rational(1);
  if (!zero) return std::nullopt;
  auto w = common_left_coset(a, b);
  require(w.has_value(), Errc::structure_violation, "dd = 0 without common left cosets");
  const auto& g = *a.parent();
  uint32_t t = g.mul(g.inv(w->gamma), w->g);
  require(normalizer(w->h).contains(t), Errc::structure_violation,
          "dd = 0 but gamma^-1 g does not normalize H");
  return w;
}

ExpansionResult expands_to_group(const ElementSet& a) {
  require(!a.empty(), Errc::domain_error, "empty set cannot expand");
  const auto& g = *a.parent();
  GrowthTrace tr = power_trace(a);
  uint64_t top = tr.sizes.back();
  if (top == g.order()) return {true, std::nullopt};
  require(tr.terminal_witness.has_value(), Errc::internal, "stabilized power without witness");
  // A^n = gH = Hg proper; then A itself sits inside the left right coset aH.
  const Subgroup& h = tr.terminal_witness->second;
  uint32_t rep = (uint32_t)a.first();
  ElementSet coset = translate_left(h.members(), rep);
  require(a.is_subset_of(coset) && translate_right(h.members(), rep) == coset,
          Errc::structure_violation, "stabilized power without enclosing left right coset");
  return {false, std::make_pair(rep, h)};
}

namespace {

bool generates(const ElementSet& s) {
  return subgroup_closure(s).order() == s.parent()->order();
}

bool never_whole_group(const ElementSet& s) {
  GrowthTrace tr = power_trace(s);  // cap 2|G| covers stabilization
  return tr.sizes.back() < s.parent()->order();
}

}  // namespace

std::optional<ElementSet> non_expanding_generating_set(const GroupPtr& g, uint32_t lattice_cap) {
  if (is_perfect(g)) return std::nullopt;
  auto lat = enumerate_subgroups(g, lattice_cap);
  // scan normal subgroups by decreasing order; first nontrivial cyclic quotient wins
  for (auto it = lat.subgroups.rbegin(); it != lat.subgroups.rend(); ++it) {
    const Subgroup& h = *it;
    if (h.order() == g->order() || !is_normal(h)) continue;
    auto [q, pi] = quotient(g, h);
    bool cyclic = false;
    uint32_t gen = 0;
    for (uint32_t x = 0; x < q->order(); ++x)
      if (q->element_order(x) == q->order()) {
        cyclic = true;
        gen = x;
        break;
      }
    if (!cyclic || q->order() == 1) continue;
    // smallest element of G mapping to a generator of the cyclic quotient
    for (uint32_t x = 0; x < g->order(); ++x) {
      if (pi.apply(x) != gen) continue;
      ElementSet s = translate_left(h.members(), x);
      require(generates(s) && never_whole_group(s), Errc::structure_violation,
              "non-expanding coset failed its postconditions");
      return s;
    }
  }
  fail(Errc::internal, "non-perfect group without a cyclic quotient coset");
}

std::optional<ElementSet> non_expanding_symmetric_generating_set(const GroupPtr& g,
                                                                 uint32_t lattice_cap) {
  if (g->order() % 2 != 0) return std::nullopt;
  auto lat = enumerate_subgroups(g, lattice_cap);
  for (const auto& h : lat.subgroups) {
    if (h.order() * 2 != g->order()) continue;
    ElementSet s = h.members().complement();  // index 2 is normal; S = gH = Hg
    require(inverse_set(s) == s, Errc::internal, "index-2 coset must be symmetric");
    require(generates(s) && never_whole_group(s), Errc::structure_violation,
            "symmetric non-expanding coset failed its postconditions");
    return s;
  }
  return std::nullopt;
}

uint64_t mu_abelian(const GroupPtr& g, uint64_t r, uint64_t s) {
  require(g->is_abelian(), Errc::not_abelian, "mu formula needs an abelian group");
  uint64_t n = g->order();
  require(r >= 1 && s >= 1 && r <= n && s <= n, Errc::domain_error, "need 1 <= r,s <= |G|");
  uint64_t best = UINT64_MAX;
  for (uint64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    uint64_t v = ((r + d - 1) / d + (s + d - 1) / d - 1) * d;
    best = std::min(best, v);
  }
  return best;
}

}  // namespace gg
