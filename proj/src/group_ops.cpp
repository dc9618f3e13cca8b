#include <algorithm>
#include <deque>

#include "gg/group.hpp"

namespace gg {

Subgroup trivial_subgroup(const GroupPtr& g) {
  return {ElementSet::of(g, {0}), Subgroup::unchecked_t{}};
}

Subgroup full_subgroup(const GroupPtr& g) {
  return {ElementSet::full(g), Subgroup::unchecked_t{}};
}

Subgroup subgroup_closure(const ElementSet& seed) {
  require(!seed.empty(), Errc::domain_error, "closure of empty seed");
  const auto& g = *seed.parent();
  ElementSet h(seed.parent());
  h.set(0);
  std::deque<uint32_t> work;
  seed.for_each([&](uint32_t x) {
    if (!h.test(x)) {
      h.set(x);
      work.push_back(x);
    }
  });
  while (!work.empty()) {
    uint32_t x = work.front();
    work.pop_front();
    std::vector<uint32_t> current = h.members();
    for (uint32_t y : current) {
      for (uint32_t p : {(uint32_t)g.mul(x, y), (uint32_t)g.mul(y, x)}) {
        if (!h.test(p)) {
          h.set(p);
          work.push_back(p);
        }
      }
    }
  }
  return {std::move(h), Subgroup::unchecked_t{}};
}

static ElementSet conjugate_set(const ElementSet& s, uint32_t g) {
  const auto& t = *s.parent();
  ElementSet out(s.parent());
  uint32_t gi = t.inv(g);
  s.for_each([&](uint32_t x) { out.set(t.mul(t.mul(g, x), gi)); });
  return out;
}

Subgroup normalizer(const Subgroup& h) {
  const auto& g = *h.parent();
  ElementSet out(h.parent());
  for (uint32_t x = 0; x < g.order(); ++x)
    if (conjugate_set(h.members(), x) == h.members()) out.set(x);
  return {std::move(out), Subgroup::unchecked_t{}};
}

Subgroup normal_core(const Subgroup& h) {
  const auto& g = *h.parent();
  ElementSet core = h.members();
  for (uint32_t x = 0; x < g.order(); ++x) core &= conjugate_set(h.members(), x);
  return {std::move(core), Subgroup::unchecked_t{}};
}

bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent();
  for (uint16_t x : g.generators())
    if (!(conjugate_set(h.members(), x) == h.members())) return false;
  // generator check suffices only when gens generate; they do by construction
  return true;
}

Subgroup centre(const GroupPtr& g) {
  ElementSet out(g);
  for (uint32_t z = 0; z < g->order(); ++z) {
    bool central = true;
    for (uint16_t x : g->generators())
      if (g->mul(z, x) != g->mul(x, z)) {
        central = false;
        break;
      }
    if (central) out.set(z);
  }
  return {std::move(out), Subgroup::unchecked_t{}};
}

Subgroup second_centre(const GroupPtr& g) {
  Subgroup z = centre(g);
  if (z.order() == g->order()) return full_subgroup(g);
  auto [q, pi] = quotient(g, z);
  Subgroup zq = centre(q);
  return {pi.preimage(zq.members()), Subgroup::unchecked_t{}};
}

Subgroup derived_subgroup(const GroupPtr& g) {
  ElementSet comms(g);
  comms.set(0);
  for (uint32_t a = 0; a < g->order(); ++a)
    for (uint32_t b = 0; b < g->order(); ++b)
      comms.set(g->mul(g->mul(a, b), g->inv(g->mul(b, a))));
  return subgroup_closure(comms);
}

bool is_perfect(const GroupPtr& g) { return derived_subgroup(g).order() == g->order(); }

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  ElementSet m = a.members();
  m &= b.members();
  return {std::move(m), Subgroup::unchecked_t{}};
}

std::pair<GroupPtr, Homomorphism> quotient(const GroupPtr& g, const Subgroup& n) {
  require(n.parent() == g, Errc::mismatched_parents, "subgroup of a different group");
  require(is_normal(n), Errc::not_normal, "quotient by a non-normal subgroup");

  uint32_t order = g->order();
  // Canonical coset representative: smallest member. Identity coset first,
  // remaining cosets in ascending representative order.
  std::vector<uint16_t> rep(order);
  std::vector<uint32_t> reps;
  std::vector<char> seen(order, 0);
  for (uint32_t x = 0; x < order; ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    n.members().for_each([&](uint32_t h) {
      uint32_t y = g->mul(x, h);
      seen[y] = 1;
      rep[y] = (uint16_t)x;
    });
  }
  uint32_t q = (uint32_t)reps.size();
  std::vector<uint16_t> coset_index(order);
  for (uint32_t i = 0; i < q; ++i) coset_index[reps[i]] = (uint16_t)i;
  std::vector<uint16_t> emap(order);
  for (uint32_t x = 0; x < order; ++x) emap[x] = coset_index[rep[x]];

  std::vector<uint16_t> mul((size_t)q * q);
  for (uint32_t i = 0; i < q; ++i)
    for (uint32_t j = 0; j < q; ++j)
      mul[(size_t)i * q + j] = emap[g->mul(reps[i], reps[j])];
  std::vector<std::string> names(q);
  for (uint32_t i = 0; i < q; ++i) names[i] = "[" + g->element_name(reps[i]) + "]";
  std::vector<uint16_t> gens;
  for (uint16_t x : g->generators())
    if (emap[x] != 0 || gens.empty()) gens.push_back(emap[x]);
  auto qt = GroupTable::from_table(std::move(mul), std::move(names), std::move(gens),
                                   g->name() + "/N" + std::to_string(n.order()));
  return {qt, Homomorphism(g, qt, std::move(emap), Homomorphism::unchecked_t{})};
}

Subgroup sylow_subgroup(const GroupPtr& g, uint32_t p) {
  require(p >= 2, Errc::domain_error, "p must be at least 2");
  for (uint32_t d = 2; d < p; ++d)
    require(p % d != 0, Errc::domain_error, "p must be prime");
  uint32_t n = g->order();
  require(n % p == 0, Errc::p_not_dividing, "p does not divide the group order");
  uint32_t target = 1;
  while (n % p == 0) {
    n /= p;
    target *= p;
  }

  auto p_power = [&](uint32_t k) {
    while (k % p == 0) k /= p;
    return k == 1;
  };

  Subgroup h = trivial_subgroup(g);
  bool grew = true;
  while (h.order() < target && grew) {
    grew = false;
    for (uint32_t x = 0; x < g->order(); ++x) {
      if (h.contains(x) || !p_power(g->element_order(x))) continue;
      ElementSet seed = h.members();
      seed.set(x);
      Subgroup j = subgroup_closure(seed);
      if (p_power(j.order())) {
        h = std::move(j);
        grew = true;
        break;
      }
    }
  }
  require(h.order() == target, Errc::internal, "greedy Sylow extension stalled");
  return h;
}

std::pair<GroupPtr, std::vector<uint16_t>> subgroup_as_group(const Subgroup& h) {
  const auto& g = *h.parent();
  std::vector<uint16_t> to_parent;
  to_parent.reserve(h.order());
  h.members().for_each([&](uint32_t x) { to_parent.push_back((uint16_t)x); });
  std::vector<uint16_t> to_local(g.order(), 0xffff);
  for (uint32_t i = 0; i < to_parent.size(); ++i) to_local[to_parent[i]] = (uint16_t)i;

  uint32_t m = h.order();
  std::vector<uint16_t> mul((size_t)m * m);
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < m; ++j)
      mul[(size_t)i * m + j] = to_local[g.mul(to_parent[i], to_parent[j])];
  std::vector<std::string> names(m);
  for (uint32_t i = 0; i < m; ++i) names[i] = g.element_name(to_parent[i]);
  // Every element generates within the extracted table; keep all non-identity
  // members so generators() stays honest without a minimal-set search.
  std::vector<uint16_t> gens;
  for (uint32_t i = 1; i < m; ++i) gens.push_back((uint16_t)i);
  if (gens.empty()) gens.push_back(0);
  auto t = GroupTable::from_table(std::move(mul), std::move(names), std::move(gens),
                                  g.name() + ".H" + std::to_string(m));
  return {t, to_parent};
}

int SubgroupLattice::find(const ElementSet& members) const {
  for (size_t i = 0; i < subgroups.size(); ++i)
    if (subgroups[i].members() == members) return (int)i;
  return -1;
}

SubgroupLattice enumerate_subgroups(const GroupPtr& g, uint32_t cap) {
  require(g->order() <= cap, Errc::lattice_overflow,
          "order " + std::to_string(g->order()) + " above lattice cap " + std::to_string(cap));

  // Seed with all cyclic subgroups, then close under joins with single
  // elements until stable.
  std::vector<ElementSet> subs;
  auto add = [&](const ElementSet& s) {
    for (const auto& t : subs)
      if (t == s) return false;
    subs.push_back(s);
    return true;
  };
  add(trivial_subgroup(g).members());
  for (uint32_t x = 1; x < g->order(); ++x)
    add(subgroup_closure(ElementSet::of(g, {x})).members());

  for (size_t i = 0; i < subs.size(); ++i) {
    ElementSet h = subs[i];
    for (uint32_t x = 1; x < g->order(); ++x) {
      if (h.test(x)) continue;
      ElementSet seed = h;
      seed.set(x);
      add(subgroup_closure(seed).members());
    }
  }

  std::sort(subs.begin(), subs.end(), [](const ElementSet& a, const ElementSet& b) {
    uint32_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return ElementSet::lex_less(a, b);
  });
  SubgroupLattice lat;
  lat.group = g;
  lat.subgroups.reserve(subs.size());
  for (auto& s : subs) lat.subgroups.emplace_back(std::move(s), Subgroup::unchecked_t{});
  return lat;
}

}  // namespace gg
