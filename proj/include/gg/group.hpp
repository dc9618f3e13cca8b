#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gg/error.hpp"
#include "gg/permutation.hpp"

namespace gg {

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

inline constexpr uint32_t kDefaultClosureCap = 5000;
inline constexpr uint32_t kDefaultLatticeCap = 400;

// A finite group as an order-n Cayley table. Element 0 is always the
// identity. Elements are enumerated by BFS over shortlex words in the
// generators, so indices are reproducible across runs. Instances are
// immutable after construction and safe to share between threads.
class GroupTable : public std::enable_shared_from_this<GroupTable> {
 public:
  uint32_t order() const { return n_; }
  uint16_t mul(uint32_t a, uint32_t b) const { return mul_[a * n_ + b]; }
  uint16_t inv(uint32_t a) const { return inv_[a]; }
  const uint16_t* row(uint32_t a) const { return mul_.data() + (size_t)a * n_; }
  const std::string& element_name(uint32_t i) const { return names_[i]; }
  const std::vector<uint16_t>& generators() const { return gens_; }
  const std::string& name() const { return name_; }

  uint32_t element_order(uint32_t x) const;
  bool is_abelian() const;
  int element_by_name(const std::string& s) const;  // -1 if absent

  // Closure of permutation generators; identity lands at index 0 even when
  // absent from gens. Throws closure_overflow past cap, invalid_permutation
  // on malformed input.
  static GroupPtr from_generators(const std::vector<Permutation>& gens,
                                  std::string name = {},
                                  uint32_t cap = kDefaultClosureCap);

  // Componentwise product table on pairs (a,b) -> index a*|B|+b.
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b,
                                 uint32_t cap = kDefaultClosureCap);

  // Raw table. Checks identity/inverse laws; associativity is checked
  // exhaustively up to order 512 and sampled above.
  static GroupPtr from_table(std::vector<uint16_t> mul, std::vector<std::string> names,
                             std::vector<uint16_t> gens, std::string name);

 private:
  GroupTable() = default;
  uint32_t n_ = 0;
  std::vector<uint16_t> mul_, inv_;
  std::vector<std::string> names_;
  std::vector<uint16_t> gens_;
  std::string name_;
  void finish(bool check_assoc);
};

// Subset of a GroupTable as a fixed-width bit vector over element indices.
class ElementSet {
 public:
  explicit ElementSet(GroupPtr parent);
  static ElementSet full(GroupPtr parent);
  static ElementSet of(GroupPtr parent, std::initializer_list<uint32_t> xs);
  static ElementSet from_indices(GroupPtr parent, const std::vector<uint32_t>& xs);

  const GroupPtr& parent() const { return parent_; }
  uint32_t universe() const { return n_; }

  bool test(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(uint32_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(uint32_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  void clear();

  uint32_t count() const;
  bool empty() const { return count() == 0; }
  int first() const;  // smallest member index, -1 if empty
  std::vector<uint32_t> members() const;

  ElementSet& operator|=(const ElementSet& o);
  ElementSet& operator&=(const ElementSet& o);
  ElementSet& operator-=(const ElementSet& o);
  ElementSet complement() const;

  bool operator==(const ElementSet& o) const;
  bool is_subset_of(const ElementSet& o) const;
  bool intersects(const ElementSet& o) const;

  // Ascending member-list comparison; the deterministic tiebreak everywhere.
  static bool lex_less(const ElementSet& a, const ElementSet& b);

  const std::vector<uint64_t>& words() const { return w_; }

  template <typename F>
  void for_each(F&& f) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      uint64_t w = w_[k];
      while (w) {
        f((uint32_t)(k * 64 + __builtin_ctzll(w)));
        w &= w - 1;
      }
    }
  }

 private:
  GroupPtr parent_;
  uint32_t n_ = 0;
  std::vector<uint64_t> w_;
};

void check_same_parent(const ElementSet& a, const ElementSet& b);

// Subgroup: an ElementSet validated to contain the identity and be closed
// under the table product (which implies inverse-closure for finite groups).
class Subgroup {
 public:
  explicit Subgroup(ElementSet members);  // validates, O(|H|^2)
  struct unchecked_t {};
  Subgroup(ElementSet members, unchecked_t) : members_(std::move(members)) {}

  const ElementSet& members() const { return members_; }
  const GroupPtr& parent() const { return members_.parent(); }
  uint32_t order() const { return members_.count(); }
  uint32_t index() const { return members_.universe() / order(); }
  bool contains(uint32_t x) const { return members_.test(x); }
  bool operator==(const Subgroup& o) const { return members_ == o.members_; }

 private:
  ElementSet members_;
};

// Map between group tables given element-wise; checks map[ab]=map[a]map[b].
class Homomorphism {
 public:
  Homomorphism(GroupPtr domain, GroupPtr codomain, std::vector<uint16_t> map);
  struct unchecked_t {};
  Homomorphism(GroupPtr domain, GroupPtr codomain, std::vector<uint16_t> map, unchecked_t);

  const GroupPtr& domain() const { return domain_; }
  const GroupPtr& codomain() const { return codomain_; }
  uint16_t apply(uint32_t x) const { return map_[x]; }
  const std::vector<uint16_t>& map() const { return map_; }

  ElementSet image(const ElementSet& s) const;
  ElementSet preimage(const ElementSet& s) const;
  bool surjective() const;

 private:
  GroupPtr domain_, codomain_;
  std::vector<uint16_t> map_;
};

// ---- structural subroutines -------------------------------------------

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);

// Smallest subgroup containing a nonempty seed.
Subgroup subgroup_closure(const ElementSet& seed);

Subgroup normalizer(const Subgroup& h);
Subgroup normal_core(const Subgroup& h);
bool is_normal(const Subgroup& h);

Subgroup centre(const GroupPtr& g);
Subgroup second_centre(const GroupPtr& g);
Subgroup derived_subgroup(const GroupPtr& g);
bool is_perfect(const GroupPtr& g);

Subgroup intersect(const Subgroup& a, const Subgroup& b);

// Cayley table on cosets of a normal subgroup plus the canonical surjection.
// Coset of the identity sits at index 0; others follow their smallest member.
std::pair<GroupPtr, Homomorphism> quotient(const GroupPtr& g, const Subgroup& n);

// Any Sylow p-subgroup, fixed deterministically by greedy extension of the
// first-found p-element subgroup in element-index order.
Subgroup sylow_subgroup(const GroupPtr& g, uint32_t p);

// The subgroup as a group of its own, with the local->parent element map.
// Local elements keep ascending parent order, so identity stays at 0.
std::pair<GroupPtr, std::vector<uint16_t>> subgroup_as_group(const Subgroup& h);

// Complete duplicate-free list of subgroups, sorted by (order, member list).
struct SubgroupLattice {
  GroupPtr group;
  std::vector<Subgroup> subgroups;
  int find(const ElementSet& members) const;  // -1 if absent
};

SubgroupLattice enumerate_subgroups(const GroupPtr& g, uint32_t cap = kDefaultLatticeCap);

}  // namespace gg
