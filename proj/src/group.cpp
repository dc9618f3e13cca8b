#include "gg/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace gg {

namespace {

struct PermHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= (size_t)x + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

void GroupTable::finish(bool check_assoc) {
  inv_.assign(n_, 0);
  for (uint32_t x = 0; x < n_; ++x) {
    require(mul(0, x) == x && mul(x, 0) == x, Errc::internal, "identity law fails");
    bool found = false;
    for (uint32_t y = 0; y < n_; ++y) {
      if (mul(x, y) == 0) {
        require(mul(y, x) == 0, Errc::internal, "one-sided inverse");
        inv_[x] = (uint16_t)y;
        found = true;
        break;
      }
    }
    require(found, Errc::internal, "element with no inverse");
  }
  if (check_assoc && n_ <= 64) {
    for (uint32_t a = 0; a < n_; ++a)
      for (uint32_t b = 0; b < n_; ++b)
        for (uint32_t c = 0; c < n_; ++c)
          require(mul(mul(a, b), c) == mul(a, mul(b, c)), Errc::internal, "table not associative");
  }
}

GroupPtr GroupTable::from_generators(const std::vector<Permutation>& gens, std::string name,
                                     uint32_t cap) {
  int degree = gens.empty() ? 1 : gens[0].degree();
  for (const auto& g : gens)
    require(g.degree() == degree, Errc::invalid_permutation, "generators of mixed degree");

  // BFS over shortlex words in the generators; identity is the empty word.
  std::vector<Permutation> elems;
  std::unordered_map<std::vector<int>, uint16_t, PermHash> index;
  elems.push_back(Permutation(degree));
  index.emplace(elems[0].images(), 0);
  std::deque<uint16_t> queue{0};
  while (!queue.empty()) {
    uint16_t cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Permutation next = elems[cur] * g;
      auto [it, fresh] = index.emplace(next.images(), (uint16_t)elems.size());
      if (fresh) {
        require(elems.size() < cap, Errc::closure_overflow,
                "closure exceeds cap " + std::to_string(cap));
        elems.push_back(std::move(next));
        queue.push_back(it->second);
      }
    }
  }

  uint32_t n = (uint32_t)elems.size();
  auto table = std::shared_ptr<GroupTable>(new GroupTable());
  table->n_ = n;
  table->mul_.resize((size_t)n * n);
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      table->mul_[(size_t)a * n + b] = index.at((elems[a] * elems[b]).images());
  table->names_.reserve(n);
  for (const auto& p : elems) table->names_.push_back(p.cycle_string());
  for (const auto& g : gens) table->gens_.push_back(index.at(g.images()));
  table->name_ = name.empty() ? ("G" + std::to_string(n)) : std::move(name);
  table->finish(false);  // permutation products are associative by construction
  return table;
}

GroupPtr GroupTable::direct_product(const GroupPtr& a, const GroupPtr& b, uint32_t cap) {
  uint64_t n = (uint64_t)a->order() * b->order();
  require(n <= cap, Errc::closure_overflow, "product order exceeds cap");
  uint32_t nb = b->order();
  std::vector<uint16_t> mul((size_t)n * n);
  for (uint32_t x = 0; x < n; ++x) {
    uint32_t xa = x / nb, xb = x % nb;
    for (uint32_t y = 0; y < n; ++y) {
      uint32_t ya = y / nb, yb = y % nb;
      mul[(size_t)x * n + y] = (uint16_t)(a->mul(xa, ya) * nb + b->mul(xb, yb));
    }
  }
  std::vector<std::string> names(n);
  for (uint32_t x = 0; x < n; ++x)
    names[x] = "(" + a->element_name(x / nb) + "|" + b->element_name(x % nb) + ")";
  std::vector<uint16_t> gens;
  for (uint16_t g : a->generators()) gens.push_back((uint16_t)(g * nb));
  for (uint16_t g : b->generators()) gens.push_back(g);
  return from_table(std::move(mul), std::move(names), std::move(gens),
                    a->name() + "x" + b->name());
}

GroupPtr GroupTable::from_table(std::vector<uint16_t> mul, std::vector<std::string> names,
                                std::vector<uint16_t> gens, std::string name) {
  auto table = std::shared_ptr<GroupTable>(new GroupTable());
  table->n_ = (uint32_t)names.size();
  require(mul.size() == (size_t)table->n_ * table->n_, Errc::internal, "table size mismatch");
  table->mul_ = std::move(mul);
  table->names_ = std::move(names);
  table->gens_ = std::move(gens);
  table->name_ = std::move(name);
  table->finish(true);
  return table;
}

uint32_t GroupTable::element_order(uint32_t x) const {
  uint32_t k = 1, y = x;
  while (y != 0) {
    y = mul(y, x);
    ++k;
  }
  return k;
}

bool GroupTable::is_abelian() const {
  for (uint32_t a = 0; a < n_; ++a)
    for (uint32_t b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int GroupTable::element_by_name(const std::string& s) const {
  for (uint32_t i = 0; i < n_; ++i)
    if (names_[i] == s) return (int)i;
  return -1;
}

// ---- ElementSet ---------------------------------------------------------

ElementSet::ElementSet(GroupPtr parent)
    : parent_(std::move(parent)), n_(parent_->order()), w_((n_ + 63) / 64, 0) {}

ElementSet ElementSet::full(GroupPtr parent) {
  ElementSet s(std::move(parent));
  for (uint32_t i = 0; i < s.n_; ++i) s.set(i);
  return s;
}

ElementSet ElementSet::of(GroupPtr parent, std::initializer_list<uint32_t> xs) {
  ElementSet s(std::move(parent));
  for (uint32_t x : xs) {
    require(x < s.n_, Errc::domain_error, "element index out of range");
    s.set(x);
  }
  return s;
}

ElementSet ElementSet::from_indices(GroupPtr parent, const std::vector<uint32_t>& xs) {
  ElementSet s(std::move(parent));
  for (uint32_t x : xs) {
    require(x < s.n_, Errc::domain_error, "element index out of range");
    s.set(x);
  }
  return s;
}

void ElementSet::clear() { std::fill(w_.begin(), w_.end(), 0); }

uint32_t ElementSet::count() const {
  uint32_t c = 0;
  for (uint64_t w : w_) c += (uint32_t)__builtin_popcountll(w);
  return c;
}

int ElementSet::first() const {
  for (size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return (int)(k * 64 + __builtin_ctzll(w_[k]));
  return -1;
}

std::vector<uint32_t> ElementSet::members() const {
  std::vector<uint32_t> out;
  out.reserve(count());
  for_each([&](uint32_t i) { out.push_back(i); });
  return out;
}

void check_same_parent(const ElementSet& a, const ElementSet& b) {
  require(a.parent() == b.parent(), Errc::mismatched_parents,
          "sets live in different group tables");
}

ElementSet& ElementSet::operator|=(const ElementSet& o) {
  check_same_parent(*this, o);
  for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& o) {
  check_same_parent(*this, o);
  for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& o) {
  check_same_parent(*this, o);
  for (size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  return *this;
}

ElementSet ElementSet::complement() const {
  ElementSet out(parent_);
  for (size_t k = 0; k < w_.size(); ++k) out.w_[k] = ~w_[k];
  uint32_t tail = n_ & 63;
  if (tail) out.w_.back() &= (1ull << tail) - 1;
  return out;
}

bool ElementSet::operator==(const ElementSet& o) const {
  return parent_ == o.parent_ && w_ == o.w_;
}

bool ElementSet::is_subset_of(const ElementSet& o) const {
  check_same_parent(*this, o);
  for (size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & ~o.w_[k]) return false;
  return true;
}

bool ElementSet::intersects(const ElementSet& o) const {
  check_same_parent(*this, o);
  for (size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & o.w_[k]) return true;
  return false;
}

bool ElementSet::lex_less(const ElementSet& a, const ElementSet& b) {
  std::vector<uint32_t> va = a.members(), vb = b.members();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

// ---- Subgroup / Homomorphism --------------------------------------------

Subgroup::Subgroup(ElementSet members) : members_(std::move(members)) {
  const auto& g = *members_.parent();
  require(members_.test(0), Errc::domain_error, "subgroup must contain the identity");
  bool closed = true;
  members_.for_each([&](uint32_t a) {
    if (!closed) return;
    members_.for_each([&](uint32_t b) {
      if (closed && !members_.test(g.mul(a, b))) closed = false;
    });
  });
  require(closed, Errc::domain_error, "subgroup members not closed under product");
  require(g.order() % members_.count() == 0, Errc::internal, "Lagrange violation");
}

Homomorphism::Homomorphism(GroupPtr domain, GroupPtr codomain, std::vector<uint16_t> map)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(map)) {
  require(map_.size() == domain_->order(), Errc::domain_error, "map length != domain order");
  require(map_[0] == 0, Errc::domain_error, "map must send identity to identity");
  for (uint32_t a = 0; a < domain_->order(); ++a)
    for (uint32_t b = 0; b < domain_->order(); ++b)
      require(map_[domain_->mul(a, b)] == codomain_->mul(map_[a], map_[b]), Errc::domain_error,
              "not a homomorphism");
}

Homomorphism::Homomorphism(GroupPtr domain, GroupPtr codomain, std::vector<uint16_t> map,
                           unchecked_t)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(map)) {}

ElementSet Homomorphism::image(const ElementSet& s) const {
  require(s.parent() == domain_, Errc::mismatched_parents, "image: set not in domain");
  ElementSet out(codomain_);
  s.for_each([&](uint32_t x) { out.set(map_[x]); });
  return out;
}

ElementSet Homomorphism::preimage(const ElementSet& s) const {
  require(s.parent() == codomain_, Errc::mismatched_parents, "preimage: set not in codomain");
  ElementSet out(domain_);
  for (uint32_t x = 0; x < domain_->order(); ++x)
    if (s.test(map_[x])) out.set(x);
  return out;
}

bool Homomorphism::surjective() const {
  ElementSet img = image(ElementSet::full(domain_));
  return img.count() == codomain_->order();
}

}  // namespace gg
