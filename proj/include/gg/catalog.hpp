#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gg/group.hpp"

namespace gg {

// Named source of groups. Entries are stored the same way the catalog file
// format stores them: a degree plus semicolon-separated permutation
// generators in cycle notation. Tables are built lazily and cached.
class Catalog {
 public:
  struct Entry {
    std::string name;
    int degree = 1;
    std::string gens;            // "(0 1)(2 3); (0 1 2)"
    uint32_t declared_order = 0; // sanity-checked on first build
  };

  static Catalog with_builtins();

  void add(Entry e);
  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& origin = "<text>");

  bool has(const std::string& name) const;
  GroupPtr get(const std::string& name) const;  // throws not_found
  const std::vector<Entry>& entries() const { return entries_; }

  // Ad-hoc constructors (not registered); n-cycle generator and friends.
  static GroupPtr cyclic(uint32_t n);
  static GroupPtr dihedral(uint32_t k);            // order 2k, k >= 3
  static GroupPtr symmetric(uint32_t n);           // n <= 6
  static GroupPtr alternating(uint32_t n);         // 3 <= n <= 6
  static GroupPtr elementary_abelian(uint32_t p, uint32_t k);

 private:
  std::vector<Entry> entries_;
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  mutable std::map<std::string, GroupPtr> cache_;
};

std::vector<Permutation> parse_generator_list(const std::string& text, int degree);

}  // namespace gg
