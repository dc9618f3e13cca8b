#include "gg/catalog.hpp"

#include <fstream>
#include <sstream>

namespace gg {

std::vector<Permutation> parse_generator_list(const std::string& text, int degree) {
  std::vector<Permutation> gens;
  std::string piece;
  std::stringstream ss(text);
  while (std::getline(ss, piece, ';')) {
    size_t a = piece.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = piece.find_last_not_of(" \t");
    gens.push_back(Permutation::parse_cycles(piece.substr(a, b - a + 1), degree));
  }
  require(!gens.empty(), Errc::parse_error, "empty generator list");
  return gens;
}

namespace {

std::string range_cycle(int lo, int hi) {  // (lo lo+1 ... hi)
  std::string s = "(";
  for (int i = lo; i <= hi; ++i) {
    if (i > lo) s += ' ';
    s += std::to_string(i);
  }
  return s + ")";
}

std::string cyclic_gens(int n) { return n == 1 ? "()" : range_cycle(0, n - 1); }

std::string dihedral_gens(int k) {
  std::string refl;
  for (int i = 1; 2 * i < k; ++i)
    refl += "(" + std::to_string(i) + " " + std::to_string(k - i) + ")";
  return range_cycle(0, k - 1) + "; " + refl;
}

std::string symmetric_gens(int n) {
  std::string s;
  for (int i = 0; i + 1 < n; ++i) {
    if (i) s += "; ";
    s += "(" + std::to_string(i) + " " + std::to_string(i + 1) + ")";
  }
  return s;
}

std::string alternating_gens(int n) {
  if (n == 3) return "(0 1 2)";
  if (n % 2 == 1) return "(0 1 2); " + range_cycle(0, n - 1);
  return "(0 1 2); " + range_cycle(1, n - 1);
}

std::string elementary_gens(int p, int k) {
  std::string s;
  for (int i = 0; i < k; ++i) {
    if (i) s += "; ";
    s += range_cycle(i * p, i * p + p - 1);
  }
  return s;
}

// Shift every point of a generator list by `off` (direct products act on
// disjoint point sets).
std::string shift_points(const std::string& gens, int off) {
  std::string out;
  size_t i = 0;
  while (i < gens.size()) {
    if (isdigit((unsigned char)gens[i])) {
      int v = 0;
      while (i < gens.size() && isdigit((unsigned char)gens[i])) v = v * 10 + (gens[i++] - '0');
      out += std::to_string(v + off);
    } else {
      out += gens[i++];
    }
  }
  return out;
}

std::vector<Catalog::Entry> builtin_list() {
  std::vector<Catalog::Entry> v;
  for (int n : {1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13, 14, 15, 16,
                18, 20, 21, 24, 25, 27, 28, 30, 32, 33, 35, 36, 39, 40, 42, 45,
                48, 49, 55, 60, 63, 64, 75, 81, 99, 100, 105, 120})
    v.push_back({"C" + std::to_string(n), n, cyclic_gens(n), (uint32_t)n});

  struct Part {
    int degree;
    std::string gens;
    uint32_t order;
  };
  auto prod = [&](const std::string& name, std::vector<Part> parts) {
    int degree = 0;
    uint32_t order = 1;
    std::string gens;
    for (auto& p : parts) {
      if (!gens.empty()) gens += "; ";
      gens += shift_points(p.gens, degree);
      degree += p.degree;
      order *= p.order;
    }
    v.push_back({name, degree, gens, order});
  };
  auto cyc = [&](int n) { return Part{n, cyclic_gens(n), (uint32_t)n}; };

  prod("C2xC2", {cyc(2), cyc(2)});
  prod("C2xC4", {cyc(2), cyc(4)});
  prod("C2xC2xC2", {cyc(2), cyc(2), cyc(2)});
  prod("C3xC3", {cyc(3), cyc(3)});
  prod("C2xC6", {cyc(2), cyc(6)});
  prod("C2xC8", {cyc(2), cyc(8)});
  prod("C4xC4", {cyc(4), cyc(4)});
  prod("C2xC2xC4", {cyc(2), cyc(2), cyc(4)});
  prod("C2xC2xC2xC2", {cyc(2), cyc(2), cyc(2), cyc(2)});
  prod("C3xC6", {cyc(3), cyc(6)});
  prod("C2xC10", {cyc(2), cyc(10)});
  prod("C5xC5", {cyc(5), cyc(5)});
  prod("C3xC9", {cyc(3), cyc(9)});
  prod("C3xC3xC3", {cyc(3), cyc(3), cyc(3)});
  prod("C3xC15", {cyc(3), cyc(15)});
  prod("C7xC7", {cyc(7), cyc(7)});
  prod("C3xC21", {cyc(3), cyc(21)});
  prod("C5xC5xC3", {cyc(5), cyc(5), cyc(3)});

  for (int k : {4, 5, 6, 7, 8, 9, 10, 12, 15, 16})
    v.push_back({"D" + std::to_string(k), k, dihedral_gens(k), 2 * (uint32_t)k});
  for (int n : {3, 4, 5, 6}) {
    uint32_t f = 1;
    for (int i = 2; i <= n; ++i) f *= (uint32_t)i;
    v.push_back({"S" + std::to_string(n), n, symmetric_gens(n), f});
    if (n >= 4) v.push_back({"A" + std::to_string(n), n, alternating_gens(n), f / 2});
  }

  v.push_back({"Q8", 8, "(0 1 2 3)(4 5 6 7); (0 4 2 6)(1 7 3 5)", 8});
  v.push_back({"Q16", 16,
               "(0 1 2 3 4 5 6 7)(8 15 14 13 12 11 10 9); "
               "(0 8 4 12)(1 9 5 13)(2 10 6 14)(3 11 7 15)",
               16});
  v.push_back({"Dic3", 7, "(0 1 2); (1 2)(3 4 5 6)", 12});
  v.push_back({"SL23", 8, "(0 3 6)(1 7 4); (0 5 1 2)(3 6 7 4)", 24});
  prod("C2xA4", {cyc(2), {4, alternating_gens(4), 12}});
  // Frobenius groups of order pq and the two nonabelian groups of order 27.
  v.push_back({"F21", 7, "(0 1 2 3 4 5 6); (1 2 4)(3 6 5)", 21});
  v.push_back({"F39", 13, "(0 1 2 3 4 5 6 7 8 9 10 11 12); (1 3 9)(2 6 5)(4 12 10)(7 8 11)", 39});
  v.push_back({"F55", 11, "(0 1 2 3 4 5 6 7 8 9 10); (1 3 9 5 4)(2 6 7 10 8)", 55});
  v.push_back({"He3", 9, "(0 3 6)(1 4 7)(2 5 8); (3 4 5)(6 8 7)", 27});
  v.push_back({"M27", 9, "(0 1 2 3 4 5 6 7 8); (1 4 7)(2 8 5)", 27});
  prod("C5xF21", {cyc(5), {7, "(0 1 2 3 4 5 6); (1 2 4)(3 6 5)", 21}});
  return v;
}

}  // namespace

Catalog Catalog::with_builtins() {
  Catalog c;
  for (auto& b : builtin_list()) c.add(std::move(b));
  return c;
}

void Catalog::add(Entry e) {
  require(!has(e.name), Errc::domain_error, "duplicate catalog entry " + e.name);
  entries_.push_back(std::move(e));
}

bool Catalog::has(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

GroupPtr Catalog::get(const std::string& name) const {
  {
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
  }
  const Entry* found = nullptr;
  for (const auto& e : entries_)
    if (e.name == name) {
      found = &e;
      break;
    }
  require(found != nullptr, Errc::not_found, "no catalog group named " + name);
  auto g = GroupTable::from_generators(parse_generator_list(found->gens, found->degree),
                                       found->name);
  require(found->declared_order == 0 || g->order() == found->declared_order, Errc::internal,
          "catalog order mismatch for " + name);
  std::lock_guard<std::mutex> lock(*mu_);
  cache_.emplace(name, g);
  return g;
}

void Catalog::load_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::not_found, "cannot open catalog file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path);
}

void Catalog::load_text(const std::string& text, const std::string& origin) {
  std::stringstream ss(text);
  std::string line;
  Entry cur;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    require(!cur.name.empty() && !cur.gens.empty(), Errc::parse_error,
            origin + ": record missing name or gens");
    // parse now so malformed generators are rejected at load time
    parse_generator_list(cur.gens, cur.degree);
    add(cur);
    cur = Entry{};
    open = false;
  };
  while (std::getline(ss, line)) {
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
      flush();
      continue;
    }
    if (line[a] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    size_t r = rest.find_first_not_of(" \t");
    rest = r == std::string::npos ? "" : rest.substr(r);
    if (!rest.empty() && rest.back() == '\r') rest.pop_back();
    open = true;
    if (key == "name") cur.name = rest;
    else if (key == "degree") cur.degree = std::stoi(rest);
    else if (key == "gens") cur.gens = rest;
    else fail(Errc::parse_error, origin + ": unknown key '" + key + "'");
  }
  flush();
}

GroupPtr Catalog::cyclic(uint32_t n) {
  return GroupTable::from_generators(parse_generator_list(cyclic_gens((int)n), (int)n),
                                     "C" + std::to_string(n));
}

GroupPtr Catalog::dihedral(uint32_t k) {
  require(k >= 3, Errc::domain_error, "dihedral needs k >= 3");
  return GroupTable::from_generators(parse_generator_list(dihedral_gens((int)k), (int)k),
                                     "D" + std::to_string(k));
}

GroupPtr Catalog::symmetric(uint32_t n) {
  require(n >= 2 && n <= 6, Errc::domain_error, "symmetric constructor supports 2..6");
  return GroupTable::from_generators(parse_generator_list(symmetric_gens((int)n), (int)n),
                                     "S" + std::to_string(n));
}

GroupPtr Catalog::alternating(uint32_t n) {
  require(n >= 3 && n <= 6, Errc::domain_error, "alternating constructor supports 3..6");
  return GroupTable::from_generators(parse_generator_list(alternating_gens((int)n), (int)n),
                                     "A" + std::to_string(n));
}

GroupPtr Catalog::elementary_abelian(uint32_t p, uint32_t k) {
  require(k >= 1, Errc::domain_error, "rank must be positive");
  std::string name = "C" + std::to_string(p);
  for (uint32_t i = 1; i < k; ++i) name += "xC" + std::to_string(p);
  return GroupTable::from_generators(
      parse_generator_list(elementary_gens((int)p, (int)k), (int)(p * k)), name);
}

}  // namespace gg
