#pragma once

#include <string>
#include <vector>

#include "gg/error.hpp"

namespace gg {

// Bijection on {0..degree-1}. Products compose left to right:
// (p * q) moves i to q[p[i]], i.e. p acts first.
class Permutation {
 public:
  explicit Permutation(int degree);  // identity
  Permutation(int degree, std::vector<int> images);

  int degree() const { return degree_; }
  int apply(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  bool operator==(const Permutation& rhs) const = default;

  // Cycle notation, e.g. "(0 1)(2 3)"; "()" for the identity. Point
  // separators may be spaces or commas.
  static Permutation parse_cycles(const std::string& text, int degree);
  std::string cycle_string() const;

 private:
  int degree_;
  std::vector<int> images_;
  void validate() const;
};

}  // namespace gg
