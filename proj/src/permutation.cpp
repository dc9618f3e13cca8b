#include "gg/permutation.hpp"

#include <sstream>

#include "gg/rational.hpp"

namespace gg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "ok";
    case Errc::invalid_permutation: return "InvalidPermutation";
    case Errc::closure_overflow: return "ClosureOverflow";
    case Errc::lattice_overflow: return "LatticeOverflow";
    case Errc::not_normal: return "NotNormal";
    case Errc::not_abelian: return "NotAbelian";
    case Errc::p_not_dividing: return "PNotDividing";
    case Errc::even_order: return "EvenOrder";
    case Errc::odd_order: return "OddOrder";
    case Errc::exceptional_group: return "ExceptionalGroup";
    case Errc::no_normal_series: return "NoNormalSeries";
    case Errc::partition_conflict: return "PartitionConflict";
    case Errc::structure_violation: return "StructureViolation";
    case Errc::rank_too_small: return "RankTooSmall";
    case Errc::not_product_free: return "NotProductFree";
    case Errc::measure_exceeds_half: return "MeasureExceedsHalf";
    case Errc::domain_error: return "DomainError";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::not_found: return "NotFound";
    case Errc::mismatched_parents: return "MismatchedParents";
    case Errc::usage: return "Usage";
    case Errc::internal: return "Internal";
  }
  return "Unknown";
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      long long n = std::stoll(text.substr(0, slash));
      long long d = std::stoll(text.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      long long d = 1;
      for (size_t i = dot + 1; i < text.size(); ++i) d *= 10;
      return Rational(std::stoll(digits), d);
    }
    return Rational(std::stoll(text));
  } catch (const std::exception&) {
    fail(Errc::parse_error, "bad rational literal '" + text + "'");
  }
}

Permutation::Permutation(int degree) : degree_(degree), images_(degree) {
  require(degree >= 1, Errc::invalid_permutation, "degree must be positive");
  for (int i = 0; i < degree; ++i) images_[i] = i;
}

Permutation::Permutation(int degree, std::vector<int> images)
    : degree_(degree), images_(std::move(images)) {
  validate();
}

void Permutation::validate() const {
  require(degree_ >= 1, Errc::invalid_permutation, "degree must be positive");
  require((int)images_.size() == degree_, Errc::invalid_permutation, "images length != degree");
  std::vector<char> seen(degree_, 0);
  for (int v : images_) {
    require(v >= 0 && v < degree_ && !seen[v], Errc::invalid_permutation,
            "images not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  require(degree_ == rhs.degree_, Errc::invalid_permutation, "degree mismatch in product");
  std::vector<int> out(degree_);
  for (int i = 0; i < degree_; ++i) out[i] = rhs.images_[images_[i]];
  Permutation p(degree_);
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(degree_);
  for (int i = 0; i < degree_; ++i) out[images_[i]] = i;
  Permutation p(degree_);
  p.images_ = std::move(out);
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree_; ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::parse_cycles(const std::string& text, int degree) {
  Permutation result(degree);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (isspace((unsigned char)text[pos]) || text[pos] == ','))
      ++pos;
  };
  skip_ws();
  bool saw_cycle = false;
  while (pos < text.size()) {
    require(text[pos] == '(', Errc::parse_error, "expected '(' in cycle notation: " + text);
    ++pos;
    std::vector<int> cycle;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      require(isdigit((unsigned char)text[pos]), Errc::parse_error,
              "expected point in cycle notation: " + text);
      int v = 0;
      while (pos < text.size() && isdigit((unsigned char)text[pos]))
        v = v * 10 + (text[pos++] - '0');
      require(v < degree, Errc::parse_error,
              "point " + std::to_string(v) + " out of range for degree " + std::to_string(degree));
      for (int seen : cycle)
        require(seen != v, Errc::invalid_permutation,
                "point " + std::to_string(v) + " repeated inside a cycle: " + text);
      cycle.push_back(v);
      skip_ws();
    }
    require(pos < text.size(), Errc::parse_error, "unterminated cycle: " + text);
    ++pos;  // ')'
    skip_ws();
    saw_cycle = true;
    Permutation c(degree);
    for (size_t i = 0; i < cycle.size(); ++i)
      c.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
    c.validate();  // rejects repeated points inside one cycle
    result = result * c;
  }
  require(saw_cycle, Errc::parse_error, "empty permutation literal");
  return result;
}

std::string Permutation::cycle_string() const {
  std::ostringstream out;
  std::vector<char> seen(degree_, 0);
  bool any = false;
  for (int i = 0; i < degree_; ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    out << '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out << ' ';
      out << j;
      first = false;
      j = images_[j];
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace gg
