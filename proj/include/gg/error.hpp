#pragma once

#include <stdexcept>
#include <string>

namespace gg {

enum class Errc {
  ok = 0,
  invalid_permutation,
  closure_overflow,
  lattice_overflow,
  not_normal,
  not_abelian,
  p_not_dividing,
  even_order,
  odd_order,
  exceptional_group,
  no_normal_series,
  partition_conflict,
  structure_violation,
  rank_too_small,
  not_product_free,
  measure_exceeds_half,
  domain_error,
  budget_exceeded,
  parse_error,
  not_found,
  mismatched_parents,
  usage,
  internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, Errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

}  // namespace gg
