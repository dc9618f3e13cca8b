#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gg/catalog.hpp"
#include "gg/group.hpp"
#include "gg/rational.hpp"

namespace gg {

// Abstract finitely generated group. Only a handle: the group itself is
// never materialized, everything happens through its finite quotients.
struct FgGroup {
  uint64_t id;
  std::vector<std::string> gen_names;
  uint32_t dgen() const { return (uint32_t)gen_names.size(); }
  int gen_by_name(const std::string& s) const;
};
using FgGroupPtr = std::shared_ptr<const FgGroup>;

FgGroupPtr make_fg_group(std::vector<std::string> gen_names);

// Word over the source generators; a trailing apostrophe marks an inverse
// letter, e.g. "a b' a". Evaluated left to right.
struct Word {
  struct Letter {
    uint32_t gen;
    bool inverse;
  };
  std::vector<Letter> letters;
  static Word parse(const FgGroup& src, const std::string& text);
};

// Surjection from the abstract source onto a finite group, given by
// generator images. A chart through which measurable sets are represented.
class Epimorphism {
 public:
  Epimorphism(FgGroupPtr source, GroupPtr target, std::vector<uint16_t> gen_images,
              std::string name = {});

  const FgGroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const std::vector<uint16_t>& gen_images() const { return gen_images_; }
  const std::string& name() const { return name_; }
  uint64_t id() const { return id_; }

  uint16_t eval(const Word& w) const;

 private:
  FgGroupPtr source_;
  GroupPtr target_;
  std::vector<uint16_t> gen_images_;
  std::string name_;
  uint64_t id_;
};
using ChartPtr = std::shared_ptr<const Epimorphism>;

ChartPtr make_chart(FgGroupPtr source, GroupPtr target, std::vector<uint16_t> gen_images,
                    std::string name = {});

// Common refinement of two charts over one source: the fiber product
// closure inside target1 x target2, with the coordinate projections.
struct Refinement {
  ChartPtr chart;
  Homomorphism proj1, proj2;
};

// Results are memoized per chart pair; the cache is safe for concurrent use.
Refinement refine(const ChartPtr& a, const ChartPtr& b, uint32_t cap = kDefaultClosureCap);

// Finite union of cosets in the source group, represented as a subset of one
// finite quotient. Value semantics; immutable.
class MeasurableSet {
 public:
  MeasurableSet(ChartPtr chart, ElementSet body);
  const ChartPtr& chart() const { return chart_; }
  const ElementSet& body() const { return body_; }
  Rational measure() const;

 private:
  ChartPtr chart_;
  ElementSet body_;
};

// Boolean algebra; operands are pulled to the common refinement first.
// Same-chart operands stay in their chart (the coarsest representative).
MeasurableSet munion(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet mintersect(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet mdifference(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet mcomplement(const MeasurableSet& a);

MeasurableSet mtranslate_left(const MeasurableSet& a, const Word& w);
MeasurableSet mtranslate_right(const MeasurableSet& a, const Word& w);
MeasurableSet minvert(const MeasurableSet& a);

MeasurableSet mproduct(const MeasurableSet& a, const MeasurableSet& b);

bool msets_equal(const MeasurableSet& a, const MeasurableSet& b);

// Re-express a set through the refinement with another chart (same preimage).
MeasurableSet rechart(const MeasurableSet& a, const ChartPtr& via);

// Named charts over named sources, as loaded from a quotient registry file:
//   quotient <name> : <group-name> ; images g1=<element>, g2=<element>, ...
// All quotients sharing a generator-name set refer to one source group.
class QuotientRegistry {
 public:
  explicit QuotientRegistry(const Catalog* catalog) : catalog_(catalog) {}
  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& origin = "<text>");
  ChartPtr chart(const std::string& name) const;  // throws not_found
  std::vector<std::string> names() const;
  void add(const std::string& name, ChartPtr chart);
  FgGroupPtr source_for(const std::vector<std::string>& gen_names);

  // `chart <name> ; elements {i,j,k}` or `chart <name> ; coset {i,j,...} * <word>`
  MeasurableSet parse_set(const std::string& literal) const;

 private:
  const Catalog* catalog_;
  std::map<std::string, ChartPtr> charts_;
  std::vector<std::string> order_;
  std::vector<FgGroupPtr> sources_;
};

}  // namespace gg
