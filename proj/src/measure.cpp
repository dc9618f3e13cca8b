#include "gg/measure.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "gg/growth.hpp"

namespace gg {

namespace {
std::atomic<uint64_t> next_id{1};
}

int FgGroup::gen_by_name(const std::string& s) const {
  for (size_t i = 0; i < gen_names.size(); ++i)
    if (gen_names[i] == s) return (int)i;
  return -1;
}

FgGroupPtr make_fg_group(std::vector<std::string> gen_names) {
  require(!gen_names.empty(), Errc::domain_error, "source group needs at least one generator");
  auto g = std::make_shared<FgGroup>();
  g->id = next_id.fetch_add(1);
  g->gen_names = std::move(gen_names);
  return g;
}

Word Word::parse(const FgGroup& src, const std::string& text) {
  Word w;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    bool inverse = false;
    if (tok.size() > 1 && tok.back() == '\'') {
      inverse = true;
      tok.pop_back();
    }
    int g = src.gen_by_name(tok);
    require(g >= 0, Errc::parse_error, "unknown generator '" + tok + "' in word");
    w.letters.push_back({(uint32_t)g, inverse});
  }
  return w;
}

Epimorphism::Epimorphism(FgGroupPtr source, GroupPtr target, std::vector<uint16_t> gen_images,
                         std::string name)
    : source_(std::move(source)),
      target_(std::move(target)),
      gen_images_(std::move(gen_images)),
      name_(std::move(name)),
      id_(next_id.fetch_add(1)) {
  require(gen_images_.size() == source_->dgen(), Errc::domain_error,
          "one image per source generator required");
  for (uint16_t x : gen_images_)
    require(x < target_->order(), Errc::domain_error, "generator image out of range");
  ElementSet seed(target_);
  seed.set(0);
  for (uint16_t x : gen_images_) seed.set(x);
  require(subgroup_closure(seed).order() == target_->order(), Errc::domain_error,
          "images do not generate the target: not an epimorphism");
}

uint16_t Epimorphism::eval(const Word& w) const {
  uint16_t acc = 0;
  for (const auto& l : w.letters) {
    uint16_t x = gen_images_[l.gen];
    if (l.inverse) x = target_->inv(x);
    acc = target_->mul(acc, x);
  }
  return acc;
}

ChartPtr make_chart(FgGroupPtr source, GroupPtr target, std::vector<uint16_t> gen_images,
                    std::string name) {
  return std::make_shared<Epimorphism>(std::move(source), std::move(target),
                                       std::move(gen_images), std::move(name));
}

// ---- refinement ----------------------------------------------------------

namespace {

std::mutex refine_mu;
std::map<std::pair<uint64_t, uint64_t>, Refinement> refine_memo;

Refinement compute_refinement(const ChartPtr& a, const ChartPtr& b, uint32_t cap) {
  const GroupPtr& t1 = a->target();
  const GroupPtr& t2 = b->target();
  uint32_t n2 = t2->order();
  uint64_t pn = (uint64_t)t1->order() * n2;
  require(pn <= cap, Errc::closure_overflow, "refinement target exceeds cap");
  auto prod = GroupTable::direct_product(t1, t2, cap);

  ElementSet seed(prod);
  seed.set(0);
  std::vector<uint32_t> gen_pairs;
  for (uint32_t i = 0; i < a->source()->dgen(); ++i) {
    uint32_t pair = (uint32_t)a->gen_images()[i] * n2 + b->gen_images()[i];
    gen_pairs.push_back(pair);
    seed.set(pair);
  }
  Subgroup fiber = subgroup_closure(seed);
  auto [q, to_parent] = subgroup_as_group(fiber);

  std::vector<uint16_t> p1(q->order()), p2(q->order());
  for (uint32_t i = 0; i < q->order(); ++i) {
    p1[i] = (uint16_t)(to_parent[i] / n2);
    p2[i] = (uint16_t)(to_parent[i] % n2);
  }
  std::vector<uint16_t> to_local(prod->order(), 0xffff);
  for (uint32_t i = 0; i < q->order(); ++i) to_local[to_parent[i]] = (uint16_t)i;
  std::vector<uint16_t> images;
  for (uint32_t pair : gen_pairs) images.push_back(to_local[pair]);

  Refinement r{make_chart(a->source(), q, images,
                          a->name().empty() || b->name().empty()
                              ? std::string{}
                              : a->name() + "&" + b->name()),
               Homomorphism(q, t1, std::move(p1), Homomorphism::unchecked_t{}),
               Homomorphism(q, t2, std::move(p2), Homomorphism::unchecked_t{})};
  require(r.proj1.surjective() && r.proj2.surjective(), Errc::internal,
          "fiber product projections must be surjective");
  return r;
}

Homomorphism identity_hom(const GroupPtr& g) {
  std::vector<uint16_t> id(g->order());
  for (uint32_t i = 0; i < g->order(); ++i) id[i] = (uint16_t)i;
  return Homomorphism(g, g, std::move(id), Homomorphism::unchecked_t{});
}

}  // namespace

Refinement refine(const ChartPtr& a, const ChartPtr& b, uint32_t cap) {
  require(a->source() == b->source(), Errc::mismatched_parents,
          "charts must share one source group");
  if (a->id() == b->id()) {
    // the coarsest common refinement of a chart with itself is itself
    return {a, identity_hom(a->target()), identity_hom(a->target())};
  }
  auto key = std::make_pair(a->id(), b->id());
  {
    std::lock_guard<std::mutex> lock(refine_mu);
    auto it = refine_memo.find(key);
    if (it != refine_memo.end()) return it->second;
  }
  Refinement r = compute_refinement(a, b, cap);
  std::lock_guard<std::mutex> lock(refine_mu);
  return refine_memo.emplace(key, std::move(r)).first->second;
}

// ---- measurable sets -----------------------------------------------------

MeasurableSet::MeasurableSet(ChartPtr chart, ElementSet body)
    : chart_(std::move(chart)), body_(std::move(body)) {
  require(body_.parent() == chart_->target(), Errc::mismatched_parents,
          "body must live in the chart target");
}

Rational MeasurableSet::measure() const {
  return Rational(body_.count(), chart_->target()->order());
}

namespace {

// Both bodies in one chart; identical charts short-circuit to themselves.
struct Aligned {
  ChartPtr chart;
  ElementSet a, b;
};

Aligned align(const MeasurableSet& x, const MeasurableSet& y) {
  if (x.chart()->id() == y.chart()->id()) return {x.chart(), x.body(), y.body()};
  Refinement r = refine(x.chart(), y.chart());
  return {r.chart, r.proj1.preimage(x.body()), r.proj2.preimage(y.body())};
}

}  // namespace

MeasurableSet munion(const MeasurableSet& a, const MeasurableSet& b) {
  Aligned al = align(a, b);
  al.a |= al.b;
  return {al.chart, std::move(al.a)};
}

MeasurableSet mintersect(const MeasurableSet& a, const MeasurableSet& b) {
  Aligned al = align(a, b);
  al.a &= al.b;
  return {al.chart, std::move(al.a)};
}

MeasurableSet mdifference(const MeasurableSet& a, const MeasurableSet& b) {
  Aligned al = align(a, b);
  al.a -= al.b;
  return {al.chart, std::move(al.a)};
}

MeasurableSet mcomplement(const MeasurableSet& a) { return {a.chart(), a.body().complement()}; }

MeasurableSet mtranslate_left(const MeasurableSet& a, const Word& w) {
  uint16_t g = a.chart()->eval(w);
  return {a.chart(), translate_left(a.body(), g)};
}

MeasurableSet mtranslate_right(const MeasurableSet& a, const Word& w) {
  uint16_t g = a.chart()->eval(w);
  return {a.chart(), translate_right(a.body(), g)};
}

MeasurableSet minvert(const MeasurableSet& a) { return {a.chart(), inverse_set(a.body())}; }

MeasurableSet mproduct(const MeasurableSet& a, const MeasurableSet& b) {
  Aligned al = align(a, b);
  return {al.chart, product_set(al.a, al.b)};
}

bool msets_equal(const MeasurableSet& a, const MeasurableSet& b) {
  Aligned al = align(a, b);
  return al.a == al.b;
}

MeasurableSet rechart(const MeasurableSet& a, const ChartPtr& via) {
  Refinement r = refine(a.chart(), via);
  return {r.chart, r.proj1.preimage(a.body())};
}

// ---- registry ------------------------------------------------------------

FgGroupPtr QuotientRegistry::source_for(const std::vector<std::string>& gen_names) {
  for (const auto& s : sources_)
    if (s->gen_names == gen_names) return s;
  sources_.push_back(make_fg_group(gen_names));
  return sources_.back();
}

void QuotientRegistry::add(const std::string& name, ChartPtr chart) {
  require(!charts_.count(name), Errc::domain_error, "duplicate quotient name " + name);
  charts_.emplace(name, std::move(chart));
  order_.push_back(name);
}

ChartPtr QuotientRegistry::chart(const std::string& name) const {
  auto it = charts_.find(name);
  require(it != charts_.end(), Errc::not_found, "no quotient named " + name);
  return it->second;
}

std::vector<std::string> QuotientRegistry::names() const { return order_; }

void QuotientRegistry::load_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::not_found, "cannot open quotient file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path);
}

void QuotientRegistry::load_text(const std::string& text, const std::string& origin) {
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::istringstream ls(line);
    std::string kw, name, colon, group_name;
    ls >> kw >> name >> colon >> group_name;
    require(kw == "quotient" && colon == ":", Errc::parse_error,
            origin + ": expected 'quotient <name> : <group> ; images ...' in: " + line);
    if (!group_name.empty() && group_name.back() == ';') {
      group_name.pop_back();
    } else {
      std::string semi;
      ls >> semi;
      require(semi == ";", Errc::parse_error, origin + ": missing ';' in: " + line);
    }
    std::string kw2;
    ls >> kw2;
    require(kw2 == "images", Errc::parse_error, origin + ": missing images in: " + line);
    std::string rest;
    std::getline(ls, rest);

    GroupPtr target = catalog_->get(group_name);
    std::vector<std::string> gen_names;
    std::vector<uint16_t> images;
    std::istringstream rs(rest);
    std::string assign;
    while (std::getline(rs, assign, ',')) {
      size_t eq = assign.find('=');
      require(eq != std::string::npos, Errc::parse_error, origin + ": bad image '" + assign + "'");
      auto trim = [](std::string s) {
        size_t x = s.find_first_not_of(" \t");
        size_t y = s.find_last_not_of(" \t");
        return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
      };
      std::string gname = trim(assign.substr(0, eq));
      std::string val = trim(assign.substr(eq + 1));
      gen_names.push_back(gname);
      int idx = -1;
      if (!val.empty() && isdigit((unsigned char)val[0]))
        idx = std::stoi(val);
      else
        idx = target->element_by_name(val);
      require(idx >= 0 && idx < (int)target->order(), Errc::parse_error,
              origin + ": unknown element '" + val + "' in " + group_name);
      images.push_back((uint16_t)idx);
    }
    add(name, make_chart(source_for(gen_names), target, images, name));
  }
}

MeasurableSet QuotientRegistry::parse_set(const std::string& literal) const {
  // chart <name> ; elements {i,j,k}  |  chart <name> ; coset {i,j,...} * <word>
  std::istringstream ls(literal);
  std::string kw, name, semi;
  ls >> kw >> name >> semi;
  require(kw == "chart" && semi == ";", Errc::parse_error,
          "expected 'chart <name> ; ...' in: " + literal);
  ChartPtr ch = chart(name);
  std::string mode;
  ls >> mode;
  auto parse_braces = [&](const std::string& brace) {
    require(brace.size() >= 2 && brace.front() == '{' && brace.back() == '}', Errc::parse_error,
            "expected {i,j,...} in: " + literal);
    std::vector<uint32_t> idx;
    std::string inner = brace.substr(1, brace.size() - 2);
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ','))
      if (!tok.empty()) idx.push_back((uint32_t)std::stoul(tok));
    return idx;
  };
  if (mode == "elements") {
    std::string brace;
    ls >> brace;
    return {ch, ElementSet::from_indices(ch->target(), parse_braces(brace))};
  }
  require(mode == "coset", Errc::parse_error, "expected 'elements' or 'coset' in: " + literal);
  std::string brace, star;
  ls >> brace >> star;
  require(star == "*", Errc::parse_error, "expected '*' in coset literal: " + literal);
  std::string word_text;
  std::getline(ls, word_text);
  ElementSet members = ElementSet::from_indices(ch->target(), parse_braces(brace));
  Subgroup h = subgroup_closure(members);
  require(h.members() == members, Errc::parse_error, "coset base is not a subgroup");
  Word w = Word::parse(*ch->source(), word_text);
  return {ch, translate_left(h.members(), ch->eval(w))};
}

}  // namespace gg
