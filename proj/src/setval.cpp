#include "proind/setval.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "proind/errors.hpp"
#include "proind/text_format.hpp"

namespace proind::setval {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// Source and target sets of the function attached to morphism t.
std::pair<ObjId, ObjId> map_ends(const SetDiagram& d, MorphId t) {
  const auto& c = *d.index;
  return d.variance == Variance::kCovariant ? std::pair{c.dom(t), c.cod(t)}
                                            : std::pair{c.cod(t), c.dom(t)};
}

}  // namespace

std::vector<std::vector<Element>> ColimitResult::members() const {
  std::vector<std::vector<Element>> out(size());
  for (ObjId o = 0; o < class_of.size(); ++o) {
    for (std::uint32_t e = 0; e < class_of[o].size(); ++e) out[class_of[o][e]].push_back({o, e});
  }
  return out;
}

ArrowDiagram arrows_of(const SetDiagram& d) {
  ArrowDiagram a;
  a.sizes = d.sizes;
  for (MorphId t = 0; t < d.index->morphism_count(); ++t) {
    if (d.index->is_identity(t)) continue;
    auto [from, to] = map_ends(d, t);
    a.arrows.push_back({from, to, d.maps[t]});
  }
  return a;
}

std::vector<std::string> check_functorial(const SetDiagram& d) {
  std::vector<std::string> out;
  const auto& c = *d.index;
  if (d.sizes.size() != c.object_count() || d.maps.size() != c.morphism_count()) {
    out.push_back("diagram tables do not match the index category");
    return out;
  }
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    auto [from, to] = map_ends(d, t);
    if (d.maps[t].size() != d.sizes[from]) {
      out.push_back("map of '" + c.morphism_name(t) + "' has the wrong domain size");
      continue;
    }
    for (std::uint32_t v : d.maps[t]) {
      if (v >= d.sizes[to]) {
        out.push_back("map of '" + c.morphism_name(t) + "' leaves its codomain");
        break;
      }
    }
  }
  if (!out.empty()) return out;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const Table& id = d.maps[c.identity(x)];
    for (std::uint32_t e = 0; e < id.size(); ++e) {
      if (id[e] != e) {
        out.push_back("identity of '" + c.object_name(x) + "' is not the identity function");
        break;
      }
    }
  }
  const bool co = d.variance == Variance::kCovariant;
  for (MorphId g = 0; g < c.morphism_count(); ++g) {
    for (MorphId h : c.out(c.cod(g))) {
      const MorphId hg = c.compose(h, g);
      if (hg == fincat::kNoMorphism) {
        out.push_back("index category has no composite for '" + c.morphism_name(h) + "' . '" +
                      c.morphism_name(g) + "'");
        continue;
      }
      // Covariant: D(h.g) = D(h) o D(g); contravariant: D(h.g) = D(g) o D(h).
      const Table& first = co ? d.maps[g] : d.maps[h];
      const Table& second = co ? d.maps[h] : d.maps[g];
      const Table& whole = d.maps[hg];
      for (std::uint32_t e = 0; e < whole.size(); ++e) {
        if (second[first[e]] != whole[e]) {
          out.push_back("composite '" + c.morphism_name(h) + "' . '" + c.morphism_name(g) +
                        "' is not preserved");
          break;
        }
      }
    }
  }
  return out;
}

ColimitResult colimit(const ArrowDiagram& d) {
  std::vector<std::size_t> offset(d.sizes.size() + 1, 0);
  for (std::size_t o = 0; o < d.sizes.size(); ++o) offset[o + 1] = offset[o] + d.sizes[o];
  DisjointSets ds(offset.back());
  for (const auto& arrow : d.arrows) {
    for (std::uint32_t e = 0; e < arrow.map.size(); ++e) {
      ds.unite(offset[arrow.from] + e, offset[arrow.to] + arrow.map[e]);
    }
  }
  // Flat positions are already in (object, element) order, so the first time
  // a root is seen is its least member.
  ColimitResult r;
  r.class_of.resize(d.sizes.size());
  std::vector<std::uint32_t> label(offset.back(), static_cast<std::uint32_t>(-1));
  for (ObjId o = 0; o < d.sizes.size(); ++o) {
    r.class_of[o].resize(d.sizes[o]);
    for (std::uint32_t e = 0; e < d.sizes[o]; ++e) {
      const std::size_t root = ds.find(offset[o] + e);
      if (label[root] == static_cast<std::uint32_t>(-1)) {
        label[root] = static_cast<std::uint32_t>(r.representatives.size());
        r.representatives.push_back({o, e});
      }
      r.class_of[o][e] = label[root];
    }
  }
  return r;
}

ColimitResult filtered_colimit(const SetDiagram& d, const fincat::FilteringWitness* witness) {
  if (auto bad = check_functorial(d); !bad.empty()) fail(ErrorKind::kNonFunctorial, bad.front());
  if (witness == nullptr) {
    auto check = fincat::is_filtering(*d.index);
    if (auto* nf = std::get_if<fincat::NotFiltering>(&check)) {
      fail(ErrorKind::kNonFilteringIndex, nf->description);
    }
  }
  return colimit(arrows_of(d));
}

LimitResult limit(const ArrowDiagram& d) {
  const std::size_t n = d.sizes.size();
  std::vector<std::vector<const ArrowDiagram::Arrow*>> outgoing(n);
  std::vector<std::vector<const ArrowDiagram::Arrow*>> incoming(n);
  for (const auto& a : d.arrows) {
    outgoing[a.from].push_back(&a);
    incoming[a.to].push_back(&a);
  }
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> value(n, kUnset);
  std::vector<std::uint32_t> trail;
  LimitResult result;

  // Assigns o := v and propagates forced values; false on a conflict. All
  // assignments are pushed on the trail so the caller can undo them.
  auto assign = [&](std::uint32_t o, std::uint32_t v) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> work{{o, v}};
    while (!work.empty()) {
      auto [x, xv] = work.back();
      work.pop_back();
      if (value[x] != kUnset) {
        if (value[x] != xv) return false;
        continue;
      }
      value[x] = xv;
      trail.push_back(x);
      for (const auto* a : outgoing[x]) work.emplace_back(a->to, a->map[xv]);
      for (const auto* a : incoming[x]) {
        if (value[a->from] != kUnset && a->map[value[a->from]] != xv) return false;
      }
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::uint32_t next) -> void {
    while (next < n && value[next] != kUnset) ++next;
    if (next == n) {
      result.families.push_back(value);
      return;
    }
    for (std::uint32_t v = 0; v < d.sizes[next]; ++v) {
      const std::size_t mark = trail.size();
      if (assign(next, v)) self(self, next + 1);
      while (trail.size() > mark) {
        value[trail.back()] = kUnset;
        trail.pop_back();
      }
    }
  };
  recurse(recurse, 0);
  std::sort(result.families.begin(), result.families.end());
  return result;
}

LimitResult limit(const SetDiagram& d) {
  if (auto bad = check_functorial(d); !bad.empty()) fail(ErrorKind::kNonFunctorial, bad.front());
  return limit(arrows_of(d));
}

// ---------------------------------------------------------------------------

SetDiagram parse_diagram(std::string_view input) {
  static constexpr std::array<std::string_view, 6> kAll{"objects", "morphisms", "compose",
                                                        "variance", "sets", "maps"};
  auto sections = text::split_sections(input, kAll);
  SetDiagram d;
  d.index = std::make_shared<fincat::FinCategory>(fincat::parse_category_sections(sections));
  const auto& c = *d.index;
  d.variance = Variance::kCovariant;
  if (auto it = sections.find("variance"); it != sections.end()) {
    for (const auto& line : it->second) {
      if (line.text == "covariant") {
        d.variance = Variance::kCovariant;
      } else if (line.text == "contravariant") {
        d.variance = Variance::kContravariant;
      } else {
        throw ParseError(line.number, "variance must be covariant or contravariant");
      }
    }
  }
  d.sizes.assign(c.object_count(), 0);
  d.labels.assign(c.object_count(), {});
  std::vector<bool> seen(c.object_count(), false);
  std::vector<std::map<std::string, std::uint32_t>> element(c.object_count());
  for (const auto& line : sections["sets"]) {
    auto colon = line.text.find(':');
    if (colon == std::string::npos) throw ParseError(line.number, "expected 'obj: x y z'");
    std::string obj = text::trim(std::string_view(line.text).substr(0, colon));
    auto x = c.find_object(obj);
    if (!x) throw ParseError(line.number, "unknown object '" + obj + "'");
    if (seen[*x]) throw ParseError(line.number, "set of '" + obj + "' given twice");
    seen[*x] = true;
    for (const std::string& e : text::split_ws(std::string_view(line.text).substr(colon + 1))) {
      if (element[*x].count(e)) throw ParseError(line.number, "duplicate element '" + e + "'");
      element[*x][e] = static_cast<std::uint32_t>(d.labels[*x].size());
      d.labels[*x].push_back(e);
    }
    d.sizes[*x] = static_cast<std::uint32_t>(d.labels[*x].size());
  }
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  d.maps.assign(c.morphism_count(), {});
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    auto [from, to] = map_ends(d, t);
    d.maps[t].assign(d.sizes[from], kUnset);
    if (c.is_identity(t)) std::iota(d.maps[t].begin(), d.maps[t].end(), 0);
  }
  for (const auto& line : sections["maps"]) {
    auto colon = line.text.find(':');
    auto arrow = line.text.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
      throw ParseError(line.number, "expected 't: x -> y'");
    }
    std::string name = text::trim(std::string_view(line.text).substr(0, colon));
    std::string x = text::trim(std::string_view(line.text).substr(colon + 1, arrow - colon - 1));
    std::string y = text::trim(std::string_view(line.text).substr(arrow + 2));
    auto t = c.find_morphism(name);
    if (!t) throw ParseError(line.number, "unknown morphism '" + name + "'");
    auto [from, to] = map_ends(d, *t);
    auto xi = element[from].find(x);
    auto yi = element[to].find(y);
    if (xi == element[from].end()) throw ParseError(line.number, "'" + x + "' is not in the source set");
    if (yi == element[to].end()) throw ParseError(line.number, "'" + y + "' is not in the target set");
    d.maps[*t][xi->second] = yi->second;
  }
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    for (std::uint32_t v : d.maps[t]) {
      if (v == kUnset) {
        fail(ErrorKind::kParse, "map of '" + c.morphism_name(t) + "' is not total");
      }
    }
  }
  return d;
}

namespace {

std::string element_name(const SetDiagram& d, Element e) {
  std::string obj = d.index->object_name(e.object);
  if (e.object < d.labels.size() && e.index < d.labels[e.object].size()) {
    return obj + "." + d.labels[e.object][e.index];
  }
  return obj + "." + std::to_string(e.index);
}

}  // namespace

std::string format_colimit(const SetDiagram& d, const ColimitResult& r) {
  std::ostringstream os;
  os << "classes: " << r.size() << "\n";
  auto members = r.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    os << "[" << k << "]";
    for (const Element& e : members[k]) os << " " << element_name(d, e);
    os << "\n";
  }
  return os.str();
}

std::string format_limit(const SetDiagram& d, const LimitResult& r) {
  std::ostringstream os;
  os << "families: " << r.size() << "\n";
  for (const auto& fam : r.families) {
    os << "(";
    for (ObjId o = 0; o < fam.size(); ++o) {
      os << (o ? " " : "") << element_name(d, {o, fam[o]});
    }
    os << ")\n";
  }
  return os.str();
}

}  // namespace proind::setval
