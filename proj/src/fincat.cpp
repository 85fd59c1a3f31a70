#include "proind/fincat.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "proind/errors.hpp"
#include "proind/text_format.hpp"

namespace proind::fincat {

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<Arrow> morphisms,
                         std::vector<MorphId> identities,
                         std::map<std::pair<MorphId, MorphId>, MorphId> composites,
                         SizeCaps caps)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)) {
  const std::size_t n = objects_.size();
  const std::size_t m = morphisms_.size();
  if (n > caps.max_objects) {
    fail(ErrorKind::kSizeCapExceeded, "category has " + std::to_string(n) +
                                          " objects, cap is " + std::to_string(caps.max_objects));
  }
  if (m > caps.max_morphisms) {
    fail(ErrorKind::kSizeCapExceeded, "category has " + std::to_string(m) +
                                          " morphisms, cap is " +
                                          std::to_string(caps.max_morphisms));
  }
  if (identities_.size() != n) fail(ErrorKind::kInvalidArgument, "one identity per object required");
  for (const Arrow& a : morphisms_) {
    if (a.dom >= n || a.cod >= n) {
      fail(ErrorKind::kInvalidArgument, "morphism '" + a.name + "' has an out-of-range endpoint");
    }
  }
  for (ObjId x = 0; x < n; ++x) {
    MorphId id = identities_[x];
    if (id >= m || morphisms_[id].dom != x || morphisms_[id].cod != x) {
      fail(ErrorKind::kInvalidArgument, "identity of '" + objects_[x] + "' is not an endomorphism");
    }
  }
  compose_.assign(m * m, kNoMorphism);
  for (const auto& [gf, h] : composites) {
    if (gf.first >= m || gf.second >= m || h >= m) {
      fail(ErrorKind::kInvalidArgument, "composition entry out of range");
    }
    compose_[static_cast<std::size_t>(gf.first) * m + gf.second] = h;
  }
  out_.assign(n, {});
  in_.assign(n, {});
  hom_.assign(n * n, {});
  for (MorphId f = 0; f < m; ++f) {
    out_[morphisms_[f].dom].push_back(f);
    in_[morphisms_[f].cod].push_back(f);
    hom_[static_cast<std::size_t>(morphisms_[f].dom) * n + morphisms_[f].cod].push_back(f);
  }
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  for (ObjId x = 0; x < objects_.size(); ++x) {
    if (objects_[x] == name) return x;
  }
  return std::nullopt;
}

std::optional<MorphId> FinCategory::find_morphism(std::string_view name) const {
  for (MorphId f = 0; f < morphisms_.size(); ++f) {
    if (morphisms_[f].name == name) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

ObjId CategoryBuilder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  return static_cast<ObjId>(objects_.size() - 1);
}

MorphId CategoryBuilder::add_morphism(std::string name, ObjId dom, ObjId cod) {
  morphisms_.push_back({std::move(name), dom, cod});
  return static_cast<MorphId>(morphisms_.size() - 1);
}

void CategoryBuilder::set_identity(ObjId x, MorphId f) { identities_[x] = f; }

void CategoryBuilder::set_compose(MorphId g, MorphId f, MorphId h) { composites_[{g, f}] = h; }

FinCategory CategoryBuilder::build(SizeCaps caps) const {
  std::vector<Arrow> morphisms = morphisms_;
  std::vector<MorphId> ids(objects_.size(), kNoMorphism);
  for (const auto& [x, f] : identities_) ids.at(x) = f;
  for (ObjId x = 0; x < objects_.size(); ++x) {
    if (ids[x] != kNoMorphism) continue;
    morphisms.push_back({"id_" + objects_[x], x, x});
    ids[x] = static_cast<MorphId>(morphisms.size() - 1);
  }
  auto composites = composites_;
  for (MorphId f = 0; f < morphisms.size(); ++f) {
    if (morphisms[f].dom >= objects_.size() || morphisms[f].cod >= objects_.size()) {
      fail(ErrorKind::kInvalidArgument, "morphism '" + morphisms[f].name + "' has a bad endpoint");
    }
    composites.try_emplace({ids[morphisms[f].cod], f}, f);
    composites.try_emplace({f, ids[morphisms[f].dom]}, f);
  }
  return FinCategory(objects_, std::move(morphisms), std::move(ids), std::move(composites), caps);
}

FinCategory preorder_category(const std::vector<std::vector<bool>>& leq, SizeCaps caps) {
  const std::size_t n = leq.size();
  CategoryBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_object(std::to_string(i));
  std::vector<std::vector<MorphId>> arrow(n, std::vector<MorphId>(n, kNoMorphism));
  for (ObjId i = 0; i < n; ++i) {
    for (ObjId j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      std::string name = i == j ? "id_" + std::to_string(i)
                                : std::to_string(i) + "<" + std::to_string(j);
      arrow[i][j] = b.add_morphism(std::move(name), i, j);
      if (i == j) b.set_identity(i, arrow[i][j]);
    }
  }
  for (ObjId i = 0; i < n; ++i) {
    if (!leq[i][i]) fail(ErrorKind::kInvalidArgument, "preorder must be reflexive");
    for (ObjId j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      for (ObjId k = 0; k < n; ++k) {
        if (!leq[j][k]) continue;
        if (!leq[i][k]) fail(ErrorKind::kInvalidArgument, "preorder must be transitive");
        b.set_compose(arrow[j][k], arrow[i][j], arrow[i][k]);
      }
    }
  }
  return b.build(caps);
}

FinCategory product_category(const FinCategory& a, const FinCategory& b, SizeCaps caps) {
  const std::size_t na = a.object_count();
  const std::size_t ma = a.morphism_count();
  const std::size_t mb = b.morphism_count();
  if (na * b.object_count() > caps.max_objects || ma * mb > caps.max_morphisms) {
    fail(ErrorKind::kSizeCapExceeded, "product category exceeds the size caps");
  }
  CategoryBuilder out;
  for (ObjId x = 0; x < na; ++x) {
    for (ObjId y = 0; y < b.object_count(); ++y) {
      out.add_object("(" + a.object_name(x) + "," + b.object_name(y) + ")");
    }
  }
  auto obj = [&](ObjId x, ObjId y) { return static_cast<ObjId>(x * b.object_count() + y); };
  auto mor = [&](MorphId f, MorphId g) { return static_cast<MorphId>(f * mb + g); };
  for (MorphId f = 0; f < ma; ++f) {
    for (MorphId g = 0; g < mb; ++g) {
      MorphId h = out.add_morphism("(" + a.morphism_name(f) + "," + b.morphism_name(g) + ")",
                                   obj(a.dom(f), b.dom(g)), obj(a.cod(f), b.cod(g)));
      if (a.is_identity(f) && b.is_identity(g)) out.set_identity(obj(a.dom(f), b.dom(g)), h);
    }
  }
  for (MorphId f1 = 0; f1 < ma; ++f1) {
    for (MorphId f2 : a.out(a.cod(f1))) {
      for (MorphId g1 = 0; g1 < mb; ++g1) {
        for (MorphId g2 : b.out(b.cod(g1))) {
          out.set_compose(mor(f2, g2), mor(f1, g1), mor(a.compose(f2, f1), b.compose(g2, g1)));
        }
      }
    }
  }
  return out.build(caps);
}

FinCategory linear_order(std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  }
  return preorder_category(leq);
}

FinCategory discrete_category(std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  return preorder_category(leq);
}

FinCategory monoid_category(const std::vector<std::vector<std::uint32_t>>& table) {
  CategoryBuilder b;
  ObjId x = b.add_object("*");
  const std::size_t k = table.size();
  for (std::size_t e = 0; e < k; ++e) {
    b.add_morphism(e == 0 ? "id_*" : "m" + std::to_string(e), x, x);
  }
  if (k == 0) fail(ErrorKind::kInvalidArgument, "monoid needs a unit");
  b.set_identity(x, 0);
  for (MorphId g = 0; g < k; ++g) {
    for (MorphId f = 0; f < k; ++f) b.set_compose(g, f, table[g].at(f));
  }
  return b.build();
}

// ---------------------------------------------------------------------------

namespace {

std::string mname(const FinCategory& c, MorphId f) { return "'" + c.morphism_name(f) + "'"; }

}  // namespace

std::vector<LawViolation> validate_category(const FinCategory& c) {
  using Kind = LawViolation::Kind;
  std::vector<LawViolation> report;
  const std::size_t m = c.morphism_count();
  for (MorphId f = 0; f < m; ++f) {
    const MorphId idc = c.identity(c.cod(f));
    const MorphId idd = c.identity(c.dom(f));
    if (c.compose(idc, f) != f) {
      report.push_back({Kind::kIdentityLeft, {f}, "id . " + mname(c, f) + " != " + mname(c, f)});
    }
    if (c.compose(f, idd) != f) {
      report.push_back({Kind::kIdentityRight, {f}, mname(c, f) + " . id != " + mname(c, f)});
    }
  }
  for (MorphId g = 0; g < m; ++g) {
    for (MorphId f = 0; f < m; ++f) {
      const MorphId h = c.compose(g, f);
      const bool composable = c.dom(g) == c.cod(f);
      if (composable && h == kNoMorphism) {
        report.push_back({Kind::kMissingComposite, {g, f},
                          "no composite for " + mname(c, g) + " . " + mname(c, f)});
      } else if (!composable && h != kNoMorphism) {
        report.push_back({Kind::kSpuriousComposite, {g, f},
                          "composite given for non-composable " + mname(c, g) + " . " +
                              mname(c, f)});
      } else if (composable && (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g))) {
        report.push_back({Kind::kCompositeShape, {g, f, h},
                          mname(c, g) + " . " + mname(c, f) + " = " + mname(c, h) +
                              " has the wrong endpoints"});
      }
    }
  }
  for (MorphId f = 0; f < m; ++f) {
    for (MorphId g : c.out(c.cod(f))) {
      const MorphId gf = c.compose(g, f);
      if (gf == kNoMorphism) continue;
      for (MorphId h : c.out(c.cod(g))) {
        const MorphId hg = c.compose(h, g);
        if (hg == kNoMorphism) continue;
        const MorphId left = c.compose(h, gf);
        const MorphId right = c.compose(hg, f);
        if (left != right) {
          report.push_back({Kind::kAssociativity, {h, g, f},
                            "(" + mname(c, h) + " . " + mname(c, g) + ") . " + mname(c, f) +
                                " != " + mname(c, h) + " . (" + mname(c, g) + " . " +
                                mname(c, f) + ")"});
        }
      }
    }
  }
  return report;
}

MorphId FilteringWitness::equalizer(const FinCategory& c, MorphId t1, MorphId t2) const {
  if (t1 == t2) return c.identity(c.cod(t1));
  auto it = equalizers.find({std::min(t1, t2), std::max(t1, t2)});
  return it == equalizers.end() ? kNoMorphism : it->second;
}

FilteringResult is_filtering(const FinCategory& c) {
  const std::size_t n = c.object_count();
  FilteringWitness w;
  w.object_count = n;
  w.cocones.resize(n * n);
  for (ObjId i = 0; i < n; ++i) {
    for (ObjId j = 0; j < n; ++j) {
      bool found = false;
      for (ObjId k = 0; k < n && !found; ++k) {
        auto from_i = c.hom(i, k);
        auto from_j = c.hom(j, k);
        if (!from_i.empty() && !from_j.empty()) {
          w.cocones[i * n + j] = {k, from_i.front(), from_j.front()};
          found = true;
        }
      }
      if (!found) {
        return NotFiltering{NotFiltering::Axiom::kCocone, i, j, kNoMorphism, kNoMorphism,
                            "objects '" + c.object_name(i) + "' and '" + c.object_name(j) +
                                "' have no common cocone"};
      }
    }
  }
  for (ObjId i = 0; i < n; ++i) {
    for (ObjId j = 0; j < n; ++j) {
      auto parallel = c.hom(i, j);
      for (std::size_t a = 0; a < parallel.size(); ++a) {
        for (std::size_t b = a + 1; b < parallel.size(); ++b) {
          const MorphId t1 = parallel[a];
          const MorphId t2 = parallel[b];
          MorphId chosen = kNoMorphism;
          for (MorphId s : c.out(j)) {
            if (c.compose(s, t1) == c.compose(s, t2)) {
              chosen = s;
              break;
            }
          }
          if (chosen == kNoMorphism) {
            return NotFiltering{NotFiltering::Axiom::kEqualizer, i, j, t1, t2,
                                "parallel pair '" + c.morphism_name(t1) + "', '" +
                                    c.morphism_name(t2) + "' is not equalized"};
          }
          w.equalizers[{t1, t2}] = chosen;
        }
      }
    }
  }
  return w;
}

FilteringWitness require_filtering(const FinCategory& c) {
  FilteringResult r = is_filtering(c);
  if (auto* bad = std::get_if<NotFiltering>(&r)) fail(ErrorKind::kNonFilteringIndex, bad->description);
  return std::get<FilteringWitness>(std::move(r));
}

std::pair<ObjId, std::vector<MorphId>> fold_cocone(const FinCategory& c,
                                                  const FilteringWitness& w,
                                                  std::span<const ObjId> objects) {
  if (objects.empty()) fail(ErrorKind::kInvalidArgument, "cocone over no objects");
  ObjId apex = objects.front();
  std::vector<MorphId> legs{c.identity(apex)};
  for (std::size_t k = 1; k < objects.size(); ++k) {
    const Cocone& cc = w.cocone(apex, objects[k]);
    for (MorphId& leg : legs) leg = c.compose(cc.from_first, leg);
    legs.push_back(cc.from_second);
    apex = cc.apex;
  }
  return {apex, std::move(legs)};
}

FinCategory opposite(const FinCategory& c) {
  std::vector<Arrow> arrows = c.morphisms();
  for (Arrow& a : arrows) std::swap(a.dom, a.cod);
  std::map<std::pair<MorphId, MorphId>, MorphId> comp;
  const std::size_t m = c.morphism_count();
  for (MorphId g = 0; g < m; ++g) {
    for (MorphId f = 0; f < m; ++f) {
      const MorphId h = c.compose(f, g);
      if (h != kNoMorphism) comp[{g, f}] = h;
    }
  }
  return FinCategory(c.objects(), std::move(arrows), c.identities(), std::move(comp),
                     SizeCaps{std::max<std::size_t>(c.object_count(), 64),
                              std::max<std::size_t>(c.morphism_count(), 512)});
}

Slice slice(const FinCategory& c, ObjId x, SizeCaps caps) {
  Slice s;
  CategoryBuilder b;
  std::vector<ObjId> object_of(c.morphism_count(), static_cast<ObjId>(-1));
  for (MorphId f : c.in(x)) {
    object_of[f] = b.add_object(c.morphism_name(f));
    s.object_arrow.push_back(f);
  }
  // (source object, target object, underlying) -> slice morphism.
  std::map<std::tuple<ObjId, ObjId, MorphId>, MorphId> triangle;
  for (MorphId f : c.in(x)) {
    for (MorphId h : c.out(c.dom(f))) {
      for (MorphId f2 : c.in(x)) {
        if (c.dom(f2) != c.cod(h) || c.compose(f2, h) != f) continue;
        const ObjId a = object_of[f];
        const ObjId bb = object_of[f2];
        MorphId id = b.add_morphism(c.morphism_name(h) + ":" + c.morphism_name(f) + "->" +
                                        c.morphism_name(f2),
                                    a, bb);
        triangle[{a, bb, h}] = id;
        s.morphism_arrow.push_back(h);
        if (a == bb && c.is_identity(h)) b.set_identity(a, id);
      }
    }
  }
  for (const auto& [key_f, f_id] : triangle) {
    const auto& [a, bb, h] = key_f;
    for (const auto& [key_g, g_id] : triangle) {
      const auto& [a2, b2, g] = key_g;
      if (a2 != bb) continue;
      auto it = triangle.find({a, b2, c.compose(g, h)});
      if (it != triangle.end()) b.set_compose(g_id, f_id, it->second);
    }
  }
  s.category = b.build(caps);
  return s;
}

Subcategory full_subcategory(const FinCategory& c, std::span<const ObjId> objects) {
  Subcategory sub;
  sub.objects.assign(objects.begin(), objects.end());
  std::vector<ObjId> local(c.object_count(), static_cast<ObjId>(-1));
  CategoryBuilder b;
  for (ObjId x : sub.objects) local[x] = b.add_object(c.object_name(x));
  std::vector<MorphId> local_morph(c.morphism_count(), kNoMorphism);
  for (MorphId f = 0; f < c.morphism_count(); ++f) {
    const ObjId d = local[c.dom(f)];
    const ObjId e = local[c.cod(f)];
    if (d == static_cast<ObjId>(-1) || e == static_cast<ObjId>(-1)) continue;
    local_morph[f] = b.add_morphism(c.morphism_name(f), d, e);
    sub.morphisms.push_back(f);
    if (c.is_identity(f)) b.set_identity(d, local_morph[f]);
  }
  for (MorphId g : sub.morphisms) {
    for (MorphId f : sub.morphisms) {
      const MorphId h = c.compose(g, f);
      if (h != kNoMorphism) b.set_compose(local_morph[g], local_morph[f], local_morph[h]);
    }
  }
  sub.category = b.build(SizeCaps{std::max<std::size_t>(c.object_count(), 64),
                                  std::max<std::size_t>(c.morphism_count(), 512)});
  return sub;
}

Subcategory cofinal_restriction(const FinCategory& c, ObjId i0) {
  std::vector<ObjId> reachable;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    if (!c.hom(i0, x).empty()) reachable.push_back(x);
  }
  return full_subcategory(c, reachable);
}

std::vector<std::string> validate_functor(const Functor& f) {
  std::vector<std::string> out;
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  const bool co = f.variance == Variance::kCovariant;
  if (f.object_map.size() != s.object_count() || f.morphism_map.size() != s.morphism_count()) {
    out.push_back("functor tables do not match the source category");
    return out;
  }
  for (MorphId m = 0; m < s.morphism_count(); ++m) {
    const MorphId fm = f.morphism_map[m];
    if (fm >= t.morphism_count()) {
      out.push_back("image of '" + s.morphism_name(m) + "' is not a morphism");
      continue;
    }
    const ObjId want_dom = f.object_map[co ? s.dom(m) : s.cod(m)];
    const ObjId want_cod = f.object_map[co ? s.cod(m) : s.dom(m)];
    if (t.dom(fm) != want_dom || t.cod(fm) != want_cod) {
      out.push_back("image of '" + s.morphism_name(m) + "' has the wrong endpoints");
    }
  }
  if (!out.empty()) return out;
  for (ObjId x = 0; x < s.object_count(); ++x) {
    if (f.morphism_map[s.identity(x)] != t.identity(f.object_map[x])) {
      out.push_back("identity of '" + s.object_name(x) + "' is not preserved");
    }
  }
  for (MorphId g = 0; g < s.morphism_count(); ++g) {
    for (MorphId h : s.out(s.cod(g))) {
      const MorphId hg = s.compose(h, g);
      const MorphId img = co ? t.compose(f.morphism_map[h], f.morphism_map[g])
                             : t.compose(f.morphism_map[g], f.morphism_map[h]);
      if (hg == kNoMorphism || f.morphism_map[hg] != img) {
        out.push_back("composite '" + s.morphism_name(h) + "' . '" + s.morphism_name(g) +
                      "' is not preserved");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

FinCategory parse_category(std::string_view input, SizeCaps caps) {
  static constexpr std::array<std::string_view, 3> kSections{"objects", "morphisms", "compose"};
  auto sections = text::split_sections(input, kSections);
  return parse_category_sections(sections, caps);
}

FinCategory parse_category_sections(std::map<std::string, std::vector<text::Line>>& sections,
                                    SizeCaps caps) {
  CategoryBuilder b;
  std::map<std::string, ObjId> objects;
  std::map<std::string, MorphId> morphisms;
  for (const text::Line& line : sections["objects"]) {
    for (const std::string& name : text::split_ws(line.text)) {
      if (!text::is_identifier(name)) throw ParseError(line.number, "bad object name '" + name + "'");
      if (objects.count(name)) throw ParseError(line.number, "duplicate object '" + name + "'");
      objects[name] = b.add_object(name);
    }
  }
  for (const text::Line& line : sections["morphisms"]) {
    auto colon = line.text.find(':');
    auto arrow = line.text.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
      throw ParseError(line.number, "expected 'f: a -> b'");
    }
    std::string name = text::trim(std::string_view(line.text).substr(0, colon));
    std::string dom = text::trim(std::string_view(line.text).substr(colon + 1, arrow - colon - 1));
    std::string cod = text::trim(std::string_view(line.text).substr(arrow + 2));
    if (!text::is_identifier(name)) throw ParseError(line.number, "bad morphism name '" + name + "'");
    if (!objects.count(dom)) throw ParseError(line.number, "unknown object '" + dom + "'");
    if (!objects.count(cod)) throw ParseError(line.number, "unknown object '" + cod + "'");
    if (morphisms.count(name)) throw ParseError(line.number, "duplicate morphism '" + name + "'");
    morphisms[name] = b.add_morphism(name, objects[dom], objects[cod]);
  }
  // Identities named id_<x> in the file are taken as the identities.
  for (const auto& [name, x] : objects) {
    auto it = morphisms.find("id_" + name);
    if (it != morphisms.end()) b.set_identity(x, it->second);
  }
  // Synthesize identities now so compose lines can mention them.
  for (const auto& [name, x] : objects) {
    if (!morphisms.count("id_" + name)) {
      MorphId id = b.add_morphism("id_" + name, x, x);
      morphisms["id_" + name] = id;
      b.set_identity(x, id);
    }
  }
  for (const text::Line& line : sections["compose"]) {
    auto eq = line.text.find('=');
    if (eq == std::string::npos) throw ParseError(line.number, "expected 'g . f = h'");
    auto lhs = text::split_on(std::string_view(line.text).substr(0, eq), " . ");
    std::string h = text::trim(std::string_view(line.text).substr(eq + 1));
    if (lhs.size() != 2) throw ParseError(line.number, "expected 'g . f = h'");
    for (const std::string* name : {&lhs[0], &lhs[1], &h}) {
      if (!morphisms.count(*name)) throw ParseError(line.number, "unknown morphism '" + *name + "'");
    }
    b.set_compose(morphisms[lhs[0]], morphisms[lhs[1]], morphisms[h]);
  }
  return b.build(caps);
}

std::string format_category(const FinCategory& c) {
  std::ostringstream os;
  os << "objects:\n";
  for (const std::string& x : c.objects()) os << x << "\n";
  os << "morphisms:\n";
  for (const Arrow& a : c.morphisms()) {
    os << a.name << ": " << c.object_name(a.dom) << " -> " << c.object_name(a.cod) << "\n";
  }
  os << "compose:\n";
  for (MorphId g = 0; g < c.morphism_count(); ++g) {
    for (MorphId f = 0; f < c.morphism_count(); ++f) {
      const MorphId h = c.compose(g, f);
      if (h == kNoMorphism || c.is_identity(g) || c.is_identity(f)) continue;
      os << c.morphism_name(g) << " . " << c.morphism_name(f) << " = " << c.morphism_name(h)
         << "\n";
    }
  }
  return os.str();
}

}  // namespace proind::fincat
