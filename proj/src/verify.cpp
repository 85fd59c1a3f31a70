#include "proind/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "proind/def_systems.hpp"
#include "proind/errors.hpp"

namespace proind::verify {

namespace {

using defsets::Code;
using defsets::DefMap;
using defsets::DefSet;
using defsets::Model;
using fincat::MorphId;
using fincat::ObjId;
using points::IndMor;
using points::ProMor;

constexpr std::size_t kMaxCounterexamples = 3;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

fincat::CategoryRef share(fincat::FinCategory c) { return std::make_shared<fincat::FinCategory>(std::move(c)); }

bool subset(const DefSet& a, const DefSet& b) {
  return a.arity == b.arity && std::includes(b.codes.begin(), b.codes.end(), a.codes.begin(), a.codes.end());
}

std::vector<DefSet> nonempty_sets(const Model& m, std::uint32_t arity) {
  std::vector<DefSet> out;
  for (auto& s : m.enumerate(arity)) {
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

DefSet random_subset(const Model& m, Rng& rng, const DefSet& y) {
  return m.from_mask(y.arity, m.mask_of(y) & rng());
}

DefSet random_superset(const Model& m, Rng& rng, const DefSet& y) {
  const std::size_t k = m.orbits(y.arity).size();
  std::uint64_t all = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  return m.from_mask(y.arity, m.mask_of(y) | (rng() & all));
}

// Every strictly ascending chain (nonempty) drawn from sets of one arity.
std::vector<std::vector<DefSet>> ascending_chains(const std::vector<DefSet>& sets) {
  std::vector<std::vector<DefSet>> out;
  std::vector<DefSet> current;
  std::function<void()> grow = [&] {
    for (const auto& s : sets) {
      if (!current.empty() && (s == current.back() || !subset(current.back(), s))) continue;
      current.push_back(s);
      out.push_back(current);
      grow();
      current.pop_back();
    }
  };
  grow();
  return out;
}

template <class F>
void guarded(Check& check, const std::string& what, F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    check.failure(what + ": " + e.what());
  }
}

DefMap projection(const Model& m, const DefSet& from, const DefSet& to, std::uint32_t start) {
  return m.map_by_code(from, to, [&](Code c) { return m.slice_code(c, from.arity, start, to.arity); });
}

DefMap diagonal(const Model& m, const DefSet& y, const DefSet& square) {
  return m.map_by_code(y, square, [&](Code c) { return m.concat(c, y.arity, c, y.arity); });
}

// (y, y') -> (y, y) on the full square of y.
DefMap keep_first(const Model& m, const DefSet& square, std::uint32_t arity) {
  return m.map_by_code(square, square, [&](Code c) {
    Code first = m.slice_code(c, 2 * arity, 0, arity);
    return m.concat(first, arity, first, arity);
  });
}

DefSet square_of(const Model& m, const DefSet& y) { return m.product(y, y).set; }

bool bijective(const Model& m, const DefMap& f) { return m.injective(f) && m.surjective(f); }

// The index 0 => 1 -> 2 with s.a = s.b.
fincat::CategoryRef coequalizer_index() {
  fincat::CategoryBuilder b;
  auto x0 = b.add_object("0");
  auto x1 = b.add_object("1");
  auto x2 = b.add_object("2");
  auto a = b.add_morphism("a", x0, x1);
  auto bb = b.add_morphism("b", x0, x1);
  auto s = b.add_morphism("s", x1, x2);
  auto c = b.add_morphism("c", x0, x2);
  b.set_compose(s, a, c);
  b.set_compose(s, bb, c);
  return share(b.build());
}

std::vector<DefMap> maps_by_name(const Model& m, const fincat::FinCategory& c, const std::vector<DefSet>& objects,
                                 const std::map<std::string, DefMap>& named) {
  std::vector<DefMap> maps;
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    maps.push_back(c.is_identity(t) ? m.identity(objects[c.dom(t)]) : named.at(c.morphism_name(t)));
  }
  return maps;
}

// Composite structure maps of a chain i -> j from the steps k -> k + 1.
std::vector<DefMap> chain_maps(const Model& m, const fincat::FinCategory& c, const std::vector<DefSet>& objects,
                               const std::vector<DefMap>& steps, bool covariant) {
  std::vector<DefMap> maps;
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    ObjId from = c.dom(t);
    ObjId to = c.cod(t);
    if (covariant) {
      DefMap h = m.identity(objects[from]);
      for (ObjId k = from; k < to; ++k) h = m.compose(steps[k], h);
      maps.push_back(std::move(h));
    } else {
      DefMap h = m.identity(objects[to]);
      for (ObjId k = to; k > from; --k) h = m.compose(steps[k - 1], h);
      maps.push_back(std::move(h));
    }
  }
  return maps;
}

const NamedModel& random_model(const std::vector<NamedModel>& models, Rng& rng) {
  if (models.empty()) fail(ErrorKind::kInvalidArgument, "no structures to sample from");
  return models[pick(rng, models.size())];
}

// ---------------------------------------------------------------------------
// Point-bijective inputs with a fixed target.

// Squares are left out when `squares` is false, which keeps every level of
// arity at most arity(y) + 1.
IndCase ind_case_for(const NamedModel& nm, const DefBase& base, Rng& rng, const DefSet& y, bool squares = true) {
  const Model& m = *nm.model;
  IndCase out{nm.name, "", base, {}, y, {}};
  std::vector<std::string> shapes{"chain", "v"};
  if (y.arity == 1) shapes.push_back("collapse");
  if (y.arity == 1 && squares) {
    shapes.push_back("idempotent");
    shapes.push_back("coequalizer");
  }
  out.shape = shapes[pick(rng, shapes.size())];
  if (out.shape == "chain") {
    std::vector<DefSet> chain{random_subset(m, rng, y)};
    for (std::size_t k = pick(rng, 2); k > 0; --k) {
      DefSet next = random_subset(m, rng, y);
      chain.push_back(m.from_mask(y.arity, m.mask_of(chain.back()) | m.mask_of(next)));
    }
    chain.push_back(y);
    chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
    out.x = defsets::increasing_union(base, chain);
    for (const auto& s : chain) out.f.push_back(m.inclusion(s, y));
  } else if (out.shape == "v") {
    std::vector<DefSet> objects{random_subset(m, rng, y), random_subset(m, rng, y), y};
    std::vector<std::vector<bool>> leq{{true, false, true}, {false, true, true}, {false, false, true}};
    auto index = share(fincat::preorder_category(leq));
    std::vector<DefMap> maps;
    for (MorphId t = 0; t < index->morphism_count(); ++t) {
      maps.push_back(m.inclusion(objects[index->dom(t)], objects[index->cod(t)]));
    }
    out.x = indpro::make_ind(base, index, objects, maps);
    for (const auto& s : objects) out.f.push_back(m.inclusion(s, y));
  } else if (out.shape == "collapse") {
    auto ws = nonempty_sets(m, 1);
    DefSet w = ws[pick(rng, ws.size())];
    DefSet s = random_subset(m, rng, y);
    auto p = m.product(s, w);
    DefMap down = m.compose(m.inclusion(s, y), p.first);
    auto index = share(fincat::linear_order(2));
    out.x = indpro::make_ind(base, index, {p.set, y}, chain_maps(m, *index, {p.set, y}, {down}, true));
    out.f = {down, m.identity(y)};
  } else if (out.shape == "idempotent") {
    DefSet sq = square_of(m, y);
    auto index = share(fincat::monoid_category({{0, 1}, {1, 1}}));
    out.x = indpro::make_ind(base, index, {sq}, {m.identity(sq), keep_first(m, sq, y.arity)});
    out.f = {projection(m, sq, y, 0)};
  } else {
    DefSet sq = square_of(m, y);
    auto index = coequalizer_index();
    DefMap proj = projection(m, sq, y, 0);
    std::vector<DefSet> objects{sq, sq, y};
    std::map<std::string, DefMap> named{
        {"a", m.identity(sq)}, {"b", keep_first(m, sq, y.arity)}, {"s", proj}, {"c", proj}};
    out.x = indpro::make_ind(base, index, objects, maps_by_name(m, *index, objects, named));
    out.f = {proj, proj, m.identity(y)};
  }
  return out;
}

ProCase pro_case_for(const NamedModel& nm, const DefBase& base, Rng& rng, const DefSet& y,
                     std::uint32_t max_arity) {
  const Model& m = *nm.model;
  ProCase out{nm.name, "", base, {}, y, {}};
  std::vector<std::string> shapes{"type", "section"};
  if (y.arity == 1) {
    shapes.push_back("idempotent");
    shapes.push_back("coequalizer");
  }
  out.shape = shapes[pick(rng, shapes.size())];
  if (out.shape == "type") {
    std::vector<DefSet> family;
    for (std::size_t k = 1 + pick(rng, 2); k > 0; --k) family.push_back(random_superset(m, rng, y));
    family.push_back(y);
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    std::shuffle(family.begin(), family.end(), rng);
    out.x = defsets::type_system(base, family);
    for (const auto& s : family) out.f.push_back(m.inclusion(y, s));
  } else if (out.shape == "section") {
    std::vector<DefMap> candidates;
    for (std::size_t tries = 0; tries < 20 && candidates.empty(); ++tries) {
      auto ws = nonempty_sets(m, static_cast<std::uint32_t>(1 + pick(rng, max_arity)));
      candidates = m.hom(y, ws[pick(rng, ws.size())]);
    }
    if (candidates.empty()) candidates.push_back(m.identity(y));
    DefMap h = candidates[pick(rng, candidates.size())];
    auto index = share(fincat::linear_order(2));
    std::vector<DefSet> objects{h.cod, y};
    out.x = indpro::make_pro(base, index, objects, chain_maps(m, *index, objects, {h}, false));
    out.f = {h, m.identity(y)};
  } else if (out.shape == "idempotent") {
    DefSet sq = square_of(m, y);
    auto index = share(fincat::monoid_category({{0, 1}, {1, 1}}));
    out.x = indpro::make_pro(base, index, {sq}, {m.identity(sq), keep_first(m, sq, y.arity)});
    out.f = {diagonal(m, y, sq)};
  } else {
    DefSet sq = square_of(m, y);
    auto index = coequalizer_index();
    DefMap diag = diagonal(m, y, sq);
    std::vector<DefSet> objects{sq, sq, y};
    std::map<std::string, DefMap> named{
        {"a", m.identity(sq)}, {"b", keep_first(m, sq, y.arity)}, {"s", diag}, {"c", diag}};
    out.x = indpro::make_pro(base, index, objects, maps_by_name(m, *index, objects, named));
    out.f = {diag, diag, m.identity(y)};
  }
  return out;
}

// A non-bijective k: y -> y' (or y' -> y when out_of is false).
std::optional<DefMap> non_bijective_map(const Model& m, Rng& rng, const DefSet& y, bool out_of, std::uint32_t max_arity) {
  for (std::size_t tries = 0; tries < 40; ++tries) {
    auto sets = nonempty_sets(m, static_cast<std::uint32_t>(1 + pick(rng, max_arity)));
    const DefSet& other = sets[pick(rng, sets.size())];
    std::vector<DefMap> bad;
    for (const auto& k : out_of ? m.hom(y, other) : m.hom(other, y)) {
      if (!bijective(m, k)) bad.push_back(k);
    }
    if (!bad.empty()) return bad[pick(rng, bad.size())];
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Independent colimit and limit of the point sets, by graph components and
// by exhaustive search over the product.

std::vector<std::size_t> component_labels(const Ind& x) {
  const auto& c = *x.index;
  std::vector<std::size_t> offset(x.size() + 1, 0);
  for (ObjId i = 0; i < x.size(); ++i) offset[i + 1] = offset[i] + x.objects[i].size();
  std::vector<std::size_t> parent(offset.back());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t p) {
    return parent[p] == p ? p : parent[p] = find(parent[p]);
  };
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    for (std::size_t p = 0; p < x.maps[t].table.size(); ++p) {
      std::size_t a = find(offset[c.dom(t)] + p);
      std::size_t b = find(offset[c.cod(t)] + x.maps[t].table[p]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> label(parent.size());
  for (std::size_t p = 0; p < parent.size(); ++p) label[p] = find(p);
  return label;
}

bool colimit_matches(const Ind& x, const setval::ColimitResult& pts) {
  auto label = component_labels(x);
  std::size_t k = 0;
  std::map<std::uint32_t, std::size_t> class_label;
  for (ObjId i = 0; i < x.size(); ++i) {
    for (std::uint32_t p = 0; p < x.objects[i].size(); ++p, ++k) {
      auto [it, fresh] = class_label.emplace(pts.class_id(i, p), label[k]);
      if (!fresh && it->second != label[k]) return false;
    }
  }
  std::set<std::size_t> distinct;
  for (const auto& [cls, l] : class_label) distinct.insert(l);
  return distinct.size() == class_label.size() && class_label.size() == pts.size();
}

std::vector<std::vector<std::uint32_t>> limit_oracle(const Pro& x) {
  const auto& c = *x.index;
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& s : x.objects) {
    if (s.empty()) return out;
  }
  std::vector<std::uint32_t> fam(x.size(), 0);
  while (true) {
    bool ok = true;
    for (MorphId t = 0; t < c.morphism_count() && ok; ++t) ok = x.maps[t].table[fam[c.cod(t)]] == fam[c.dom(t)];
    if (ok) out.push_back(fam);
    std::size_t k = fam.size();
    while (k > 0) {
      --k;
      if (++fam[k] < x.objects[k].size()) break;
      fam[k] = 0;
      if (k == 0) return out;
    }
    if (fam.empty()) return out;
  }
}

// A chain of 1-3 unary sets joined by inclusions or arbitrary definable maps.
std::pair<std::vector<DefSet>, std::vector<DefMap>> random_chain(const Model& m, Rng& rng) {
  auto sets = nonempty_sets(m, 1);
  std::vector<DefSet> objects{sets[pick(rng, sets.size())]};
  std::vector<DefMap> steps;
  for (std::size_t k = pick(rng, 3); k > 0; --k) {
    const DefSet& last = objects.back();
    DefSet next = sets[pick(rng, sets.size())];
    const auto& homs = m.hom(last, next);
    if (homs.empty() || pick(rng, 2) == 0) {
      next = random_superset(m, rng, last);
      steps.push_back(m.inclusion(last, next));
    } else {
      steps.push_back(homs[pick(rng, homs.size())]);
    }
    objects.push_back(next);
  }
  return {objects, steps};
}

// Steps go backwards for a pro chain: steps[k]: X_{k+1} -> X_k.
std::pair<std::vector<DefSet>, std::vector<DefMap>> random_pro_chain(const Model& m, Rng& rng) {
  auto [objects, steps] = random_chain(m, rng);
  std::reverse(objects.begin(), objects.end());
  std::reverse(steps.begin(), steps.end());
  return {objects, steps};
}

std::string describe_map(const std::vector<std::uint32_t>& phi) {
  std::string s = "[";
  for (std::size_t k = 0; k < phi.size(); ++k) s += (k ? " " : "") + std::to_string(phi[k]);
  return s + "]";
}

std::optional<ErrorKind> error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

void Check::failure(std::string what) {
  pass = false;
  if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(what));
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<NamedModel> bundled_models(std::uint64_t cap_hom) {
  std::vector<NamedModel> out;
  for (const auto& name : defsets::bundled_structure_names()) {
    out.push_back({name, std::make_shared<const Model>(defsets::bundled_structure(name),
                                                       defsets::Caps{kSuiteArityCap, cap_hom})});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Points of d(M) and of systems.

Check check_hom_dm(const NamedModel& nm, std::uint32_t arity_bound) {
  const Model& m = *nm.model;
  Check check{"hom-dm", nm.name};
  std::size_t sets = 0, classes = 0, certified = 0;
  for (const auto& y : m.enumerate(1)) {
    guarded(check, m.set_id(y), [&] {
      auto h = points::hom_dM(m, arity_bound, y);
      ++sets;
      classes += h.size();
      certified += h.graph_certified;
      if (h.size() != y.size()) {
        check.failure(m.set_id(y) + ": " + std::to_string(h.size()) + " classes for " + std::to_string(y.size()) +
                      " points");
      }
      if (!h.mutually_inverse) check.failure(m.set_id(y) + ": the two maps are not mutually inverse");
      if (!h.point_oracle_agrees) check.failure(m.set_id(y) + ": classes differ from the point oracle");
    });
  }
  check.count("sets", sets);
  check.count("classes", classes);
  check.count("graph_certified", certified);
  return check;
}

Check check_naturality(const NamedModel& nm, std::uint32_t arity_bound) {
  const Model& m = *nm.model;
  Check check{"naturality", nm.name};
  std::size_t maps = 0, elements = 0;
  guarded(check, "index", [&] {
    auto index = points::build_dM(m, arity_bound + 1);
    auto sets = m.enumerate(1);
    for (const auto& x : sets) {
      for (const auto& y : sets) {
        for (const auto& g : m.hom(x, y)) {
          guarded(check, m.set_id(x) + " -> " + m.set_id(y), [&] {
            elements += points::check_naturality(m, index, g);
            ++maps;
          });
        }
      }
    }
  });
  check.count("maps", maps);
  check.count("elements", elements);
  return check;
}

Check check_d_on_morphisms(const NamedModel& nm, std::uint32_t arity_bound) {
  const Model& m = *nm.model;
  Check check{"d-on-morphisms", nm.name};
  const std::uint32_t bound = std::max({std::uint32_t{2}, m.structure().signature_arity(), arity_bound});
  guarded(check, "bound " + std::to_string(bound), [&] {
    auto d = points::d_on_morphisms(m, m, bound, points::DMMode::kReduced);
    check.count("bound", bound);
    check.count("families", d.families);
    check.count("automorphisms", m.aut().size());
    if (d.families != m.aut().size()) {
      check.failure(std::to_string(d.families) + " families for " + std::to_string(m.aut().size()) + " automorphisms");
    }
    if (!d.all_elementary) check.failure("a family induces a map that is not elementary");
    if (!d.matches_isomorphisms) check.failure("induced maps differ from the automorphisms");
  });
  return check;
}

Check check_union_points(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"union-points", nm.name};
  std::size_t chains = 0;
  for (const auto& chain : ascending_chains(m.enumerate(1))) {
    std::string name;
    for (const auto& s : chain) name += (name.empty() ? "" : "<") + m.set_id(s);
    guarded(check, name, [&] {
      auto x = defsets::increasing_union(base, chain);
      auto pts = points::points_ind(base, x);
      // class -> code must be a well-defined bijection onto the union.
      std::map<std::uint32_t, Code> code_of;
      bool ok = true;
      for (ObjId i = 0; i < x.size(); ++i) {
        for (std::uint32_t p = 0; p < x.objects[i].size(); ++p) {
          auto [it, fresh] = code_of.emplace(pts.class_id(i, p), x.objects[i].codes[p]);
          ok = ok && it->second == x.objects[i].codes[p];
        }
      }
      std::set<Code> image;
      for (const auto& [cls, c] : code_of) image.insert(c);
      std::set<Code> uni;
      for (const auto& s : chain) uni.insert(s.codes.begin(), s.codes.end());
      if (!ok || image != uni || pts.size() != uni.size()) check.failure(name + ": points are not the union");
      ++chains;
    });
  }
  check.count("chains", chains);
  return check;
}

Check check_type_points(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"type-points", nm.name};
  std::size_t chains = 0;
  for (auto chain : ascending_chains(m.enumerate(1))) {
    std::reverse(chain.begin(), chain.end());
    std::string name;
    for (const auto& s : chain) name += (name.empty() ? "" : ">") + m.set_id(s);
    guarded(check, name, [&] {
      auto x = defsets::type_system(base, chain);
      auto pts = points::points_pro(base, x);
      std::set<Code> meet(chain.front().codes.begin(), chain.front().codes.end());
      for (const auto& s : chain) {
        std::set<Code> next;
        for (Code c : s.codes) {
          if (meet.count(c)) next.insert(c);
        }
        meet = std::move(next);
      }
      std::set<Code> got;
      bool ok = true;
      for (const auto& fam : pts.families) {
        Code c = x.objects[0].codes[fam[0]];
        for (ObjId i = 0; i < x.size(); ++i) ok = ok && x.objects[i].codes[fam[i]] == c;
        got.insert(c);
      }
      if (!ok || got != meet || pts.size() != meet.size()) check.failure(name + ": points are not the intersection");
      ++chains;
    });
  }
  check.count("chains", chains);
  return check;
}

Check check_eq_relation_points(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"eq-relation-points", nm.name};
  const DefSet u = m.universe_set(1);
  std::vector<DefSet> relations;
  for (const auto& r : m.enumerate(2)) {
    if (defsets::is_equivalence(m, u, r)) relations.push_back(r);
  }
  std::size_t chains = 0;
  for (const auto& chain : ascending_chains(relations)) {
    guarded(check, m.set_id(chain.back()), [&] {
      auto pts = points::points_ind(base, defsets::eq_relation_union(base, u, chain));
      if (pts.size() != chain.back().size()) check.failure(m.set_id(chain.back()) + ": points are not the union");
      ++chains;
    });
  }
  check.count("relations", relations.size());
  check.count("chains", chains);
  return check;
}

Check check_cofinal_invariance(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"cofinal-invariance", nm.name};
  std::size_t restrictions = 0;
  for (const auto& chain : ascending_chains(m.enumerate(1))) {
    guarded(check, "chain", [&] {
      auto x = defsets::increasing_union(base, chain);
      auto full = points::points_ind(base, x);
      auto down = chain;
      std::reverse(down.begin(), down.end());
      auto p = defsets::type_system(base, down);
      auto pfull = points::points_pro(base, p);
      for (ObjId i0 = 0; i0 < x.size(); ++i0) {
        auto sub = fincat::cofinal_restriction(*x.index, i0);
        auto index = share(sub.category);
        std::vector<DefSet> objects;
        for (ObjId o : sub.objects) objects.push_back(x.objects[o]);
        std::vector<DefMap> maps;
        for (MorphId t : sub.morphisms) maps.push_back(x.maps[t]);
        auto r = points::points_ind(base, indpro::make_ind(base, index, objects, maps));
        std::set<std::uint32_t> image;
        for (ObjId k = 0; k < objects.size(); ++k) {
          for (std::uint32_t q = 0; q < objects[k].size(); ++q) image.insert(full.class_id(sub.objects[k], q));
        }
        if (r.size() != full.size() || image.size() != full.size()) {
          check.failure("ind restriction at level " + std::to_string(i0) + " changes the points");
        }

        auto psub = fincat::cofinal_restriction(*p.index, i0);
        std::vector<DefSet> pobjects;
        for (ObjId o : psub.objects) pobjects.push_back(p.objects[o]);
        std::vector<DefMap> pmaps;
        for (MorphId t : psub.morphisms) pmaps.push_back(p.maps[t]);
        auto pr = points::points_pro(base, indpro::make_pro(base, share(psub.category), pobjects, pmaps));
        std::set<std::vector<std::uint32_t>> projected;
        for (const auto& fam : pfull.families) {
          std::vector<std::uint32_t> part;
          for (ObjId o : psub.objects) part.push_back(fam[o]);
          projected.insert(part);
        }
        if (pr.size() != pfull.size() || projected.size() != pfull.size()) {
          check.failure("pro restriction at level " + std::to_string(i0) + " changes the points");
        }
        restrictions += 2;
      }
    });
  }
  check.count("restrictions", restrictions);
  return check;
}

// ---------------------------------------------------------------------------
// Isomorphisms from points.

IndCase random_ind_case(const std::vector<NamedModel>& models, Rng& rng, bool bijective, std::uint32_t max_arity) {
  while (true) {
    const NamedModel& nm = random_model(models, rng);
    const Model& m = *nm.model;
    DefBase base(nm.model);
    auto ys = nonempty_sets(m, static_cast<std::uint32_t>(1 + pick(rng, max_arity)));
    IndCase c = ind_case_for(nm, base, rng, ys[pick(rng, ys.size())]);
    if (bijective) return c;
    auto k = non_bijective_map(m, rng, c.y, true, max_arity);
    if (!k) continue;
    for (auto& fi : c.f) fi = m.compose(*k, fi);
    c.y = k->cod;
    c.shape += "+collapse";
    return c;
  }
}

ProCase random_pro_case(const std::vector<NamedModel>& models, Rng& rng, bool bijective, std::uint32_t max_arity) {
  while (true) {
    const NamedModel& nm = random_model(models, rng);
    const Model& m = *nm.model;
    DefBase base(nm.model);
    auto ys = nonempty_sets(m, static_cast<std::uint32_t>(1 + pick(rng, max_arity)));
    ProCase c = pro_case_for(nm, base, rng, ys[pick(rng, ys.size())], max_arity);
    if (bijective) return c;
    auto k = non_bijective_map(m, rng, c.y, false, max_arity);
    if (!k) continue;
    for (auto& fi : c.f) fi = m.compose(fi, *k);
    c.y = k->dom;
    c.shape += "+collapse";
    return c;
  }
}

Check check_builders_ind(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t bijective,
                         std::size_t non_bijective) {
  Check check{"builder-ind", ""};
  Rng rng(seed);
  std::size_t built = 0, certified = 0, rejected = 0;
  for (std::size_t n = 0; n < bijective; ++n) {
    IndCase c = random_ind_case(models, rng, true);
    const Model& m = c.base.model();
    std::string name = c.structure + " " + c.shape + " -> " + m.set_id(c.y) + " #" + std::to_string(n);
    guarded(check, name, [&] {
      auto out = points::build_iso_from_points_ind(c.base, c.x, c.y, c.f);
      ++built;
      auto yc = indpro::ind_constant(c.base, c.y);
      auto fm = indpro::ind_to_constant(c.base, c.x, c.y, c.f);
      const auto& g = out.certificate.inverse;
      if (indpro::compose_ind(c.base, yc, c.x, yc, g, fm) == indpro::identity_ind(c.base, yc) &&
          indpro::compose_ind(c.base, c.x, yc, c.x, fm, g) == indpro::identity_ind(c.base, c.x)) {
        ++certified;
      } else {
        check.failure(name + ": composites are not identities");
      }
    });
  }
  for (std::size_t n = 0; n < non_bijective; ++n) {
    IndCase c = random_ind_case(models, rng, false);
    std::string name = c.structure + " " + c.shape + " #" + std::to_string(n);
    auto kind = error_of([&] { points::build_iso_from_points_ind(c.base, c.x, c.y, c.f); });
    if (kind == ErrorKind::kNotBijective) {
      ++rejected;
    } else {
      check.failure(name + ": expected NotBijective, got " + (kind ? std::string(error_kind_name(*kind)) : "success"));
    }
  }
  check.count("bijective", bijective);
  check.count("built", built);
  check.count("certified", certified);
  check.count("non_bijective", non_bijective);
  check.count("rejected", rejected);
  return check;
}

Check check_builders_pro(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t bijective,
                         std::size_t non_bijective) {
  Check check{"builder-pro", ""};
  Rng rng(seed);
  std::size_t built = 0, certified = 0, rejected = 0;
  for (std::size_t n = 0; n < bijective; ++n) {
    ProCase c = random_pro_case(models, rng, true);
    const Model& m = c.base.model();
    std::string name = c.structure + " " + c.shape + " <- " + m.set_id(c.y) + " #" + std::to_string(n);
    guarded(check, name, [&] {
      auto out = points::build_iso_from_points_pro(c.base, c.x, c.y, c.f);
      ++built;
      auto yc = indpro::pro_constant(c.base, c.y);
      auto fm = indpro::pro_from_constant(c.base, c.y, c.x, c.f);
      const auto& g = out.certificate.inverse;
      if (indpro::compose_pro(c.base, yc, c.x, yc, fm, g) == indpro::identity_pro(c.base, yc) &&
          indpro::compose_pro(c.base, c.x, yc, c.x, g, fm) == indpro::identity_pro(c.base, c.x)) {
        ++certified;
      } else {
        check.failure(name + ": composites are not identities");
      }
    });
  }
  for (std::size_t n = 0; n < non_bijective; ++n) {
    ProCase c = random_pro_case(models, rng, false);
    std::string name = c.structure + " " + c.shape + " #" + std::to_string(n);
    auto kind = error_of([&] { points::build_iso_from_points_pro(c.base, c.x, c.y, c.f); });
    if (kind == ErrorKind::kNotBijective) {
      ++rejected;
    } else {
      check.failure(name + ": expected NotBijective, got " + (kind ? std::string(error_kind_name(*kind)) : "success"));
    }
  }
  check.count("bijective", bijective);
  check.count("built", built);
  check.count("certified", certified);
  check.count("non_bijective", non_bijective);
  check.count("rejected", rejected);
  return check;
}

// ---------------------------------------------------------------------------
// Morphisms from points.

Check check_graph_round_trip(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"graph-round-trip", nm.name};
  const DefSet u = m.universe_set(1);
  auto cu = indpro::ind_constant(base, u);
  std::size_t maps = 0, recovered = 0;
  for (const auto& h : m.hom(u, u)) {
    ++maps;
    guarded(check, "map " + describe_map(h.table), [&] {
      auto f = indpro::IndHom<DefBase>(base, cu, cu).assemble({{0, h}});
      auto back = points::graph_to_morphism(base, cu, cu, points::point_graph(base, cu, cu, f));
      if (back == f && points::induced_point_map(base, cu, cu, back) == h.table) {
        ++recovered;
      } else {
        check.failure("map " + describe_map(h.table) + " is not recovered from its graph");
      }
    });
  }
  check.count("maps", maps);
  check.count("recovered", recovered);
  return check;
}

Check check_full_relation_rejected(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"full-relation-rejected", nm.name};
  const DefSet u = m.universe_set(1);
  auto cu = indpro::ind_constant(base, u);
  points::GraphSubobject r{indpro::ind_constant(base, m.universe_set(2)), {0}, {0}, {0}, {0}};
  auto kind = error_of([&] { points::graph_to_morphism(base, cu, cu, r); });
  const bool expect = m.universe_size() >= 2;
  check.count("universe", m.universe_size());
  if (expect && kind != ErrorKind::kNotAFunction) {
    check.failure("M x M accepted as a function graph");
  } else if (!expect && kind) {
    check.failure("M x M on a single point rejected");
  }
  return check;
}

Check check_inverse_from_points(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t cases) {
  Check check{"inverse-from-points", ""};
  Rng rng(seed);
  std::size_t inverted = 0;
  for (std::size_t n = 0; n < cases; ++n) {
    const NamedModel& nm = random_model(models, rng);
    const Model& m = *nm.model;
    DefBase base(nm.model);
    auto ys = nonempty_sets(m, 1);
    DefSet y = ys[pick(rng, ys.size())];
    IndCase a = ind_case_for(nm, base, rng, y, false);
    IndCase b = ind_case_for(nm, base, rng, y, false);
    std::string name = nm.name + " " + a.shape + " -> " + b.shape + " #" + std::to_string(n);
    guarded(check, name, [&] {
      // f = (b -> Y)^-1 . (a -> Y), bijective on points by construction.
      auto yc = indpro::ind_constant(base, y);
      auto fa = indpro::ind_to_constant(base, a.x, y, a.f);
      auto gb = points::build_iso_from_points_ind(base, b.x, y, b.f).certificate.inverse;
      auto f = indpro::compose_ind(base, a.x, yc, b.x, fa, gb);
      auto out = points::verify_prop_morphisms(base, a.x, b.x, f);
      if (out.inverse_on_points) {
        ++inverted;
      } else {
        check.failure(name + ": inverse does not induce the inverse on points");
      }
    });
  }
  check.count("cases", cases);
  check.count("inverted", inverted);
  return check;
}

// ---------------------------------------------------------------------------
// Isomorphism criteria.

Check check_lemma_pullback(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t cases) {
  Check check{"lemma-pullback", ""};
  Rng rng(seed);
  std::size_t certified = 0;
  for (std::size_t n = 0; n < cases; ++n) {
    IndCase c = random_ind_case(models, rng, true);
    std::string name = c.structure + " " + c.shape + " #" + std::to_string(n);
    guarded(check, name, [&] {
      auto built = points::build_iso_from_points_ind(c.base, c.x, c.y, c.f);
      auto cert = indpro::check_iso_pullback(c.base, c.x, c.y, c.f, built.g, built.base_level);
      if (cert.steps.size() == c.x.size()) ++certified;
    });
  }
  check.count("cases", cases);
  check.count("certified", certified);
  if (certified != cases && check.pass) check.failure("not every case was certified");
  return check;
}

Check check_lemma_pushout(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t cases) {
  Check check{"lemma-pushout", ""};
  Rng rng(seed);
  std::size_t certified = 0;
  for (std::size_t n = 0; n < cases; ++n) {
    ProCase c = random_pro_case(models, rng, true);
    std::string name = c.structure + " " + c.shape + " #" + std::to_string(n);
    guarded(check, name, [&] {
      auto built = points::build_iso_from_points_pro(c.base, c.x, c.y, c.f);
      auto cert = indpro::check_iso_pushout(c.base, c.x, c.y, c.f, built.g, built.base_level);
      if (cert.t.size() == c.x.size()) ++certified;
    });
  }
  check.count("cases", cases);
  check.count("certified", certified);
  if (certified != cases && check.pass) check.failure("not every case was certified");
  return check;
}

Check check_lemma_failures(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"lemma-failures", nm.name};
  if (m.universe_size() < 2) {
    check.count("cases", 0);
    return check;
  }
  const DefSet d1 = m.universe_set(1);
  const DefSet d2 = m.universe_set(2);
  DefMap proj = projection(m, d2, d1, 0);
  DefMap diag = diagonal(m, d1, d2);
  DefMap swap = m.map_by_code(d2, d2, [&](Code c) {
    return m.concat(m.slice_code(c, 2, 1, 1), 1, m.slice_code(c, 2, 0, 1), 1);
  });
  auto chain = share(fincat::linear_order(2));
  std::size_t cases = 0;
  auto expect = [&](const char* what, ErrorKind want, const std::function<void()>& fn) {
    ++cases;
    auto kind = error_of(fn);
    if (kind != want) {
      check.failure(std::string(what) + ": expected " + std::string(error_kind_name(want)) + ", got " +
                    (kind ? std::string(error_kind_name(*kind)) : "success"));
    }
  };
  auto constant = indpro::ind_constant(base, d2);
  expect("swap as a section", ErrorKind::kSectionMismatch,
         [&] { indpro::check_iso_lemma(base, constant, d2, {m.identity(d2)}, swap, 0, {0}); });
  // D^2 = D^2 with f = first projection: f merges pairs the system never merges.
  auto same = indpro::make_ind(base, chain, {d2, d2}, std::vector<DefMap>(chain->morphism_count(), m.identity(d2)));
  std::vector<MorphId> t{chain->hom(0, 1).front(), chain->identity(1)};
  expect("identity transitions", ErrorKind::kConditionFails,
         [&] { indpro::check_iso_lemma(base, same, d1, {proj, proj}, diag, 0, t); });
  expect("identity transitions", ErrorKind::kNoWitness,
         [&] { indpro::check_iso_pullback(base, same, d1, {proj, proj}, diag, 0); });
  // Pro(D <- D^2): the limit is D^2.
  std::vector<DefMap> pmaps(chain->morphism_count());
  pmaps[chain->identity(0)] = m.identity(d1);
  pmaps[chain->identity(1)] = m.identity(d2);
  pmaps[chain->hom(0, 1).front()] = proj;
  auto p = indpro::make_pro(base, chain, {d1, d2}, pmaps);
  expect("shrinking image", ErrorKind::kNoWitness,
         [&] { indpro::check_iso_pushout(base, p, d1, {m.identity(d1), diag}, m.identity(d1), 0); });
  check.count("cases", cases);
  return check;
}

// ---------------------------------------------------------------------------
// Slices.

Check check_slice_ind(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"slice-ind", nm.name};
  std::size_t systems = 0, pairs = 0, homs = 0;
  auto sets = m.enumerate(1);
  for (const auto& x : sets) {
    indpro::SliceBase<DefBase> slice(base, x);
    std::vector<DefSet> subs;
    for (const auto& s : sets) {
      if (subset(s, x)) subs.push_back(s);
    }
    std::vector<indpro::IndObject<indpro::SliceBase<DefBase>>> objects;
    for (const auto& chain : ascending_chains(subs)) objects.push_back(defsets::ind_subsets(slice, chain));
    systems += objects.size();
    for (const auto& a : objects) {
      for (const auto& b : objects) {
        guarded(check, "over " + m.set_id(x), [&] {
          auto cmp = indpro::slice_transport(slice, a, b);
          ++pairs;
          homs += cmp.slice_homs;
          if (!cmp.holds()) {
            check.failure("over " + m.set_id(x) + ": " + std::to_string(cmp.slice_homs) + " slice homs, " +
                          std::to_string(cmp.over_homs) + " homs over X");
          }
        });
      }
    }
  }
  check.count("systems", systems);
  check.count("pairs", pairs);
  check.count("homs", homs);
  return check;
}

Check check_slice_pro(const NamedModel& nm) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"slice-pro", nm.name};
  std::size_t systems = 0, pairs = 0, homs = 0;
  auto sets = m.enumerate(1);
  for (const auto& x : sets) {
    indpro::SliceBase<DefBase> slice(base, x);
    std::vector<DefSet> subs;
    for (const auto& s : sets) {
      if (subset(s, x)) subs.push_back(s);
    }
    std::vector<indpro::ProObject<indpro::SliceBase<DefBase>>> objects;
    for (auto chain : ascending_chains(subs)) {
      std::reverse(chain.begin(), chain.end());
      objects.push_back(defsets::pro_subsets(slice, chain));
    }
    systems += objects.size();
    for (const auto& a : objects) {
      for (const auto& b : objects) {
        guarded(check, "over " + m.set_id(x), [&] {
          auto cmp = indpro::slice_transport(slice, a, b);
          ++pairs;
          homs += cmp.slice_homs;
          if (!cmp.holds()) {
            check.failure("over " + m.set_id(x) + ": " + std::to_string(cmp.slice_homs) + " slice homs, " +
                          std::to_string(cmp.over_homs) + " homs over X");
          }
        });
      }
    }
  }
  check.count("systems", systems);
  check.count("pairs", pairs);
  check.count("homs", homs);
  return check;
}

// ---------------------------------------------------------------------------
// The points functor on ind- and pro-systems.

Check check_cor_ind(const NamedModel& nm, std::uint64_t seed, std::size_t samples) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"cor-ind", nm.name};
  Rng rng(seed);
  std::size_t homs = 0, lifted = 0, realized = 0;
  auto make = [&] {
    auto [objects, steps] = random_chain(m, rng);
    auto index = share(fincat::linear_order(objects.size()));
    return indpro::make_ind(base, index, objects, chain_maps(m, *index, objects, steps, true));
  };
  for (std::size_t n = 0; n < samples; ++n) {
    Ind a = make();
    Ind b = make();
    std::string name = "sample " + std::to_string(n);
    guarded(check, name, [&] {
      auto pa = points::points_ind(base, a);
      auto pb = points::points_ind(base, b);
      realized += colimit_matches(a, pa) + colimit_matches(b, pb);
      if (!colimit_matches(a, pa) || !colimit_matches(b, pb)) check.failure(name + ": points differ from the colimit");
      auto all = indpro::hom_ind(base, a, b);
      std::map<std::vector<std::uint32_t>, std::size_t> by_points;
      for (std::size_t k = 0; k < all.size(); ++k) by_points[points::induced_point_map(base, a, b, all[k])] = k;
      homs += all.size();
      if (by_points.size() != all.size()) check.failure(name + ": two morphisms induce the same point map");
      auto equivariant = defsets::equivariant_maps(points::point_action(base, a, pa), points::point_action(base, b, pb),
                                                   m.caps().max_hom_candidates);
      if (equivariant.size() != all.size()) {
        check.failure(name + ": " + std::to_string(equivariant.size()) + " equivariant point maps for " +
                      std::to_string(all.size()) + " morphisms");
      }
      for (const auto& phi : equivariant) {
        auto f = points::graph_to_morphism(base, a, b, points::graph_of_point_map(base, a, b, phi));
        auto it = by_points.find(phi);
        if (points::induced_point_map(base, a, b, f) != phi || it == by_points.end() || !(all[it->second] == f)) {
          check.failure(name + ": point map " + describe_map(phi) + " does not lift");
        } else {
          ++lifted;
        }
      }
    });
  }
  check.count("samples", samples);
  check.count("homs", homs);
  check.count("lifted", lifted);
  check.count("realized", realized);
  return check;
}

Check check_cor_pro(const NamedModel& nm, std::uint64_t seed, std::size_t samples) {
  const Model& m = *nm.model;
  DefBase base(nm.model);
  Check check{"cor-pro", nm.name};
  Rng rng(seed);
  std::size_t homs = 0, equivariant_total = 0, realized = 0;
  auto make = [&] {
    auto [objects, steps] = random_pro_chain(m, rng);
    auto index = share(fincat::linear_order(objects.size()));
    return indpro::make_pro(base, index, objects, chain_maps(m, *index, objects, steps, false));
  };
  for (std::size_t n = 0; n < samples; ++n) {
    Pro a = make();
    Pro b = make();
    std::string name = "sample " + std::to_string(n);
    guarded(check, name, [&] {
      auto pa = points::points_pro(base, a);
      auto pb = points::points_pro(base, b);
      bool ok = pa.families == limit_oracle(a) && pb.families == limit_oracle(b);
      realized += ok ? 2 : 0;
      if (!ok) check.failure(name + ": points differ from the limit");
      auto all = indpro::hom_pro(base, a, b);
      std::set<std::vector<std::uint32_t>> maps;
      for (const auto& f : all) maps.insert(points::induced_point_map(base, a, b, f));
      homs += all.size();
      if (maps.size() != all.size()) check.failure(name + ": two morphisms induce the same point map");
      auto equivariant = defsets::equivariant_maps(points::point_action(base, a, pa), points::point_action(base, b, pb),
                                                   m.caps().max_hom_candidates);
      equivariant_total += equivariant.size();
      std::set<std::vector<std::uint32_t>> eq(equivariant.begin(), equivariant.end());
      if (eq != maps) {
        check.failure(name + ": " + std::to_string(equivariant.size()) + " equivariant point maps, " +
                      std::to_string(maps.size()) + " induced");
      }
    });
  }
  check.count("samples", samples);
  check.count("homs", homs);
  check.count("equivariant", equivariant_total);
  check.count("realized", realized);
  return check;
}

// ---------------------------------------------------------------------------

std::vector<std::string_view> suite_names() {
  return {"prop-points", "prop-compact", "prop-morphisms", "cor-proind", "lemma-iso", "slice"};
}

Report run_suite(std::string_view name, const Config& config) {
  auto names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    fail(ErrorKind::kInvalidArgument, "unknown suite '" + std::string(name) + "'");
  }
  const std::vector<NamedModel> models =
      config.structures.empty() ? bundled_models(config.cap_hom) : config.structures;
  Report r;
  r.suite = std::string(name);
  r.seed = config.seed;
  r.arity_bound = config.arity_bound;
  auto per_model_seed = [&](std::size_t k) { return config.seed * 1000003 + k; };
  if (name == "prop-points") {
    for (const auto& nm : models) {
      r.checks.push_back(check_hom_dm(nm, config.arity_bound));
      r.checks.push_back(check_naturality(nm, config.arity_bound));
      r.checks.push_back(check_d_on_morphisms(nm, config.arity_bound));
      r.checks.push_back(check_union_points(nm));
      r.checks.push_back(check_type_points(nm));
      r.checks.push_back(check_eq_relation_points(nm));
      r.checks.push_back(check_cofinal_invariance(nm));
    }
  } else if (name == "prop-compact") {
    r.checks.push_back(check_builders_ind(models, config.seed, config.bijective_cases, config.non_bijective_cases));
    r.checks.push_back(
        check_builders_pro(models, config.seed + 1, config.bijective_cases, config.non_bijective_cases));
  } else if (name == "prop-morphisms") {
    for (const auto& nm : models) {
      r.checks.push_back(check_graph_round_trip(nm));
      r.checks.push_back(check_full_relation_rejected(nm));
    }
    r.checks.push_back(check_inverse_from_points(models, config.seed, config.samples * models.size()));
  } else if (name == "cor-proind") {
    for (std::size_t k = 0; k < models.size(); ++k) {
      r.checks.push_back(check_cor_ind(models[k], per_model_seed(k), config.samples));
      r.checks.push_back(check_cor_pro(models[k], per_model_seed(k) + 1, config.samples));
    }
  } else if (name == "lemma-iso") {
    r.checks.push_back(check_lemma_pullback(models, config.seed, config.samples * models.size()));
    r.checks.push_back(check_lemma_pushout(models, config.seed + 1, config.samples * models.size()));
    for (const auto& nm : models) r.checks.push_back(check_lemma_failures(nm));
  } else {
    for (const auto& nm : models) {
      r.checks.push_back(check_slice_ind(nm));
      r.checks.push_back(check_slice_pro(nm));
    }
  }
  return r;
}

std::string format_text(const Report& r) {
  std::ostringstream out;
  out << "suite " << r.suite << " seed " << r.seed << " arity " << r.arity_bound << "\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    failed += !c.pass;
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.structure.empty()) out << " [" << c.structure << "]";
    for (const auto& [k, v] : c.counts) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& e : c.counterexamples) out << "  counterexample: " << e << "\n";
  }
  out << (failed == 0 ? "PASS" : "FAIL") << " " << r.suite << ": " << r.checks.size() << " checks, " << failed
      << " failed\n";
  return out.str();
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_records(const Report& r) {
  std::ostringstream out;
  out << "suite=" << r.suite << " seed=" << r.seed << " arity=" << r.arity_bound << "\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    failed += !c.pass;
    out << "check=" << c.name << " structure=" << (c.structure.empty() ? "all" : c.structure)
        << " verdict=" << (c.pass ? "PASS" : "FAIL");
    for (const auto& [k, v] : c.counts) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& e : c.counterexamples) {
      out << "counterexample check=" << c.name << " text=" << quoted(e) << "\n";
    }
  }
  out << "summary suite=" << r.suite << " checks=" << r.checks.size() << " failed=" << failed
      << " verdict=" << (failed == 0 ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace proind::verify
