#include "proind/points.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

#include "proind/errors.hpp"

namespace proind::points {

namespace {

constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

// Position of the map with the given table in a Hom list (one dom/cod, so
// the list is sorted by table).
std::uint32_t position_of(const std::vector<DefMap>& list, const std::vector<std::uint32_t>& table) {
  auto it = std::lower_bound(list.begin(), list.end(), table,
                             [](const DefMap& f, const std::vector<std::uint32_t>& t) { return f.table < t; });
  if (it == list.end() || it->table != table) {
    fail(ErrorKind::kInternalConsistency, "composite missing from its Hom-set");
  }
  return static_cast<std::uint32_t>(it - list.begin());
}

std::vector<std::uint32_t> compose_tables(const std::vector<std::uint32_t>& g, const std::vector<std::uint32_t>& f) {
  std::vector<std::uint32_t> h(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) h[p] = g[f[p]];
  return h;
}

DefMap projection(const Model& m, const DefSet& from, const DefSet& to, std::uint32_t start) {
  return m.map_by_code(from, to, [&](Code c) { return m.slice_code(c, from.arity, start, to.arity); });
}

// Concatenated pairs {(x, y) : keep(p, q)} for positions p in x, q in y;
// sorted because codes concatenate most significant first.
template <class Keep>
DefSet pair_set(const Model& m, const DefSet& x, const DefSet& y, Keep&& keep) {
  std::vector<Code> codes;
  for (std::uint32_t p = 0; p < x.size(); ++p) {
    for (std::uint32_t q = 0; q < y.size(); ++q) {
      if (keep(p, q)) codes.push_back(m.concat(x.codes[p], x.arity, y.codes[q], y.arity));
    }
  }
  return m.make_set(x.arity + y.arity, std::move(codes));
}

// (x, y) -> (u x, v y) restricted to from -> to.
DefMap product_map(const Model& m, const DefSet& from, const DefSet& to, const DefMap& u, const DefMap& v) {
  return m.map_by_code(from, to, [&](Code c) {
    Code x = m.slice_code(c, from.arity, 0, u.dom.arity);
    Code y = m.slice_code(c, from.arity, u.dom.arity, v.dom.arity);
    return m.concat(u.apply_code(x), u.cod.arity, v.apply_code(y), v.cod.arity);
  });
}

std::string describe_class(const DefBase& base, const Ind& x, const setval::ColimitResult& points, std::uint32_t c) {
  const auto& e = points.representatives[c];
  return "[" + x.index->object_name(e.object) + "." +
         base.model().format_tuple(x.objects[e.object].codes[e.index], x.objects[e.object].arity) + "]";
}

}  // namespace

// ---------------------------------------------------------------------------

setval::SetDiagram point_diagram(const DefBase& base, const indpro::System<DefBase>& x, bool covariant) {
  setval::SetDiagram d;
  d.index = x.index;
  d.variance = covariant ? fincat::Variance::kCovariant : fincat::Variance::kContravariant;
  for (const auto& s : x.objects) {
    d.sizes.push_back(static_cast<std::uint32_t>(s.size()));
    std::vector<std::string> labels;
    for (Code c : s.codes) labels.push_back(base.model().format_tuple(c, s.arity));
    d.labels.push_back(std::move(labels));
  }
  for (const auto& f : x.maps) d.maps.push_back(f.table);
  return d;
}

setval::ColimitResult points_ind(const DefBase& base, const Ind& x) {
  return setval::filtered_colimit(point_diagram(base, x, true), &x.witness);
}

setval::LimitResult points_pro(const DefBase& base, const Pro& x) {
  return setval::limit(point_diagram(base, x, false));
}

std::string format_points(const DefBase& base, const Ind& x, const setval::ColimitResult& points) {
  return setval::format_colimit(point_diagram(base, x, true), points);
}

std::string format_points(const DefBase& base, const Pro& x, const setval::LimitResult& points) {
  return setval::format_limit(point_diagram(base, x, false), points);
}

std::vector<std::uint32_t> induced_point_map(const DefBase& base, const Ind& a, const Ind& b, const IndMor& f) {
  auto pa = points_ind(base, a);
  auto pb = points_ind(base, b);
  std::vector<std::uint32_t> out(pa.size(), kNone);
  for (ObjId i = 0; i < a.size(); ++i) {
    const auto& fi = f.components.at(i);
    for (std::uint32_t p = 0; p < a.objects[i].size(); ++p) {
      std::uint32_t value = pb.class_id(fi.level, fi.map.table[p]);
      std::uint32_t& slot = out[pa.class_id(i, p)];
      if (slot == kNone) {
        slot = value;
      } else if (slot != value) {
        fail(ErrorKind::kInternalConsistency, "point map depends on the representative");
      }
    }
  }
  return out;
}

std::vector<std::uint32_t> induced_point_map(const DefBase& base, const Pro& a, const Pro& b, const ProMor& f) {
  auto la = points_pro(base, a).families;
  auto lb = points_pro(base, b).families;
  std::vector<std::uint32_t> out;
  for (const auto& fam : la) {
    std::vector<std::uint32_t> image;
    for (const auto& fj : f.components) image.push_back(fj.map.table[fam[fj.level]]);
    auto it = std::lower_bound(lb.begin(), lb.end(), image);
    if (it == lb.end() || *it != image) fail(ErrorKind::kInternalConsistency, "image of a point is not a point");
    out.push_back(static_cast<std::uint32_t>(it - lb.begin()));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> point_action(const DefBase& base, const Ind& x,
                                                     const setval::ColimitResult& points) {
  const Model& m = base.model();
  std::vector<std::vector<std::uint32_t>> act;
  for (const auto& g : m.aut().elements) {
    std::vector<std::uint32_t> row;
    for (const auto& e : points.representatives) {
      const DefSet& s = x.objects[e.object];
      row.push_back(points.class_id(e.object, s.position(m.act(g, s.codes[e.index], s.arity))));
    }
    act.push_back(std::move(row));
  }
  return act;
}

std::vector<std::vector<std::uint32_t>> point_action(const DefBase& base, const Pro& x,
                                                     const setval::LimitResult& points) {
  const Model& m = base.model();
  std::vector<std::vector<std::uint32_t>> act;
  for (const auto& g : m.aut().elements) {
    std::vector<std::uint32_t> row;
    for (const auto& fam : points.families) {
      std::vector<std::uint32_t> moved;
      for (ObjId i = 0; i < x.size(); ++i) {
        const DefSet& s = x.objects[i];
        moved.push_back(s.position(m.act(g, s.codes[fam[i]], s.arity)));
      }
      auto it = std::lower_bound(points.families.begin(), points.families.end(), moved);
      row.push_back(static_cast<std::uint32_t>(it - points.families.begin()));
    }
    act.push_back(std::move(row));
  }
  return act;
}

// ---------------------------------------------------------------------------

std::optional<std::uint32_t> DMIndex::find(const DefSet& set, Code point) const {
  auto it = lookup.find({set, point});
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

DMIndex build_dM(const Model& m, std::uint32_t arity_bound, DMMode mode) {
  if (arity_bound < 1) fail(ErrorKind::kInvalidArgument, "arity bound must be at least 1");
  if (arity_bound > m.caps().max_arity) {
    fail(ErrorKind::kArityCapExceeded, "arity bound " + std::to_string(arity_bound) + " exceeds the cap " +
                                           std::to_string(m.caps().max_arity));
  }
  DMIndex index;
  index.bound = arity_bound;
  index.mode = mode;
  std::vector<DefSet> sets;
  for (std::uint32_t k = 1; k <= arity_bound; ++k) {
    if (mode == DMMode::kFull) {
      for (auto& s : m.enumerate(k)) {
        if (!s.empty()) sets.push_back(std::move(s));
      }
    } else {
      for (const auto& orbit : m.orbits(k)) sets.push_back(DefSet{k, orbit});
    }
  }
  std::vector<std::uint32_t> first(sets.size() + 1, 0);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    first[s + 1] = first[s] + static_cast<std::uint32_t>(sets[s].size());
    for (Code c : sets[s].codes) {
      index.lookup[{sets[s], c}] = static_cast<std::uint32_t>(index.objects.size());
      index.objects.push_back({sets[s], c});
    }
  }
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t t = 0; t < sets.size(); ++t) {
      for (const auto& f : m.hom(sets[s], sets[t])) {
        bool identity = s == t;
        for (std::uint32_t p = 0; p < f.table.size() && identity; ++p) identity = f.table[p] == p;
        if (identity) continue;
        for (std::uint32_t p = 0; p < f.table.size(); ++p) {
          index.arrows.push_back({first[s] + p, first[t] + f.table[p], f});
        }
      }
    }
  }
  return index;
}

HomDM hom_dM(const Model& m, const DMIndex& index, const DefSet& y) {
  HomDM out;
  out.index_bound = index.bound;
  out.index_objects = index.objects.size();
  out.index_arrows = index.arrows.size();
  const std::size_t n = index.objects.size();
  std::vector<const std::vector<DefMap>*> homs(n);
  setval::ArrowDiagram d;
  for (std::size_t o = 0; o < n; ++o) {
    homs[o] = &m.hom(index.objects[o].set, y);
    d.sizes.push_back(static_cast<std::uint32_t>(homs[o]->size()));
  }
  // u: (X', a') -> (X, a) acts by h -> h . u from Hom(X, Y) to Hom(X', Y).
  for (const auto& u : index.arrows) {
    setval::ArrowDiagram::Arrow a{u.to, u.from, {}};
    for (const auto& h : *homs[u.to]) a.map.push_back(position_of(*homs[u.from], compose_tables(h.table, u.map.table)));
    d.arrows.push_back(std::move(a));
  }
  out.classes = setval::colimit(d);

  auto point_of = [&](std::uint32_t o, std::uint32_t p) { return (*homs[o])[p].apply_code(index.objects[o].point); };
  for (const auto& e : out.classes.representatives) out.forward.push_back(point_of(e.object, e.index));

  // Point oracle: every member of a class has the class's point, and distinct
  // classes have distinct points.
  out.point_oracle_agrees = true;
  for (std::uint32_t o = 0; o < n; ++o) {
    for (std::uint32_t p = 0; p < homs[o]->size(); ++p) {
      if (point_of(o, p) != out.forward[out.classes.class_id(o, p)]) out.point_oracle_agrees = false;
    }
  }
  std::set<Code> distinct(out.forward.begin(), out.forward.end());
  if (distinct.size() != out.forward.size()) out.point_oracle_agrees = false;

  // a -> class of the identity of Y (or of the inclusion of the orbit of a).
  auto anchor = [&](Code b) -> std::pair<std::uint32_t, std::uint32_t> {
    if (index.mode == DMMode::kFull) {
      auto o = index.find(y, b);
      if (!o) fail(ErrorKind::kBoundTooSmall, "target " + m.set_id(y) + " is not in the index");
      return {*o, position_of(*homs[*o], m.identity(y).table)};
    }
    DefSet orbit = m.orbit_of(b, y.arity);
    auto o = index.find(orbit, b);
    if (!o) fail(ErrorKind::kBoundTooSmall, "orbit of the target point is not in the index");
    return {*o, position_of(*homs[*o], m.inclusion(orbit, y).table)};
  };
  for (Code b : y.codes) {
    auto [o, p] = anchor(b);
    out.inverse.push_back(out.classes.class_id(o, p));
  }
  out.mutually_inverse = out.forward.size() == y.size();
  for (std::uint32_t q = 0; q < y.size() && out.mutually_inverse; ++q) {
    out.mutually_inverse = out.forward[out.inverse[q]] == y.codes[q];
  }
  for (std::uint32_t c = 0; c < out.forward.size() && out.mutually_inverse; ++c) {
    out.mutually_inverse = y.contains(out.forward[c]) && out.inverse[y.position(out.forward[c])] == c;
  }

  // Graph trick: f at (X, a) and the anchor of f(a) both restrict to the
  // projection of the graph of f at (a, f(a)). Only graphs inside the bound
  // are available; the anchors' graphs must be, so every class is reached.
  if (2 * y.arity > index.bound) {
    fail(ErrorKind::kBoundTooSmall, "graphs of arity " + std::to_string(2 * y.arity) +
                                        " do not fit in an index of bound " + std::to_string(index.bound));
  }
  for (std::uint32_t o = 0; o < n; ++o) {
    const DMObject& obj = index.objects[o];
    for (std::uint32_t p = 0; p < homs[o]->size(); ++p) {
      const DefMap& f = (*homs[o])[p];
      const std::uint32_t arity = obj.set.arity + y.arity;
      if (arity > index.bound) continue;
      Code b = f.apply_code(obj.point);
      Code pair = m.concat(obj.point, obj.set.arity, b, y.arity);
      DefSet gamma = index.mode == DMMode::kFull ? m.graph(f).set : m.orbit_of(pair, arity);
      auto go = index.find(gamma, pair);
      if (!go) fail(ErrorKind::kBoundTooSmall, "graph of " + m.set_id(f.dom) + " -> " + m.set_id(y) + " not in the index");
      DefMap first = projection(m, gamma, obj.set, 0);
      DefSet target = index.mode == DMMode::kFull ? y : m.orbit_of(b, y.arity);
      DefMap second = m.compose(m.inclusion(target, y), projection(m, gamma, target, obj.set.arity));
      auto via_first = compose_tables(f.table, first.table);
      if (via_first != second.table) fail(ErrorKind::kInternalConsistency, "graph projections disagree");
      std::uint32_t through = out.classes.class_id(*go, position_of(*homs[*go], via_first));
      auto [ao, ap] = anchor(b);
      if (through != out.classes.class_id(o, p) || through != out.classes.class_id(ao, ap)) {
        fail(ErrorKind::kInternalConsistency, "graph of a map is not identified with both ends");
      }
      ++out.graph_certified;
    }
  }
  return out;
}

HomDM hom_dM(const Model& m, std::uint32_t arity_bound, const DefSet& y, DMMode mode) {
  return hom_dM(m, build_dM(m, arity_bound + y.arity, mode), y);
}

std::size_t check_naturality(const Model& m, const DMIndex& index, const DefMap& g) {
  HomDM before = hom_dM(m, index, g.dom);
  HomDM after = hom_dM(m, index, g.cod);
  std::size_t checked = 0;
  for (std::uint32_t o = 0; o < index.objects.size(); ++o) {
    const auto& homs = m.hom(index.objects[o].set, g.dom);
    const auto& homs_after = m.hom(index.objects[o].set, g.cod);
    for (std::uint32_t p = 0; p < homs.size(); ++p) {
      std::uint32_t moved = after.classes.class_id(o, position_of(homs_after, compose_tables(g.table, homs[p].table)));
      Code lhs = after.forward[moved];
      Code rhs = g.apply_code(before.forward[before.classes.class_id(o, p)]);
      if (lhs != rhs) fail(ErrorKind::kInternalConsistency, "bijection with points is not natural");
      ++checked;
    }
  }
  return checked;
}

DOnMorphisms d_on_morphisms(const Model& m, const Model& n, std::uint32_t arity_bound, DMMode mode) {
  if (!m.structure().same_signature(n.structure())) {
    fail(ErrorKind::kInvalidArgument, "structures have different signatures");
  }
  const std::uint32_t need = std::max<std::uint32_t>(2, n.structure().signature_arity());
  if (arity_bound < need) {
    fail(ErrorKind::kBoundTooSmall, "families determine elementary maps only from arity " + std::to_string(need));
  }
  DMIndex index = build_dM(n, arity_bound, mode);
  DOnMorphisms out;
  auto isos = defsets::isomorphisms(n.structure(), m.structure());
  out.isomorphisms = isos.size();

  // X(M) as the image of X under an isomorphism N -> M (every choice gives
  // the same set); empty when there is none.
  const std::size_t count = index.objects.size();
  std::vector<std::vector<Code>> in_m(count);
  std::vector<std::vector<std::uint32_t>> to_m(count);  // position in X -> position in X(M)
  if (!isos.empty()) {
    const auto& sigma = isos.front();
    for (std::size_t o = 0; o < count; ++o) {
      const DefSet& s = index.objects[o].set;
      for (Code c : s.codes) in_m[o].push_back(n.act(sigma, c, s.arity));
      std::sort(in_m[o].begin(), in_m[o].end());
      for (Code c : s.codes) {
        Code image = n.act(sigma, c, s.arity);
        to_m[o].push_back(static_cast<std::uint32_t>(std::lower_bound(in_m[o].begin(), in_m[o].end(), image) -
                                                     in_m[o].begin()));
      }
    }
  }
  setval::ArrowDiagram d;
  for (std::size_t o = 0; o < count; ++o) d.sizes.push_back(static_cast<std::uint32_t>(in_m[o].size()));
  if (!isos.empty()) {
    for (const auto& u : index.arrows) {
      setval::ArrowDiagram::Arrow a{u.from, u.to, std::vector<std::uint32_t>(in_m[u.from].size())};
      for (std::uint32_t p = 0; p < u.map.table.size(); ++p) a.map[to_m[u.from][p]] = to_m[u.to][u.map.table[p]];
      d.arrows.push_back(std::move(a));
    }
  }
  auto families = setval::limit(d).families;
  out.families = families.size();

  const std::size_t size = n.universe_size();
  out.all_elementary = true;
  for (const auto& fam : families) {
    defsets::Perm phi(size);
    for (defsets::Elem e = 0; e < size; ++e) {
      DefSet where = mode == DMMode::kFull ? n.universe_set(1) : n.orbit_of(e, 1);
      auto o = index.find(where, e);
      if (!o) fail(ErrorKind::kBoundTooSmall, "element missing from the index");
      phi[e] = static_cast<defsets::Elem>(in_m[*o][fam[*o]]);
    }
    // The family is phi applied coordinatewise, and phi preserves and
    // reflects membership in every set of the index.
    std::set<DefSet> sets;
    for (std::size_t o = 0; o < count; ++o) {
      const DMObject& obj = index.objects[o];
      sets.insert(obj.set);
      if (in_m[o][fam[o]] != n.act(phi, obj.point, obj.set.arity)) out.all_elementary = false;
    }
    for (const DefSet& s : sets) {
      std::set<Code> image;
      for (std::size_t o = 0; o < count; ++o) {
        if (index.objects[o].set == s) image.insert(in_m[o].begin(), in_m[o].end());
      }
      for (Code c = 0; c < n.tuple_count(s.arity); ++c) {
        if (s.contains(c) != (image.count(n.act(phi, c, s.arity)) > 0)) out.all_elementary = false;
      }
    }
    out.maps.push_back(std::move(phi));
  }
  std::sort(out.maps.begin(), out.maps.end());
  out.matches_isomorphisms = out.maps == isos;
  return out;
}

// ---------------------------------------------------------------------------

IndIsoFromPoints build_iso_from_points_ind(const DefBase& base, const Ind& x, const DefSet& y,
                                           const std::vector<DefMap>& f) {
  const Model& m = base.model();
  const auto& c = *x.index;
  if (f.size() != x.size()) fail(ErrorKind::kInvalidArgument, "one f_i per level required");
  for (ObjId i = 0; i < x.size(); ++i) {
    if (f[i].dom != x.objects[i] || f[i].cod != y) fail(ErrorKind::kInvalidArgument, "f_i has the wrong ends");
  }
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    if (m.compose(f[c.cod(t)], x.maps[t]) != f[c.dom(t)]) {
      fail(ErrorKind::kIncompatibleMorphisms, "f is not compatible along '" + c.morphism_name(t) + "'");
    }
  }
  auto points = points_ind(base, x);
  std::vector<std::uint32_t> image(points.size(), kNone);
  for (ObjId i = 0; i < x.size(); ++i) {
    for (std::uint32_t p = 0; p < x.objects[i].size(); ++p) image[points.class_id(i, p)] = f[i].table[p];
  }
  std::vector<std::uint32_t> preimage(y.size(), kNone);
  for (std::uint32_t k = 0; k < image.size(); ++k) {
    if (preimage[image[k]] != kNone) {
      fail(ErrorKind::kNotBijective, "points " + describe_class(base, x, points, preimage[image[k]]) + " and " +
                                         describe_class(base, x, points, k) + " both go to " +
                                         m.format_tuple(y.codes[image[k]], y.arity));
    }
    preimage[image[k]] = k;
  }
  for (std::uint32_t q = 0; q < y.size(); ++q) {
    if (preimage[q] == kNone) {
      fail(ErrorKind::kNotBijective, "point " + m.format_tuple(y.codes[q], y.arity) + " has no preimage");
    }
  }

  IndIsoFromPoints out;
  // A finite subcover of Y by the images of the f_i, then one level above it.
  std::vector<ObjId> cover;
  std::vector<bool> covered(y.size(), false);
  for (ObjId i = 0; i < x.size(); ++i) {
    bool adds = false;
    for (auto v : f[i].table) {
      if (!covered[v]) adds = covered[v] = true;
    }
    if (adds) cover.push_back(i);
  }
  if (cover.empty()) cover.push_back(0);
  out.cover_level = fincat::fold_cocone(c, x.witness, cover).first;
  if (!m.surjective(f[out.cover_level])) fail(ErrorKind::kInternalConsistency, "cover level is not surjective");

  try {
    out.t = indpro::pullback_witnesses(base, x, f);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNoWitness) throw;
    fail(ErrorKind::kInternalConsistency, std::string("bijective on points but ") + e.what());
  }
  const ObjId k = out.cover_level;
  const DefMap& tk = x.maps[out.t[k]];
  out.base_level = c.cod(out.t[k]);
  std::vector<std::uint32_t> g(y.size());
  for (std::uint32_t q = 0; q < y.size(); ++q) {
    auto it = std::find(f[k].table.begin(), f[k].table.end(), q);
    g[q] = tk.table[static_cast<std::size_t>(it - f[k].table.begin())];
  }
  out.g = m.make_map(y, x.objects[out.base_level], std::move(g));
  out.certificate = indpro::check_iso_lemma(base, x, y, f, out.g, out.base_level, out.t);
  return out;
}

ProIsoFromPoints build_iso_from_points_pro(const DefBase& base, const Pro& x, const DefSet& y,
                                           const std::vector<DefMap>& f) {
  const Model& m = base.model();
  const auto& c = *x.index;
  if (f.size() != x.size()) fail(ErrorKind::kInvalidArgument, "one f_i per level required");
  for (ObjId i = 0; i < x.size(); ++i) {
    if (f[i].dom != y || f[i].cod != x.objects[i]) fail(ErrorKind::kInvalidArgument, "f_i has the wrong ends");
  }
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    if (m.compose(x.maps[t], f[c.cod(t)]) != f[c.dom(t)]) {
      fail(ErrorKind::kIncompatibleMorphisms, "f is not compatible along '" + c.morphism_name(t) + "'");
    }
  }
  auto families = points_pro(base, x).families;
  std::vector<bool> hit(families.size(), false);
  for (std::uint32_t q = 0; q < y.size(); ++q) {
    std::vector<std::uint32_t> fam;
    for (const auto& fi : f) fam.push_back(fi.table[q]);
    auto it = std::lower_bound(families.begin(), families.end(), fam);
    auto k = static_cast<std::size_t>(it - families.begin());
    if (hit[k]) fail(ErrorKind::kNotBijective, "two points of Y have the same image, one being " + m.format_tuple(y.codes[q], y.arity));
    hit[k] = true;
  }
  for (std::size_t k = 0; k < families.size(); ++k) {
    if (!hit[k]) fail(ErrorKind::kNotBijective, "compatible family " + std::to_string(k) + " has no preimage");
  }

  ProIsoFromPoints out;
  // Levels separating every pair of points, then one level mapping to all of them.
  std::vector<ObjId> separating;
  for (std::uint32_t p = 0; p < y.size(); ++p) {
    for (std::uint32_t q = p + 1; q < y.size(); ++q) {
      ObjId i = 0;
      while (f[i].table[p] == f[i].table[q]) ++i;
      if (std::find(separating.begin(), separating.end(), i) == separating.end()) separating.push_back(i);
    }
  }
  if (separating.empty()) separating.push_back(0);
  out.injective_level = fincat::fold_cocone(c, x.witness, separating).first;
  const ObjId k = out.injective_level;
  if (!m.injective(f[k])) fail(ErrorKind::kInternalConsistency, "separating level is not injective");
  DefSet target = m.image(f[k]);
  for (MorphId u : c.out(k)) {
    if (m.image(x.maps[u]) == target) {
      out.t = u;
      break;
    }
  }
  if (out.t == fincat::kNoMorphism) fail(ErrorKind::kInternalConsistency, "bijective on points but no level has the image of f");
  out.base_level = c.cod(out.t);
  const DefMap& tk = x.maps[out.t];
  std::vector<std::uint32_t> g(tk.table.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    auto it = std::find(f[k].table.begin(), f[k].table.end(), tk.table[p]);
    g[p] = static_cast<std::uint32_t>(it - f[k].table.begin());
  }
  out.g = m.make_map(x.objects[out.base_level], y, std::move(g));
  try {
    out.certificate = indpro::check_iso_pushout(base, x, y, f, out.g, out.base_level);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNoWitness) throw;
    fail(ErrorKind::kInternalConsistency, std::string("bijective on points but ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------

PropMorphisms verify_prop_morphisms(const DefBase& base, const Ind& a, const Ind& b, const IndMor& f) {
  const Model& m = base.model();
  auto pa = points_ind(base, a);
  auto pb = points_ind(base, b);
  auto phi = induced_point_map(base, a, b, f);
  std::vector<std::uint32_t> phi_inverse(pb.size(), kNone);
  for (std::uint32_t k = 0; k < phi.size(); ++k) {
    if (phi_inverse[phi[k]] != kNone) {
      fail(ErrorKind::kNotBijective, "points " + describe_class(base, a, pa, phi_inverse[phi[k]]) + " and " +
                                         describe_class(base, a, pa, k) + " have the same image");
    }
    phi_inverse[phi[k]] = k;
  }
  for (std::uint32_t k = 0; k < pb.size(); ++k) {
    if (phi_inverse[k] == kNone) {
      fail(ErrorKind::kNotBijective, "point " + describe_class(base, b, pb, k) + " has no preimage");
    }
  }

  PropMorphisms out;
  const auto& ca = *a.index;
  std::vector<indpro::Component<DefBase>> comps;
  for (ObjId j = 0; j < b.size(); ++j) {
    const DefSet& bj = b.objects[j];
    std::vector<DefSet> q;
    for (ObjId i = 0; i < a.size(); ++i) {
      q.push_back(pair_set(m, a.objects[i], bj, [&](std::uint32_t p, std::uint32_t r) {
        return phi[pa.class_id(i, p)] == pb.class_id(j, r);
      }));
    }
    std::vector<DefMap> maps;
    for (MorphId t = 0; t < ca.morphism_count(); ++t) {
      maps.push_back(product_map(m, q[ca.dom(t)], q[ca.cod(t)], a.maps[t], m.identity(bj)));
    }
    Ind qj = indpro::make_ind(base, a.index, q, maps);
    std::vector<DefMap> second;
    for (ObjId i = 0; i < a.size(); ++i) second.push_back(projection(m, q[i], bj, a.objects[i].arity));
    // Points of the pullback system are the pairs ([x], y) with f[x] = [y].
    if (points_ind(base, qj).size() != bj.size()) {
      fail(ErrorKind::kInternalConsistency, "pullback of points is not the pullback system's points");
    }
    auto built = build_iso_from_points_ind(base, qj, bj, second);
    ObjId i0 = built.base_level;
    DefMap first = projection(m, q[i0], a.objects[i0], 0);
    comps.push_back({i0, m.compose(first, built.g)});
    out.base_levels.push_back(i0);
  }
  out.inverse = indpro::IndHom<DefBase>(base, b, a).assemble(comps);
  if (indpro::compose_ind(base, a, b, a, f, out.inverse) != indpro::identity_ind(base, a) ||
      indpro::compose_ind(base, b, a, b, out.inverse, f) != indpro::identity_ind(base, b)) {
    fail(ErrorKind::kInternalConsistency, "constructed inverse does not compose to identities");
  }
  out.inverse_on_points = induced_point_map(base, b, a, out.inverse) == phi_inverse;
  return out;
}

GraphSubobject point_graph(const DefBase& base, const Ind& x, const Ind& y, const IndMor& f) {
  const Model& m = base.model();
  const auto& ci = *x.index;
  const auto& cj = *y.index;
  indpro::IndHom<DefBase> hom(base, x, y);
  struct Triple {
    ObjId i;
    ObjId j;
    DefMap h;
  };
  std::vector<Triple> triples;
  for (ObjId i = 0; i < x.size(); ++i) {
    const auto& fi = f.components.at(i);
    auto target = hom.engine().class_of(i, fi.level, fi.map);
    if (!target) fail(ErrorKind::kIncompatibleMorphisms, "component is not a morphism of the systems");
    for (ObjId j = 0; j < y.size(); ++j) {
      for (const auto& h : hom.engine().hom(i, j)) {
        if (hom.engine().class_of(i, j, h) == target) triples.push_back({i, j, h});
      }
    }
  }
  fincat::CategoryBuilder builder;
  for (std::size_t k = 0; k < triples.size(); ++k) {
    builder.add_object(ci.object_name(triples[k].i) + "/" + cj.object_name(triples[k].j) + "/" + std::to_string(k));
  }
  struct Arrow {
    ObjId from, to;
    MorphId t, s;
  };
  std::vector<Arrow> arrows;
  std::map<std::tuple<ObjId, ObjId, MorphId, MorphId>, MorphId> find;
  for (ObjId p = 0; p < triples.size(); ++p) {
    for (ObjId q = 0; q < triples.size(); ++q) {
      for (MorphId t : ci.hom(triples[p].i, triples[q].i)) {
        for (MorphId s : cj.hom(triples[p].j, triples[q].j)) {
          if (m.compose(y.maps[s], triples[p].h) != m.compose(triples[q].h, x.maps[t])) continue;
          MorphId id = builder.add_morphism(ci.morphism_name(t) + "," + cj.morphism_name(s) + "@" + std::to_string(p),
                                            p, q);
          if (p == q && ci.is_identity(t) && cj.is_identity(s)) builder.set_identity(p, id);
          find[{p, q, t, s}] = id;
          arrows.push_back({p, q, t, s});
        }
      }
    }
  }
  for (MorphId g1 = 0; g1 < arrows.size(); ++g1) {
    for (MorphId g2 = 0; g2 < arrows.size(); ++g2) {
      if (arrows[g2].from != arrows[g1].to) continue;
      auto it = find.find({arrows[g1].from, arrows[g2].to, ci.compose(arrows[g2].t, arrows[g1].t),
                           cj.compose(arrows[g2].s, arrows[g1].s)});
      if (it == find.end()) fail(ErrorKind::kInternalConsistency, "triples are not closed under composition");
      builder.set_compose(g2, g1, it->second);
    }
  }
  auto index = std::make_shared<fincat::FinCategory>(builder.build(fincat::SizeCaps{256, 2048}));

  GraphSubobject r;
  std::vector<DefSet> sets;
  for (const auto& tr : triples) {
    sets.push_back(m.graph(tr.h).set);
    r.x_level.push_back(tr.i);
    r.y_level.push_back(tr.j);
  }
  std::vector<DefMap> maps;
  for (const auto& a : arrows) {
    maps.push_back(product_map(m, sets[a.from], sets[a.to], x.maps[a.t], y.maps[a.s]));
    r.x_arrow.push_back(a.t);
    r.y_arrow.push_back(a.s);
  }
  r.relation = indpro::make_ind(base, index, sets, maps);
  return r;
}

GraphSubobject graph_of_point_map(const DefBase& base, const Ind& x, const Ind& y,
                                  const std::vector<std::uint32_t>& phi) {
  const Model& m = base.model();
  const auto& ci = *x.index;
  const auto& cj = *y.index;
  auto px = points_ind(base, x);
  auto py = points_ind(base, y);
  if (phi.size() != px.size()) fail(ErrorKind::kInvalidArgument, "point map has the wrong number of points");
  auto index = std::make_shared<fincat::FinCategory>(fincat::product_category(ci, cj, fincat::SizeCaps{256, 4096}));
  GraphSubobject r;
  std::vector<DefSet> sets;
  for (ObjId i = 0; i < x.size(); ++i) {
    for (ObjId j = 0; j < y.size(); ++j) {
      sets.push_back(pair_set(m, x.objects[i], y.objects[j], [&](std::uint32_t p, std::uint32_t q) {
        return phi[px.class_id(i, p)] == py.class_id(j, q);
      }));
      r.x_level.push_back(i);
      r.y_level.push_back(j);
    }
  }
  std::vector<DefMap> maps;
  for (MorphId t = 0; t < ci.morphism_count(); ++t) {
    for (MorphId s = 0; s < cj.morphism_count(); ++s) {
      ObjId from = static_cast<ObjId>(ci.dom(t) * y.size() + cj.dom(s));
      ObjId to = static_cast<ObjId>(ci.cod(t) * y.size() + cj.cod(s));
      maps.push_back(product_map(m, sets[from], sets[to], x.maps[t], y.maps[s]));
      r.x_arrow.push_back(t);
      r.y_arrow.push_back(s);
    }
  }
  r.relation = indpro::make_ind(base, index, sets, maps);
  return r;
}

IndMor graph_to_morphism(const DefBase& base, const Ind& x, const Ind& y, const GraphSubobject& r) {
  const Model& m = base.model();
  const Ind& rel = r.relation;
  const auto& cr = *rel.index;
  if (r.x_level.size() != rel.size() || r.y_level.size() != rel.size() || r.x_arrow.size() != cr.morphism_count() ||
      r.y_arrow.size() != cr.morphism_count()) {
    fail(ErrorKind::kInvalidArgument, "graph data does not match the relation system");
  }
  std::vector<DefMap> px, py;
  for (ObjId l = 0; l < rel.size(); ++l) {
    if (r.x_level[l] >= x.size() || r.y_level[l] >= y.size()) fail(ErrorKind::kInvalidArgument, "level out of range");
    const DefSet& xs = x.objects[r.x_level[l]];
    const DefSet& ys = y.objects[r.y_level[l]];
    const DefSet& rs = rel.objects[l];
    if (rs.arity != xs.arity + ys.arity) fail(ErrorKind::kInvalidArgument, "relation level has the wrong arity");
    for (Code c : rs.codes) {
      if (!xs.contains(m.slice_code(c, rs.arity, 0, xs.arity)) || !ys.contains(m.slice_code(c, rs.arity, xs.arity, ys.arity))) {
        fail(ErrorKind::kInvalidArgument, "relation level is not inside X x Y");
      }
    }
    px.push_back(projection(m, rs, xs, 0));
    py.push_back(projection(m, rs, ys, xs.arity));
  }
  const auto& cx = *x.index;
  const auto& cy = *y.index;
  for (MorphId t = 0; t < cr.morphism_count(); ++t) {
    MorphId u = r.x_arrow[t];
    MorphId v = r.y_arrow[t];
    if (u >= cx.morphism_count() || v >= cy.morphism_count() || cx.dom(u) != r.x_level[cr.dom(t)] ||
        cx.cod(u) != r.x_level[cr.cod(t)] || cy.dom(v) != r.y_level[cr.dom(t)] || cy.cod(v) != r.y_level[cr.cod(t)]) {
      fail(ErrorKind::kInvalidArgument, "structure arrows do not match '" + cr.morphism_name(t) + "'");
    }
    if (product_map(m, rel.objects[cr.dom(t)], rel.objects[cr.cod(t)], x.maps[u], y.maps[v]) != rel.maps[t]) {
      fail(ErrorKind::kInvalidArgument, "relation map along '" + cr.morphism_name(t) + "' is not the restricted product");
    }
  }
  std::vector<indpro::Component<DefBase>> cx_comps, cy_comps;
  for (ObjId l = 0; l < rel.size(); ++l) {
    cx_comps.push_back({r.x_level[l], px[l]});
    cy_comps.push_back({r.y_level[l], py[l]});
  }
  IndMor to_x = indpro::IndHom<DefBase>(base, rel, x).assemble(cx_comps);
  IndMor to_y = indpro::IndHom<DefBase>(base, rel, y).assemble(cy_comps);

  auto pr = points_ind(base, rel);
  auto pts_x = points_ind(base, x);
  auto on_x = induced_point_map(base, rel, x, to_x);
  std::vector<std::uint32_t> count(pts_x.size(), 0);
  for (auto v : on_x) ++count[v];
  for (std::uint32_t k = 0; k < count.size(); ++k) {
    if (count[k] != 1) {
      fail(ErrorKind::kNotAFunction, "point " + describe_class(base, x, pts_x, k) + " is related to " +
                                         std::to_string(count[k]) + " points");
    }
  }
  IndMor section = verify_prop_morphisms(base, rel, x, to_x).inverse;
  return indpro::compose_ind(base, x, rel, y, section, to_y);
}

}  // namespace proind::points
