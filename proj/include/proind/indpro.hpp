#pragma once

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proind/base.hpp"
#include "proind/errors.hpp"
#include "proind/fincat.hpp"
#include "proind/setval.hpp"

namespace proind::indpro {

using fincat::MorphId;
using fincat::ObjId;

template <BaseCategory B>
struct System {
  fincat::CategoryRef index;
  fincat::FilteringWitness witness;
  std::vector<typename B::Object> objects;
  std::vector<typename B::Morphism> maps;

  std::size_t size() const { return objects.size(); }
};

// A formal filtered colimit: maps[t] goes objects[dom t] -> objects[cod t].
template <BaseCategory B>
struct IndObject : System<B> {};

// A formal cofiltered limit. The index is filtering and used contravariantly:
// maps[t] goes objects[cod t] -> objects[dom t].
template <BaseCategory B>
struct ProObject : System<B> {};

// A representative (level, map) of a colimit class of Hom-sets.
template <BaseCategory B>
struct Component {
  ObjId level = 0;
  typename B::Morphism map{};

  friend auto operator<=>(const Component&, const Component&) = default;
  friend bool operator==(const Component&, const Component&) = default;
};

// For an arrow of the limit index: the apex and the two legs at which the
// representatives on either side become equal.
struct Certificate {
  MorphId arrow = fincat::kNoMorphism;
  ObjId apex = 0;
  MorphId first = fincat::kNoMorphism;
  MorphId second = fincat::kNoMorphism;
};

// An element of Lim_i Colim_j Hom(A_i, B_j): one least representative per
// source level. Equality is equality of the representative families.
template <BaseCategory B>
struct IndMorphism {
  std::vector<Component<B>> components;
  std::vector<Certificate> certificates;

  friend bool operator==(const IndMorphism& a, const IndMorphism& b) {
    return a.components == b.components;
  }
  friend auto operator<=>(const IndMorphism& a, const IndMorphism& b) {
    return a.components <=> b.components;
  }
};

// An element of Lim_j Colim_i Hom(A_i, B_j): one least representative
// (source level, map) per target level.
template <BaseCategory B>
struct ProMorphism {
  std::vector<Component<B>> components;
  std::vector<Certificate> certificates;

  friend bool operator==(const ProMorphism& a, const ProMorphism& b) {
    return a.components == b.components;
  }
  friend auto operator<=>(const ProMorphism& a, const ProMorphism& b) {
    return a.components <=> b.components;
  }
};

namespace detail {

template <BaseCategory B>
void check_system(const B& base, const System<B>& s, bool covariant) {
  const auto& c = *s.index;
  if (s.objects.size() != c.object_count() || s.maps.size() != c.morphism_count()) {
    fail(ErrorKind::kNonFunctorial, "system needs one object per index object and one map per index morphism");
  }
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    ObjId from = covariant ? c.dom(t) : c.cod(t);
    ObjId to = covariant ? c.cod(t) : c.dom(t);
    if (!(base.dom(s.maps[t]) == s.objects[from]) || !(base.cod(s.maps[t]) == s.objects[to])) {
      fail(ErrorKind::kNonFunctorial, "map for '" + c.morphism_name(t) + "' has the wrong ends");
    }
    bool member;
    if constexpr (MembershipBase<B>) {
      member = base.is_morphism(s.maps[t]);
    } else {
      const auto& homs = base.hom(s.objects[from], s.objects[to]);
      member = std::binary_search(homs.begin(), homs.end(), s.maps[t]);
    }
    if (!member) {
      fail(ErrorKind::kNonFunctorial, "map for '" + c.morphism_name(t) + "' is not a morphism of the base");
    }
    if (c.is_identity(t) && !(s.maps[t] == base.identity(s.objects[c.dom(t)]))) {
      fail(ErrorKind::kNonFunctorial, "identity '" + c.morphism_name(t) + "' is not sent to an identity");
    }
  }
  for (MorphId f = 0; f < c.morphism_count(); ++f) {
    for (MorphId g : c.out(c.cod(f))) {
      MorphId gf = c.compose(g, f);
      auto expect = covariant ? base.compose(s.maps[g], s.maps[f]) : base.compose(s.maps[f], s.maps[g]);
      if (!(s.maps[gf] == expect)) {
        fail(ErrorKind::kNonFunctorial, "composite '" + c.morphism_name(g) + " . " + c.morphism_name(f) +
                                            "' is not preserved");
      }
    }
  }
}

// Lim over an outer index of Colim over an inner index of a family of
// Hom-sets. hom(o, n) lists the set at (o, n); push moves an element along an
// inner arrow, pull along an outer arrow (from the arrow's codomain to its
// domain). Classes are labelled by their least (inner level, morphism).
template <class M>
class LimColim {
 public:
  template <class Hom, class Push>
  LimColim(const fincat::FinCategory& outer, const fincat::FinCategory& inner, Hom&& hom, Push&& push) {
    const std::size_t no = outer.object_count();
    const std::size_t ni = inner.object_count();
    homs_.assign(no, std::vector<const std::vector<M>*>(ni, nullptr));
    for (ObjId o = 0; o < no; ++o) {
      setval::ArrowDiagram d;
      for (ObjId n = 0; n < ni; ++n) {
        homs_[o][n] = &hom(o, n);
        d.sizes.push_back(static_cast<std::uint32_t>(homs_[o][n]->size()));
      }
      for (MorphId t = 0; t < inner.morphism_count(); ++t) {
        if (inner.is_identity(t)) continue;
        setval::ArrowDiagram::Arrow a{inner.dom(t), inner.cod(t), {}};
        for (const M& h : *homs_[o][a.from]) a.map.push_back(position(o, a.to, push(o, t, h)));
        d.arrows.push_back(std::move(a));
      }
      colimits_.push_back(setval::colimit(d));
    }
  }

  std::size_t class_count(ObjId o) const { return colimits_[o].size(); }

  std::optional<std::uint32_t> class_of(ObjId o, ObjId n, const M& m) const {
    const auto& list = *homs_[o][n];
    auto it = std::lower_bound(list.begin(), list.end(), m);
    if (it == list.end() || !(*it == m)) return std::nullopt;
    return colimits_[o].class_id(n, static_cast<std::uint32_t>(it - list.begin()));
  }

  std::pair<ObjId, const M&> representative(ObjId o, std::uint32_t c) const {
    const setval::Element& e = colimits_[o].representatives[c];
    return {e.object, (*homs_[o][e.object])[e.index]};
  }

  const setval::ColimitResult& colimit(ObjId o) const { return colimits_[o]; }
  const std::vector<M>& hom(ObjId o, ObjId n) const { return *homs_[o][n]; }

  // Compatible families of classes, sorted.
  template <class Pull>
  std::vector<std::vector<std::uint32_t>> families(const fincat::FinCategory& outer, Pull&& pull) const {
    setval::ArrowDiagram d;
    for (ObjId o = 0; o < outer.object_count(); ++o) {
      d.sizes.push_back(static_cast<std::uint32_t>(class_count(o)));
    }
    for (MorphId t = 0; t < outer.morphism_count(); ++t) {
      if (outer.is_identity(t)) continue;
      setval::ArrowDiagram::Arrow a{outer.cod(t), outer.dom(t), {}};
      for (std::uint32_t c = 0; c < class_count(a.from); ++c) {
        auto [n, h] = representative(a.from, c);
        auto target = class_of(a.to, n, pull(t, n, h));
        if (!target) fail(ErrorKind::kInternalConsistency, "pulled morphism missing from its Hom-set");
        a.map.push_back(*target);
      }
      d.arrows.push_back(std::move(a));
    }
    return setval::limit(d).families;
  }

 private:
  std::uint32_t position(ObjId o, ObjId n, const M& m) const {
    const auto& list = *homs_[o][n];
    auto it = std::lower_bound(list.begin(), list.end(), m);
    if (it == list.end() || !(*it == m)) {
      fail(ErrorKind::kInternalConsistency, "composite missing from its Hom-set");
    }
    return static_cast<std::uint32_t>(it - list.begin());
  }

  std::vector<std::vector<const std::vector<M>*>> homs_;
  std::vector<setval::ColimitResult> colimits_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Construction.

template <BaseCategory B>
IndObject<B> make_ind(const B& base, fincat::CategoryRef index, std::vector<typename B::Object> objects,
                      std::vector<typename B::Morphism> maps) {
  IndObject<B> a;
  a.index = std::move(index);
  a.objects = std::move(objects);
  a.maps = std::move(maps);
  a.witness = fincat::require_filtering(*a.index);
  detail::check_system(base, a, true);
  return a;
}

template <BaseCategory B>
ProObject<B> make_pro(const B& base, fincat::CategoryRef index, std::vector<typename B::Object> objects,
                      std::vector<typename B::Morphism> maps) {
  ProObject<B> a;
  a.index = std::move(index);
  a.objects = std::move(objects);
  a.maps = std::move(maps);
  a.witness = fincat::require_filtering(*a.index);
  detail::check_system(base, a, false);
  return a;
}

inline fincat::CategoryRef point_index() {
  static const fincat::CategoryRef one = std::make_shared<fincat::FinCategory>(fincat::discrete_category(1));
  return one;
}

template <BaseCategory B>
IndObject<B> ind_constant(const B& base, const typename B::Object& x) {
  return make_ind(base, point_index(), {x}, {base.identity(x)});
}

template <BaseCategory B>
ProObject<B> pro_constant(const B& base, const typename B::Object& x) {
  return make_pro(base, point_index(), {x}, {base.identity(x)});
}

// ---------------------------------------------------------------------------
// Hom(A, B) = Lim_i Colim_j Hom(A_i, B_j).

template <BaseCategory B>
class IndHom {
 public:
  using Morphism = typename B::Morphism;

  IndHom(B base, const IndObject<B>& a, const IndObject<B>& b)
      : base_(std::move(base)),
        a_(a),
        b_(b),
        engine_(*a.index, *b.index,
                [&](ObjId i, ObjId j) -> const std::vector<Morphism>& {
                  return base_.hom(a.objects[i], b.objects[j]);
                },
                [&](ObjId, MorphId t, const Morphism& h) { return base_.compose(b.maps[t], h); }) {}

  const detail::LimColim<Morphism>& engine() const { return engine_; }

  // Least representative of the class of (j, h) at source level i.
  Component<B> canonical(ObjId i, ObjId j, const Morphism& h) const {
    auto c = engine_.class_of(i, j, h);
    if (!c) fail(ErrorKind::kIncompatibleMorphisms, "morphism is not in Hom(A_i, B_j)");
    auto [level, rep] = engine_.representative(i, *c);
    return Component<B>{level, rep};
  }

  std::vector<IndMorphism<B>> morphisms() const {
    std::vector<IndMorphism<B>> out;
    auto families = engine_.families(*a_.index, [&](MorphId t, ObjId, const Morphism& h) {
      return base_.compose(h, a_.maps[t]);
    });
    for (const auto& fam : families) {
      IndMorphism<B> f;
      for (ObjId i = 0; i < fam.size(); ++i) {
        auto [level, rep] = engine_.representative(i, fam[i]);
        f.components.push_back({level, rep});
      }
      f.certificates = certify(f.components);
      out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Canonicalizes a family of representatives and certifies compatibility;
  // IncompatibleMorphisms if it is not an element of the limit.
  IndMorphism<B> assemble(const std::vector<Component<B>>& reps) const {
    if (reps.size() != a_.size()) fail(ErrorKind::kIncompatibleMorphisms, "one component per source level required");
    IndMorphism<B> f;
    for (ObjId i = 0; i < reps.size(); ++i) {
      if (reps[i].level >= b_.size()) fail(ErrorKind::kIncompatibleMorphisms, "component level out of range");
      f.components.push_back(canonical(i, reps[i].level, reps[i].map));
    }
    f.certificates = certify(f.components);
    return f;
  }

  // For every non-identity source arrow t: i -> i', the least (k, u, v) with
  // B(u) . f_i = B(v) . f_i' . A(t).
  std::vector<Certificate> certify(const std::vector<Component<B>>& comps) const {
    std::vector<Certificate> out;
    const auto& ci = *a_.index;
    const auto& cj = *b_.index;
    for (MorphId t = 0; t < ci.morphism_count(); ++t) {
      if (ci.is_identity(t)) continue;
      const auto& f0 = comps[ci.dom(t)];
      const auto& f1 = comps[ci.cod(t)];
      Morphism moved = base_.compose(f1.map, a_.maps[t]);
      std::optional<Certificate> found;
      for (ObjId k = 0; k < cj.object_count() && !found; ++k) {
        for (MorphId u : cj.hom(f0.level, k)) {
          Morphism lhs = base_.compose(b_.maps[u], f0.map);
          for (MorphId v : cj.hom(f1.level, k)) {
            if (lhs == base_.compose(b_.maps[v], moved)) {
              found = Certificate{t, k, u, v};
              break;
            }
          }
          if (found) break;
        }
      }
      if (!found) {
        fail(ErrorKind::kIncompatibleMorphisms,
             "components at '" + ci.object_name(ci.dom(t)) + "' and '" + ci.object_name(ci.cod(t)) +
                 "' disagree along '" + ci.morphism_name(t) + "'");
      }
      out.push_back(*found);
    }
    return out;
  }

 private:
  B base_;
  const IndObject<B>& a_;
  const IndObject<B>& b_;
  detail::LimColim<Morphism> engine_;
};

template <BaseCategory B>
std::vector<IndMorphism<B>> hom_ind(const B& base, const IndObject<B>& a, const IndObject<B>& b) {
  return IndHom<B>(base, a, b).morphisms();
}

template <BaseCategory B>
IndMorphism<B> identity_ind(const B& base, const IndObject<B>& a) {
  IndHom<B> h(base, a, a);
  std::vector<Component<B>> reps;
  for (ObjId i = 0; i < a.size(); ++i) reps.push_back({i, base.identity(a.objects[i])});
  return h.assemble(reps);
}

// g . f for f: A -> B, g: B -> C.
template <BaseCategory B>
IndMorphism<B> compose_ind(const B& base, const IndObject<B>& a, const IndObject<B>& b, const IndObject<B>& c,
                           const IndMorphism<B>& f, const IndMorphism<B>& g) {
  if (f.components.size() != a.size() || g.components.size() != b.size()) {
    fail(ErrorKind::kIncompatibleMorphisms, "morphisms do not match the given objects");
  }
  IndHom<B> h(base, a, c);
  std::vector<Component<B>> reps;
  for (ObjId i = 0; i < a.size(); ++i) {
    const auto& fi = f.components[i];
    if (fi.level >= b.size()) fail(ErrorKind::kIncompatibleMorphisms, "component level out of range");
    const auto& gj = g.components[fi.level];
    reps.push_back({gj.level, base.compose(gj.map, fi.map)});
  }
  return h.assemble(reps);
}

// Independent re-check of the certificates attached to f.
template <BaseCategory B>
bool check_compatibility(const B& base, const IndObject<B>& a, const IndObject<B>& b, const IndMorphism<B>& f) {
  const auto& ci = *a.index;
  const auto& cj = *b.index;
  if (f.components.size() != a.size()) return false;
  for (ObjId i = 0; i < a.size(); ++i) {
    const auto& fi = f.components[i];
    if (fi.level >= b.size()) return false;
    if (!(base.dom(fi.map) == a.objects[i]) || !(base.cod(fi.map) == b.objects[fi.level])) return false;
  }
  std::size_t k = 0;
  for (MorphId t = 0; t < ci.morphism_count(); ++t) {
    if (ci.is_identity(t)) continue;
    if (k >= f.certificates.size()) return false;
    const Certificate& c = f.certificates[k++];
    const auto& f0 = f.components[ci.dom(t)];
    const auto& f1 = f.components[ci.cod(t)];
    if (c.arrow != t || c.first >= cj.morphism_count() || c.second >= cj.morphism_count()) return false;
    if (cj.dom(c.first) != f0.level || cj.dom(c.second) != f1.level || cj.cod(c.first) != c.apex ||
        cj.cod(c.second) != c.apex) {
      return false;
    }
    if (!(base.compose(b.maps[c.first], f0.map) == base.compose(b.maps[c.second], base.compose(f1.map, a.maps[t])))) {
      return false;
    }
  }
  return k == f.certificates.size();
}

// ---------------------------------------------------------------------------
// Hom(A, B) = Lim_j Colim_i Hom(A_i, B_j) for pro-objects.

template <BaseCategory B>
class ProHom {
 public:
  using Morphism = typename B::Morphism;

  ProHom(B base, const ProObject<B>& a, const ProObject<B>& b)
      : base_(std::move(base)),
        a_(a),
        b_(b),
        engine_(*b.index, *a.index,
                [&](ObjId j, ObjId i) -> const std::vector<Morphism>& {
                  return base_.hom(a.objects[i], b.objects[j]);
                },
                [&](ObjId, MorphId t, const Morphism& h) { return base_.compose(h, a.maps[t]); }) {}

  const detail::LimColim<Morphism>& engine() const { return engine_; }

  Component<B> canonical(ObjId j, ObjId i, const Morphism& h) const {
    auto c = engine_.class_of(j, i, h);
    if (!c) fail(ErrorKind::kIncompatibleMorphisms, "morphism is not in Hom(A_i, B_j)");
    auto [level, rep] = engine_.representative(j, *c);
    return Component<B>{level, rep};
  }

  std::vector<ProMorphism<B>> morphisms() const {
    std::vector<ProMorphism<B>> out;
    auto families = engine_.families(*b_.index, [&](MorphId t, ObjId, const Morphism& h) {
      return base_.compose(b_.maps[t], h);
    });
    for (const auto& fam : families) {
      ProMorphism<B> f;
      for (ObjId j = 0; j < fam.size(); ++j) {
        auto [level, rep] = engine_.representative(j, fam[j]);
        f.components.push_back({level, rep});
      }
      f.certificates = certify(f.components);
      out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  ProMorphism<B> assemble(const std::vector<Component<B>>& reps) const {
    if (reps.size() != b_.size()) fail(ErrorKind::kIncompatibleMorphisms, "one component per target level required");
    ProMorphism<B> f;
    for (ObjId j = 0; j < reps.size(); ++j) {
      if (reps[j].level >= a_.size()) fail(ErrorKind::kIncompatibleMorphisms, "component level out of range");
      f.components.push_back(canonical(j, reps[j].level, reps[j].map));
    }
    f.certificates = certify(f.components);
    return f;
  }

  // For every non-identity target arrow t: j -> j', the least (k, u, v) with
  // f_j . A(u) = B(t) . f_j' . A(v).
  std::vector<Certificate> certify(const std::vector<Component<B>>& comps) const {
    std::vector<Certificate> out;
    const auto& ci = *a_.index;
    const auto& cj = *b_.index;
    for (MorphId t = 0; t < cj.morphism_count(); ++t) {
      if (cj.is_identity(t)) continue;
      const auto& f0 = comps[cj.dom(t)];
      const auto& f1 = comps[cj.cod(t)];
      Morphism moved = base_.compose(b_.maps[t], f1.map);
      std::optional<Certificate> found;
      for (ObjId k = 0; k < ci.object_count() && !found; ++k) {
        for (MorphId u : ci.hom(f0.level, k)) {
          Morphism lhs = base_.compose(f0.map, a_.maps[u]);
          for (MorphId v : ci.hom(f1.level, k)) {
            if (lhs == base_.compose(moved, a_.maps[v])) {
              found = Certificate{t, k, u, v};
              break;
            }
          }
          if (found) break;
        }
      }
      if (!found) {
        fail(ErrorKind::kIncompatibleMorphisms,
             "components at '" + cj.object_name(cj.dom(t)) + "' and '" + cj.object_name(cj.cod(t)) +
                 "' disagree along '" + cj.morphism_name(t) + "'");
      }
      out.push_back(*found);
    }
    return out;
  }

 private:
  B base_;
  const ProObject<B>& a_;
  const ProObject<B>& b_;
  detail::LimColim<Morphism> engine_;
};

template <BaseCategory B>
std::vector<ProMorphism<B>> hom_pro(const B& base, const ProObject<B>& a, const ProObject<B>& b) {
  return ProHom<B>(base, a, b).morphisms();
}

template <BaseCategory B>
ProMorphism<B> identity_pro(const B& base, const ProObject<B>& a) {
  ProHom<B> h(base, a, a);
  std::vector<Component<B>> reps;
  for (ObjId j = 0; j < a.size(); ++j) reps.push_back({j, base.identity(a.objects[j])});
  return h.assemble(reps);
}

template <BaseCategory B>
ProMorphism<B> compose_pro(const B& base, const ProObject<B>& a, const ProObject<B>& b, const ProObject<B>& c,
                           const ProMorphism<B>& f, const ProMorphism<B>& g) {
  if (f.components.size() != b.size() || g.components.size() != c.size()) {
    fail(ErrorKind::kIncompatibleMorphisms, "morphisms do not match the given objects");
  }
  ProHom<B> h(base, a, c);
  std::vector<Component<B>> reps;
  for (ObjId k = 0; k < c.size(); ++k) {
    const auto& gk = g.components[k];
    if (gk.level >= b.size()) fail(ErrorKind::kIncompatibleMorphisms, "component level out of range");
    const auto& fj = f.components[gk.level];
    reps.push_back({fj.level, base.compose(gk.map, fj.map)});
  }
  return h.assemble(reps);
}

template <BaseCategory B>
bool check_compatibility(const B& base, const ProObject<B>& a, const ProObject<B>& b, const ProMorphism<B>& f) {
  const auto& ci = *a.index;
  const auto& cj = *b.index;
  if (f.components.size() != b.size()) return false;
  for (ObjId j = 0; j < b.size(); ++j) {
    const auto& fj = f.components[j];
    if (fj.level >= a.size()) return false;
    if (!(base.dom(fj.map) == a.objects[fj.level]) || !(base.cod(fj.map) == b.objects[j])) return false;
  }
  std::size_t k = 0;
  for (MorphId t = 0; t < cj.morphism_count(); ++t) {
    if (cj.is_identity(t)) continue;
    if (k >= f.certificates.size()) return false;
    const Certificate& c = f.certificates[k++];
    const auto& f0 = f.components[cj.dom(t)];
    const auto& f1 = f.components[cj.cod(t)];
    if (c.arrow != t || c.first >= ci.morphism_count() || c.second >= ci.morphism_count()) return false;
    if (ci.dom(c.first) != f0.level || ci.dom(c.second) != f1.level || ci.cod(c.first) != c.apex ||
        ci.cod(c.second) != c.apex) {
      return false;
    }
    if (!(base.compose(f0.map, a.maps[c.first]) ==
          base.compose(base.compose(b.maps[t], f1.map), a.maps[c.second]))) {
      return false;
    }
  }
  return k == f.certificates.size();
}

// ---------------------------------------------------------------------------
// Morphisms between a system and a constant.

// The morphism X -> Ind(A) given by g: X -> A_level.
template <BaseCategory B>
IndMorphism<B> ind_from_constant(const B& base, const typename B::Object& x, const IndObject<B>& a, ObjId level,
                                 const typename B::Morphism& g) {
  return IndHom<B>(base, ind_constant(base, x), a).assemble({{level, g}});
}

// The morphism Ind(A) -> Y given by the family f_i: A_i -> Y.
template <BaseCategory B>
IndMorphism<B> ind_to_constant(const B& base, const IndObject<B>& a, const typename B::Object& y,
                               const std::vector<typename B::Morphism>& f) {
  std::vector<Component<B>> reps;
  for (const auto& fi : f) reps.push_back({0, fi});
  return IndHom<B>(base, a, ind_constant(base, y)).assemble(reps);
}

// The morphism Pro(A) -> Y given by g: A_level -> Y.
template <BaseCategory B>
ProMorphism<B> pro_to_constant(const B& base, const ProObject<B>& a, ObjId level, const typename B::Object& y,
                               const typename B::Morphism& g) {
  return ProHom<B>(base, a, pro_constant(base, y)).assemble({{level, g}});
}

// The morphism Y -> Pro(A) given by the family f_i: Y -> A_i.
template <BaseCategory B>
ProMorphism<B> pro_from_constant(const B& base, const typename B::Object& y, const ProObject<B>& a,
                                 const std::vector<typename B::Morphism>& f) {
  std::vector<Component<B>> reps;
  for (const auto& fi : f) reps.push_back({0, fi});
  return ProHom<B>(base, pro_constant(base, y), a).assemble(reps);
}

// ---------------------------------------------------------------------------
// The isomorphism criterion for f: Ind(A) -> Y with a section g: Y -> A_0.

namespace detail {

// Empty when the condition "f h1 = f h2 implies t h1 = t h2" holds for f, t
// out of the same object; otherwise a description of a violating pair.
template <BaseCategory B>
std::optional<std::string> condition_violation(const B& base, const typename B::Morphism& f,
                                               const typename B::Morphism& t) {
  if constexpr (KernelBase<B>) {
    if (base.kernel_contains(t, f)) return std::nullopt;
    return "the kernel pair of " + base.morphism_name(f) + " is not contained in that of " + base.morphism_name(t);
  } else if constexpr (ListableBase<B>) {
    for (const auto& v : base.objects()) {
      const auto& hs = base.hom(v, base.dom(f));
      for (std::size_t p = 0; p < hs.size(); ++p) {
        for (std::size_t q = p + 1; q < hs.size(); ++q) {
          if (base.compose(f, hs[p]) == base.compose(f, hs[q]) &&
              !(base.compose(t, hs[p]) == base.compose(t, hs[q]))) {
            return "test pair " + base.morphism_name(hs[p]) + ", " + base.morphism_name(hs[q]) + " from " +
                   base.object_name(v);
          }
        }
      }
    }
    return std::nullopt;
  } else {
    static_assert(sizeof(B) == 0, "the lemma condition needs kernel pairs or a finite base");
  }
}

}  // namespace detail

template <BaseCategory B>
struct LemmaCertificate {
  // Per source level i: the cocone (apex, leg) reaching the subsystem under
  // the base level, the arrow r from the base level, the chosen t at the
  // apex, and the composites s = t . r and t . leg with
  // A(s) . g . f_i = A(t . leg).
  struct Step {
    ObjId level = 0;
    ObjId apex = 0;
    MorphId leg = fincat::kNoMorphism;
    MorphId r = fincat::kNoMorphism;
    MorphId t = fincat::kNoMorphism;
    MorphId s = fincat::kNoMorphism;
    MorphId t_leg = fincat::kNoMorphism;
  };
  ObjId base_level = 0;
  std::size_t restricted_objects = 0;
  std::vector<Step> steps;
  IndMorphism<B> inverse;
};

// f: Ind(A) -> Y as the family f_i, g: Y -> A_{i0}, t[i]: i -> j index arrows.
template <BaseCategory B>
LemmaCertificate<B> check_iso_lemma(const B& base, const IndObject<B>& a, const typename B::Object& y,
                                    const std::vector<typename B::Morphism>& f, const typename B::Morphism& g,
                                    ObjId i0, const std::vector<MorphId>& t) {
  const auto& c = *a.index;
  if (f.size() != a.size() || t.size() != a.size() || i0 >= a.size()) {
    fail(ErrorKind::kInvalidArgument, "lemma data does not match the system");
  }
  for (ObjId i = 0; i < a.size(); ++i) {
    if (t[i] >= c.morphism_count() || c.dom(t[i]) != i) {
      fail(ErrorKind::kInvalidArgument, "t at level '" + c.object_name(i) + "' does not start there");
    }
  }
  if (!(base.compose(f[i0], g) == base.identity(y))) {
    fail(ErrorKind::kSectionMismatch, "f_0 . g is not the identity of " + base.object_name(y));
  }
  for (ObjId i = 0; i < a.size(); ++i) {
    if (auto bad = detail::condition_violation(base, f[i], a.maps[t[i]])) {
      fail(ErrorKind::kConditionFails, "level '" + c.object_name(i) + "': " + *bad);
    }
  }

  LemmaCertificate<B> cert;
  cert.base_level = i0;
  fincat::Subcategory sub = fincat::cofinal_restriction(c, i0);
  cert.restricted_objects = sub.objects.size();
  std::vector<bool> reachable(a.size(), false);
  for (ObjId x : sub.objects) reachable[x] = true;
  for (ObjId i = 0; i < a.size(); ++i) {
    typename LemmaCertificate<B>::Step step;
    step.level = i;
    if (reachable[i]) {
      step.apex = i;
      step.leg = c.identity(i);
      step.r = c.hom(i0, i).front();
    } else {
      const fincat::Cocone& cc = a.witness.cocone(i0, i);
      step.apex = cc.apex;
      step.leg = cc.from_second;
      step.r = cc.from_first;
    }
    step.t = t[step.apex];
    step.s = c.compose(step.t, step.r);
    step.t_leg = c.compose(step.t, step.leg);
    auto lhs = base.compose(a.maps[step.s], base.compose(g, f[i]));
    if (!(lhs == a.maps[step.t_leg])) {
      fail(ErrorKind::kInternalConsistency,
           "proof replay failed at level '" + c.object_name(i) + "': s . g . f_i differs from t");
    }
    cert.steps.push_back(step);
  }

  // Both composites, computed in the Ind category.
  IndObject<B> yc = ind_constant(base, y);
  IndMorphism<B> fm = ind_to_constant(base, a, y, f);
  cert.inverse = ind_from_constant(base, y, a, i0, g);
  if (!(compose_ind(base, yc, a, yc, cert.inverse, fm) == identity_ind(base, yc)) ||
      !(compose_ind(base, a, yc, a, fm, cert.inverse) == identity_ind(base, a))) {
    fail(ErrorKind::kInternalConsistency, "certified inverse does not compose to identities");
  }
  return cert;
}

// Finds t_i with ker A(t_i) = ker f_i (least first) and hands over to the
// lemma.
template <KernelBase B>
std::vector<MorphId> pullback_witnesses(const B& base, const IndObject<B>& a,
                                        const std::vector<typename B::Morphism>& f) {
  const auto& c = *a.index;
  std::vector<MorphId> t;
  for (ObjId i = 0; i < a.size(); ++i) {
    auto target = base.kernel_pair(f[i]);
    std::optional<MorphId> found;
    for (MorphId u : c.out(i)) {
      if (base.kernel_pair(a.maps[u]) == target) {
        found = u;
        break;
      }
    }
    if (!found) {
      fail(ErrorKind::kNoWitness, "no system map out of '" + c.object_name(i) + "' has the kernel pair of f_i");
    }
    t.push_back(*found);
  }
  return t;
}

template <KernelBase B>
LemmaCertificate<B> check_iso_pullback(const B& base, const IndObject<B>& a, const typename B::Object& y,
                                       const std::vector<typename B::Morphism>& f, const typename B::Morphism& g,
                                       ObjId i0) {
  if (f.size() != a.size()) fail(ErrorKind::kInvalidArgument, "one f_i per level required");
  return check_iso_lemma(base, a, y, f, g, i0, pullback_witnesses(base, a, f));
}

template <BaseCategory B>
struct ProLemmaCertificate {
  ObjId base_level = 0;
  std::vector<MorphId> t;
  ProMorphism<B> inverse;
};

// f: Y -> Pro(A) as the family f_i, g: A_{i0} -> Y with g . f_{i0} = id.
// Looks for t_i: i -> j with image A(t_i) = image f_i and certifies the
// inverse through both composites.
template <KernelBase B>
ProLemmaCertificate<B> check_iso_pushout(const B& base, const ProObject<B>& a, const typename B::Object& y,
                                         const std::vector<typename B::Morphism>& f, const typename B::Morphism& g,
                                         ObjId i0) {
  const auto& c = *a.index;
  if (f.size() != a.size() || i0 >= a.size()) fail(ErrorKind::kInvalidArgument, "lemma data does not match the system");
  if (!(base.compose(g, f[i0]) == base.identity(y))) {
    fail(ErrorKind::kSectionMismatch, "g . f_0 is not the identity of " + base.object_name(y));
  }
  ProLemmaCertificate<B> cert;
  cert.base_level = i0;
  for (ObjId i = 0; i < a.size(); ++i) {
    auto target = base.image(f[i]);
    std::optional<MorphId> found;
    for (MorphId u : c.out(i)) {
      if (base.image(a.maps[u]) == target) {
        found = u;
        break;
      }
    }
    if (!found) {
      fail(ErrorKind::kNoWitness, "no system map into '" + c.object_name(i) + "' has the image of f_i");
    }
    cert.t.push_back(*found);
  }
  // Dual replay: through a cocone m of (i0, i), s = t_m . r and the leg u,
  // f_i . g . A(s) = A(t_m . u).
  for (ObjId i = 0; i < a.size(); ++i) {
    const fincat::Cocone& cc = a.witness.cocone(i0, i);
    MorphId tm = cert.t[cc.apex];
    MorphId s = c.compose(tm, cc.from_first);
    MorphId tu = c.compose(tm, cc.from_second);
    if (!(base.compose(f[i], base.compose(g, a.maps[s])) == a.maps[tu])) {
      fail(ErrorKind::kInternalConsistency, "dual proof replay failed at level '" + c.object_name(i) + "'");
    }
  }
  ProObject<B> yc = pro_constant(base, y);
  ProMorphism<B> fm = pro_from_constant(base, y, a, f);
  cert.inverse = pro_to_constant(base, a, i0, y, g);
  if (!(compose_pro(base, yc, a, yc, fm, cert.inverse) == identity_pro(base, yc)) ||
      !(compose_pro(base, a, yc, a, cert.inverse, fm) == identity_pro(base, a))) {
    fail(ErrorKind::kInternalConsistency, "certified inverse does not compose to identities");
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Slices: Ind(C/X) against Ind(C)/X, and the Pro version.

template <BaseCategory B>
IndObject<B> forget(const SliceBase<B>& s, const IndObject<SliceBase<B>>& a) {
  std::vector<typename B::Object> objects;
  std::vector<typename B::Morphism> maps;
  for (const auto& x : a.objects) objects.push_back(x.source);
  for (const auto& m : a.maps) maps.push_back(m.map);
  return make_ind(s.underlying(), a.index, std::move(objects), std::move(maps));
}

template <BaseCategory B>
ProObject<B> forget(const SliceBase<B>& s, const ProObject<SliceBase<B>>& a) {
  std::vector<typename B::Object> objects;
  std::vector<typename B::Morphism> maps;
  for (const auto& x : a.objects) objects.push_back(x.source);
  for (const auto& m : a.maps) maps.push_back(m.map);
  return make_pro(s.underlying(), a.index, std::move(objects), std::move(maps));
}

struct SliceComparison {
  std::size_t slice_homs = 0;  // Hom in the category of systems over the slice
  std::size_t over_homs = 0;   // Hom in the slice of the system category
  bool injective = false;
  bool image_matches = false;

  bool holds() const { return slice_homs == over_homs && injective && image_matches; }
};

template <BaseCategory B>
SliceComparison slice_transport(const SliceBase<B>& s, const IndObject<SliceBase<B>>& a,
                                const IndObject<SliceBase<B>>& b) {
  const B& base = s.underlying();
  IndObject<B> ua = forget(s, a);
  IndObject<B> ub = forget(s, b);
  auto structure = [&](const IndObject<SliceBase<B>>& x, const IndObject<B>& ux) {
    std::vector<typename B::Morphism> arrows;
    for (const auto& o : x.objects) arrows.push_back(o.arrow);
    return ind_to_constant(base, ux, s.over(), arrows);
  };
  IndObject<B> xc = ind_constant(base, s.over());
  IndMorphism<B> pa = structure(a, ua);
  IndMorphism<B> pb = structure(b, ub);

  IndHom<B> plain(base, ua, ub);
  std::vector<IndMorphism<B>> images;
  SliceComparison out;
  for (const auto& f : hom_ind(s, a, b)) {
    std::vector<Component<B>> reps;
    for (const auto& c : f.components) reps.push_back({c.level, c.map.map});
    images.push_back(plain.assemble(reps));
  }
  out.slice_homs = images.size();
  std::vector<IndMorphism<B>> over;
  for (const auto& f : plain.morphisms()) {
    if (compose_ind(base, ua, ub, xc, f, pb) == pa) over.push_back(f);
  }
  out.over_homs = over.size();
  std::sort(images.begin(), images.end());
  out.injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  out.image_matches = images == over;
  return out;
}

template <BaseCategory B>
SliceComparison slice_transport(const SliceBase<B>& s, const ProObject<SliceBase<B>>& a,
                                const ProObject<SliceBase<B>>& b) {
  const B& base = s.underlying();
  ProObject<B> ua = forget(s, a);
  ProObject<B> ub = forget(s, b);
  auto structure = [&](const ProObject<SliceBase<B>>& x, const ProObject<B>& ux) {
    return pro_to_constant(base, ux, 0, s.over(), x.objects[0].arrow);
  };
  ProObject<B> xc = pro_constant(base, s.over());
  ProMorphism<B> pa = structure(a, ua);
  ProMorphism<B> pb = structure(b, ub);

  ProHom<B> plain(base, ua, ub);
  std::vector<ProMorphism<B>> images;
  SliceComparison out;
  for (const auto& f : hom_pro(s, a, b)) {
    std::vector<Component<B>> reps;
    for (const auto& c : f.components) reps.push_back({c.level, c.map.map});
    images.push_back(plain.assemble(reps));
  }
  out.slice_homs = images.size();
  std::vector<ProMorphism<B>> over;
  for (const auto& f : plain.morphisms()) {
    if (compose_pro(base, ua, ub, xc, f, pb) == pa) over.push_back(f);
  }
  out.over_homs = over.size();
  std::sort(images.begin(), images.end());
  out.injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  out.image_matches = images == over;
  return out;
}

}  // namespace proind::indpro
