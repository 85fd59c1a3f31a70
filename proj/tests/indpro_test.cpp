#include "proind/indpro.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "presheaf_oracle.hpp"
#include "proind/errors.hpp"

using namespace proind;
using namespace proind::indpro;
using proind::testing::FinSetSkeleton;
using proind::testing::Rng;

namespace {

std::optional<ErrorKind> error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

const FinSetSkeleton& skeleton() {
  static const FinSetSkeleton s = testing::finset_skeleton(3);
  return s;
}

FinCatBase finset() { return FinCatBase(skeleton().category); }

IndObject<FinCatBase> to_ind(const setval::SetDiagram& d) {
  const auto& s = skeleton();
  const auto& c = *d.index;
  std::vector<ObjId> objects(d.sizes.begin(), d.sizes.end());
  std::vector<MorphId> maps;
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    maps.push_back(s.find(d.sizes[c.dom(t)], d.sizes[c.cod(t)], d.maps[t]));
  }
  return make_ind(finset(), d.index, objects, maps);
}

// A contravariant diagram on a filtering index, obtained from a covariant
// diagram on the reversed order.
ProObject<FinCatBase> random_pro(Rng& rng, std::size_t max_objects, std::uint32_t max_size) {
  const auto& s = skeleton();
  if (testing::coin(rng, 0.2)) {
    auto d = testing::random_idempotent_diagram(rng, max_size);
    std::vector<MorphId> maps;
    for (const auto& t : d.maps) maps.push_back(s.find(d.sizes[0], d.sizes[0], t));
    return make_pro(finset(), d.index, {d.sizes[0]}, maps);
  }
  std::size_t n = testing::uniform(rng, 1, static_cast<std::uint32_t>(max_objects));
  auto leq = testing::random_directed_poset(rng, n);
  std::vector<std::vector<bool>> rev(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rev[i][j] = leq[n - 1 - j][n - 1 - i];
  }
  auto crev = fincat::preorder_category(rev);
  auto d = testing::random_poset_diagram(rng, crev, rev, max_size);
  auto c = std::make_shared<fincat::FinCategory>(fincat::preorder_category(leq));
  std::vector<ObjId> objects;
  for (std::size_t i = 0; i < n; ++i) objects.push_back(d.sizes[n - 1 - i]);
  std::vector<MorphId> maps;
  for (MorphId t = 0; t < c->morphism_count(); ++t) {
    ObjId from = static_cast<ObjId>(n - 1 - c->cod(t));
    ObjId to = static_cast<ObjId>(n - 1 - c->dom(t));
    MorphId u = crev.hom(from, to).front();
    maps.push_back(s.find(d.sizes[from], d.sizes[to], d.maps[u]));
  }
  return make_pro(finset(), c, objects, maps);
}

const setval::Table& table(MorphId f) { return skeleton().tables[f]; }

// Classes of the disjoint union under the zig-zag relation; each position is
// labelled by the least position in its class.
struct Classes {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> label;
  std::vector<std::size_t> distinct;
};

Classes colimit_oracle(const IndObject<FinCatBase>& a) {
  setval::SetDiagram d;
  d.index = a.index;
  d.sizes.assign(a.objects.begin(), a.objects.end());
  for (MorphId t : a.maps) d.maps.push_back(table(t));
  Classes out;
  auto rel = testing::zigzag_closure(d, out.offset);
  for (std::size_t p = 0; p < rel.size(); ++p) {
    std::size_t q = 0;
    while (!rel[p][q]) ++q;
    out.label.push_back(q);
    if (q == p) out.distinct.push_back(p);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> limit_oracle(const ProObject<FinCatBase>& a) {
  const auto& c = *a.index;
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> fam(a.size(), 0);
  for (ObjId x : a.objects) {
    if (x == 0) return out;
  }
  while (true) {
    bool ok = true;
    for (MorphId t = 0; t < c.morphism_count() && ok; ++t) {
      ok = table(a.maps[t])[fam[c.cod(t)]] == fam[c.dom(t)];
    }
    if (ok) out.push_back(fam);
    std::size_t k = 0;
    while (k < fam.size() && ++fam[k] == a.objects[k]) fam[k++] = 0;
    if (k == fam.size()) break;
  }
  return out;
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace

TEST_CASE("finite set skeleton has every function once") {
  CHECK(skeleton().category->morphism_count() == 60);
  CHECK(fincat::validate_category(*skeleton().category).empty());
}

TEST_CASE("ind homs over finite sets are the maps between colimits") {
  Rng rng(11);
  std::size_t total = 0;
  for (int round = 0; round < 60; ++round) {
    auto a = to_ind(testing::random_filtered_diagram(rng, 3, 3));
    auto b = to_ind(testing::random_filtered_diagram(rng, 3, 3));
    Classes ca = colimit_oracle(a);
    Classes cb = colimit_oracle(b);
    auto homs = hom_ind(finset(), a, b);
    std::set<std::vector<std::size_t>> functions;
    for (const auto& f : homs) {
      CHECK(check_compatibility(finset(), a, b, f));
      // Value of f on the class of every position; must only depend on the class.
      std::vector<std::size_t> value(ca.label.size());
      for (ObjId i = 0; i < a.size(); ++i) {
        const auto& fi = f.components[i];
        for (std::uint32_t x = 0; x < a.objects[i]; ++x) {
          value[ca.offset[i] + x] = cb.label[cb.offset[fi.level] + table(fi.map)[x]];
        }
      }
      std::vector<std::size_t> on_classes;
      for (std::size_t p = 0; p < value.size(); ++p) {
        CHECK(value[p] == value[ca.label[p]]);
        if (ca.label[p] == p) on_classes.push_back(value[p]);
      }
      functions.insert(on_classes);
    }
    CHECK(functions.size() == homs.size());
    CHECK(homs.size() == power(cb.distinct.size(), ca.distinct.size()));
    CHECK(std::is_sorted(homs.begin(), homs.end()));
    total += homs.size();
  }
  CHECK(total > 200);
}

TEST_CASE("ind homs count the natural transformations of the associated presheaves") {
  Rng rng(17);
  auto base = finset();
  for (int round = 0; round < 60; ++round) {
    auto a = to_ind(testing::random_filtered_diagram(rng, 3, 3));
    auto b = to_ind(testing::random_filtered_diagram(rng, 3, 3));
    testing::Presheaf<FinCatBase> pa(base, a);
    testing::Presheaf<FinCatBase> pb(base, b);
    CHECK(hom_ind(base, a, b).size() == testing::count_natural_transformations(base, pa, pb));
  }
}

TEST_CASE("pro homs over finite sets are the maps between limits") {
  Rng rng(12);
  std::size_t total = 0;
  for (int round = 0; round < 60; ++round) {
    auto a = random_pro(rng, 3, 3);
    auto b = random_pro(rng, 3, 3);
    auto la = limit_oracle(a);
    auto lb = limit_oracle(b);
    auto homs = hom_pro(finset(), a, b);
    std::set<std::vector<std::size_t>> functions;
    for (const auto& f : homs) {
      CHECK(check_compatibility(finset(), a, b, f));
      std::vector<std::size_t> on_points;
      for (const auto& x : la) {
        std::vector<std::uint32_t> y;
        for (const auto& fj : f.components) y.push_back(table(fj.map)[x[fj.level]]);
        auto it = std::find(lb.begin(), lb.end(), y);
        REQUIRE(it != lb.end());
        on_points.push_back(static_cast<std::size_t>(it - lb.begin()));
      }
      functions.insert(on_points);
    }
    CHECK(functions.size() == homs.size());
    CHECK(homs.size() == power(lb.size(), la.size()));
    total += homs.size();
  }
  CHECK(total > 100);
}

TEST_CASE("pro homs are ind homs in the opposite base") {
  Rng rng(13);
  OppositeBase<FinCatBase> op(finset());
  for (int round = 0; round < 40; ++round) {
    auto a = random_pro(rng, 3, 3);
    auto b = random_pro(rng, 3, 3);
    auto a_op = make_ind(op, a.index, a.objects, a.maps);
    auto b_op = make_ind(op, b.index, b.objects, b.maps);
    auto pro = hom_pro(finset(), a, b);
    auto ind = hom_ind(op, b_op, a_op);
    REQUIRE(pro.size() == ind.size());
    for (std::size_t k = 0; k < pro.size(); ++k) {
      REQUIRE(pro[k].components.size() == ind[k].components.size());
      for (std::size_t j = 0; j < pro[k].components.size(); ++j) {
        CHECK(pro[k].components[j].level == ind[k].components[j].level);
        CHECK(pro[k].components[j].map == ind[k].components[j].map);
      }
    }
  }
}

TEST_CASE("ind composition is associative and unital") {
  Rng rng(14);
  auto base = finset();
  for (int round = 0; round < 25; ++round) {
    auto a = to_ind(testing::random_filtered_diagram(rng, 3, 2));
    auto b = to_ind(testing::random_filtered_diagram(rng, 3, 2));
    auto c = to_ind(testing::random_filtered_diagram(rng, 3, 2));
    auto d = to_ind(testing::random_filtered_diagram(rng, 3, 2));
    auto ab = hom_ind(base, a, b);
    auto bc = hom_ind(base, b, c);
    auto cd = hom_ind(base, c, d);
    for (const auto& f : ab) {
      CHECK(compose_ind(base, a, a, b, identity_ind(base, a), f) == f);
      CHECK(compose_ind(base, a, b, b, f, identity_ind(base, b)) == f);
    }
    for (std::size_t k = 0; k < std::min<std::size_t>(ab.size(), 4); ++k) {
      for (std::size_t l = 0; l < std::min<std::size_t>(bc.size(), 4); ++l) {
        for (std::size_t m = 0; m < std::min<std::size_t>(cd.size(), 4); ++m) {
          auto left = compose_ind(base, a, c, d, compose_ind(base, a, b, c, ab[k], bc[l]), cd[m]);
          auto right = compose_ind(base, a, b, d, ab[k], compose_ind(base, b, c, d, bc[l], cd[m]));
          CHECK(left == right);
          CHECK(check_compatibility(base, a, d, left));
        }
      }
    }
  }
}

TEST_CASE("pro composition is associative and unital") {
  Rng rng(15);
  auto base = finset();
  for (int round = 0; round < 25; ++round) {
    auto a = random_pro(rng, 3, 2);
    auto b = random_pro(rng, 3, 2);
    auto c = random_pro(rng, 3, 2);
    auto d = random_pro(rng, 3, 2);
    auto ab = hom_pro(base, a, b);
    auto bc = hom_pro(base, b, c);
    auto cd = hom_pro(base, c, d);
    for (const auto& f : ab) {
      CHECK(compose_pro(base, a, a, b, identity_pro(base, a), f) == f);
      CHECK(compose_pro(base, a, b, b, f, identity_pro(base, b)) == f);
    }
    for (std::size_t k = 0; k < std::min<std::size_t>(ab.size(), 4); ++k) {
      for (std::size_t l = 0; l < std::min<std::size_t>(bc.size(), 4); ++l) {
        for (std::size_t m = 0; m < std::min<std::size_t>(cd.size(), 4); ++m) {
          auto left = compose_pro(base, a, c, d, compose_pro(base, a, b, c, ab[k], bc[l]), cd[m]);
          auto right = compose_pro(base, a, b, d, ab[k], compose_pro(base, b, c, d, bc[l], cd[m]));
          CHECK(left == right);
          CHECK(check_compatibility(base, a, d, left));
        }
      }
    }
  }
}

TEST_CASE("construction errors") {
  auto base = finset();
  const auto& s = skeleton();
  auto two = std::make_shared<fincat::FinCategory>(fincat::discrete_category(2));
  CHECK(error_kind([&] { make_ind(base, two, {1, 1}, {s.find(1, 1, {0}), s.find(1, 1, {0})}); }) ==
        ErrorKind::kNonFilteringIndex);
  auto chain = std::make_shared<fincat::FinCategory>(fincat::linear_order(2));
  std::vector<MorphId> maps(chain->morphism_count());
  maps[chain->identity(0)] = s.find(2, 2, {0, 1});
  maps[chain->identity(1)] = s.find(2, 2, {0, 1});
  MorphId t = chain->hom(0, 1).front();
  maps[t] = s.find(1, 2, {0});
  CHECK(error_kind([&] { make_ind(base, chain, {2, 2}, maps); }) == ErrorKind::kNonFunctorial);
  maps[t] = s.find(2, 2, {1, 0});
  auto a = make_ind(base, chain, {2, 2}, maps);
  CHECK(error_kind([&] { make_pro(base, chain, {2, 2}, maps); }) == std::nullopt);

  // f_1 . A(t) must agree with f_0 in the colimit of the constant target.
  auto y = ind_constant(base, ObjId{2});
  IndHom<FinCatBase> h(base, a, y);
  CHECK(error_kind([&] { h.assemble({{0, s.find(2, 2, {0, 1})}, {0, s.find(2, 2, {0, 1})}}); }) ==
        ErrorKind::kIncompatibleMorphisms);
  auto ok = h.assemble({{0, s.find(2, 2, {0, 1})}, {0, s.find(2, 2, {1, 0})}});
  CHECK(check_compatibility(base, a, y, ok));
  auto tampered = ok;
  tampered.certificates.clear();
  CHECK_FALSE(check_compatibility(base, a, y, tampered));
  tampered = ok;
  tampered.components[1].map = s.find(2, 2, {0, 1});
  CHECK_FALSE(check_compatibility(base, a, y, tampered));
}

TEST_CASE("isomorphism criterion on definable sets") {
  auto model = std::make_shared<const defsets::Model>(defsets::bundled_structure("S1"));
  DefBase base(model);
  const auto& m = *model;
  auto d1 = m.universe_set(1);
  auto d2 = m.universe_set(2);
  auto proj = m.map_by_code(d2, d1, [&](defsets::Code c) { return m.slice_code(c, 2, 0, 1); });
  auto diag = m.map_by_code(d1, d2, [&](defsets::Code c) { return m.concat(c, 1, c, 1); });
  auto keep_first = m.compose(diag, proj);

  SUBCASE("chain collapsing pairs onto their first coordinate") {
    auto chain = std::make_shared<fincat::FinCategory>(fincat::linear_order(2));
    std::vector<defsets::DefMap> maps(chain->morphism_count());
    maps[chain->identity(0)] = m.identity(d2);
    maps[chain->identity(1)] = m.identity(d1);
    maps[chain->hom(0, 1).front()] = proj;
    auto a = make_ind(base, chain, {d2, d1}, maps);
    std::vector<defsets::DefMap> f{proj, m.identity(d1)};
    auto cert = check_iso_pullback(base, a, d1, f, diag, 0);
    CHECK(cert.steps.size() == 2);
    CHECK(cert.restricted_objects == 2);
    CHECK(check_compatibility(base, ind_constant(base, d1), a, cert.inverse));
  }

  SUBCASE("idempotent splitting") {
    auto mono = std::make_shared<fincat::FinCategory>(testing::idempotent_monoid());
    auto a = make_ind(base, mono, {d2}, {m.identity(d2), keep_first});
    auto cert = check_iso_pullback(base, a, d1, {proj}, diag, 0);
    CHECK(cert.steps.front().t == 1);

    auto p = make_pro(base, mono, {d2}, {m.identity(d2), keep_first});
    auto pc = check_iso_pushout(base, p, d1, {diag}, proj, 0);
    CHECK(pc.t == std::vector<MorphId>{1});
  }

  SUBCASE("failures") {
    auto chain = std::make_shared<fincat::FinCategory>(fincat::linear_order(2));
    std::vector<defsets::DefMap> maps(chain->morphism_count(), m.identity(d2));
    auto a = make_ind(base, chain, {d2, d2}, maps);
    std::vector<defsets::DefMap> f{proj, proj};
    std::vector<MorphId> t{chain->hom(0, 1).front(), chain->identity(1)};
    CHECK(error_kind([&] { check_iso_lemma(base, a, d1, f, diag, 0, t); }) == ErrorKind::kConditionFails);
    CHECK(error_kind([&] { check_iso_pullback(base, a, d1, f, diag, 0); }) == ErrorKind::kNoWitness);

    // Pro(D^2 <- D): the limit is D^2, not D.
    std::vector<defsets::DefMap> pmaps(chain->morphism_count());
    pmaps[chain->identity(0)] = m.identity(d1);
    pmaps[chain->identity(1)] = m.identity(d2);
    pmaps[chain->hom(0, 1).front()] = proj;
    auto p = make_pro(base, chain, {d1, d2}, pmaps);
    CHECK(error_kind([&] { check_iso_pushout(base, p, d1, {m.identity(d1), diag}, m.identity(d1), 0); }) ==
          ErrorKind::kNoWitness);
  }
}

TEST_CASE("isomorphism criterion on finite sets") {
  auto base = finset();
  const auto& s = skeleton();
  auto mono = std::make_shared<fincat::FinCategory>(testing::idempotent_monoid());
  MorphId e = s.find(3, 3, {0, 0, 2});
  auto a = make_ind(base, mono, {3}, {s.find(3, 3, {0, 1, 2}), e});
  MorphId f = s.find(3, 2, {0, 0, 1});
  MorphId g = s.find(2, 3, {0, 2});
  auto cert = check_iso_lemma(base, a, ObjId{2}, {f}, g, 0, {1});
  CHECK(cert.inverse.components.front().map == g);

  CHECK(error_kind([&] { check_iso_lemma(base, a, ObjId{2}, {f}, s.find(2, 3, {2, 0}), 0, {1}); }) ==
        ErrorKind::kSectionMismatch);
  // With t the identity, points 0 and 1 are merged by f but not by A(t).
  std::optional<ErrorKind> kind;
  std::string message;
  try {
    check_iso_lemma(base, a, ObjId{2}, {f}, g, 0, {0});
  } catch (const Error& err) {
    kind = err.kind();
    message = err.what();
  }
  CHECK(kind == ErrorKind::kConditionFails);
  CHECK(message.find("test pair") != std::string::npos);
}

TEST_CASE("slices of systems are systems over the slice") {
  Rng rng(16);
  const auto& s = skeleton();
  auto base = finset();
  for (int round = 0; round < 12; ++round) {
    ObjId over = testing::uniform(rng, 1, 2);
    SliceBase<FinCatBase> slice(base, over);
    auto lift = [&](const IndObject<FinCatBase>& a) {
      // Structure maps p_i = p_last . A(i -> last) for a terminal last level.
      const auto& c = *a.index;
      ObjId last = static_cast<ObjId>(a.size() - 1);
      setval::Table pt(a.objects[last]);
      for (auto& v : pt) v = testing::uniform(rng, 0, over - 1);
      std::vector<SliceBase<FinCatBase>::Object> objects;
      for (ObjId i = 0; i < a.size(); ++i) {
        const auto& via = table(a.maps[c.hom(i, last).front()]);
        setval::Table p(via.size());
        for (std::size_t x = 0; x < p.size(); ++x) p[x] = pt[via[x]];
        objects.push_back(slice.object(s.find(a.objects[i], over, p)));
      }
      std::vector<SliceBase<FinCatBase>::Morphism> maps;
      for (MorphId t = 0; t < c.morphism_count(); ++t) {
        maps.push_back({objects[c.dom(t)], objects[c.cod(t)], a.maps[t]});
      }
      return make_ind(slice, a.index, objects, maps);
    };
    auto random_chain = [&] {
      std::size_t n = testing::uniform(rng, 1, 3);
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
      }
      auto c = fincat::preorder_category(leq);
      auto d = testing::random_poset_diagram(rng, c, leq, 3);
      return to_ind(d);
    };
    auto a = lift(random_chain());
    auto b = lift(random_chain());
    auto cmp = slice_transport(slice, a, b);
    CHECK(cmp.holds());

    auto pa = random_pro(rng, 2, 3);
    auto pb = random_pro(rng, 2, 3);
    auto lift_pro = [&](const ProObject<FinCatBase>& p) {
      const auto& c = *p.index;
      // p_0 = q . A(m) for the last endomorphism m of level 0, so that p_0
      // also factors through an idempotent.
      setval::Table q(p.objects[0]);
      for (auto& v : q) v = testing::uniform(rng, 0, over - 1);
      const auto& m = table(p.maps[c.hom(0, 0).back()]);
      setval::Table p0(m.size());
      for (std::size_t x = 0; x < m.size(); ++x) p0[x] = q[m[x]];
      // Level 0 is initial for the pro index; everything maps down to it.
      std::vector<SliceBase<FinCatBase>::Object> objects;
      for (ObjId i = 0; i < p.size(); ++i) {
        auto hs = c.hom(0, i);
        if (hs.empty()) return std::optional<ProObject<SliceBase<FinCatBase>>>{};
        const auto& via = table(p.maps[hs.front()]);
        setval::Table q(via.size());
        for (std::size_t x = 0; x < q.size(); ++x) q[x] = p0[via[x]];
        objects.push_back(slice.object(s.find(p.objects[i], over, q)));
      }
      std::vector<SliceBase<FinCatBase>::Morphism> maps;
      for (MorphId t = 0; t < c.morphism_count(); ++t) {
        maps.push_back({objects[c.cod(t)], objects[c.dom(t)], p.maps[t]});
      }
      return std::optional{make_pro(slice, p.index, objects, maps)};
    };
    auto sa = lift_pro(pa);
    auto sb = lift_pro(pb);
    if (sa && sb) CHECK(slice_transport(slice, *sa, *sb).holds());
  }
}

TEST_CASE("constant systems and chains over definable sets") {
  auto model = std::make_shared<const defsets::Model>(defsets::bundled_structure("S3"));
  DefBase base(model);
  const auto& m = *model;
  auto sets = m.enumerate(1);
  for (const auto& x : sets) {
    for (const auto& y : sets) {
      auto homs = hom_ind(base, ind_constant(base, x), ind_constant(base, y));
      CHECK(homs.size() == m.hom(x, y).size());
      CHECK(hom_pro(base, pro_constant(base, x), pro_constant(base, y)).size() == m.hom(x, y).size());
      for (const auto& f : homs) {
        auto id = identity_ind(base, ind_constant(base, x));
        CHECK(compose_ind(base, ind_constant(base, x), ind_constant(base, x), ind_constant(base, y), id, f) == f);
      }
    }
  }
  // Composition of constant-system morphisms is base composition.
  auto u = m.universe_set(1);
  for (const auto& f : m.hom(u, u)) {
    for (const auto& g : m.hom(u, u)) {
      auto cu = ind_constant(base, u);
      IndHom<DefBase> h(base, cu, cu);
      auto fi = h.assemble({{0, f}});
      auto gi = h.assemble({{0, g}});
      CHECK(compose_ind(base, cu, cu, cu, fi, gi).components.front().map == m.compose(g, f));
    }
  }
  // Chain empty -> X into the constant X: the empty level contributes nothing.
  auto chain = std::make_shared<fincat::FinCategory>(fincat::linear_order(2));
  auto empty = m.empty_set(1);
  std::vector<defsets::DefMap> maps(chain->morphism_count());
  maps[chain->identity(0)] = m.identity(empty);
  maps[chain->identity(1)] = m.identity(u);
  maps[chain->hom(0, 1).front()] = m.inclusion(empty, u);
  auto a = make_ind(base, chain, {empty, u}, maps);
  CHECK(hom_ind(base, a, ind_constant(base, u)).size() == m.hom(u, u).size());

  // A one-point target is terminal for nonempty pro-systems.
  auto point = m.universe_set(0);
  auto pa = make_pro(base, chain, {u, u}, std::vector<defsets::DefMap>(chain->morphism_count(), m.identity(u)));
  CHECK(hom_pro(base, pa, pro_constant(base, point)).size() == 1);
}
