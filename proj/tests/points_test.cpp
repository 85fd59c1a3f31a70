#include "proind/points.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>

#include "doctest.h"
#include "proind/def_systems.hpp"
#include "proind/errors.hpp"

using namespace proind;
using namespace proind::points;
using indpro::IndHom;

namespace {

std::optional<ErrorKind> error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

std::shared_ptr<const Model> model(const char* name, std::uint32_t max_arity = 3) {
  return std::make_shared<const Model>(defsets::bundled_structure(name), defsets::Caps{max_arity, 1'000'000});
}

fincat::CategoryRef chain(std::size_t n) { return std::make_shared<fincat::FinCategory>(fincat::linear_order(n)); }

IndMor constant_morphism(const DefBase& base, const DefMap& h) {
  return IndHom<DefBase>(base, indpro::ind_constant(base, h.dom), indpro::ind_constant(base, h.cod)).assemble({{0, h}});
}

std::set<Code> codes_of(const DefSet& s) { return {s.codes.begin(), s.codes.end()}; }

}  // namespace

TEST_CASE("index of pointed sets") {
  CHECK(build_dM(*model("S3"), 1).objects.size() == 4);
  CHECK(build_dM(*model("S1"), 1).objects.size() == 3);
  CHECK(build_dM(*model("S1"), 1, DMMode::kReduced).objects.size() == 3);
  auto s1 = build_dM(*model("S1"), 2, DMMode::kReduced);
  // Orbits of pairs: diagonal and off-diagonal, 9 pointed pairs plus 3 points.
  CHECK(s1.objects.size() == 12);
  for (const auto& a : s1.arrows) {
    CHECK(a.map.apply_code(s1.objects[a.from].point) == s1.objects[a.to].point);
  }
  CHECK(s1.find(model("S1")->universe_set(1), 2).has_value());
  CHECK(error_kind([&] { build_dM(*model("S1"), 4); }) == ErrorKind::kArityCapExceeded);
  CHECK(error_kind([&] { build_dM(*model("S1"), 0); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("maps out of the pointed system are points") {
  for (const char* name : {"S1", "S2", "S3"}) {
    auto m = model(name);
    for (DMMode mode : {DMMode::kFull, DMMode::kReduced}) {
      for (const auto& y : m->enumerate(1)) {
        HomDM h = hom_dM(*m, 1, y, mode);
        CAPTURE(name);
        CAPTURE(m->format_set(y));
        CHECK(h.index_bound == 2);
        CHECK(h.size() == y.size());
        CHECK(h.mutually_inverse);
        CHECK(h.point_oracle_agrees);
        CHECK((y.empty() || h.graph_certified > 0));
      }
    }
  }
}

TEST_CASE("graphs need room in the index") {
  auto m = model("S1");
  auto index = build_dM(*m, 1);
  CHECK(error_kind([&] { hom_dM(*m, index, m->universe_set(1)); }) == ErrorKind::kBoundTooSmall);
  auto diag = m->make_set(2, {0, 4, 8});
  auto h = hom_dM(*model("S1", 4), 2, diag, DMMode::kReduced);
  CHECK(h.size() == 3);
  CHECK(h.mutually_inverse);
}

TEST_CASE("bijection with points is natural") {
  for (const char* name : {"S2", "S3"}) {
    auto m = model(name);
    auto index = build_dM(*m, 2);
    for (const auto& x : m->enumerate(1)) {
      for (const auto& y : m->enumerate(1)) {
        for (const auto& g : m->hom(x, y)) CHECK((x.empty() || check_naturality(*m, index, g) > 0));
      }
    }
  }
}

TEST_CASE("endomorphisms of the pointed system are automorphisms") {
  const std::pair<const char*, std::size_t> expected[] = {{"S1", 6}, {"S2", 3}, {"S3", 1}};
  for (const auto& [name, aut] : expected) {
    auto m = model(name);
    for (DMMode mode : {DMMode::kFull, DMMode::kReduced}) {
      auto d = d_on_morphisms(*m, *m, 2, mode);
      CAPTURE(name);
      CHECK(d.families == aut);
      CHECK(d.isomorphisms == aut);
      CHECK(d.all_elementary);
      CHECK(d.matches_isomorphisms);
    }
  }
  CHECK(error_kind([&] { d_on_morphisms(*model("S1"), *model("S1"), 1); }) == ErrorKind::kBoundTooSmall);
  CHECK(error_kind([&] { d_on_morphisms(*model("S1"), *model("S3"), 2); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("maps between different structures") {
  auto s2 = model("S2");
  auto twisted = std::make_shared<const Model>(
      defsets::parse_structure("universe: a b c\nrelations:\n  E/2: (a,c) (c,b) (b,a)\n"));
  auto d = d_on_morphisms(*s2, *twisted, 2);
  CHECK(d.isomorphisms == 3);
  CHECK(d.families == 3);
  CHECK(d.matches_isomorphisms);
  auto path = std::make_shared<const Model>(
      defsets::parse_structure("universe: a b c\nrelations:\n  E/2: (a,b) (b,c)\n"));
  auto none = d_on_morphisms(*s2, *path, 2, DMMode::kReduced);
  CHECK(none.isomorphisms == 0);
  CHECK(none.families == 0);
  CHECK(none.matches_isomorphisms);
}

TEST_CASE("points of systems") {
  auto m = model("S3");
  DefBase base(m);
  auto a = m->make_set(1, {0});
  auto u = m->universe_set(1);
  auto x = defsets::increasing_union(base, {a, u});
  auto px = points_ind(base, x);
  CHECK(px.size() == 2);
  CHECK(format_points(base, x, px).find("(a)") != std::string::npos);
  auto t = defsets::type_system(base, {u, a});
  CHECK(points_pro(base, t).size() == 1);
  CHECK(point_action(base, x, px).size() == 1);

  auto s2 = model("S2");
  DefBase b2(s2);
  auto u2 = s2->universe_set(1);
  auto succ = s2->map_by_code(u2, u2, [](Code c) { return (c + 1) % 3; });
  auto cu = indpro::ind_constant(b2, u2);
  CHECK(induced_point_map(b2, cu, cu, constant_morphism(b2, succ)) == std::vector<std::uint32_t>{1, 2, 0});
  auto pu = indpro::pro_constant(b2, u2);
  auto pf = indpro::ProHom<DefBase>(b2, pu, pu).assemble({{0, succ}});
  CHECK(induced_point_map(b2, pu, pu, pf) == std::vector<std::uint32_t>{1, 2, 0});
  auto act = point_action(b2, cu, points_ind(b2, cu));
  CHECK(act.size() == 3);
  CHECK(act[1] != act[0]);
}

TEST_CASE("isomorphisms from bijections on points") {
  auto m = model("S1");
  DefBase base(m);
  auto d1 = m->universe_set(1);
  auto d2 = m->universe_set(2);
  auto proj = m->map_by_code(d2, d1, [&](Code c) { return m->slice_code(c, 2, 0, 1); });
  auto c = chain(2);
  std::vector<DefMap> maps(c->morphism_count());
  maps[c->identity(0)] = m->identity(d2);
  maps[c->identity(1)] = m->identity(d1);
  maps[c->hom(0, 1).front()] = proj;
  auto x = indpro::make_ind(base, c, {d2, d1}, maps);

  auto built = build_iso_from_points_ind(base, x, d1, {proj, m->identity(d1)});
  CHECK(built.cover_level == 0);
  CHECK(m->compose(m->identity(d1), built.g) == m->identity(d1));

  auto second = m->map_by_code(d2, d1, [&](Code c) { return m->slice_code(c, 2, 1, 1); });
  CHECK(error_kind([&] { build_iso_from_points_ind(base, x, d1, {second, m->identity(d1)}); }) ==
        ErrorKind::kIncompatibleMorphisms);
  auto s3 = model("S3");
  DefBase b3(s3);
  auto u = s3->universe_set(1);
  auto collapse = s3->map_by_code(u, u, [](Code) { return Code{0}; });
  auto cu = indpro::ind_constant(b3, u);
  CHECK(error_kind([&] { build_iso_from_points_ind(b3, cu, u, {collapse}); }) == ErrorKind::kNotBijective);

  // Pro side: the family {a, b} >= {a} has one point.
  auto a = s3->make_set(1, {0});
  auto t = defsets::type_system(b3, {u, a});
  auto pt = build_iso_from_points_pro(b3, t, a, {s3->inclusion(a, u), s3->identity(a)});
  CHECK(pt.injective_level == 0);
  CHECK(pt.g.dom == t.objects[pt.base_level]);
  CHECK(error_kind([&] {
          build_iso_from_points_pro(b3, indpro::pro_constant(b3, u), u, {collapse});
        }) == ErrorKind::kNotBijective);
}

TEST_CASE("inverse of a morphism bijective on points") {
  auto m = model("S3");
  DefBase base(m);
  auto a = m->make_set(1, {0});
  auto u = m->universe_set(1);
  auto x = defsets::increasing_union(base, {a, u});
  auto cu = indpro::ind_constant(base, u);
  auto f = indpro::ind_to_constant(base, x, u, {m->inclusion(a, u), m->identity(u)});
  auto inv = verify_prop_morphisms(base, x, cu, f);
  CHECK(inv.inverse_on_points);
  CHECK(inv.base_levels.size() == 1);
  CHECK(indpro::compose_ind(base, cu, x, cu, inv.inverse, f) == indpro::identity_ind(base, cu));

  auto collapse = m->map_by_code(u, u, [](Code) { return Code{0}; });
  CHECK(error_kind([&] { verify_prop_morphisms(base, cu, cu, constant_morphism(base, collapse)); }) ==
        ErrorKind::kNotBijective);
}

TEST_CASE("morphisms are recovered from their graphs") {
  for (const char* name : {"S2", "S3"}) {
    auto m = model(name);
    DefBase base(m);
    auto u = m->universe_set(1);
    auto cu = indpro::ind_constant(base, u);
    for (const auto& h : m->hom(u, u)) {
      auto f = constant_morphism(base, h);
      auto r = point_graph(base, cu, cu, f);
      CHECK(graph_to_morphism(base, cu, cu, r) == f);
    }
  }
  auto m = model("S1");
  DefBase base(m);
  auto u = m->universe_set(1);
  auto cu = indpro::ind_constant(base, u);
  auto square = m->universe_set(2);
  GraphSubobject full{indpro::ind_constant(base, square), {0}, {0}, {0}, {0}};
  CHECK(error_kind([&] { graph_to_morphism(base, cu, cu, full); }) == ErrorKind::kNotAFunction);
  GraphSubobject wrong{indpro::ind_constant(base, u), {0}, {0}, {0}, {0}};
  CHECK(error_kind([&] { graph_to_morphism(base, cu, cu, wrong); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("equivariant point maps come from morphisms") {
  auto m = model("S2");
  DefBase base(m);
  auto u = m->universe_set(1);
  auto cu = indpro::ind_constant(base, u);
  std::vector<std::uint32_t> rotate{2, 0, 1};
  auto f = graph_to_morphism(base, cu, cu, graph_of_point_map(base, cu, cu, rotate));
  CHECK(induced_point_map(base, cu, cu, f) == rotate);
  std::vector<std::uint32_t> transpose{1, 0, 2};
  CHECK(error_kind([&] { graph_of_point_map(base, cu, cu, transpose); }) == ErrorKind::kNotDefinable);

  // A union of a chain against its limit, over the product index.
  auto s3 = model("S3");
  DefBase b3(s3);
  auto a = s3->make_set(1, {0});
  auto v = s3->universe_set(1);
  auto x = defsets::increasing_union(b3, {a, v});
  auto cv = indpro::ind_constant(b3, v);
  std::vector<std::uint32_t> phi{1, 0};
  auto g = graph_to_morphism(b3, x, cv, graph_of_point_map(b3, x, cv, phi));
  CHECK(induced_point_map(b3, x, cv, g) == phi);
}

TEST_CASE("types are intersections and unions are unions") {
  auto m = model("S3");
  DefBase base(m);
  auto sets = m->enumerate(1);
  std::size_t chains = 0;
  // Every strictly ascending chain of unary definable sets.
  std::function<void(std::vector<DefSet>&)> grow = [&](std::vector<DefSet>& c) {
    if (!c.empty()) {
      ++chains;
      auto un = points_ind(base, defsets::increasing_union(base, c));
      CHECK(un.size() == c.back().size());
      std::vector<DefSet> down(c.rbegin(), c.rend());
      auto ty = points_pro(base, defsets::type_system(base, down));
      CHECK(ty.size() == c.front().size());
    }
    for (const auto& s : sets) {
      if (!c.empty() && (s == c.back() || !std::includes(s.codes.begin(), s.codes.end(), c.back().codes.begin(),
                                                         c.back().codes.end()))) {
        continue;
      }
      c.push_back(s);
      grow(c);
      c.pop_back();
    }
  };
  std::vector<DefSet> start;
  grow(start);
  CHECK(chains == 11);

  auto a = m->make_set(1, {0});
  auto b = m->make_set(1, {1});
  CHECK(error_kind([&] { defsets::type_system(base, {a, b}); }) == ErrorKind::kNotDirected);
  CHECK(error_kind([&] { defsets::increasing_union(base, {a, b}); }) == ErrorKind::kNotAscending);
  CHECK(error_kind([&] { defsets::type_system(base, {}); }) == ErrorKind::kInvalidArgument);
  // A directed family that is not a chain: both contain the empty set.
  auto t = defsets::type_system(base, {a, b, m->empty_set(1)});
  CHECK(points_pro(base, t).size() == 0);
}

TEST_CASE("unions of equivalence relations") {
  auto m = model("S1");
  DefBase base(m);
  auto u = m->universe_set(1);
  auto diag = m->make_set(2, {0, 4, 8});
  auto all = m->universe_set(2);
  auto off = m->make_set(2, {1, 2, 3, 5, 6, 7});
  CHECK(defsets::is_equivalence(*m, u, diag));
  CHECK(defsets::is_equivalence(*m, u, all));
  CHECK(!defsets::is_equivalence(*m, u, off));
  auto e = defsets::eq_relation_union(base, u, {diag, all});
  CHECK(points_ind(base, e).size() == 9);
  CHECK(error_kind([&] { defsets::eq_relation_union(base, u, {diag, off}); }) == ErrorKind::kNotAnEquivalence);
  CHECK(error_kind([&] { defsets::eq_relation_union(base, u, {all, diag}); }) == ErrorKind::kNotCoarsening);
}

TEST_CASE("subsets over a fixed set") {
  auto m = model("S3");
  DefBase base(m);
  auto u = m->universe_set(1);
  auto a = m->make_set(1, {0});
  indpro::SliceBase<DefBase> slice(base, u);
  auto p = defsets::pro_subsets(slice, {u, a});
  auto plain = indpro::forget(slice, p);
  CHECK(codes_of(plain.objects[1]) == codes_of(a));
  CHECK(indpro::slice_transport(slice, p, p).holds());
  CHECK(error_kind([&] { defsets::pro_subsets(indpro::SliceBase<DefBase>(base, a), {u}); }) ==
        ErrorKind::kInvalidArgument);
}
