#include "proind/setval.hpp"

#include <numeric>

#include "doctest.h"
#include "generators.hpp"
#include "proind/errors.hpp"

using namespace proind;
using namespace proind::setval;

namespace {

SetDiagram constant_on_chain(std::uint32_t n, std::size_t len) {
  SetDiagram d;
  d.index = std::make_shared<fincat::FinCategory>(fincat::linear_order(len));
  d.sizes.assign(len, n);
  Table id(n);
  std::iota(id.begin(), id.end(), 0);
  d.maps.assign(d.index->morphism_count(), id);
  return d;
}

}  // namespace

TEST_CASE("filtered_colimit basics") {
  SUBCASE("constant diagram keeps its elements") {
    CHECK(filtered_colimit(constant_on_chain(2, 3)).size() == 2);
  }
  SUBCASE("both elements forced together") {
    SetDiagram d;
    d.index = std::make_shared<fincat::FinCategory>(fincat::linear_order(2));
    d.sizes = {2, 1};
    d.maps.resize(3);
    d.maps[d.index->identity(0)] = {0, 1};
    d.maps[d.index->identity(1)] = {0};
    d.maps[*d.index->find_morphism("0<1")] = {0, 0};
    auto r = filtered_colimit(d);
    CHECK(r.size() == 1);
    CHECK(r.representatives.front() == Element{0, 0});
  }
  SUBCASE("non-filtering index is rejected") {
    SetDiagram d;
    d.index = std::make_shared<fincat::FinCategory>(fincat::discrete_category(2));
    d.sizes = {1, 1};
    d.maps = {{0}, {0}};
    CHECK_THROWS_AS(filtered_colimit(d), Error);
    try {
      filtered_colimit(d);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kNonFilteringIndex);
    }
  }
  SUBCASE("non-functorial diagram is rejected") {
    SetDiagram d = constant_on_chain(2, 3);
    d.maps[*d.index->find_morphism("0<2")] = {1, 0};
    try {
      filtered_colimit(d);
      FAIL("expected NonFunctorial");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kNonFunctorial);
    }
  }
  SUBCASE("empty diagram has an empty colimit and a one-family limit") {
    SetDiagram d;
    d.index = std::make_shared<fincat::FinCategory>(fincat::discrete_category(0));
    CHECK(filtered_colimit(d).size() == 0);
    CHECK(limit(d).size() == 1);
  }
}

TEST_CASE("colimit classes are labelled by least member") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    SetDiagram d = testing::random_filtered_diagram(rng, 4, 4);
    auto r = filtered_colimit(d);
    auto members = r.members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      CHECK(members[k].front() == r.representatives[k]);
      if (k > 0) CHECK(r.representatives[k - 1] < r.representatives[k]);
    }
  }
}

TEST_CASE("filtered_colimit matches the zig-zag oracle and the two-sided characterization") {
  testing::Rng rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    SetDiagram d = testing::random_filtered_diagram(rng, 4, 5);
    REQUIRE(check_functorial(d).empty());
    auto r = filtered_colimit(d);
    std::vector<std::size_t> offset;
    auto rel = testing::zigzag_closure(d, offset);
    const auto& c = *d.index;
    for (ObjId i = 0; i < c.object_count(); ++i) {
      for (std::uint32_t x = 0; x < d.sizes[i]; ++x) {
        for (ObjId j = 0; j < c.object_count(); ++j) {
          for (std::uint32_t y = 0; y < d.sizes[j]; ++y) {
            bool same = r.class_id(i, x) == r.class_id(j, y);
            CHECK(same == rel[offset[i] + x][offset[j] + y]);
            bool meet = false;
            for (ObjId k = 0; k < c.object_count() && !meet; ++k)
              for (MorphId u : c.hom(i, k))
                for (MorphId v : c.hom(j, k)) meet |= d.maps[u][x] == d.maps[v][y];
            CHECK(same == meet);
          }
        }
      }
    }
  }
}

TEST_CASE("limit") {
  SUBCASE("constant diagram over a connected index") {
    SetDiagram d = constant_on_chain(2, 3);
    d.variance = fincat::Variance::kContravariant;
    auto r = limit(d);
    CHECK(r.size() == 2);
  }
  SUBCASE("surjection onto a point: free choice upstream") {
    SetDiagram d;
    d.index = std::make_shared<fincat::FinCategory>(fincat::linear_order(2));
    d.variance = fincat::Variance::kContravariant;
    d.sizes = {1, 2};  // X_0 = {c}, X_1 = {a, b}, X(0<1): X_1 -> X_0
    d.maps.resize(3);
    d.maps[d.index->identity(0)] = {0};
    d.maps[d.index->identity(1)] = {0, 1};
    d.maps[*d.index->find_morphism("0<1")] = {0, 0};
    CHECK(limit(d).size() == 2);
  }
  SUBCASE("an empty set kills every family") {
    SetDiagram d = constant_on_chain(2, 2);
    d.sizes = {2, 0};
    d.maps[d.index->identity(1)] = {};
    d.maps[*d.index->find_morphism("0<1")] = {};
    d.variance = fincat::Variance::kContravariant;
    CHECK(limit(d).size() == 0);
  }
}

TEST_CASE("limit families commute with every map; size bounded by the product") {
  testing::Rng rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    SetDiagram d = testing::random_filtered_diagram(rng, 4, 3);
    auto r = limit(d);
    std::size_t product = 1;
    for (auto s : d.sizes) product *= s;
    CHECK(r.size() <= product);
    for (const auto& fam : r.families) {
      for (MorphId t = 0; t < d.index->morphism_count(); ++t) {
        CHECK(d.maps[t][fam[d.index->dom(t)]] == fam[d.index->cod(t)]);
      }
    }
    // Brute force: all tuples, filtered.
    std::size_t brute = 0;
    std::vector<std::uint32_t> tuple(d.sizes.size(), 0);
    if (product > 0) {
      while (true) {
        bool ok = true;
        for (MorphId t = 0; t < d.index->morphism_count() && ok; ++t) {
          ok = d.maps[t][tuple[d.index->dom(t)]] == tuple[d.index->cod(t)];
        }
        brute += ok;
        std::size_t k = 0;
        while (k < tuple.size() && ++tuple[k] == d.sizes[k]) tuple[k++] = 0;
        if (k == tuple.size()) break;
      }
    }
    CHECK(r.size() == brute);
  }
  SUBCASE("equality with the product iff the index is discrete") {
    SetDiagram d;
    d.index = std::make_shared<fincat::FinCategory>(fincat::discrete_category(3));
    d.sizes = {2, 3, 2};
    d.maps = {{0, 1}, {0, 1, 2}, {0, 1}};
    CHECK(limit(d).size() == 12);
  }
}

TEST_CASE("diagram text format") {
  const char* text = R"(
objects: a b
morphisms:
  t: a -> b
sets:
  a: x y
  b: z
maps:
  t: x -> z
  t: y -> z
)";
  SetDiagram d = parse_diagram(text);
  CHECK(d.sizes == std::vector<std::uint32_t>{2, 1});
  auto r = filtered_colimit(d);
  CHECK(r.size() == 1);
  CHECK(format_colimit(d, r) == "classes: 1\n[0] a.x a.y b.z\n");
  CHECK_THROWS_AS(parse_diagram("objects: a\nsets:\n  q: x\n"), ParseError);
}
