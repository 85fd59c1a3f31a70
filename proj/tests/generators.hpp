#pragma once

// Seeded generators and brute-force oracles shared by the test binaries.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "proind/fincat.hpp"
#include "proind/setval.hpp"

namespace proind::testing {

using Rng = std::mt19937_64;

inline std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Random directed preorder on n objects, built in topological order with a
// top element so every pair has an upper bound.
inline std::vector<std::vector<bool>> random_directed_poset(Rng& rng, std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == n - 1 || coin(rng, 0.4)) leq[i][j] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
      }
    }
  }
  return leq;
}

// Two parallel arrows a, b: 0 -> 1 and s: 1 -> 2 with s.a = s.b = c.
inline fincat::FinCategory coequalized_pair() {
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
  return b.build();
}

// {1, e} with e.e = e.
inline fincat::FinCategory idempotent_monoid() {
  return fincat::monoid_category({{0, 1}, {1, 1}});
}

// Random transformation monoid on a small set, closed under composition.
inline fincat::FinCategory random_transformation_monoid(Rng& rng, std::uint32_t points,
                                                       std::size_t generators) {
  using Fn = std::vector<std::uint32_t>;
  std::vector<Fn> elems;
  Fn id(points);
  std::iota(id.begin(), id.end(), 0);
  elems.push_back(id);
  std::set<Fn> seen{id};
  for (std::size_t g = 0; g < generators; ++g) {
    Fn f(points);
    for (auto& v : f) v = uniform(rng, 0, points - 1);
    if (seen.insert(f).second) elems.push_back(f);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
        Fn h(points);
        for (std::uint32_t x = 0; x < points; ++x) h[x] = elems[p][elems[q][x]];
        if (seen.insert(h).second) elems.push_back(h);
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> table(elems.size(), std::vector<std::uint32_t>(elems.size()));
  for (std::size_t g = 0; g < elems.size(); ++g) {
    for (std::size_t f = 0; f < elems.size(); ++f) {
      Fn h(points);
      for (std::uint32_t x = 0; x < points; ++x) h[x] = elems[g][elems[f][x]];
      table[g][f] = static_cast<std::uint32_t>(
          std::find(elems.begin(), elems.end(), h) - elems.begin());
    }
  }
  return fincat::monoid_category(table);
}

// A random covariant functor from a preorder category into finite sets.
// Maps along non-covering pairs are forced by composition; when the forced
// values disagree the object is resampled, falling back to a singleton.
inline setval::SetDiagram random_poset_diagram(Rng& rng, const fincat::FinCategory& c,
                                               const std::vector<std::vector<bool>>& leq,
                                               std::uint32_t max_size) {
  const std::size_t n = leq.size();
  std::vector<std::uint32_t> size(n);
  std::vector<std::vector<setval::Table>> m(n, std::vector<setval::Table>(n));
  for (std::size_t j = 0; j < n; ++j) {
    bool has_pred = false;
    for (std::size_t i = 0; i < j; ++i) has_pred |= leq[i][j];
    for (int attempt = 0;; ++attempt) {
      std::uint32_t lo = has_pred ? 1 : 0;
      size[j] = attempt >= 20 ? 1 : uniform(rng, lo, max_size);
      if (size[j] == 0 && coin(rng, 0.7)) size[j] = 1;
      bool ok = true;
      for (std::size_t i = j; i-- > 0 && ok;) {
        if (!leq[i][j]) continue;
        bool forced = false;
        for (std::size_t k = i + 1; k < j; ++k) {
          if (!leq[i][k] || !leq[k][j]) continue;
          setval::Table via(size[i]);
          for (std::uint32_t x = 0; x < size[i]; ++x) via[x] = m[k][j][m[i][k][x]];
          if (!forced) {
            m[i][j] = via;
            forced = true;
          } else if (m[i][j] != via) {
            ok = false;
            break;
          }
        }
        if (!forced) {
          m[i][j].assign(size[i], 0);
          for (auto& v : m[i][j]) v = uniform(rng, 0, size[j] - 1);
        }
      }
      if (ok) break;
    }
    m[j][j].resize(size[j]);
    std::iota(m[j][j].begin(), m[j][j].end(), 0);
  }
  setval::SetDiagram d;
  d.index = std::make_shared<fincat::FinCategory>(c);
  d.sizes = size;
  d.variance = fincat::Variance::kCovariant;
  d.maps.resize(c.morphism_count());
  for (fincat::MorphId t = 0; t < c.morphism_count(); ++t) {
    d.maps[t] = m[c.dom(t)][c.cod(t)];
  }
  return d;
}

inline setval::SetDiagram random_idempotent_diagram(Rng& rng, std::uint32_t max_size) {
  fincat::FinCategory c = idempotent_monoid();
  std::uint32_t n = uniform(rng, 1, max_size);
  std::vector<std::uint32_t> image;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (coin(rng)) image.push_back(x);
  }
  if (image.empty()) image.push_back(uniform(rng, 0, n - 1));
  setval::Table e(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    e[x] = std::find(image.begin(), image.end(), x) != image.end()
               ? x
               : image[uniform(rng, 0, static_cast<std::uint32_t>(image.size() - 1))];
  }
  setval::Table id(n);
  std::iota(id.begin(), id.end(), 0);
  setval::SetDiagram d;
  d.index = std::make_shared<fincat::FinCategory>(c);
  d.sizes = {n};
  d.maps = {id, e};
  return d;
}

inline setval::SetDiagram random_coequalizer_diagram(Rng& rng, std::uint32_t max_size) {
  fincat::FinCategory c = coequalized_pair();
  std::uint32_t n0 = uniform(rng, 0, max_size);
  std::uint32_t n1 = uniform(rng, n0 ? 1 : 0, max_size);
  if (n1 == 0) n1 = 1;
  setval::Table a(n0), b(n0);
  for (auto& v : a) v = uniform(rng, 0, n1 - 1);
  for (auto& v : b) v = uniform(rng, 0, n1 - 1);
  // Classes of n1 under a(x) ~ b(x), by naive relabelling.
  std::vector<std::uint32_t> cls(n1);
  std::iota(cls.begin(), cls.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t x = 0; x < n0; ++x) {
      std::uint32_t lo = std::min(cls[a[x]], cls[b[x]]);
      std::uint32_t hi = std::max(cls[a[x]], cls[b[x]]);
      if (lo == hi) continue;
      for (auto& v : cls) {
        if (v == hi) v = lo;
      }
      changed = true;
    }
  }
  std::vector<std::uint32_t> distinct = cls;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::uint32_t n2 = std::max<std::uint32_t>(static_cast<std::uint32_t>(distinct.size()),
                                             uniform(rng, 1, max_size));
  std::vector<std::uint32_t> slot(n2);
  std::iota(slot.begin(), slot.end(), 0);
  std::shuffle(slot.begin(), slot.end(), rng);
  // Optionally merge classes: s need not be injective on classes.
  std::vector<std::uint32_t> class_target(distinct.size());
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    class_target[k] = coin(rng, 0.3) ? uniform(rng, 0, n2 - 1) : slot[k];
  }
  setval::Table s(n1);
  for (std::uint32_t y = 0; y < n1; ++y) {
    auto k = std::lower_bound(distinct.begin(), distinct.end(), cls[y]) - distinct.begin();
    s[y] = class_target[k];
  }
  setval::Table sc(n0);
  for (std::uint32_t x = 0; x < n0; ++x) sc[x] = s[a[x]];
  auto ident = [](std::uint32_t n) {
    setval::Table t(n);
    std::iota(t.begin(), t.end(), 0);
    return t;
  };
  setval::SetDiagram d;
  d.index = std::make_shared<fincat::FinCategory>(c);
  d.sizes = {n0, n1, n2};
  d.maps.resize(c.morphism_count());
  d.maps[*c.find_morphism("a")] = a;
  d.maps[*c.find_morphism("b")] = b;
  d.maps[*c.find_morphism("s")] = s;
  d.maps[*c.find_morphism("c")] = sc;
  d.maps[c.identity(0)] = ident(n0);
  d.maps[c.identity(1)] = ident(n1);
  d.maps[c.identity(2)] = ident(n2);
  return d;
}

// A random filtered set diagram with at most max_objects index objects.
inline setval::SetDiagram random_filtered_diagram(Rng& rng, std::size_t max_objects,
                                                  std::uint32_t max_size) {
  std::uint32_t kind = uniform(rng, 0, 9);
  if (kind == 0) return random_idempotent_diagram(rng, max_size);
  if (kind == 1 && max_objects >= 3) return random_coequalizer_diagram(rng, max_size);
  std::size_t n = uniform(rng, 1, static_cast<std::uint32_t>(max_objects));
  auto leq = random_directed_poset(rng, n);
  auto c = fincat::preorder_category(leq);
  return random_poset_diagram(rng, c, leq, max_size);
}

// Equivalence generated by x ~ D(t)(x), closed by naive fixpoint iteration
// over a boolean relation matrix. Returns related[p][q] on flat positions.
inline std::vector<std::vector<bool>> zigzag_closure(const setval::SetDiagram& d,
                                                     std::vector<std::size_t>& offset) {
  const auto& c = *d.index;
  offset.assign(d.sizes.size() + 1, 0);
  for (std::size_t o = 0; o < d.sizes.size(); ++o) offset[o + 1] = offset[o] + d.sizes[o];
  const std::size_t total = offset.back();
  std::vector<std::vector<bool>> rel(total, std::vector<bool>(total, false));
  for (std::size_t p = 0; p < total; ++p) rel[p][p] = true;
  for (fincat::MorphId t = 0; t < c.morphism_count(); ++t) {
    auto from = d.variance == fincat::Variance::kCovariant ? c.dom(t) : c.cod(t);
    auto to = d.variance == fincat::Variance::kCovariant ? c.cod(t) : c.dom(t);
    for (std::uint32_t x = 0; x < d.sizes[from]; ++x) {
      std::size_t p = offset[from] + x;
      std::size_t q = offset[to] + d.maps[t][x];
      rel[p][q] = rel[q][p] = true;
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < total; ++p) {
      for (std::size_t q = 0; q < total; ++q) {
        if (!rel[p][q]) continue;
        for (std::size_t r = 0; r < total; ++r) {
          if (rel[q][r] && !rel[p][r]) {
            rel[p][r] = rel[r][p] = true;
            changed = true;
          }
        }
      }
    }
  }
  return rel;
}

// The skeleton of finite sets {0..max_size}: one morphism per function
// table, named "<n>><m>:<values>".
struct FinSetSkeleton {
  fincat::CategoryRef category;
  std::vector<setval::Table> tables;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;

  fincat::MorphId find(std::uint32_t from, std::uint32_t to, const setval::Table& t) const {
    for (fincat::MorphId f = 0; f < tables.size(); ++f) {
      if (ends[f] == std::pair{from, to} && tables[f] == t) return f;
    }
    return fincat::kNoMorphism;
  }
};

inline FinSetSkeleton finset_skeleton(std::uint32_t max_size) {
  FinSetSkeleton s;
  fincat::CategoryBuilder b;
  for (std::uint32_t n = 0; n <= max_size; ++n) b.add_object(std::to_string(n));
  for (std::uint32_t n = 0; n <= max_size; ++n) {
    for (std::uint32_t m = 0; m <= max_size; ++m) {
      if (m == 0 && n > 0) continue;
      setval::Table t(n, 0);
      while (true) {
        std::string name = std::to_string(n) + ">" + std::to_string(m) + ":";
        for (auto v : t) name += std::to_string(v);
        auto f = b.add_morphism(name, n, m);
        s.tables.push_back(t);
        s.ends.emplace_back(n, m);
        bool ident = n == m;
        for (std::uint32_t x = 0; x < n && ident; ++x) ident = t[x] == x;
        if (ident) b.set_identity(n, f);
        std::size_t k = 0;
        while (k < n && ++t[k] == m) t[k++] = 0;
        if (k == n) break;
      }
    }
  }
  for (fincat::MorphId f = 0; f < s.tables.size(); ++f) {
    for (fincat::MorphId g = 0; g < s.tables.size(); ++g) {
      if (s.ends[g].first != s.ends[f].second) continue;
      setval::Table h(s.tables[f].size());
      for (std::size_t x = 0; x < h.size(); ++x) h[x] = s.tables[g][s.tables[f][x]];
      b.set_compose(g, f, s.find(s.ends[f].first, s.ends[g].second, h));
    }
  }
  s.category = std::make_shared<fincat::FinCategory>(b.build(fincat::SizeCaps{64, 1 << 12}));
  return s;
}

}  // namespace proind::testing
