#include "proind/def_systems.hpp"

#include <algorithm>
#include <memory>

#include "proind/errors.hpp"

namespace proind::defsets {

namespace {

using indpro::DefBase;

bool subset(const DefSet& a, const DefSet& b) {
  return a.arity == b.arity && std::includes(b.codes.begin(), b.codes.end(), a.codes.begin(), a.codes.end());
}

std::vector<std::vector<bool>> downward_order(const std::vector<DefSet>& sets) {
  if (sets.empty()) fail(ErrorKind::kInvalidArgument, "family must be nonempty");
  const std::size_t n = sets.size();
  for (const auto& s : sets) {
    if (s.arity != sets.front().arity) fail(ErrorKind::kInvalidArgument, "family mixes arities");
  }
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = subset(sets[j], sets[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool found = false;
      for (std::size_t k = 0; k < n && !found; ++k) found = leq[i][k] && leq[j][k];
      if (!found) {
        fail(ErrorKind::kNotDirected, "members " + std::to_string(i) + " and " + std::to_string(j) +
                                          " contain no common member of the family");
      }
    }
  }
  return leq;
}

}  // namespace

indpro::ProObject<DefBase> type_system(const DefBase& base, const std::vector<DefSet>& sets) {
  const Model& m = base.model();
  auto leq = downward_order(sets);
  auto index = std::make_shared<fincat::FinCategory>(fincat::preorder_category(leq));
  std::vector<DefMap> maps;
  for (fincat::MorphId t = 0; t < index->morphism_count(); ++t) {
    maps.push_back(m.inclusion(sets[index->cod(t)], sets[index->dom(t)]));
  }
  return indpro::make_pro(base, index, sets, maps);
}

indpro::IndObject<DefBase> increasing_union(const DefBase& base, const std::vector<DefSet>& chain) {
  const Model& m = base.model();
  if (chain.empty()) fail(ErrorKind::kInvalidArgument, "chain must be nonempty");
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (!subset(chain[k], chain[k + 1])) {
      fail(ErrorKind::kNotAscending, "stage " + std::to_string(k) + " " + m.format_set(chain[k]) +
                                         " is not contained in the next stage " + m.format_set(chain[k + 1]));
    }
  }
  auto index = std::make_shared<fincat::FinCategory>(fincat::linear_order(chain.size()));
  std::vector<DefMap> maps;
  for (fincat::MorphId t = 0; t < index->morphism_count(); ++t) {
    maps.push_back(m.inclusion(chain[index->dom(t)], chain[index->cod(t)]));
  }
  return indpro::make_ind(base, index, chain, maps);
}

bool is_equivalence(const Model& m, const DefSet& x, const DefSet& r) {
  const std::uint32_t a = x.arity;
  if (r.arity != 2 * a) return false;
  auto related = [&](Code p, Code q) { return r.contains(m.concat(p, a, q, a)); };
  for (Code c : r.codes) {
    Code p = m.slice_code(c, 2 * a, 0, a);
    Code q = m.slice_code(c, 2 * a, a, a);
    if (!x.contains(p) || !x.contains(q) || !related(q, p)) return false;
  }
  for (Code p : x.codes) {
    if (!related(p, p)) return false;
  }
  for (Code p : x.codes) {
    for (Code q : x.codes) {
      if (!related(p, q)) continue;
      for (Code s : x.codes) {
        if (related(q, s) && !related(p, s)) return false;
      }
    }
  }
  return true;
}

indpro::IndObject<DefBase> eq_relation_union(const DefBase& base, const DefSet& x, const std::vector<DefSet>& chain) {
  const Model& m = base.model();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (!is_equivalence(m, x, chain[k])) {
      fail(ErrorKind::kNotAnEquivalence, "stage " + std::to_string(k) + " " + m.format_set(chain[k]) +
                                             " is not an equivalence relation on " + m.format_set(x));
    }
    if (k > 0 && !subset(chain[k - 1], chain[k])) {
      fail(ErrorKind::kNotCoarsening, "stage " + std::to_string(k) + " does not coarsen stage " +
                                          std::to_string(k - 1));
    }
  }
  return increasing_union(base, chain);
}

indpro::IndObject<indpro::SliceBase<DefBase>> ind_subsets(const indpro::SliceBase<DefBase>& slice,
                                                          const std::vector<DefSet>& chain) {
  const Model& m = slice.underlying().model();
  auto plain = increasing_union(slice.underlying(), chain);
  for (const auto& s : chain) {
    if (!subset(s, slice.over())) {
      fail(ErrorKind::kInvalidArgument, m.format_set(s) + " is not a subset of " + m.format_set(slice.over()));
    }
  }
  std::vector<indpro::SliceBase<DefBase>::Object> objects;
  for (const auto& s : chain) objects.push_back(slice.object(m.inclusion(s, slice.over())));
  std::vector<indpro::SliceBase<DefBase>::Morphism> maps;
  const auto& index = *plain.index;
  for (fincat::MorphId t = 0; t < index.morphism_count(); ++t) {
    maps.push_back({objects[index.dom(t)], objects[index.cod(t)], plain.maps[t]});
  }
  return indpro::make_ind(slice, plain.index, objects, maps);
}

indpro::ProObject<indpro::SliceBase<DefBase>> pro_subsets(const indpro::SliceBase<DefBase>& slice,
                                                          const std::vector<DefSet>& family) {
  const Model& m = slice.underlying().model();
  for (const auto& s : family) {
    if (!subset(s, slice.over())) {
      fail(ErrorKind::kInvalidArgument, m.format_set(s) + " is not a subset of " + m.format_set(slice.over()));
    }
  }
  auto leq = downward_order(family);
  auto index = std::make_shared<fincat::FinCategory>(fincat::preorder_category(leq));
  std::vector<indpro::SliceBase<DefBase>::Object> objects;
  for (const auto& s : family) objects.push_back(slice.object(m.inclusion(s, slice.over())));
  std::vector<indpro::SliceBase<DefBase>::Morphism> maps;
  for (fincat::MorphId t = 0; t < index->morphism_count(); ++t) {
    const auto& from = objects[index->cod(t)];
    const auto& to = objects[index->dom(t)];
    maps.push_back({from, to, m.inclusion(from.source, to.source)});
  }
  return indpro::make_pro(slice, index, objects, maps);
}

}  // namespace proind::defsets
