#pragma once

#include <vector>

#include "proind/base.hpp"
#include "proind/defsets.hpp"
#include "proind/indpro.hpp"

namespace proind::defsets {

// A downward-directed family of sets of one arity as a pro-object over the
// inclusion preorder (i <= j when sets[j] is contained in sets[i]); its
// points are the intersection. NotDirected when two members have no member
// inside both.
indpro::ProObject<indpro::DefBase> type_system(const indpro::DefBase& base, const std::vector<DefSet>& sets);

// An ascending chain as an ind-object over the chain; its points are the
// union. NotAscending otherwise.
indpro::IndObject<indpro::DefBase> increasing_union(const indpro::DefBase& base,
                                                    const std::vector<DefSet>& chain);

// An ascending chain of equivalence relations on x, each given as a set of
// concatenated pairs. NotAnEquivalence / NotCoarsening.
indpro::IndObject<indpro::DefBase> eq_relation_union(const indpro::DefBase& base, const DefSet& x,
                                                     const std::vector<DefSet>& chain);

// Whether r (concatenated pairs over x) is an equivalence relation on x.
bool is_equivalence(const Model& m, const DefSet& x, const DefSet& r);

// An ascending chain of subsets of the slice's base object, as an
// ind-object of the slice with the inclusions as structure maps.
indpro::IndObject<indpro::SliceBase<indpro::DefBase>> ind_subsets(
    const indpro::SliceBase<indpro::DefBase>& slice, const std::vector<DefSet>& chain);

// A downward-directed family of subsets of the slice's base object, as a
// pro-object of the slice with the inclusions as structure maps.
indpro::ProObject<indpro::SliceBase<indpro::DefBase>> pro_subsets(
    const indpro::SliceBase<indpro::DefBase>& slice, const std::vector<DefSet>& family);

}  // namespace proind::defsets
