#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proind/base.hpp"
#include "proind/defsets.hpp"
#include "proind/indpro.hpp"
#include "proind/setval.hpp"

namespace proind::points {

using defsets::Code;
using defsets::DefMap;
using defsets::DefSet;
using defsets::Model;
using fincat::MorphId;
using fincat::ObjId;
using indpro::DefBase;

using Ind = indpro::IndObject<DefBase>;
using Pro = indpro::ProObject<DefBase>;
using IndMor = indpro::IndMorphism<DefBase>;
using ProMor = indpro::ProMorphism<DefBase>;

// ---------------------------------------------------------------------------
// Points of systems.

// The set diagram i -> X_i(M), labelled by tuples.
setval::SetDiagram point_diagram(const DefBase& base, const indpro::System<DefBase>& x, bool covariant);

setval::ColimitResult points_ind(const DefBase& base, const Ind& x);
setval::LimitResult points_pro(const DefBase& base, const Pro& x);

// Classes (resp. families) listed with their members, one per line.
std::string format_points(const DefBase& base, const Ind& x, const setval::ColimitResult& points);
std::string format_points(const DefBase& base, const Pro& x, const setval::LimitResult& points);

// f on points: class of A -> class of B (resp. family -> family index).
// Evaluated on every member, so InternalConsistency if it is not well defined.
std::vector<std::uint32_t> induced_point_map(const DefBase& base, const Ind& a, const Ind& b, const IndMor& f);
std::vector<std::uint32_t> induced_point_map(const DefBase& base, const Pro& a, const Pro& b, const ProMor& f);

// Aut(M) acting on the points: act[g][p].
std::vector<std::vector<std::uint32_t>> point_action(const DefBase& base, const Ind& x,
                                                     const setval::ColimitResult& points);
std::vector<std::vector<std::uint32_t>> point_action(const DefBase& base, const Pro& x,
                                                     const setval::LimitResult& points);

// ---------------------------------------------------------------------------
// The system d(M) of pointed definable sets, truncated at an arity bound.

enum class DMMode {
  kFull,     // every definable set of arity 1..bound
  kReduced,  // single orbits only
};

struct DMObject {
  DefSet set;
  Code point = 0;
};

// A morphism (X', a') -> (X, a): a definable map X' -> X sending a' to a.
struct DMArrow {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  DefMap map;
};

struct DMIndex {
  std::uint32_t bound = 0;
  DMMode mode = DMMode::kFull;
  std::vector<DMObject> objects;
  std::vector<DMArrow> arrows;  // identities omitted
  std::map<std::pair<DefSet, Code>, std::uint32_t> lookup;

  std::optional<std::uint32_t> find(const DefSet& set, Code point) const;
};

DMIndex build_dM(const Model& m, std::uint32_t arity_bound, DMMode mode = DMMode::kFull);

// Hom(d(M), Y) = Colim over the index of Hom(X, Y).
struct HomDM {
  std::uint32_t index_bound = 0;
  std::size_t index_objects = 0;
  std::size_t index_arrows = 0;
  // Elements are (index object, position in Hom(X, Y)).
  setval::ColimitResult classes;
  std::vector<Code> forward;            // class -> f(a)
  std::vector<std::uint32_t> inverse;   // position in Y -> class of the identity (or orbit inclusion)
  bool mutually_inverse = false;
  bool point_oracle_agrees = false;     // f ~ g exactly when f(a) = g(a')
  std::size_t graph_certified = 0;      // elements identified with inverse(f(a)) through their graph

  std::size_t size() const { return classes.size(); }
};

// Uses the given index; graphs that do not fit in it are skipped, and
// BoundTooSmall when the bound is below twice the arity of y.
HomDM hom_dM(const Model& m, const DMIndex& index, const DefSet& y);
// Builds the index at arity_bound + arity(y).
HomDM hom_dM(const Model& m, std::uint32_t arity_bound, const DefSet& y, DMMode mode = DMMode::kFull);

// For g: Y -> Y', applying g before or after the bijections with points
// gives the same result on every element; returns the number of elements
// checked, InternalConsistency on a failure.
std::size_t check_naturality(const Model& m, const DMIndex& index, const DefMap& g);

struct DOnMorphisms {
  std::size_t families = 0;
  std::vector<defsets::Perm> maps;  // one per family, the induced map on elements
  std::size_t isomorphisms = 0;     // isomorphisms N -> M found by direct search
  bool all_elementary = false;
  bool matches_isomorphisms = false;
};

// Compatible point families over d(N) valued in M, and the maps N -> M they
// induce. BoundTooSmall below max(2, signature arity).
DOnMorphisms d_on_morphisms(const Model& m, const Model& n, std::uint32_t arity_bound,
                            DMMode mode = DMMode::kFull);

// ---------------------------------------------------------------------------
// Isomorphisms from bijections on points.

struct IndIsoFromPoints {
  ObjId cover_level = 0;     // f at this level is surjective
  std::vector<MorphId> t;    // t_i with the kernel pair of f_i
  ObjId base_level = 0;      // codomain of t at the cover level
  DefMap g;                  // Y -> X at the base level
  indpro::LemmaCertificate<DefBase> certificate;
};

// f: Ind(X) -> Y given as the family f_i. NotBijective if the point map is
// not a bijection.
IndIsoFromPoints build_iso_from_points_ind(const DefBase& base, const Ind& x, const DefSet& y,
                                           const std::vector<DefMap>& f);

struct ProIsoFromPoints {
  ObjId injective_level = 0;  // f at this level is injective
  MorphId t = fincat::kNoMorphism;  // out of that level, with the image of f there
  ObjId base_level = 0;
  DefMap g;                   // X at the base level -> Y
  indpro::ProLemmaCertificate<DefBase> certificate;
};

// f: Y -> Pro(X) given as the family f_i.
ProIsoFromPoints build_iso_from_points_pro(const DefBase& base, const Pro& x, const DefSet& y,
                                           const std::vector<DefMap>& f);

// ---------------------------------------------------------------------------
// Morphisms from bijections and graphs on points.

struct PropMorphisms {
  IndMor inverse;
  std::vector<ObjId> base_levels;  // per target level
  bool inverse_on_points = false;  // the inverse induces the set-inverse
};

// For f: A -> B with a bijective point map, builds the inverse level by level
// from the systems Q^j_i = {(x, y) in A_i x B_j : f[x] = [y]}.
PropMorphisms verify_prop_morphisms(const DefBase& base, const Ind& a, const Ind& b, const IndMor& f);

// A subsystem R of X x Y: each R_l sits inside X_{x_level[l]} x Y_{y_level[l]}
// and R(r) is X(x_arrow[r]) x Y(y_arrow[r]) restricted.
struct GraphSubobject {
  Ind relation;
  std::vector<ObjId> x_level;
  std::vector<ObjId> y_level;
  std::vector<MorphId> x_arrow;
  std::vector<MorphId> y_arrow;
};

// The graph of f over the category of triples (i, j, h) with h representing f_i.
GraphSubobject point_graph(const DefBase& base, const Ind& x, const Ind& y, const IndMor& f);

// R_(i,j) = {(x, y) : phi[x] = [y]} over the product index; NotDefinable if phi
// is not Aut(M)-equivariant.
GraphSubobject graph_of_point_map(const DefBase& base, const Ind& x, const Ind& y,
                                  const std::vector<std::uint32_t>& phi);

// Checks R against X x Y; NotAFunction unless its points are the graph of a
// function X(M) -> Y(M). Returns the morphism with that graph.
IndMor graph_to_morphism(const DefBase& base, const Ind& x, const Ind& y, const GraphSubobject& r);

}  // namespace proind::points
