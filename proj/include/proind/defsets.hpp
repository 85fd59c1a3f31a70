#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace proind::defsets {

using Elem = std::uint32_t;
using Tuple = std::vector<Elem>;
// Tuples of a fixed arity are coded base-|universe|, most significant
// coordinate first, so code order is lexicographic tuple order.
using Code = std::uint64_t;
// A permutation of the universe.
using Perm = std::vector<Elem>;

struct FinStructure {
  struct Relation {
    std::string name;
    std::uint32_t arity = 0;
    std::vector<Tuple> tuples;  // sorted, unique
  };
  struct Function {
    std::string name;
    std::uint32_t arity = 0;
    std::vector<Elem> table;  // indexed by the code of the argument tuple
  };
  struct Constant {
    std::string name;
    Elem value = 0;
  };

  std::vector<std::string> universe;
  std::vector<Relation> relations;
  std::vector<Function> functions;
  std::vector<Constant> constants;

  std::size_t size() const { return universe.size(); }
  std::optional<Elem> find_element(std::string_view name) const;
  // Largest arity any symbol needs to be pinned down by tuples: relation
  // arities and function arities plus one for the graph.
  std::uint32_t signature_arity() const;
  bool same_signature(const FinStructure& other) const;
};

// Sections universe/relations/functions/constants; see the README for the
// grammar. Throws ParseError with the offending line.
FinStructure parse_structure(std::string_view text);
std::string format_structure(const FinStructure& m);

// S1: pure 3-element set. S2: directed 3-cycle. S3: 2 elements, P = {a}.
std::vector<std::string> bundled_structure_names();
std::string bundled_structure_text(std::string_view name);
FinStructure bundled_structure(std::string_view name);

// Bijections from -> to preserving every symbol, found by backtracking with
// partial-image pruning. Sorted lexicographically.
std::vector<Perm> isomorphisms(const FinStructure& from, const FinStructure& to);

struct AutGroup {
  std::vector<Perm> elements;    // sorted; the identity comes first
  std::vector<Perm> generators;  // greedy generating subset of elements
  std::size_t size() const { return elements.size(); }
};

AutGroup automorphism_group(const FinStructure& m);

struct Caps {
  std::uint32_t max_arity = 3;
  std::uint64_t max_hom_candidates = 1'000'000;
};

// An Aut(M)-invariant set of n-tuples, as a sorted list of codes.
struct DefSet {
  std::uint32_t arity = 0;
  std::vector<Code> codes;

  std::size_t size() const { return codes.size(); }
  bool empty() const { return codes.empty(); }
  bool contains(Code c) const;
  // Position of c in codes; c must be a member.
  std::uint32_t position(Code c) const;

  friend auto operator<=>(const DefSet&, const DefSet&) = default;
};

// A definable function, as a table from positions in dom.codes to positions
// in cod.codes.
struct DefMap {
  DefSet dom;
  DefSet cod;
  std::vector<std::uint32_t> table;

  Code apply_code(Code x) const { return cod.codes[table[dom.position(x)]]; }

  friend auto operator<=>(const DefMap&, const DefMap&) = default;
};

// Actions of a finite group on two finite sets, as act[g][x] = g.x. Returns
// every equivariant map, sorted, by choosing for each orbit representative
// (least element) an image whose stabilizer contains the representative's.
// Throws SizeCapExceeded when the number of candidate choices exceeds cap.
std::vector<std::vector<std::uint32_t>> equivariant_maps(
    const std::vector<std::vector<std::uint32_t>>& act_source,
    const std::vector<std::vector<std::uint32_t>>& act_target, std::uint64_t cap);

struct Projections {
  DefSet set;
  DefMap first;
  DefMap second;
};

struct OrbitTable {
  std::uint32_t arity = 0;
  std::vector<std::vector<Code>> orbits;
};

// Every definable map from -> to, as sorted tables.
struct HomTable {
  DefSet from;
  DefSet to;
  std::vector<std::vector<std::uint32_t>> tables;
};

// A finite structure together with its automorphism group and cached orbit
// decompositions. Definable means Aut(M)-invariant throughout.
class Model {
 public:
  explicit Model(FinStructure structure, Caps caps = {});
  // Starts from a previously computed group (e.g. loaded from a cache). Every
  // element is re-checked to be an automorphism; InvalidArgument otherwise.
  Model(FinStructure structure, Caps caps, AutGroup aut);

  // Orbit tables already computed, and seeding them back in. Seeded tables
  // are checked to partition the tuples.
  std::vector<OrbitTable> computed_orbits() const;
  void seed_orbits(const OrbitTable& table) const;
  // Hom tables computed so far, and seeding them back in. Seeded tables are
  // checked to be sorted definable maps; completeness is taken on trust.
  std::vector<HomTable> computed_homs() const;
  void seed_hom(const HomTable& table) const;

  const FinStructure& structure() const { return structure_; }
  const AutGroup& aut() const { return aut_; }
  const Caps& caps() const { return caps_; }
  std::size_t universe_size() const { return structure_.size(); }

  Code tuple_count(std::uint32_t arity) const;
  Code encode(const Tuple& t) const;
  Tuple decode(Code c, std::uint32_t arity) const;
  Code act(const Perm& g, Code c, std::uint32_t arity) const;
  std::string format_tuple(Code c, std::uint32_t arity) const;
  std::string format_set(const DefSet& s) const;

  // Orbits of Aut(M) on n-tuples, each sorted, ordered by least member.
  // Throws ArityCapExceeded above the arity cap.
  const std::vector<std::vector<Code>>& orbits(std::uint32_t arity) const;
  // Orbit number of every tuple code.
  const std::vector<std::uint32_t>& orbit_index(std::uint32_t arity) const;

  // All invariant sets, in mask order (bit k = orbit k).
  std::vector<DefSet> enumerate(std::uint32_t arity) const;
  DefSet from_mask(std::uint32_t arity, std::uint64_t mask) const;
  std::uint64_t mask_of(const DefSet& s) const;
  // Canonical id d<arity>_<mask>, and its inverse (UnknownSetId).
  std::string set_id(const DefSet& s) const;
  DefSet parse_set_id(std::string_view id) const;

  DefSet universe_set(std::uint32_t arity) const;
  DefSet empty_set(std::uint32_t arity) const { return DefSet{arity, {}}; }
  // Invariant closure check; make_set throws NotDefinable for other subsets.
  bool is_invariant(const DefSet& s) const;
  DefSet make_set(std::uint32_t arity, std::vector<Code> codes) const;
  // Orbit of a single tuple, as a set.
  DefSet orbit_of(Code c, std::uint32_t arity) const;

  // Equivariance and graph invariance, both computed; InternalConsistency if
  // they ever disagree.
  bool is_definable_map(const std::vector<std::uint32_t>& table, const DefSet& x,
                        const DefSet& y) const;
  bool equivariant(const std::vector<std::uint32_t>& table, const DefSet& x,
                   const DefSet& y) const;
  bool graph_invariant(const std::vector<std::uint32_t>& table, const DefSet& x,
                       const DefSet& y) const;
  // Builds a DefMap from a table, throwing NotDefinable when it is not.
  DefMap make_map(const DefSet& x, const DefSet& y, std::vector<std::uint32_t> table) const;
  // Builds a DefMap from a function on codes.
  template <class F>
  DefMap map_by_code(const DefSet& x, const DefSet& y, F&& f) const {
    std::vector<std::uint32_t> table(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) table[k] = y.position(f(x.codes[k]));
    return make_map(x, y, std::move(table));
  }

  // Every definable map x -> y, sorted. Cached; the cache is guarded so the
  // model can be shared between threads.
  const std::vector<DefMap>& hom(const DefSet& x, const DefSet& y) const;

  DefMap identity(const DefSet& x) const;
  DefMap compose(const DefMap& g, const DefMap& f) const;
  DefMap inclusion(const DefSet& x, const DefSet& y) const;
  DefSet image(const DefMap& f) const;
  // Pairs of positions (p, q) with f(p) == f(q), as the invariant set of
  // code pairs of the kernel pair.
  DefSet kernel_pair(const DefMap& f) const;
  bool injective(const DefMap& f) const;
  bool surjective(const DefMap& f) const;
  // Set of concatenated tuples and the two coordinate projections.
  Projections product(const DefSet& x, const DefSet& y) const;
  Projections fiber_product(const DefMap& p, const DefMap& q) const;
  // Graph of f inside dom x cod, with its projections.
  Projections graph(const DefMap& f) const;
  // Coordinates [from, from + arity) of a tuple.
  Code slice_code(Code c, std::uint32_t arity, std::uint32_t from, std::uint32_t len) const;
  Code concat(Code a, std::uint32_t arity_a, Code b, std::uint32_t arity_b) const;

 private:
  struct OrbitData {
    std::vector<std::vector<Code>> orbits;
    std::vector<std::uint32_t> index;
  };
  const OrbitData& orbit_data(std::uint32_t arity) const;

  FinStructure structure_;
  Caps caps_;
  AutGroup aut_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint32_t, std::unique_ptr<OrbitData>> orbit_cache_;
  mutable std::map<std::pair<DefSet, DefSet>, std::unique_ptr<std::vector<DefMap>>> hom_cache_;
};

}  // namespace proind::defsets
