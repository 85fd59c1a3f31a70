#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "proind/text_format.hpp"

namespace proind::fincat {

using ObjId = std::uint32_t;
using MorphId = std::uint32_t;

inline constexpr MorphId kNoMorphism = std::numeric_limits<MorphId>::max();

struct SizeCaps {
  std::size_t max_objects = 64;
  std::size_t max_morphisms = 512;
};

struct Arrow {
  std::string name;
  ObjId dom = 0;
  ObjId cod = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// A finite category stored as explicit tables. Construction checks only the
// shape of the data (ids in range, caps); the category laws are checked by
// validate_category so that malformed tables can still be inspected.
class FinCategory {
 public:
  FinCategory() = default;
  FinCategory(std::vector<std::string> objects, std::vector<Arrow> morphisms,
              std::vector<MorphId> identities,
              std::map<std::pair<MorphId, MorphId>, MorphId> composites,
              SizeCaps caps = {});

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  const std::string& object_name(ObjId x) const { return objects_.at(x); }
  const Arrow& morphism(MorphId f) const { return morphisms_.at(f); }
  const std::string& morphism_name(MorphId f) const { return morphisms_.at(f).name; }
  ObjId dom(MorphId f) const { return morphisms_[f].dom; }
  ObjId cod(MorphId f) const { return morphisms_[f].cod; }
  MorphId identity(ObjId x) const { return identities_[x]; }
  bool is_identity(MorphId f) const { return identities_[dom(f)] == f; }

  // g . f, or kNoMorphism when the pair is not composable or the table has
  // no entry for it.
  MorphId compose(MorphId g, MorphId f) const {
    return compose_[static_cast<std::size_t>(g) * morphisms_.size() + f];
  }

  // Morphisms with the given domain / codomain, ascending.
  std::span<const MorphId> out(ObjId x) const { return out_[x]; }
  std::span<const MorphId> in(ObjId x) const { return in_[x]; }
  std::span<const MorphId> hom(ObjId a, ObjId b) const {
    return hom_[static_cast<std::size_t>(a) * objects_.size() + b];
  }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorphId> find_morphism(std::string_view name) const;

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Arrow>& morphisms() const { return morphisms_; }
  const std::vector<MorphId>& identities() const { return identities_; }

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ &&
           a.identities_ == b.identities_ && a.compose_ == b.compose_;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<Arrow> morphisms_;
  std::vector<MorphId> identities_;
  std::vector<MorphId> compose_;
  std::vector<std::vector<MorphId>> out_;
  std::vector<std::vector<MorphId>> in_;
  std::vector<std::vector<MorphId>> hom_;
};

using CategoryRef = std::shared_ptr<const FinCategory>;

// Incremental construction. Missing identities are synthesized as id_<obj>
// and every composite involving an identity is filled in by build().
class CategoryBuilder {
 public:
  ObjId add_object(std::string name);
  MorphId add_morphism(std::string name, ObjId dom, ObjId cod);
  void set_identity(ObjId x, MorphId f);
  void set_compose(MorphId g, MorphId f, MorphId h);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const Arrow& morphism(MorphId f) const { return morphisms_.at(f); }

  FinCategory build(SizeCaps caps = {}) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Arrow> morphisms_;
  std::map<ObjId, MorphId> identities_;
  std::map<std::pair<MorphId, MorphId>, MorphId> composites_;
};

// The preorder category of a reflexive-transitive relation: one morphism
// i -> j exactly when leq[i][j].
FinCategory preorder_category(const std::vector<std::vector<bool>>& leq,
                              SizeCaps caps = {});
FinCategory linear_order(std::size_t n);
// Objects (x, y) numbered x * |b| + y; morphisms (f, g) numbered f * |mor b| + g.
FinCategory product_category(const FinCategory& a, const FinCategory& b, SizeCaps caps = {});
FinCategory discrete_category(std::size_t n);
// One-object category from a monoid multiplication table (element 0 is the
// unit; table[g][f] = g . f).
FinCategory monoid_category(const std::vector<std::vector<std::uint32_t>>& table);

// ---------------------------------------------------------------------------

struct LawViolation {
  enum class Kind {
    kMissingIdentity,
    kIdentityLeft,
    kIdentityRight,
    kMissingComposite,
    kSpuriousComposite,
    kCompositeShape,
    kAssociativity,
  };
  Kind kind;
  std::vector<MorphId> morphisms;
  std::string description;
};

std::vector<LawViolation> validate_category(const FinCategory& c);

struct Cocone {
  ObjId apex = 0;
  MorphId from_first = kNoMorphism;
  MorphId from_second = kNoMorphism;
};

struct FilteringWitness {
  // cocone[i * n + j] for every ordered pair of objects.
  std::vector<Cocone> cocones;
  // Equalizing morphism for every parallel pair (t1 < t2).
  std::map<std::pair<MorphId, MorphId>, MorphId> equalizers;
  std::size_t object_count = 0;

  const Cocone& cocone(ObjId i, ObjId j) const { return cocones[i * object_count + j]; }
  // s with s.t1 = s.t2; the identity of cod(t1) when t1 == t2.
  MorphId equalizer(const FinCategory& c, MorphId t1, MorphId t2) const;
};

struct NotFiltering {
  enum class Axiom { kCocone, kEqualizer };
  Axiom axiom;
  ObjId first = 0;
  ObjId second = 0;
  MorphId t1 = kNoMorphism;
  MorphId t2 = kNoMorphism;
  std::string description;
};

using FilteringResult = std::variant<FilteringWitness, NotFiltering>;

// Both filtering axioms, searched in identifier order; every choice recorded
// in the witness is the least admissible one.
FilteringResult is_filtering(const FinCategory& c);

// Throws NonFilteringIndex naming the failing pair.
FilteringWitness require_filtering(const FinCategory& c);

// Apex of a cocone over a nonempty list of objects, folding pairwise cocones.
// Returns the apex and one morphism from each listed object.
std::pair<ObjId, std::vector<MorphId>> fold_cocone(const FinCategory& c,
                                                  const FilteringWitness& w,
                                                  std::span<const ObjId> objects);

FinCategory opposite(const FinCategory& c);

struct Slice {
  FinCategory category;
  std::vector<MorphId> object_arrow;    // slice object -> morphism into X
  std::vector<MorphId> morphism_arrow;  // slice morphism -> underlying morphism
};

Slice slice(const FinCategory& c, ObjId x, SizeCaps caps = {});

struct Subcategory {
  FinCategory category;
  std::vector<ObjId> objects;     // sub object -> original object
  std::vector<MorphId> morphisms; // sub morphism -> original morphism
};

Subcategory full_subcategory(const FinCategory& c, std::span<const ObjId> objects);

// Full subcategory on the objects that receive a morphism from i0.
Subcategory cofinal_restriction(const FinCategory& c, ObjId i0);

enum class Variance { kCovariant, kContravariant };

struct Functor {
  CategoryRef source;
  CategoryRef target;
  std::vector<ObjId> object_map;
  std::vector<MorphId> morphism_map;
  Variance variance = Variance::kCovariant;
};

std::vector<std::string> validate_functor(const Functor& f);

// ---------------------------------------------------------------------------
// Text format:
//   objects:    one identifier per line
//   morphisms:  `f: a -> b`
//   compose:    `g . f = h`
// Blank lines and `#` comments are ignored. Identities may be omitted.

FinCategory parse_category(std::string_view text, SizeCaps caps = {});
// Same, from sections already split by text::split_sections.
FinCategory parse_category_sections(std::map<std::string, std::vector<text::Line>>& sections,
                                    SizeCaps caps = {});
std::string format_category(const FinCategory& c);

}  // namespace proind::fincat
