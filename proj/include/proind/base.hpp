#pragma once

#include <compare>
#include <concepts>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "proind/defsets.hpp"
#include "proind/fincat.hpp"

namespace proind::indpro {

// A category whose Hom-sets can be listed. hom(x, y) returns every morphism
// x -> y in ascending order; the returned reference must stay valid for the
// lifetime of the base (implementations cache). Bases are cheap handles and
// are passed by value.
template <class B>
concept BaseCategory =
    std::totally_ordered<typename B::Object> && std::totally_ordered<typename B::Morphism> &&
    requires(const B& b, const typename B::Object& x, const typename B::Morphism& f) {
      { b.hom(x, x) } -> std::same_as<const std::vector<typename B::Morphism>&>;
      { b.compose(f, f) } -> std::convertible_to<typename B::Morphism>;
      { b.identity(x) } -> std::convertible_to<typename B::Morphism>;
      { b.dom(f) } -> std::convertible_to<typename B::Object>;
      { b.cod(f) } -> std::convertible_to<typename B::Object>;
      { b.object_name(x) } -> std::convertible_to<std::string>;
      { b.morphism_name(f) } -> std::convertible_to<std::string>;
    };

// Bases that can list all their objects (finite categories).
template <class B>
concept ListableBase = BaseCategory<B> && requires(const B& b) {
  { b.objects() } -> std::convertible_to<std::vector<typename B::Object>>;
};

// Bases with kernel pairs and images of morphisms, compared as values.
template <class B>
concept KernelBase = BaseCategory<B> && requires(const B& b, const typename B::Morphism& f) {
  { b.kernel_pair(f) } -> std::equality_comparable;
  { b.image(f) } -> std::equality_comparable;
  { b.kernel_contains(f, f) } -> std::convertible_to<bool>;
};

// Bases that can test a morphism for membership without listing its Hom-set.
template <class B>
concept MembershipBase = BaseCategory<B> && requires(const B& b, const typename B::Morphism& f) {
  { b.is_morphism(f) } -> std::convertible_to<bool>;
};

// ---------------------------------------------------------------------------

class FinCatBase {
 public:
  using Object = fincat::ObjId;
  using Morphism = fincat::MorphId;

  explicit FinCatBase(fincat::CategoryRef c);

  const fincat::FinCategory& category() const { return *c_; }
  const std::vector<Morphism>& hom(Object x, Object y) const {
    return homs_->at(static_cast<std::size_t>(x) * c_->object_count() + y);
  }
  Morphism compose(Morphism g, Morphism f) const { return c_->compose(g, f); }
  Morphism identity(Object x) const { return c_->identity(x); }
  Object dom(Morphism f) const { return c_->dom(f); }
  Object cod(Morphism f) const { return c_->cod(f); }
  std::string object_name(Object x) const { return c_->object_name(x); }
  std::string morphism_name(Morphism f) const { return c_->morphism_name(f); }
  std::vector<Object> objects() const;

 private:
  fincat::CategoryRef c_;
  std::shared_ptr<const std::vector<std::vector<Morphism>>> homs_;
};

// Definable sets and maps of a finite structure.
class DefBase {
 public:
  using Object = defsets::DefSet;
  using Morphism = defsets::DefMap;

  explicit DefBase(std::shared_ptr<const defsets::Model> model) : model_(std::move(model)) {}

  const defsets::Model& model() const { return *model_; }
  std::shared_ptr<const defsets::Model> model_ref() const { return model_; }
  const std::vector<Morphism>& hom(const Object& x, const Object& y) const { return model_->hom(x, y); }
  Morphism compose(const Morphism& g, const Morphism& f) const { return model_->compose(g, f); }
  Morphism identity(const Object& x) const { return model_->identity(x); }
  Object dom(const Morphism& f) const { return f.dom; }
  Object cod(const Morphism& f) const { return f.cod; }
  std::string object_name(const Object& x) const;
  std::string morphism_name(const Morphism& f) const;

  defsets::DefSet kernel_pair(const Morphism& f) const { return model_->kernel_pair(f); }
  defsets::DefSet image(const Morphism& f) const { return model_->image(f); }
  // Every pair identified by `inner` is identified by `outer`.
  bool kernel_contains(const Morphism& outer, const Morphism& inner) const;
  // Membership in hom(dom f, cod f) without listing it.
  bool is_morphism(const Morphism& f) const {
    return f.table.size() == f.dom.size() && model_->is_definable_map(f.table, f.dom, f.cod);
  }

 private:
  std::shared_ptr<const defsets::Model> model_;
};

template <BaseCategory B>
class OppositeBase {
 public:
  using Object = typename B::Object;
  using Morphism = typename B::Morphism;

  explicit OppositeBase(B base) : base_(std::move(base)) {}

  const B& underlying() const { return base_; }
  const std::vector<Morphism>& hom(const Object& x, const Object& y) const { return base_.hom(y, x); }
  Morphism compose(const Morphism& g, const Morphism& f) const { return base_.compose(f, g); }
  Morphism identity(const Object& x) const { return base_.identity(x); }
  Object dom(const Morphism& f) const { return base_.cod(f); }
  Object cod(const Morphism& f) const { return base_.dom(f); }
  std::string object_name(const Object& x) const { return base_.object_name(x); }
  std::string morphism_name(const Morphism& f) const { return base_.morphism_name(f) + "^op"; }

 private:
  B base_;
};

// The slice category B/X: objects are morphisms into X, morphisms are
// commuting triangles.
template <BaseCategory B>
class SliceBase {
 public:
  struct Object {
    typename B::Object source;
    typename B::Morphism arrow;
    friend auto operator<=>(const Object&, const Object&) = default;
    friend bool operator==(const Object&, const Object&) = default;
  };
  struct Morphism {
    Object dom;
    Object cod;
    typename B::Morphism map;
    friend auto operator<=>(const Morphism&, const Morphism&) = default;
    friend bool operator==(const Morphism&, const Morphism&) = default;
  };

  SliceBase(B base, typename B::Object over)
      : base_(std::move(base)), over_(std::move(over)), cache_(std::make_shared<Cache>()) {}

  const B& underlying() const { return base_; }
  const typename B::Object& over() const { return over_; }

  Object object(typename B::Morphism arrow) const {
    return Object{base_.dom(arrow), std::move(arrow)};
  }

  const std::vector<Morphism>& hom(const Object& x, const Object& y) const {
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->homs[{x, y}];
    if (!slot) {
      slot = std::make_unique<std::vector<Morphism>>();
      for (const auto& h : base_.hom(x.source, y.source)) {
        if (base_.compose(y.arrow, h) == x.arrow) slot->push_back(Morphism{x, y, h});
      }
    }
    return *slot;
  }
  Morphism compose(const Morphism& g, const Morphism& f) const {
    return Morphism{f.dom, g.cod, base_.compose(g.map, f.map)};
  }
  Morphism identity(const Object& x) const { return Morphism{x, x, base_.identity(x.source)}; }
  Object dom(const Morphism& f) const { return f.dom; }
  Object cod(const Morphism& f) const { return f.cod; }
  std::string object_name(const Object& x) const {
    return base_.object_name(x.source) + " over " + base_.object_name(over_);
  }
  std::string morphism_name(const Morphism& f) const { return base_.morphism_name(f.map); }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<Object, Object>, std::unique_ptr<std::vector<Morphism>>> homs;
  };
  B base_;
  typename B::Object over_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace proind::indpro
