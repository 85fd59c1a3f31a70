#include "proind/base.hpp"

#include <numeric>

#include "proind/errors.hpp"

namespace proind::indpro {

FinCatBase::FinCatBase(fincat::CategoryRef c) : c_(std::move(c)) {
  const std::size_t n = c_->object_count();
  auto homs = std::make_shared<std::vector<std::vector<Morphism>>>(n * n);
  for (Object x = 0; x < n; ++x) {
    for (Object y = 0; y < n; ++y) {
      auto span = c_->hom(x, y);
      (*homs)[static_cast<std::size_t>(x) * n + y].assign(span.begin(), span.end());
    }
  }
  homs_ = std::move(homs);
}

std::vector<FinCatBase::Object> FinCatBase::objects() const {
  std::vector<Object> out(c_->object_count());
  std::iota(out.begin(), out.end(), Object{0});
  return out;
}

std::string DefBase::object_name(const Object& x) const { return model_->set_id(x); }

std::string DefBase::morphism_name(const Morphism& f) const {
  std::string s = object_name(f.dom) + "->" + object_name(f.cod) + "[";
  for (std::size_t p = 0; p < f.table.size(); ++p) {
    s += (p ? " " : "") + model_->format_tuple(f.dom.codes[p], f.dom.arity) + "->" +
         model_->format_tuple(f.cod.codes[f.table[p]], f.cod.arity);
  }
  return s + "]";
}

bool DefBase::kernel_contains(const Morphism& outer, const Morphism& inner) const {
  if (outer.dom != inner.dom) fail(ErrorKind::kInvalidArgument, "kernel comparison of maps with different domains");
  const std::size_t n = inner.table.size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (inner.table[p] == inner.table[q] && outer.table[p] != outer.table[q]) return false;
    }
  }
  return true;
}

}  // namespace proind::indpro
