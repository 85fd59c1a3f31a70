#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "proind/fincat.hpp"

namespace proind::setval {

using fincat::MorphId;
using fincat::ObjId;
using fincat::Variance;

// A function between finite sets {0..n-1} -> {0..m-1}.
using Table = std::vector<std::uint32_t>;

// A set-valued functor on a finite index category. For a covariant diagram
// maps[t] goes sets(dom t) -> sets(cod t); for a contravariant one it goes
// sets(cod t) -> sets(dom t).
struct SetDiagram {
  fincat::CategoryRef index;
  std::vector<std::uint32_t> sizes;
  std::vector<Table> maps;
  Variance variance = Variance::kCovariant;
  // Optional element names, per object.
  std::vector<std::vector<std::string>> labels;
};

// The generating graph of a diagram: sets plus the non-identity functions
// between them, oriented the way the functions go. Colimits and limits only
// depend on this graph.
struct ArrowDiagram {
  struct Arrow {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    Table map;
  };
  std::vector<std::uint32_t> sizes;
  std::vector<Arrow> arrows;
};

ArrowDiagram arrows_of(const SetDiagram& d);

struct Element {
  ObjId object = 0;
  std::uint32_t index = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ColimitResult {
  // class_of[object][element] -> class id. Classes are numbered by their
  // least member in (object, element) order.
  std::vector<std::vector<std::uint32_t>> class_of;
  std::vector<Element> representatives;

  std::size_t size() const { return representatives.size(); }
  std::uint32_t class_id(ObjId object, std::uint32_t element) const {
    return class_of[object][element];
  }
  std::vector<std::vector<Element>> members() const;

  friend bool operator==(const ColimitResult&, const ColimitResult&) = default;
};

struct LimitResult {
  // Compatible families, one element per object, sorted lexicographically.
  std::vector<std::vector<std::uint32_t>> families;

  std::size_t size() const { return families.size(); }
};

// Every functoriality violation as text; empty iff the diagram is a functor.
std::vector<std::string> check_functorial(const SetDiagram& d);

// Quotient of the disjoint union by the equivalence generated by x ~ f(x).
ColimitResult colimit(const ArrowDiagram& d);

// The colimit of a diagram over a filtering index. Checks functoriality and
// (unless a witness for the index is supplied) the filtering axioms.
ColimitResult filtered_colimit(const SetDiagram& d,
                               const fincat::FilteringWitness* witness = nullptr);

// All compatible families, by backtracking in object order; each assignment
// forces the values along outgoing functions.
LimitResult limit(const ArrowDiagram& d);
LimitResult limit(const SetDiagram& d);

// Diagram files: a category (see fincat::parse_category) plus
//   variance:  covariant | contravariant
//   sets:      `obj: x y z`
//   maps:      `t: x -> y`, one line per element of the source set
// Identity maps are implied.
SetDiagram parse_diagram(std::string_view text);

std::string format_colimit(const SetDiagram& d, const ColimitResult& r);
std::string format_limit(const SetDiagram& d, const LimitResult& r);

}  // namespace proind::setval
