#pragma once

#include <string>
#include <string_view>

#include "proind/points.hpp"

namespace proind::points {

enum class SystemKind { kInd, kPro };

struct SystemFile {
  SystemKind kind = SystemKind::kInd;
  Ind ind;  // set when kind is kInd
  Pro pro;  // set when kind is kPro
};

// Sections kind (ind | pro), objects, morphisms, compose, sets and maps.
// Sets are canonical ids (`0: d1_3`); a map is `inclusion` or a list of
// assignments `(a,b) -> (c); ...` (parentheses optional for unary tuples).
// For pro systems the map of t: i -> j goes from the set of j to the set of i.
// Identities are filled in. ParseError, UnknownSetId, NotDefinable,
// NonFilteringIndex and NonFunctorial report bad input.
SystemFile parse_system(const DefBase& base, std::string_view text);

// Classes (ind) or families (pro) with their members, one per line.
std::string format_system_points(const DefBase& base, const SystemFile& s);
std::size_t count_system_points(const DefBase& base, const SystemFile& s);

}  // namespace proind::points
