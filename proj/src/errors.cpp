#include "proind/errors.hpp"

namespace proind {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonFilteringIndex: return "NonFilteringIndex";
    case ErrorKind::kNonFunctorial: return "NonFunctorial";
    case ErrorKind::kIncompatibleMorphisms: return "IncompatibleMorphisms";
    case ErrorKind::kSectionMismatch: return "SectionMismatch";
    case ErrorKind::kConditionFails: return "ConditionFails";
    case ErrorKind::kNoWitness: return "NoWitness";
    case ErrorKind::kNotBijective: return "NotBijective";
    case ErrorKind::kArityCapExceeded: return "ArityCapExceeded";
    case ErrorKind::kSizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::kNotDirected: return "NotDirected";
    case ErrorKind::kNotAscending: return "NotAscending";
    case ErrorKind::kNotCoarsening: return "NotCoarsening";
    case ErrorKind::kNotAnEquivalence: return "NotAnEquivalence";
    case ErrorKind::kNotAFunction: return "NotAFunction";
    case ErrorKind::kBoundTooSmall: return "BoundTooSmall";
    case ErrorKind::kNotDefinable: return "NotDefinable";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kUnknownSetId: return "UnknownSetId";
    case ErrorKind::kInternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

}  // namespace proind
