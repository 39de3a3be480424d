#pragma once

#include "hornpre/chc.hpp"

namespace hornpre {

enum class PoolMode {
  SharedByArity, // one candidate pool per arity
  PerPredicate,  // constraints seen at occurrences of the predicate only
};

/// Candidate properties over argument positions: the atomic constraints of
/// a clause whose variables are all arguments of one atom occurrence.
std::map<std::string, std::vector<LinearConstraint>>
property_pools(const Program &p, PoolMode mode);

/// Polyvariant specialisation wrt `goal`. A version of a predicate is the
/// set of pool properties entailed by its calling context; versions are
/// named base__n in first-reach order (the goal keeps its name).
Program partial_evaluate(const Program &p, const std::string &goal,
                         PoolMode mode = PoolMode::SharedByArity);

} // namespace hornpre
