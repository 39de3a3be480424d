#pragma once

#include "hornpre/chc.hpp"

#include <map>
#include <string>

namespace hornpre {

/// Predicate -> polyhedron over argument positions 0..n-1. A missing entry
/// stands for the empty polyhedron.
using PredApprox = std::map<std::string, Polyhedron>;

inline constexpr unsigned kDefaultWidenDelay = 3;

const Polyhedron &approx_of(const PredApprox &a, const std::string &pred);

/// Abstract post of one clause: its constraint conjoined with the body
/// approximations, projected onto the head arguments (as positions).
Polyhedron clause_post(const Clause &c, const PredApprox &a);

/// Over-approximation of the least model by polyhedral iteration in SCC
/// order with hull joins, widening after `widen_delay` updates.
PredApprox analyze(const Program &p, unsigned widen_delay = kDefaultWidenDelay);

/// Every clause post is included in the approximation of its head.
bool check_prefixpoint(const Program &p, const PredApprox &a);

/// One line per predicate.
std::string dump(const PredApprox &a);

} // namespace hornpre
