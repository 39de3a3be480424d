#pragma once

#include "hornpre/linear.hpp"

#include <vector>

namespace hornpre::lp {

enum class Status { Infeasible, Unbounded, Optimal };

struct Result {
  Status status = Status::Infeasible;
  Rat value;                                  // optimum, when Optimal
  std::vector<std::pair<Var, Rat>> point;     // an optimal (or feasible) point
};

/// Raw linear system: every `leq` term t means t <= 0, every `eq` term t = 0.
/// No integer normalization is applied to these rows.
struct System {
  std::vector<LinTerm> leq;
  std::vector<LinTerm> eq;

  void add(const LinearConstraint &c) {
    (c.is_eq() ? eq : leq).push_back(c.term());
  }
};

System to_system(const Conjunction &c);

/// Maximizes `objective` over the rational solutions of `sys` using a dense
/// two-phase simplex with Bland's rule. Arithmetic is exact.
Result maximize(const System &sys, const LinTerm &objective);

bool feasible(const System &sys);
inline bool feasible(const Conjunction &c) { return feasible(to_system(c)); }

} // namespace hornpre::lp
