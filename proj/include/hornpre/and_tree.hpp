#pragma once

#include "hornpre/chc.hpp"

#include <compare>
#include <string>
#include <vector>

namespace hornpre {

/// Derivation tree: a clause id and one subtree per body atom.
struct AndTree {
  int clause = -1;
  std::vector<AndTree> children;

  std::size_t depth() const;
  std::size_t size() const;
  friend bool operator==(const AndTree &, const AndTree &) = default;
  friend std::strong_ordering operator<=>(const AndTree &a, const AndTree &b);
};

/// "c3(c2(c1))" style rendering with clause ids.
std::string render(const AndTree &t);

/// Accumulated constraint of a tree with every node renamed apart. The
/// variables of the root head are the first ones; `initial_args` receives
/// the argument variables of every initial node, in preorder.
struct TreeConstraint {
  Conjunction constraint;
  std::vector<std::vector<Var>> initial_args;
};
TreeConstraint tree_constraint(const Program &p, const AndTree &t);

} // namespace hornpre
