#pragma once

#include "hornpre/and_tree.hpp"

#include <stdexcept>

namespace hornpre {

struct EnumeratedTree {
  AndTree tree;
  bool feasible = false;
};

/// AND-trees for `goal` of depth at most `max_depth` (the root counts as 1)
/// in clause-id lexicographic order, truncated after `max_count`.
std::vector<EnumeratedTree> enumerate_trees(const Program &p,
                                            const std::string &goal,
                                            std::size_t max_depth,
                                            std::size_t max_count);

/// Raised by theta for trees without exactly one initial node.
class MultipleInitialNodes : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Projection of the tree constraint onto the arguments of its initial
/// node, over init positions.
DnfFormula theta(const Program &p, const AndTree &t);

/// Program whose AND-trees are those of p except t: the product of p with
/// the complement of the tree automaton accepting only t.
Program eliminate_tree(const Program &p, const AndTree &t);

} // namespace hornpre
