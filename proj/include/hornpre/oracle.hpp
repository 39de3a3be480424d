#pragma once

#include "hornpre/and_tree.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hornpre::oracle {

using Point = std::vector<Int>;

enum class Verdict { Derivable, NotWithinBound, Unknown };
std::string to_string(Verdict v);

enum class IntSat { Sat, Unsat, Unknown };

/// Integer satisfiability by branch and bound over the LP relaxation.
IntSat integer_feasible(const Conjunction &c, std::size_t node_cap = 400);

struct BoundedQuery {
  const Program *program = nullptr;
  std::string goal;
  std::size_t depth = 1;
  /// Conjoined at every initial node, over init positions.
  std::optional<Conjunction> init;
  /// When set, every variable of a derivation ranges over [-b, b].
  std::optional<long> var_bound;
  std::size_t expansion_cap = 200000;
};

struct Outcome {
  Verdict verdict = Verdict::NotWithinBound;
  std::optional<AndTree> witness;
};

/// Depth-first search for a feasible AND-tree of depth <= q.depth. The
/// first witness in clause-id lexicographic order is returned.
Outcome bounded_derivable(const BoundedQuery &q);

/// All rationally feasible derivations of `goal` up to `depth`, collected
/// once so that many initial points can be checked cheaply.
class DerivationSet {
public:
  DerivationSet(const Program &p, const std::string &goal, std::size_t depth,
                std::size_t max_derivations = 20000,
                std::size_t expansion_cap = 400000);

  /// False when a cap cut the search short.
  bool complete() const { return complete_; }
  std::size_t size() const { return derivations_.size(); }
  Verdict check(const Point &init) const;

private:
  struct Derivation {
    Conjunction constraint;
    std::vector<std::vector<Var>> initial_args;
    // Projection onto the initial arguments, for a cheap rejection test.
    Conjunction shadow;
    std::map<Var, std::size_t> position;
  };
  std::vector<Derivation> derivations_;
  bool complete_ = true;
};

/// Integer points of [lo, hi]^arity satisfying f, in lexicographic order.
std::vector<Point> sample_points(const DnfFormula &f, std::size_t arity,
                                 long lo, long hi, std::size_t limit);

bool satisfies(const DnfFormula &f, const Point &x);
Conjunction point_constraint(const Point &x);

/// Bottom-up evaluation over ground integer stores with all values in
/// [-bound, bound]; initial facts are restricted to `init` when given.
bool ground_derivable(const Program &p, const std::string &goal,
                      std::size_t depth, long bound,
                      const std::optional<Point> &init = std::nullopt);

/// H-representation of the convex hull of integer points (dimension <= 3)
/// by brute force over candidate normals.
Conjunction hull_of_points(const std::vector<Point> &points, std::size_t dim);

} // namespace hornpre::oracle
