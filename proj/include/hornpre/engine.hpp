#pragma once

#include "hornpre/linear.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornpre {

/// Raised when a DNF result would exceed the configured number of disjuncts.
class DnfCapExceeded : public std::runtime_error {
public:
  DnfCapExceeded(std::size_t size, std::size_t cap);
  std::size_t size;
  std::size_t cap;
};

inline constexpr std::size_t kDefaultDnfCap = 64;

/// Convex polyhedron in H-representation. The empty polyhedron is the single
/// constraint 1 <= 0; the universe is the empty conjunction.
class Polyhedron {
public:
  Polyhedron() = default;
  explicit Polyhedron(Conjunction c);

  static Polyhedron universe() { return Polyhedron(); }
  static Polyhedron empty() { return Polyhedron(Conjunction::falsum()); }

  const Conjunction &constraints() const { return cons_; }
  bool is_empty() const { return empty_; }
  bool is_universe() const { return cons_.empty(); }

  friend bool operator==(const Polyhedron &, const Polyhedron &) = default;

private:
  Conjunction cons_;
  bool empty_ = false;
};

/// Disjunction of satisfiable polyhedra. false = no disjuncts, true = one
/// unconstrained disjunct.
class DnfFormula {
public:
  DnfFormula() = default;
  explicit DnfFormula(std::vector<Polyhedron> ds);
  explicit DnfFormula(const Conjunction &c);

  static DnfFormula falsum() { return DnfFormula(); }
  static DnfFormula truth();

  const std::vector<Polyhedron> &disjuncts() const { return ds_; }
  std::size_t size() const { return ds_.size(); }
  bool is_false() const { return ds_.empty(); }
  bool is_true() const;

  friend bool operator==(const DnfFormula &, const DnfFormula &) = default;

private:
  std::vector<Polyhedron> ds_;
};

// Decision procedures ----------------------------------------------------

/// Rational satisfiability (exact simplex).
bool is_sat(const Conjunction &c);

/// c |= d with integer-exact negation of d: c /\ not(d) has no rational
/// solution.
bool implies(const Conjunction &c, const LinearConstraint &d);
/// Plain rational entailment c |= d.
bool implies_rational(const Conjunction &c, const LinearConstraint &d);
bool implies_rational(const Conjunction &c, const Conjunction &d);

/// f |= g: every disjunct of f conjoined with not(g) is unsatisfiable.
bool entails(const DnfFormula &f, const DnfFormula &g);
bool equivalent(const DnfFormula &f, const DnfFormula &g);

/// Polyhedral inclusion inner ⊆ outer over the rationals.
bool includes(const Polyhedron &outer, const Polyhedron &inner);

// Formula algebra --------------------------------------------------------

DnfFormula negate(const DnfFormula &f, std::size_t cap = kDefaultDnfCap);
DnfFormula conjoin(const DnfFormula &f, const DnfFormula &g,
                   std::size_t cap = kDefaultDnfCap);
DnfFormula disjoin(const DnfFormula &f, const DnfFormula &g);
/// f /\ not(g)
DnfFormula subtract(const DnfFormula &f, const DnfFormula &g,
                    std::size_t cap = kDefaultDnfCap);
/// Simplifies every disjunct, drops empty and subsumed disjuncts and sorts.
DnfFormula normalized(const std::vector<Conjunction> &ds);
DnfFormula renamed(const DnfFormula &f, const std::function<Var(Var)> &map);

// Geometry ---------------------------------------------------------------

/// Eliminates every variable not in `keep` (Fourier-Motzkin with integer
/// tightening of derived rows), then simplifies.
Conjunction project(const Conjunction &c, std::span<const Var> keep);

/// Removes redundant constraints (LP-based), turns implicit equalities into
/// equalities, and detects emptiness.
Conjunction simplify(const Conjunction &c);

/// Closed convex hull.
Polyhedron hull(const Polyhedron &p, const Polyhedron &q);

/// Standard (H79) widening: constraints of p entailed by q, plus
/// constraints of q that can replace a constraint of p without changing p.
Polyhedron widen(const Polyhedron &p, const Polyhedron &q);

Polyhedron meet(const Polyhedron &p, const Polyhedron &q);

// Rendering --------------------------------------------------------------

std::string render(const Polyhedron &p, const NameFn &name);
/// "false", "true", or "(c1, c2) ; (c3)".
std::string render(const DnfFormula &f, const NameFn &name);

} // namespace hornpre
