#include "hornpre/oracle.hpp"

#include "hornpre/lp.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hornpre::oracle {

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Derivable: return "derivable";
  case Verdict::NotWithinBound: return "not_within_bound";
  case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

Int floor_of(const Rat &q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// An equality whose coefficient gcd does not divide its constant has no
// integer solution (normalized equalities keep a unit content).
bool obviously_integer_unsat(const lp::System &s) {
  for (const auto &t : s.eq) {
    if (t.is_constant()) continue;
    Int g = gcd_of_coeffs(t);
    if (t.constant() % g != 0) return true;
  }
  return false;
}

IntSat branch(lp::System sys, std::size_t &budget) {
  if (budget == 0) return IntSat::Unknown;
  --budget;
  if (obviously_integer_unsat(sys)) return IntSat::Unsat;
  auto r = lp::maximize(sys, LinTerm());
  if (r.status == lp::Status::Infeasible) return IntSat::Unsat;
  for (const auto &[v, q] : r.point) {
    if (q.get_den() == 1) continue;
    Int lo = floor_of(q);
    lp::System left = sys, right = sys;
    LinTerm le = LinTerm::variable(v);
    le.set_constant(-lo);
    left.leq.push_back(le); // v <= lo
    LinTerm ge = LinTerm::variable(v, -1);
    ge.set_constant(lo + 1);
    right.leq.push_back(ge); // v >= lo + 1
    IntSat a = branch(std::move(left), budget);
    if (a == IntSat::Sat) return a;
    IntSat b = branch(std::move(right), budget);
    if (b == IntSat::Sat) return b;
    return (a == IntSat::Unknown || b == IntSat::Unknown) ? IntSat::Unknown
                                                          : IntSat::Unsat;
  }
  return IntSat::Sat;
}

// Shared depth-first search over derivations. `on_leaf` receives each
// complete, rationally feasible derivation and returns true to stop.
struct Search {
  const Program &p;
  std::optional<Conjunction> init;
  std::optional<long> bound;
  std::size_t budget;
  bool exhausted = false;

  struct Goal {
    std::string pred;
    std::vector<Var> args;
    std::size_t depth;
  };

  std::uint32_t next_var = 0;
  std::vector<int> preorder;
  std::vector<std::vector<Var>> initial_args;

  using Leaf = std::function<bool(const Conjunction &, const std::vector<int> &,
                                  const std::vector<std::vector<Var>> &)>;

  bool run(std::vector<Goal> goals, const Conjunction &store, const Leaf &leaf) {
    if (goals.empty()) return leaf(store, preorder, initial_args);
    if (budget == 0) {
      exhausted = true;
      return false;
    }
    --budget;
    Goal g = goals.front();
    goals.erase(goals.begin());
    if (g.depth == 0) return false;
    for (const auto &c : p.clauses) {
      if (c.head.pred != g.pred) continue;
      std::uint32_t saved = next_var;
      std::vector<Var> map(c.num_vars());
      std::vector<bool> fixed(c.num_vars(), false);
      for (std::size_t i = 0; i < c.head.args.size(); ++i) {
        map[c.head.args[i].index] = g.args[i];
        fixed[c.head.args[i].index] = true;
      }
      Conjunction added;
      for (std::size_t v = 0; v < map.size(); ++v) {
        if (fixed[v]) continue;
        map[v] = Var{next_var++};
        if (bound) {
          added.add(LinearConstraint::leq(LinTerm::variable(map[v]) -
                                          LinTerm(Int(*bound))));
          added.add(LinearConstraint::leq(LinTerm::variable(map[v], -1) -
                                          LinTerm(Int(*bound))));
        }
      }
      auto rn = [&](Var v) { return map.at(v.index); };
      added.add_all(c.constraint.renamed(rn));
      bool initial = c.is_fact() && p.is_initial(c.head.pred);
      if (initial && init) added.add_all(instantiate(*init, g.args));
      Conjunction next = store & added;
      if (is_sat(next)) {
        std::vector<Goal> rest;
        for (const auto &b : c.body) {
          std::vector<Var> args;
          for (Var v : b.args) args.push_back(rn(v));
          rest.push_back({b.pred, std::move(args), g.depth - 1});
        }
        rest.insert(rest.end(), goals.begin(), goals.end());
        preorder.push_back(c.id);
        if (initial) initial_args.push_back(g.args);
        bool stop = run(std::move(rest), next, leaf);
        if (initial) initial_args.pop_back();
        preorder.pop_back();
        if (stop) return true;
      }
      next_var = saved;
    }
    return false;
  }
};

AndTree rebuild(const Program &p, const std::vector<int> &preorder) {
  std::map<int, std::size_t> arity;
  for (const auto &c : p.clauses) arity[c.id] = c.body.size();
  std::size_t pos = 0;
  std::function<AndTree()> take = [&]() {
    AndTree t{preorder.at(pos++), {}};
    for (std::size_t i = 0; i < arity.at(t.clause); ++i)
      t.children.push_back(take());
    return t;
  };
  return take();
}

} // namespace

IntSat integer_feasible(const Conjunction &c, std::size_t node_cap) {
  if (c.is_trivially_false()) return IntSat::Unsat;
  std::size_t budget = node_cap;
  return branch(lp::to_system(c), budget);
}

Outcome bounded_derivable(const BoundedQuery &q) {
  Search s{*q.program, q.init, q.var_bound, q.expansion_cap};
  Outcome out;
  bool unknown = false;
  s.run({{q.goal, {}, q.depth}}, Conjunction{},
        [&](const Conjunction &store, const std::vector<int> &pre,
            const std::vector<std::vector<Var>> &) {
          IntSat r = integer_feasible(store);
          if (r == IntSat::Unknown) unknown = true;
          if (r != IntSat::Sat) return false;
          out.verdict = Verdict::Derivable;
          out.witness = rebuild(*q.program, pre);
          return true;
        });
  if (out.verdict != Verdict::Derivable && (unknown || s.exhausted))
    out.verdict = Verdict::Unknown;
  return out;
}

DerivationSet::DerivationSet(const Program &p, const std::string &goal,
                             std::size_t depth, std::size_t max_derivations,
                             std::size_t expansion_cap) {
  Search s{p, std::nullopt, std::nullopt, expansion_cap};
  s.run({{goal, {}, depth}}, Conjunction{},
        [&](const Conjunction &store, const std::vector<int> &,
            const std::vector<std::vector<Var>> &init_args) {
          if (derivations_.size() >= max_derivations) {
            complete_ = false;
            return true;
          }
          Derivation d{store, init_args, {}, {}};
          std::vector<Var> keep;
          for (const auto &args : init_args)
            for (std::size_t i = 0; i < args.size(); ++i)
              if (d.position.emplace(args[i], i).second) keep.push_back(args[i]);
          d.shadow = project(store, keep);
          derivations_.push_back(std::move(d));
          return false;
        });
  if (s.exhausted) complete_ = false;
}

Verdict DerivationSet::check(const Point &init) const {
  bool unknown = !complete_;
  Conjunction at = point_constraint(init);
  for (const auto &d : derivations_) {
    bool consistent = true;
    for (const auto &args : d.initial_args)
      for (std::size_t i = 0; i < args.size(); ++i)
        if (init[d.position.at(args[i])] != init[i]) consistent = false;
    if (!consistent) continue;
    auto value = [&](Var v) {
      auto it = d.position.find(v);
      return it == d.position.end() ? Int(0) : init[it->second];
    };
    if (!d.shadow.holds(value)) continue;
    Conjunction c = d.constraint;
    for (const auto &args : d.initial_args) c.add_all(instantiate(at, args));
    if (!is_sat(c)) continue;
    IntSat r = integer_feasible(c);
    if (r == IntSat::Sat) return Verdict::Derivable;
    if (r == IntSat::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::NotWithinBound;
}

Conjunction point_constraint(const Point &x) {
  Conjunction c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    LinTerm t = LinTerm::variable(Var{static_cast<std::uint32_t>(i)});
    t.set_constant(-x[i]);
    c.add(LinearConstraint::eq(t));
  }
  return c;
}

bool satisfies(const DnfFormula &f, const Point &x) {
  auto value = [&](Var v) { return v.index < x.size() ? x[v.index] : Int(0); };
  return std::any_of(f.disjuncts().begin(), f.disjuncts().end(),
                     [&](const Polyhedron &d) { return d.constraints().holds(value); });
}

std::vector<Point> sample_points(const DnfFormula &f, std::size_t arity,
                                 long lo, long hi, std::size_t limit) {
  std::vector<Point> out;
  if (lo > hi || f.is_false()) return out;
  Point x(arity, Int(lo));
  for (;;) {
    if (out.size() >= limit) break;
    if (satisfies(f, x)) out.push_back(x);
    std::size_t i = arity;
    while (i > 0 && x[i - 1] == hi) x[--i] = lo;
    if (i == 0) break;
    ++x[i - 1];
  }
  return out;
}

bool ground_derivable(const Program &p, const std::string &goal,
                      std::size_t depth, long bound,
                      const std::optional<Point> &init) {
  using Tuple = std::vector<long>;
  std::map<std::string, std::set<Tuple>> facts;
  for (std::size_t round = 0; round < depth; ++round) {
    auto next = facts;
    for (const auto &c : p.clauses) {
      // Assign body atoms from the previous round, then the free variables.
      std::vector<std::optional<long>> val(c.num_vars());
      std::function<void(std::size_t)> atoms = [&](std::size_t i) {
        if (i == c.body.size()) {
          std::vector<std::size_t> free;
          for (std::size_t v = 0; v < val.size(); ++v)
            if (!val[v]) free.push_back(v);
          std::vector<std::optional<long>> full = val;
          std::function<void(std::size_t)> fill = [&](std::size_t k) {
            if (k == free.size()) {
              auto value = [&](Var v) { return Int(*full.at(v.index)); };
              if (!c.constraint.holds(value)) return;
              Tuple head;
              for (Var v : c.head.args) head.push_back(*full[v.index]);
              if (c.is_fact() && p.is_initial(c.head.pred) && init) {
                for (std::size_t j = 0; j < head.size(); ++j)
                  if (Int(head[j]) != (*init)[j]) return;
              }
              next[c.head.pred].insert(head);
              return;
            }
            for (long x = -bound; x <= bound; ++x) {
              full[free[k]] = x;
              fill(k + 1);
            }
            full[free[k]].reset();
          };
          fill(0);
          return;
        }
        const Atom &b = c.body[i];
        for (const auto &t : facts[b.pred]) {
          auto saved = val;
          bool ok = true;
          for (std::size_t j = 0; j < t.size() && ok; ++j) {
            auto &slot = val[b.args[j].index];
            if (slot && *slot != t[j]) ok = false;
            slot = t[j];
          }
          if (ok) atoms(i + 1);
          val = saved;
        }
      };
      atoms(0);
    }
    facts = std::move(next);
  }
  return facts[goal].count(Tuple{}) > 0;
}

namespace {

using Vec = std::vector<Rat>;

Rat dot(const Vec &a, const Vec &b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Row-reduced basis of the span of `rows`.
std::vector<Vec> row_basis(std::vector<Vec> rows, std::size_t n) {
  std::vector<Vec> basis;
  for (auto &r : rows) {
    for (const auto &b : basis) {
      std::size_t lead = 0;
      while (b[lead] == 0) ++lead;
      if (r[lead] != 0) {
        Rat k = r[lead] / b[lead];
        for (std::size_t j = 0; j < n; ++j) r[j] -= k * b[j];
      }
    }
    if (std::any_of(r.begin(), r.end(), [](const Rat &x) { return x != 0; }))
      basis.push_back(r);
  }
  return basis;
}

// Basis of {w : w.b = 0 for all b in rows}.
std::vector<Vec> null_space(const std::vector<Vec> &rows, std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t e = 0; e < n; ++e) {
    Vec w(n, Rat(0));
    w[e] = 1;
    // Gram-Schmidt against the row space, then against previous results.
    std::vector<Vec> ortho;
    for (const auto &r : rows) {
      Vec v = r;
      for (const auto &o : ortho) {
        Rat k = dot(v, o) / dot(o, o);
        for (std::size_t j = 0; j < n; ++j) v[j] -= k * o[j];
      }
      if (dot(v, v) != 0) ortho.push_back(v);
    }
    for (const auto &o : out) ortho.push_back(o);
    for (const auto &o : ortho) {
      Rat k = dot(w, o) / dot(o, o);
      for (std::size_t j = 0; j < n; ++j) w[j] -= k * o[j];
    }
    if (dot(w, w) != 0) out.push_back(w);
  }
  return out;
}

LinTerm integer_form(const Vec &a, const Rat &rhs) {
  // a.x - rhs scaled to integers.
  Int l = rhs.get_den();
  for (const auto &x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  LinTerm t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rat k = a[i] * l;
    t.add_term(Var{static_cast<std::uint32_t>(i)}, k.get_num());
  }
  Rat c = -rhs * l;
  t.set_constant(c.get_num());
  return t;
}

} // namespace

Conjunction hull_of_points(const std::vector<Point> &points, std::size_t n) {
  if (points.empty()) return Conjunction::falsum();
  std::vector<Vec> pts;
  for (const auto &p : points) {
    Vec v;
    for (const auto &x : p) v.push_back(Rat(x));
    pts.push_back(v);
  }
  std::vector<Vec> diffs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Vec d(n);
      for (std::size_t k = 0; k < n; ++k) d[k] = pts[j][k] - pts[i][k];
      if (std::any_of(d.begin(), d.end(), [](const Rat &x) { return x != 0; }))
        diffs.push_back(d);
    }
  auto basis = row_basis(diffs, n);
  Conjunction out;
  for (const auto &w : null_space(basis, n))
    out.add(LinearConstraint::eq(integer_form(w, dot(w, pts[0]))));

  std::vector<Vec> normals;
  if (basis.size() == 1) normals.push_back(basis[0]);
  if (basis.size() == 2)
    for (const auto &u : diffs) {
      Vec a(n);
      Rat al = dot(basis[1], u), be = -dot(basis[0], u);
      for (std::size_t k = 0; k < n; ++k) a[k] = al * basis[0][k] + be * basis[1][k];
      normals.push_back(a);
    }
  if (basis.size() == 3)
    for (const auto &u : diffs)
      for (const auto &w : diffs)
        normals.push_back({u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                           u[0] * w[1] - u[1] * w[0]});
  // Facets touch at least as many points as the affine dimension; other
  // candidates are redundant and only slow down later simplification.
  std::set<LinearConstraint> facets;
  for (const auto &a0 : normals) {
    if (std::all_of(a0.begin(), a0.end(), [](const Rat &x) { return x == 0; }))
      continue;
    for (int sign : {1, -1}) {
      Vec a = a0;
      for (auto &x : a) x *= sign;
      Rat best = dot(a, pts[0]);
      for (const auto &p : pts) best = std::max(best, dot(a, p));
      std::size_t tight = std::count_if(pts.begin(), pts.end(),
                                        [&](const Vec &p) { return dot(a, p) == best; });
      if (tight >= basis.size()) facets.insert(LinearConstraint::leq(integer_form(a, best)));
    }
  }
  for (const auto &c : facets) out.add(c);
  return out;
}

} // namespace hornpre::oracle
