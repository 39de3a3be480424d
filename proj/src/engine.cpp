#include "hornpre/engine.hpp"

#include "hornpre/lp.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

namespace hornpre {

DnfCapExceeded::DnfCapExceeded(std::size_t size, std::size_t cap)
    : std::runtime_error("DNF size " + std::to_string(size) +
                         " exceeds cap " + std::to_string(cap)),
      size(size), cap(cap) {}

// ---------------------------------------------------------------------------
// Decision procedures

bool is_sat(const Conjunction &c) {
  if (c.is_trivially_false()) return false;
  if (c.empty()) return true;
  return lp::feasible(c);
}

namespace {

// max t over c; nullopt when unbounded. Infeasible c yields `infeasible`.
struct MaxResult {
  bool infeasible = false;
  bool unbounded = false;
  Rat value;
};

MaxResult max_of(const lp::System &sys, const LinTerm &t) {
  auto r = lp::maximize(sys, t);
  MaxResult m;
  m.infeasible = r.status == lp::Status::Infeasible;
  m.unbounded = r.status == lp::Status::Unbounded;
  m.value = r.value;
  return m;
}

// t <= bound holds on every point of sys.
bool bounded_by(const lp::System &sys, const LinTerm &t, const Rat &bound,
                bool strict) {
  auto m = max_of(sys, t);
  if (m.infeasible) return true;
  if (m.unbounded) return false;
  return strict ? m.value < bound : m.value <= bound;
}

bool implies_in(const lp::System &sys, const LinearConstraint &d,
                bool integer_negation) {
  // Integer negation: not(t <= 0) is t >= 1, so c |= d iff max t < 1.
  Rat bound = integer_negation ? Rat(1) : Rat(0);
  bool strict = integer_negation;
  if (!bounded_by(sys, d.term(), bound, strict)) return false;
  if (d.is_eq()) return bounded_by(sys, d.term().negated(), bound, strict);
  return true;
}

} // namespace

bool implies(const Conjunction &c, const LinearConstraint &d) {
  if (d.is_tautology() || c.is_trivially_false()) return true;
  return implies_in(lp::to_system(c), d, true);
}

bool implies_rational(const Conjunction &c, const LinearConstraint &d) {
  if (d.is_tautology() || c.is_trivially_false()) return true;
  return implies_in(lp::to_system(c), d, false);
}

bool implies_rational(const Conjunction &c, const Conjunction &d) {
  if (c.is_trivially_false()) return true;
  lp::System sys = lp::to_system(c);
  if (!lp::feasible(sys)) return true;
  for (const auto &x : d)
    if (!implies_in(sys, x, false)) return false;
  return true;
}

namespace {

// Is d /\ not(g_i /\ ...) unsatisfiable for the remaining disjuncts of g?
bool covered(const Conjunction &d, std::span<const Polyhedron> g) {
  if (!is_sat(d)) return true;
  if (g.empty()) return false;
  lp::System sys = lp::to_system(d);
  for (const auto &p : g) {
    bool all = true;
    for (const auto &c : p.constraints())
      if (!implies_in(sys, c, true)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  const Polyhedron &first = g.front();
  for (const auto &c : first.constraints()) {
    if (implies_in(sys, c, true)) continue;
    for (const auto &nc : complement(c)) {
      Conjunction branch = d;
      branch.add(nc);
      if (!covered(branch, g.subspan(1))) return false;
    }
  }
  return true;
}

} // namespace

bool entails(const DnfFormula &f, const DnfFormula &g) {
  for (const auto &d : f.disjuncts())
    if (!covered(d.constraints(), g.disjuncts())) return false;
  return true;
}

bool equivalent(const DnfFormula &f, const DnfFormula &g) {
  return entails(f, g) && entails(g, f);
}

bool includes(const Polyhedron &outer, const Polyhedron &inner) {
  if (inner.is_empty()) return true;
  if (outer.is_empty()) return false;
  return implies_rational(inner.constraints(), outer.constraints());
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin kernel

namespace {

struct Row {
  LinTerm term;
  bool eq = false;
  // Original inequalities this row combines, sorted (Chernikov's rule).
  std::vector<std::uint32_t> hist;
};

// Divides by the content. With `tighten`, inequalities are divided by the
// gcd of the variable coefficients and the constant is rounded up.
Row normalize_row(Row r, bool tighten) {
  if (tighten) {
    LinearConstraint c(std::move(r.term), r.eq ? Rel::Eq : Rel::Leq);
    return {c.term(), c.is_eq(), std::move(r.hist)};
  }
  if (r.term.is_constant()) {
    bool ok = r.eq ? r.term.constant() == 0 : r.term.constant() <= 0;
    return {LinTerm(ok ? 0 : 1), false, std::move(r.hist)};
  }
  Int g = gcd_of_coeffs(r.term);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.term.constant().get_mpz_t());
  if (r.eq && r.term.coeffs().front().second < 0) g = -g;
  if (g != 1) {
    LinTerm t(r.term.constant() / g);
    for (const auto &[v, k] : r.term.coeffs()) t.add_term(v, k / g);
    r.term = std::move(t);
  }
  return r;
}

bool row_false(const Row &r) {
  return r.term.is_constant() && r.term.constant() > 0;
}
bool row_true(const Row &r) {
  return r.term.is_constant() && r.term.constant() <= 0;
}

lp::System system_of(const std::vector<Row> &rows, std::size_t skip) {
  lp::System s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == skip) continue;
    (rows[i].eq ? s.eq : s.leq).push_back(rows[i].term);
  }
  return s;
}

// Keeps, for each coefficient vector, only the tightest inequality.
void dedupe(std::vector<Row> &rows) {
  std::map<std::vector<std::pair<Var, Int>>, std::size_t> best;
  std::set<std::pair<std::vector<std::pair<Var, Int>>, Int>> seen_eq;
  std::vector<Row> out;
  for (auto &r : rows) {
    if (row_true(r)) continue;
    if (r.eq) {
      if (seen_eq.emplace(r.term.coeffs(), r.term.constant()).second)
        out.push_back(std::move(r));
      continue;
    }
    auto [it, inserted] = best.emplace(r.term.coeffs(), out.size());
    if (inserted) {
      out.push_back(std::move(r));
    } else {
      Row &kept = out[it->second];
      // On ties keep the shorter history so pruning stays exact.
      if (kept.term.constant() < r.term.constant() ||
          (kept.term.constant() == r.term.constant() && r.hist.size() < kept.hist.size()))
        kept = std::move(r);
    }
  }
  rows = std::move(out);
}

void remove_redundant(std::vector<Row> &rows) {
  for (std::size_t i = rows.size(); i-- > 0;) {
    if (rows[i].eq) continue;
    lp::System rest = system_of(rows, i);
    auto r = lp::maximize(rest, rows[i].term);
    if (r.status == lp::Status::Optimal && r.value <= 0)
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

// Returns false if the system became trivially infeasible.
bool fm_eliminate(std::vector<Row> &rows, std::vector<Var> elim,
                  bool tighten) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].hist.clear();
    if (!rows[i].eq) rows[i].hist.push_back(static_cast<std::uint32_t>(i));
    rows[i] = normalize_row(std::move(rows[i]), tighten);
  }
  const std::size_t threshold = std::max<std::size_t>(16, rows.size() * 2);
  std::size_t combined = 0; // variables eliminated by pairing
  while (!elim.empty()) {
    if (std::any_of(rows.begin(), rows.end(), row_false)) return false;

    // Prefer a variable with an equality; otherwise the cheapest to pair.
    std::size_t pick = elim.size();
    std::optional<std::size_t> eq_row;
    for (std::size_t k = 0; k < elim.size() && !eq_row; ++k)
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].eq && rows[i].term.coeff(elim[k]) != 0) {
          if (!eq_row || abs(rows[i].term.coeff(elim[k])) <
                             abs(rows[*eq_row].term.coeff(elim[k])))
            eq_row = i;
          pick = k;
        }
    if (eq_row) {
      Var v = elim[pick];
      Row e = rows[*eq_row];
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*eq_row));
      Int a = e.term.coeff(v);
      for (auto &r : rows) {
        Int b = r.term.coeff(v);
        if (b == 0) continue;
        // |a| * r - sign(a) * b * e keeps the sense of r.
        LinTerm t = r.term.scaled(abs(a));
        t.add(e.term, a > 0 ? Int(-b) : Int(b));
        r = normalize_row({std::move(t), r.eq, std::move(r.hist)}, tighten);
      }
      elim.erase(elim.begin() + static_cast<std::ptrdiff_t>(pick));
      dedupe(rows);
      continue;
    }

    std::size_t best = 0;
    long best_cost = -1;
    for (std::size_t k = 0; k < elim.size(); ++k) {
      long pos = 0, neg = 0;
      for (const auto &r : rows) {
        int s = sgn(r.term.coeff(elim[k]));
        pos += s > 0;
        neg += s < 0;
      }
      long cost = pos * neg - pos - neg;
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = k;
      }
      if (best_cost < 0) best_cost = cost;
    }
    Var v = elim[best];
    elim.erase(elim.begin() + static_cast<std::ptrdiff_t>(best));
    std::vector<Row> pos, neg, next;
    for (auto &r : rows) {
      int s = sgn(r.term.coeff(v));
      if (s > 0)
        pos.push_back(std::move(r));
      else if (s < 0)
        neg.push_back(std::move(r));
      else
        next.push_back(std::move(r));
    }
    ++combined;
    for (const auto &p : pos)
      for (const auto &n : neg) {
        std::vector<std::uint32_t> h;
        std::set_union(p.hist.begin(), p.hist.end(), n.hist.begin(),
                       n.hist.end(), std::back_inserter(h));
        // A combination of more than combined+1 originals is redundant.
        if (!tighten && h.size() > combined + 1) continue;
        Int a = p.term.coeff(v);
        Int b = -n.term.coeff(v);
        LinTerm t = p.term.scaled(b);
        t.add(n.term, a);
        next.push_back(normalize_row({std::move(t), false, std::move(h)}, tighten));
      }
    rows = std::move(next);
    dedupe(rows);
    if (rows.size() > threshold) {
      // The reduced system is equivalent; count histories from it afresh.
      remove_redundant(rows);
      for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].hist.assign(rows[i].eq ? 0 : 1, static_cast<std::uint32_t>(i));
      combined = 0;
    }
  }
  return !std::any_of(rows.begin(), rows.end(), row_false);
}

} // namespace

Conjunction project(const Conjunction &c, std::span<const Var> keep) {
  if (c.is_trivially_false()) return c;
  std::set<Var> kept(keep.begin(), keep.end());
  std::vector<Var> elim;
  for (Var v : c.vars())
    if (!kept.count(v)) elim.push_back(v);
  if (!is_sat(c)) return Conjunction::falsum();
  std::vector<Row> rows;
  for (const auto &x : c) rows.push_back({x.term(), x.is_eq()});
  if (!fm_eliminate(rows, elim, true)) return Conjunction::falsum();
  Conjunction out;
  for (auto &r : rows) out.add(LinearConstraint(r.term, r.eq ? Rel::Eq : Rel::Leq));
  return simplify(out);
}

namespace {

// Among inequalities with the same linear part only the tightest matters.
// Canonical order keeps such constraints adjacent.
Conjunction drop_parallel(const Conjunction &c) {
  std::vector<LinearConstraint> out;
  for (const auto &x : c) {
    if (!out.empty() && !x.is_eq() && !out.back().is_eq() &&
        out.back().term().coeffs() == x.term().coeffs()) {
      if (x.term().constant() > out.back().term().constant()) out.back() = x;
      continue;
    }
    out.push_back(x);
  }
  return Conjunction(std::move(out));
}

Conjunction simplify_uncached(const Conjunction &input) {
  Conjunction c = drop_parallel(input);
  lp::System all = lp::to_system(c);

  // One LP for the largest uniform slack eps <= 1 on every inequality: the
  // system is empty iff it is below 0, and above 0 there are no implicit
  // equalities.
  lp::System slack;
  slack.eq = all.eq;
  Var eps{c.max_var()->index + 1};
  for (const auto &t : all.leq) slack.leq.push_back(t + LinTerm::variable(eps));
  slack.leq.push_back(LinTerm::variable(eps) - LinTerm(1));
  auto interior = lp::maximize(slack, LinTerm::variable(eps));
  if (interior.status == lp::Status::Infeasible || interior.value < 0)
    return Conjunction::falsum();
  const bool full = interior.value > 0;

  // Implicit equalities: t <= 0 with t >= 0 entailed.
  std::vector<LinearConstraint> items;
  for (const auto &x : c) {
    if (!full && !x.is_eq()) {
      auto m = lp::maximize(all, x.term().negated());
      if (m.status == lp::Status::Optimal && m.value <= 0) {
        items.push_back(LinearConstraint::eq(x.term()));
        continue;
      }
    }
    items.push_back(x);
  }
  Conjunction cur(items);
  std::vector<LinearConstraint> keep(cur.begin(), cur.end());
  for (std::size_t i = keep.size(); i-- > 0;) {
    lp::System rest;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (j != i) rest.add(keep[j]);
    if (implies_in(rest, keep[i], false))
      keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return Conjunction(keep);
}

// The analyses simplify the same conjunctions many times over.
constexpr std::size_t kSimplifyCacheLimit = 1 << 15;

} // namespace

Conjunction simplify(const Conjunction &c) {
  if (c.is_trivially_false()) return c;
  if (c.empty()) return c;
  thread_local std::map<Conjunction, Conjunction> cache;
  if (auto it = cache.find(c); it != cache.end()) return it->second;
  Conjunction r = simplify_uncached(c);
  if (cache.size() >= kSimplifyCacheLimit) cache.clear();
  cache.emplace(c, r);
  cache.emplace(r, r);
  return r;
}

// ---------------------------------------------------------------------------
// Polyhedra

Polyhedron::Polyhedron(Conjunction c) : cons_(simplify(c)) {
  empty_ = cons_.is_trivially_false();
}

Polyhedron meet(const Polyhedron &p, const Polyhedron &q) {
  if (p.is_empty()) return p;
  if (q.is_empty()) return q;
  return Polyhedron(p.constraints() & q.constraints());
}

Polyhedron hull(const Polyhedron &p, const Polyhedron &q) {
  if (p.is_empty()) return q;
  if (q.is_empty()) return p;
  if (p.is_universe() || q.is_universe()) return Polyhedron::universe();

  // Lifted system: x = y + z, p(y) scaled by lambda, q(z) scaled by
  // 1 - lambda, 0 <= lambda <= 1, with z substituted by x - y.
  std::vector<Var> xs = (p.constraints() & q.constraints()).vars();
  std::uint32_t base = xs.back().index + 1;
  std::map<Var, Var> ycopy;
  for (std::size_t i = 0; i < xs.size(); ++i)
    ycopy[xs[i]] = Var{base + static_cast<std::uint32_t>(i)};
  Var lambda{base + static_cast<std::uint32_t>(xs.size())};

  std::vector<Row> rows;
  for (const auto &c : p.constraints()) {
    LinTerm t = c.term().renamed([&](Var v) { return ycopy.at(v); });
    t.set_constant(0);
    t.add_term(lambda, c.term().constant());
    rows.push_back({std::move(t), c.is_eq()});
  }
  for (const auto &c : q.constraints()) {
    LinTerm t(c.term().constant());
    for (const auto &[v, k] : c.term().coeffs()) {
      t.add_term(v, k);
      t.add_term(ycopy.at(v), -k);
    }
    t.add_term(lambda, -c.term().constant());
    rows.push_back({std::move(t), c.is_eq()});
  }
  rows.push_back({LinTerm::variable(lambda, -1), false});
  {
    LinTerm t = LinTerm::variable(lambda);
    t.set_constant(-1);
    rows.push_back({std::move(t), false});
  }
  std::vector<Var> elim;
  for (const auto &[x, y] : ycopy) elim.push_back(y);
  elim.push_back(lambda);
  if (!fm_eliminate(rows, elim, false)) return Polyhedron::empty();
  Conjunction out;
  for (auto &r : rows)
    out.add(LinearConstraint(r.term, r.eq ? Rel::Eq : Rel::Leq));
  return Polyhedron(out);
}

namespace {

std::vector<LinearConstraint> as_inequalities(const Conjunction &c) {
  std::vector<LinearConstraint> out;
  for (const auto &x : c) {
    if (x.is_eq()) {
      out.push_back(LinearConstraint::leq(x.term()));
      out.push_back(LinearConstraint::leq(x.term().negated()));
    } else {
      out.push_back(x);
    }
  }
  return out;
}

} // namespace

Polyhedron widen(const Polyhedron &p, const Polyhedron &q) {
  if (p.is_empty()) return q;
  if (q.is_empty()) return p;
  auto pi = as_inequalities(p.constraints());
  auto qi = as_inequalities(q.constraints());
  lp::System qsys = lp::to_system(q.constraints());
  lp::System psys = lp::to_system(p.constraints());
  Conjunction out;
  for (const auto &c : pi)
    if (implies_in(qsys, c, false)) out.add(c);
  for (const auto &c : qi) {
    if (!implies_in(psys, c, false)) continue;
    for (std::size_t k = 0; k < pi.size(); ++k) {
      lp::System swapped;
      for (std::size_t j = 0; j < pi.size(); ++j)
        if (j != k) swapped.add(pi[j]);
      swapped.add(c);
      if (implies_in(swapped, pi[k], false)) {
        out.add(c);
        break;
      }
    }
  }
  return Polyhedron(out);
}

// ---------------------------------------------------------------------------
// DNF

DnfFormula::DnfFormula(std::vector<Polyhedron> ds) {
  for (auto &d : ds)
    if (!d.is_empty()) ds_.push_back(std::move(d));
}

DnfFormula::DnfFormula(const Conjunction &c) {
  Polyhedron p(c);
  if (!p.is_empty()) ds_.push_back(std::move(p));
}

DnfFormula DnfFormula::truth() {
  return DnfFormula(std::vector<Polyhedron>{Polyhedron::universe()});
}

bool DnfFormula::is_true() const {
  return std::any_of(ds_.begin(), ds_.end(),
                     [](const Polyhedron &p) { return p.is_universe(); });
}

DnfFormula normalized(const std::vector<Conjunction> &ds) {
  std::vector<Polyhedron> ps;
  for (const auto &d : ds) {
    Polyhedron p(d);
    if (p.is_empty()) continue;
    if (p.is_universe()) return DnfFormula::truth();
    ps.push_back(std::move(p));
  }
  std::sort(ps.begin(), ps.end(), [](const Polyhedron &a, const Polyhedron &b) {
    return std::lexicographical_compare(
        a.constraints().begin(), a.constraints().end(),
        b.constraints().begin(), b.constraints().end());
  });
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<bool> dropped(ps.size(), false);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      bool inner = std::all_of(
          ps[j].constraints().begin(), ps[j].constraints().end(),
          [&](const LinearConstraint &c) {
            return implies(ps[i].constraints(), c);
          });
      if (inner) dropped[i] = true;
    }
  }
  std::vector<Polyhedron> out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!dropped[i]) out.push_back(std::move(ps[i]));
  return DnfFormula(std::move(out));
}

namespace {

std::vector<Conjunction> conjunctions(const DnfFormula &f) {
  std::vector<Conjunction> out;
  for (const auto &d : f.disjuncts()) out.push_back(d.constraints());
  return out;
}

DnfFormula checked(DnfFormula f, std::size_t cap) {
  if (f.size() > cap) throw DnfCapExceeded(f.size(), cap);
  return f;
}

} // namespace

DnfFormula conjoin(const DnfFormula &f, const DnfFormula &g, std::size_t cap) {
  std::vector<Conjunction> out;
  for (const auto &a : f.disjuncts())
    for (const auto &b : g.disjuncts()) {
      Conjunction c = a.constraints() & b.constraints();
      if (is_sat(c)) out.push_back(std::move(c));
    }
  return checked(normalized(out), cap);
}

DnfFormula disjoin(const DnfFormula &f, const DnfFormula &g) {
  auto out = conjunctions(f);
  for (const auto &d : g.disjuncts()) out.push_back(d.constraints());
  return normalized(out);
}

DnfFormula negate(const DnfFormula &f, std::size_t cap) {
  DnfFormula acc = DnfFormula::truth();
  for (const auto &d : f.disjuncts()) {
    std::vector<Conjunction> alts;
    for (const auto &c : d.constraints())
      for (const auto &nc : complement(c)) alts.push_back(Conjunction{nc});
    acc = conjoin(acc, normalized(alts), cap);
    if (acc.is_false()) break;
  }
  return acc;
}

DnfFormula subtract(const DnfFormula &f, const DnfFormula &g, std::size_t cap) {
  return conjoin(f, negate(g, cap), cap);
}

DnfFormula renamed(const DnfFormula &f, const std::function<Var(Var)> &map) {
  std::vector<Conjunction> out;
  for (const auto &d : f.disjuncts()) out.push_back(d.constraints().renamed(map));
  return normalized(out);
}

std::string render(const Polyhedron &p, const NameFn &name) {
  if (p.is_empty()) return "false";
  return render(p.constraints(), name);
}

std::string render(const DnfFormula &f, const NameFn &name) {
  if (f.is_false()) return "false";
  if (f.is_true()) return "true";
  std::string out;
  for (const auto &d : f.disjuncts()) {
    if (!out.empty()) out += " ; ";
    out += "(" + render(d.constraints(), name) + ")";
  }
  return out;
}

} // namespace hornpre
