#include "hornpre/analyzer.hpp"

#include "hornpre/deadline.hpp"

#include <algorithm>
#include <functional>

namespace hornpre {

const Polyhedron &approx_of(const PredApprox &a, const std::string &pred) {
  static const Polyhedron empty = Polyhedron::empty();
  auto it = a.find(pred);
  return it == a.end() ? empty : it->second;
}

Polyhedron clause_post(const Clause &c, const PredApprox &a) {
  Conjunction acc = c.constraint;
  for (const auto &b : c.body) {
    const Polyhedron &pb = approx_of(a, b.pred);
    if (pb.is_empty()) return Polyhedron::empty();
    acc.add_all(instantiate(pb.constraints(), b.args));
  }
  if (!is_sat(acc)) return Polyhedron::empty();
  Conjunction proj = project(acc, c.head.args);
  std::map<Var, Var> pos;
  for (std::size_t i = 0; i < c.head.args.size(); ++i)
    pos[c.head.args[i]] = Var{static_cast<std::uint32_t>(i)};
  return Polyhedron(proj.renamed([&](Var v) { return pos.at(v); }));
}

namespace {

// Heads of back edges of a depth-first traversal along body -> head flow.
std::set<std::string> widening_points(const Program &p, const Scc &scc) {
  std::set<std::string> members(scc.preds.begin(), scc.preds.end());
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto &c : p.clauses) {
    if (!members.count(c.head.pred)) continue;
    for (const auto &b : c.body)
      if (members.count(b.pred)) {
        auto &s = succ[b.pred];
        if (std::find(s.begin(), s.end(), c.head.pred) == s.end())
          s.push_back(c.head.pred);
      }
  }
  std::set<std::string> points, done, active;
  std::function<void(const std::string &)> dfs = [&](const std::string &v) {
    active.insert(v);
    for (const auto &w : succ[v]) {
      if (active.count(w))
        points.insert(w);
      else if (!done.count(w))
        dfs(w);
    }
    active.erase(v);
    done.insert(v);
  };
  for (const auto &v : scc.preds)
    if (!done.count(v)) dfs(v);
  return points;
}

Polyhedron join_posts(const Program &p, const std::string &pred,
                      const PredApprox &a) {
  Polyhedron acc = Polyhedron::empty();
  for (const auto &c : p.clauses)
    if (c.head.pred == pred) acc = hull(acc, clause_post(c, a));
  return acc;
}

// Rounds after which every member of an SCC is widened.
constexpr unsigned kForceWidenRounds = 40;

} // namespace

PredApprox analyze(const Program &p, unsigned widen_delay) {
  PredApprox a;
  for (const auto &scc : dependency_sccs(p)) {
    if (!scc.recursive) {
      for (const auto &pred : scc.preds) {
        Polyhedron r = join_posts(p, pred, a);
        if (!r.is_empty()) a[pred] = std::move(r);
      }
      continue;
    }
    auto points = widening_points(p, scc);
    std::map<std::string, unsigned> updates;
    for (unsigned round = 0;; ++round) {
      check_deadline();
      bool changed = false;
      for (const auto &pred : scc.preds) {
        const Polyhedron old = approx_of(a, pred);
        Polyhedron next = hull(old, join_posts(p, pred, a));
        if (includes(old, next)) continue;
        if ((points.count(pred) && updates[pred] >= widen_delay) ||
            round >= kForceWidenRounds)
          next = widen(old, next);
        ++updates[pred];
        a[pred] = std::move(next);
        changed = true;
      }
      if (!changed) break;
    }
  }
  return a;
}

bool check_prefixpoint(const Program &p, const PredApprox &a) {
  for (const auto &c : p.clauses)
    if (!includes(approx_of(a, c.head.pred), clause_post(c, a))) return false;
  return true;
}

std::string dump(const PredApprox &a) {
  std::string out;
  for (const auto &[pred, poly] : a)
    out += pred + ": " + render(poly, default_var_name) + "\n";
  return out;
}

} // namespace hornpre
