#include "hornpre/trace_elim.hpp"

#include <algorithm>
#include <functional>

namespace hornpre {

std::vector<EnumeratedTree> enumerate_trees(const Program &p,
                                            const std::string &goal,
                                            std::size_t max_depth,
                                            std::size_t max_count) {
  // memo[(pred, depth)] = lexicographically first trees of depth <= depth.
  std::map<std::pair<std::string, std::size_t>, std::vector<AndTree>> memo;
  std::function<const std::vector<AndTree> &(const std::string &, std::size_t)>
      trees = [&](const std::string &pred,
                  std::size_t depth) -> const std::vector<AndTree> & {
    auto key = std::make_pair(pred, depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<AndTree> out;
    if (depth > 0) {
      for (const auto &c : p.clauses) {
        if (c.head.pred != pred) continue;
        std::vector<const std::vector<AndTree> *> parts;
        bool empty = false;
        for (const auto &b : c.body) {
          parts.push_back(&trees(b.pred, depth - 1));
          empty = empty || parts.back()->empty();
        }
        if (empty) continue;
        // Lexicographic product, odometer style with the last index fastest.
        std::vector<std::size_t> idx(parts.size(), 0);
        while (out.size() < max_count) {
          AndTree t{c.id, {}};
          for (std::size_t i = 0; i < parts.size(); ++i)
            t.children.push_back((*parts[i])[idx[i]]);
          out.push_back(std::move(t));
          std::size_t i = parts.size();
          while (i > 0 && ++idx[i - 1] == parts[i - 1]->size()) idx[--i] = 0;
          if (i == 0) break;
        }
        if (out.size() >= max_count) break;
      }
    }
    return memo[key] = std::move(out);
  };
  std::vector<EnumeratedTree> out;
  for (const auto &t : trees(goal, max_depth))
    out.push_back({t, is_sat(tree_constraint(p, t).constraint)});
  return out;
}

DnfFormula theta(const Program &p, const AndTree &t) {
  TreeConstraint tc = tree_constraint(p, t);
  if (tc.initial_args.size() != 1)
    throw MultipleInitialNodes("tree " + render(t) + " has " +
                               std::to_string(tc.initial_args.size()) +
                               " initial nodes");
  if (!is_sat(tc.constraint))
    throw std::invalid_argument("theta of an infeasible tree");
  const auto &args = tc.initial_args.front();
  Conjunction proj = project(tc.constraint, args);
  std::map<Var, Var> pos;
  for (std::size_t i = 0; i < args.size(); ++i)
    pos[args[i]] = Var{static_cast<std::uint32_t>(i)};
  return DnfFormula(proj.renamed([&](Var v) { return pos.at(v); }));
}

Program eliminate_tree(const Program &p, const AndTree &t) {
  // Automaton states: the distinct subtrees of t, plus the sink.
  std::vector<AndTree> states;
  std::function<std::size_t(const AndTree &)> collect = [&](const AndTree &n) {
    for (const auto &c : n.children) collect(c);
    auto it = std::find(states.begin(), states.end(), n);
    if (it != states.end()) return static_cast<std::size_t>(it - states.begin());
    states.push_back(n);
    return states.size() - 1;
  };
  const std::size_t root = collect(t);
  const std::size_t sink = states.size();

  // Transition: clause id and child states -> state.
  std::map<std::pair<int, std::vector<std::size_t>>, std::size_t> delta;
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::vector<std::size_t> kids;
    for (const auto &c : states[s].children)
      kids.push_back(static_cast<std::size_t>(
          std::find(states.begin(), states.end(), c) - states.begin()));
    delta[{states[s].clause, kids}] = s;
  }
  std::map<int, const Clause *> by_id;
  for (const auto &c : p.clauses) by_id[c.id] = &c;
  // States whose subtree is rooted at a clause for pred.
  std::map<std::string, std::vector<std::size_t>> states_of;
  for (std::size_t s = 0; s < states.size(); ++s)
    states_of[by_id.at(states[s].clause)->head.pred].push_back(s);

  auto name = [&](const std::string &pred, std::size_t s) {
    return s == sink ? pred : pred + "__t" + std::to_string(s);
  };

  Program out = p;
  out.clauses.clear();
  out.initial_preds.clear();
  for (const auto &c : p.clauses) {
    std::vector<std::vector<std::size_t>> choices;
    for (const auto &b : c.body) {
      auto opts = states_of[b.pred];
      opts.push_back(sink);
      choices.push_back(std::move(opts));
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    for (;;) {
      std::vector<std::size_t> kids;
      for (std::size_t i = 0; i < choices.size(); ++i)
        kids.push_back(choices[i][idx[i]]);
      auto it = delta.find({c.id, kids});
      std::size_t s = it == delta.end() ? sink : it->second;
      if (s != root) {
        Clause k = c;
        k.origin = c.id;
        k.head.pred = name(c.head.pred, s);
        for (std::size_t i = 0; i < k.body.size(); ++i)
          k.body[i].pred = name(c.body[i].pred, kids[i]);
        if (c.is_fact() && p.is_initial(c.head.pred))
          out.initial_preds.insert(k.head.pred);
        out.clauses.push_back(std::move(k));
      }
      std::size_t i = choices.size();
      while (i > 0 && ++idx[i - 1] == choices[i - 1].size()) idx[--i] = 0;
      if (i == 0) break;
    }
  }
  out.renumber();
  const std::string &goal = by_id.at(t.clause)->head.pred;
  return cleanup(out, goal);
}

} // namespace hornpre
