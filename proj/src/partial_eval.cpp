#include "hornpre/partial_eval.hpp"

#include "hornpre/deadline.hpp"

#include <algorithm>
#include <deque>

namespace hornpre {

namespace {

std::string pool_key(const std::string &pred, std::size_t arity, PoolMode mode) {
  return mode == PoolMode::SharedByArity ? "/" + std::to_string(arity) : pred;
}

Conjunction to_positions(const Conjunction &c, const std::vector<Var> &args) {
  std::map<Var, Var> pos;
  for (std::size_t i = 0; i < args.size(); ++i)
    pos[args[i]] = Var{static_cast<std::uint32_t>(i)};
  return c.renamed([&](Var v) { return pos.at(v); });
}

} // namespace

std::map<std::string, std::vector<LinearConstraint>>
property_pools(const Program &p, PoolMode mode) {
  std::map<std::string, std::set<LinearConstraint>> pools;
  for (const auto &c : p.clauses) {
    std::vector<const Atom *> atoms{&c.head};
    for (const auto &b : c.body) atoms.push_back(&b);
    for (const Atom *a : atoms) {
      auto &pool = pools[pool_key(a->pred, a->args.size(), mode)];
      std::set<Var> args(a->args.begin(), a->args.end());
      for (const auto &k : c.constraint) {
        bool inside = std::all_of(
            k.term().coeffs().begin(), k.term().coeffs().end(),
            [&](const auto &e) { return args.count(e.first) > 0; });
        if (!inside) continue;
        for (const auto &m : to_positions(Conjunction{k}, a->args)) pool.insert(m);
      }
    }
  }
  std::map<std::string, std::vector<LinearConstraint>> out;
  for (auto &[k, s] : pools) out[k] = {s.begin(), s.end()};
  return out;
}

Program partial_evaluate(const Program &p, const std::string &goal,
                         PoolMode mode) {
  const auto pools = property_pools(p, mode);
  const auto arity = p.arities();

  struct Version {
    std::string base;
    Conjunction props;
    std::string name;
  };
  std::vector<Version> versions;
  std::map<std::pair<std::string, Conjunction>, std::size_t> index;
  std::map<std::string, int> counter;
  std::deque<std::size_t> work;

  auto version_of = [&](const std::string &base, Conjunction props) {
    auto key = std::make_pair(base, props);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::string name =
        base == goal ? base : base + "__" + std::to_string(++counter[base]);
    versions.push_back({base, std::move(props), name});
    index.emplace(std::move(key), versions.size() - 1);
    work.push_back(versions.size() - 1);
    return versions.size() - 1;
  };

  version_of(goal, Conjunction{});
  Program out;
  out.initial_preds.clear();
  out.init_arity = p.init_arity;
  out.init_arg_names = p.init_arg_names;
  while (!work.empty()) {
    check_deadline();
    std::size_t vi = work.front();
    work.pop_front();
    const Version v = versions[vi];
    if (p.is_initial(v.base)) out.initial_preds.insert(v.name);
    for (const auto &c : p.clauses) {
      if (c.head.pred != v.base) continue;
      Conjunction ctx = instantiate(v.props, c.head.args) & c.constraint;
      if (!is_sat(ctx)) continue;
      Clause k = c;
      k.origin = c.id;
      k.head.pred = v.name;
      k.constraint = simplify(ctx);
      for (auto &b : k.body) {
        Conjunction child = to_positions(project(ctx, b.args), b.args);
        Conjunction props;
        auto pool = pools.find(pool_key(b.pred, arity.at(b.pred), mode));
        if (pool != pools.end())
          for (const auto &m : pool->second)
            if (implies(child, m)) props.add(m);
        b.pred = versions[version_of(b.pred, std::move(props))].name;
      }
      canonicalize(k);
      out.clauses.push_back(std::move(k));
    }
  }
  out.renumber();
  return cleanup(out, goal);
}

} // namespace hornpre
