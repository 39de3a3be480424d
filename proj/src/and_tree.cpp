#include "hornpre/and_tree.hpp"

#include <algorithm>
#include <functional>

namespace hornpre {

std::size_t AndTree::depth() const {
  std::size_t d = 0;
  for (const auto &c : children) d = std::max(d, c.depth());
  return d + 1;
}

std::size_t AndTree::size() const {
  std::size_t n = 1;
  for (const auto &c : children) n += c.size();
  return n;
}

std::strong_ordering operator<=>(const AndTree &a, const AndTree &b) {
  if (auto c = a.clause <=> b.clause; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.children.begin(), a.children.end(), b.children.begin(),
      b.children.end());
}

std::string render(const AndTree &t) {
  std::string s = "c" + std::to_string(t.clause);
  if (t.children.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) s += ",";
    s += render(t.children[i]);
  }
  return s + ")";
}

TreeConstraint tree_constraint(const Program &p, const AndTree &t) {
  std::map<int, const Clause *> by_id;
  for (const auto &c : p.clauses) by_id[c.id] = &c;
  TreeConstraint out;
  std::uint32_t next = 0;
  std::function<void(const AndTree &, const std::vector<Var> &)> walk =
      [&](const AndTree &node, const std::vector<Var> &head) {
        const Clause &c = *by_id.at(node.clause);
        std::map<Var, Var> local;
        for (std::size_t i = 0; i < c.head.args.size(); ++i)
          local[c.head.args[i]] = head[i];
        auto map = [&](Var v) {
          auto it = local.find(v);
          if (it != local.end()) return it->second;
          return local[v] = Var{next++};
        };
        out.constraint.add_all(c.constraint.renamed(map));
        if (c.is_fact() && p.is_initial(c.head.pred))
          out.initial_args.push_back(head);
        for (std::size_t i = 0; i < c.body.size(); ++i) {
          std::vector<Var> args;
          for (Var v : c.body[i].args) args.push_back(map(v));
          walk(node.children.at(i), args);
        }
      };
  const Clause &root = *by_id.at(t.clause);
  std::vector<Var> head;
  for (std::size_t i = 0; i < root.head.args.size(); ++i) head.push_back(Var{next++});
  walk(t, head);
  return out;
}

} // namespace hornpre
