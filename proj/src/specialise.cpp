#include "hornpre/specialise.hpp"

namespace hornpre {

std::string query_name(const std::string &pred) { return pred + "_q"; }
std::string answer_name(const std::string &pred) { return pred + "_a"; }

Program qa_transform(const Program &p, const std::string &goal) {
  Program out;
  out.initial_preds.clear();
  out.init_arity = p.init_arity;
  out.init_arg_names = p.init_arg_names;
  auto renamed = [](const Atom &a, const std::string &name) {
    return Atom{name, a.args};
  };
  for (const auto &c : p.clauses) {
    Clause ans = c;
    ans.origin = c.id;
    ans.head = renamed(c.head, answer_name(c.head.pred));
    ans.body.clear();
    ans.body.push_back(renamed(c.head, query_name(c.head.pred)));
    for (const auto &b : c.body) ans.body.push_back(renamed(b, answer_name(b.pred)));
    out.clauses.push_back(std::move(ans));
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      Clause q = c;
      q.origin = c.id;
      q.head = renamed(c.body[i], query_name(c.body[i].pred));
      q.body.clear();
      q.body.push_back(renamed(c.head, query_name(c.head.pred)));
      for (std::size_t j = 0; j < i; ++j)
        q.body.push_back(renamed(c.body[j], answer_name(c.body[j].pred)));
      out.clauses.push_back(std::move(q));
    }
  }
  Clause seed;
  seed.head = Atom{query_name(goal), {}};
  out.clauses.push_back(std::move(seed));
  out.renumber();
  return out;
}

Program constraint_specialise(const Program &p, const std::string &goal,
                              const CsOptions &opt) {
  PredApprox a = analyze(qa_transform(p, goal), opt.widen_delay);
  auto invariant = [&](const std::string &pred) {
    Polyhedron s = approx_of(a, query_name(pred));
    if (opt.mode == CsMode::QueryAnswer)
      s = meet(s, approx_of(a, answer_name(pred)));
    return s;
  };
  Program out = p;
  out.clauses.clear();
  for (const auto &c : p.clauses) {
    Clause k = c;
    k.origin = c.id;
    bool dead = false;
    auto strengthen = [&](const Atom &atom) {
      Polyhedron s = invariant(atom.pred);
      if (s.is_empty())
        dead = true;
      else
        k.constraint.add_all(instantiate(s.constraints(), atom.args));
    };
    strengthen(c.head);
    for (const auto &b : c.body) strengthen(b);
    if (dead || !is_sat(k.constraint)) continue;
    k.constraint = simplify(k.constraint);
    canonicalize(k);
    out.clauses.push_back(std::move(k));
  }
  out.renumber();
  return cleanup(out, goal);
}

} // namespace hornpre
