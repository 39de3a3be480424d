#include "hornpre/engine.hpp"
#include "hornpre/lp.hpp"

#include <gtest/gtest.h>

using namespace hornpre;

namespace {

const Var A{0}, B{1}, C{2};

LinTerm v(Var x, long k = 1) { return LinTerm::variable(x, k); }
LinTerm k(long c) { return LinTerm(c); }
std::string show(const Conjunction &c) { return render(c, default_var_name); }
std::string show(const DnfFormula &f) { return render(f, default_var_name); }
std::string show(const Polyhedron &p) { return render(p, default_var_name); }

} // namespace

TEST(Linear, NormalizationTightensInequalities) {
  // 2A - 3 <= 0  ->  A - 1 <= 0 over the integers
  auto c = LinearConstraint::leq(v(A, 2) + k(-3));
  EXPECT_EQ(render(c, default_var_name), "A=<1");
  auto e = LinearConstraint::eq(v(A, -4) + v(B, 2) + k(6));
  EXPECT_EQ(render(e, default_var_name), "2*A-B=3");
  EXPECT_EQ(render(LinearConstraint::lt(v(B) - v(A)), default_var_name),
            "A-B>=1");
}

TEST(Lp, MaximizeSimple) {
  Conjunction c{LinearConstraint::leq(v(A) + v(B) + k(-4)),
                LinearConstraint::leq(v(A, -1)), LinearConstraint::leq(v(B, -1))};
  auto r = lp::maximize(lp::to_system(c), v(A, 2) + v(B));
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_EQ(r.value, Rat(8));
  auto u = lp::maximize(lp::to_system(c), v(C));
  EXPECT_EQ(u.status, lp::Status::Unbounded);
  c.add(LinearConstraint::leq(k(5) - v(A)));
  EXPECT_FALSE(lp::feasible(c));
}

TEST(Lp, EqualitiesAndPoint) {
  Conjunction c{LinearConstraint::eq(v(A) - v(B, 2)),
                LinearConstraint::leq(v(B) + k(-3))};
  auto r = lp::maximize(lp::to_system(c), v(A));
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_EQ(r.value, Rat(6));
}

TEST(Engine, SimplifyFindsEqualitiesAndRedundancy) {
  Conjunction c{LinearConstraint::leq(v(A) - v(B)),
                LinearConstraint::leq(v(B) - v(A)),
                LinearConstraint::leq(v(A) + k(-5)),
                LinearConstraint::leq(v(A) + k(-7))};
  EXPECT_EQ(show(simplify(c)), "A-B=0, A=<5");
}

TEST(Engine, ProjectEliminates) {
  // A < B, B < C  |- project on {A, C}:  A + 2 <= C
  Conjunction c{LinearConstraint::lt(v(A) - v(B)), LinearConstraint::lt(v(B) - v(C))};
  std::vector<Var> keep{A, C};
  EXPECT_EQ(show(project(c, keep)), "A-C=<-2");
}

TEST(Engine, HullOfTwoPoints) {
  Polyhedron p(Conjunction{LinearConstraint::eq(v(A)), LinearConstraint::eq(v(B))});
  Polyhedron q(Conjunction{LinearConstraint::eq(v(A) + k(-2)),
                           LinearConstraint::eq(v(B) + k(-2))});
  EXPECT_EQ(show(hull(p, q)), "A-B=0, A>=0, A=<2");
}

TEST(Engine, WidenKeepsReplaceableConstraints) {
  // p = {A >= 1, A > B}; q grows along B only
  Polyhedron p(Conjunction{LinearConstraint::leq(k(1) - v(A)),
                           LinearConstraint::lt(v(B) - v(A)),
                           LinearConstraint::leq(v(A) + k(-1))});
  Polyhedron q(Conjunction{LinearConstraint::leq(k(1) - v(A)),
                           LinearConstraint::lt(v(B) - v(A))});
  auto w = widen(p, q);
  EXPECT_TRUE(includes(w, q));
  EXPECT_EQ(show(w), show(q));
}

TEST(Engine, EntailmentAndNegation) {
  DnfFormula lo(Conjunction{LinearConstraint::leq(v(A))});       // A <= 0
  DnfFormula hi(Conjunction{LinearConstraint::leq(k(1) - v(A))}); // A >= 1
  EXPECT_TRUE(equivalent(negate(lo), hi));
  EXPECT_TRUE(entails(disjoin(lo, hi), DnfFormula::truth()));
  EXPECT_TRUE(entails(DnfFormula::truth(), disjoin(lo, hi)));
  EXPECT_TRUE(conjoin(lo, hi).is_false());
  EXPECT_EQ(show(subtract(DnfFormula::truth(), lo)), "(A>=1)");
}
