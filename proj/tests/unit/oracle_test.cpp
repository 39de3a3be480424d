#include "hornpre/oracle.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace hornpre;
using namespace hornpre::oracle;

namespace {
const std::vector<std::string> AB{"A", "B"};
Point pt(long a, long b) { return {Int(a), Int(b)}; }
} // namespace

TEST(Oracle, RunningExampleDerivations) {
  Program p = load_data("fig1.chc");
  BoundedQuery q{&p, kError, 4, parse_conjunction("A=1, B=0", AB)};
  auto r = bounded_derivable(q);
  ASSERT_EQ(r.verdict, Verdict::Derivable);
  EXPECT_EQ(render(*r.witness), "c3(c2(c1(c0)))");
  BoundedQuery s{&p, kExit0, 4, parse_conjunction("A=1, B=1", AB)};
  EXPECT_EQ(bounded_derivable(s).verdict, Verdict::Derivable);
  BoundedQuery none{&p, kError, 4, parse_conjunction("A=1, B=1", AB)};
  EXPECT_EQ(bounded_derivable(none).verdict, Verdict::NotWithinBound);
}

TEST(Oracle, NonTerminatingInput) {
  Program p = load_data("fig5.chc");
  std::vector<std::string> a{"A"};
  for (const auto &goal : {kError, kExit0}) {
    BoundedQuery q{&p, goal, 50, parse_conjunction("A=5", a)};
    EXPECT_EQ(bounded_derivable(q).verdict, Verdict::NotWithinBound);
  }
}

TEST(Oracle, IntegerFeasibility) {
  std::vector<std::string> x{"X", "Y"};
  EXPECT_EQ(integer_feasible(parse_conjunction("2*X=1", x)), IntSat::Unsat);
  EXPECT_EQ(integer_feasible(parse_conjunction("3*X>=1, 3*X=<2", x)), IntSat::Unsat);
  EXPECT_EQ(integer_feasible(parse_conjunction("2*X-2*Y=1", x)), IntSat::Unsat);
  EXPECT_EQ(integer_feasible(parse_conjunction("2*X+3*Y=7, X>=0, Y>=0", x)),
            IntSat::Sat);
}

TEST(Oracle, SamplePoints) {
  auto f = parse_formula("B<0", AB);
  EXPECT_EQ(sample_points(f, 2, -2, 2, 4),
            (std::vector<Point>{pt(-2, -2), pt(-2, -1), pt(-1, -2), pt(-1, -1)}));
  EXPECT_TRUE(sample_points(DnfFormula::falsum(), 2, -2, 2, 4).empty());
  EXPECT_EQ(sample_points(parse_formula("A>B, B>=0", AB), 2, 0, 2, 10),
            (std::vector<Point>{pt(1, 0), pt(2, 0), pt(2, 1)}));
}

TEST(Oracle, BatchAgreesWithSingleQueries) {
  Program p = load_data("fig1.chc");
  DerivationSet ds(p, kError, 6);
  EXPECT_TRUE(ds.complete());
  for (const auto &x : sample_points(DnfFormula::truth(), 2, -3, 3, 100)) {
    BoundedQuery q{&p, kError, 6, point_constraint(x)};
    EXPECT_EQ(ds.check(x), bounded_derivable(q).verdict);
  }
}

TEST(Oracle, AgreesWithGroundEvaluation) {
  Program p = load_data("fig1.chc");
  for (const auto &x : sample_points(DnfFormula::truth(), 2, -3, 3, 100))
    for (const auto &goal : {kError, kExit0}) {
      BoundedQuery q{&p, goal, 5, point_constraint(x), 3L};
      bool dfs = bounded_derivable(q).verdict == Verdict::Derivable;
      EXPECT_EQ(dfs, ground_derivable(p, goal, 5, 3, x));
    }
}

TEST(Oracle, HullOfPoints) {
  std::vector<std::string> x{"X", "Y", "Z"};
  auto h = hull_of_points({{Int(0)}, {Int(2)}}, 1);
  EXPECT_TRUE(equivalent(DnfFormula(h), parse_formula("X>=0, X=<2", x)));
  auto seg = hull_of_points({{Int(0), Int(0)}, {Int(1), Int(1)}}, 2);
  EXPECT_TRUE(equivalent(DnfFormula(seg), parse_formula("X=Y, X>=0, X=<1", x)));
  auto tri = hull_of_points({{Int(0), Int(0), Int(0)}, {Int(1), Int(0), Int(0)},
                             {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}},
                            3);
  EXPECT_TRUE(equivalent(DnfFormula(tri),
                         parse_formula("X>=0, Y>=0, Z>=0, X+Y+Z=<1", x)));
}
