#include "hornpre/driver.hpp"
#include "hornpre/oracle.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace hornpre;

namespace {
const std::vector<std::string> AB{"A", "B"};

// Clause-id skeleton mapped through `origin` to the parent program.
AndTree to_parent(const Program &p, const AndTree &t) {
  AndTree out{p.clauses.at(static_cast<std::size_t>(t.clause)).origin, {}};
  for (const auto &c : t.children) out.children.push_back(to_parent(p, c));
  return out;
}
} // namespace

TEST(Trees, RunningExample) {
  Program p = load_data("fig1.chc");
  EXPECT_TRUE(enumerate_trees(p, kError, 1, 64).empty());
  auto d3 = enumerate_trees(p, kError, 3, 64);
  ASSERT_EQ(d3.size(), 1u);
  EXPECT_EQ(render(d3[0].tree), "c3(c1(c0))");
  EXPECT_TRUE(d3[0].feasible);
  auto d4 = enumerate_trees(p, kError, 4, 64);
  ASSERT_EQ(d4.size(), 2u);
  EXPECT_EQ(render(d4[1].tree), "c3(c2(c1(c0)))");
  EXPECT_TRUE(d4[1].feasible);
  EXPECT_TRUE(enumerate_trees(parse_program("init(A). p(A) :- init(A). "
                                            "error :- p(A)."),
                              kExit0, 5, 64)
                  .empty());
}

TEST(Trees, Theta) {
  Program p = load_data("fig1.chc");
  auto d4 = enumerate_trees(p, kError, 4, 64);
  EXPECT_TRUE(equivalent(theta(p, d4[0].tree), parse_formula("A=<0, B<0", AB)));
  // One loop iteration: A0 = 1 and B0 - 1 < 0.
  EXPECT_TRUE(equivalent(theta(p, d4[1].tree), parse_formula("A=1, B=<0", AB)));
}

TEST(Trees, EliminateFeasibleTree) {
  Program p = load_data("fig1.chc");
  auto before = enumerate_trees(p, kError, 5, 64);
  Program q = eliminate_tree(p, before[0].tree);
  auto after = enumerate_trees(q, kError, 5, 64);
  std::vector<AndTree> mapped;
  for (const auto &e : after) mapped.push_back(to_parent(q, e.tree));
  std::sort(mapped.begin(), mapped.end());
  std::vector<AndTree> expected;
  for (std::size_t i = 1; i < before.size(); ++i) expected.push_back(before[i].tree);
  EXPECT_EQ(mapped, expected);
}

TEST(Trees, EliminateOnlyDerivation) {
  Program p = parse_program("init(A). error :- A>0, init(A).");
  auto ts = enumerate_trees(p, kError, 3, 8);
  ASSERT_EQ(ts.size(), 1u);
  Program q = eliminate_tree(p, ts[0].tree);
  oracle::BoundedQuery bq{&q, kError, 6};
  EXPECT_EQ(oracle::bounded_derivable(bq).verdict, oracle::Verdict::NotWithinBound);
}

TEST(Trees, InfeasibleEliminationKeepsPreconditions) {
  Program p = parse_program("init(A). p(A) :- A>5, init(A). "
                            "error :- A<0, p(A). error :- A<0, init(A).");
  auto ts = enumerate_trees(p, kError, 3, 8);
  ASSERT_EQ(ts.size(), 2u);
  ASSERT_FALSE(ts[0].feasible);
  Program q = eliminate_tree(p, ts[0].tree);
  EXPECT_EQ(enumerate_trees(q, kError, 3, 8).size(), 1u);
  EXPECT_TRUE(equivalent(np_extract(p), np_extract(q)));
}

TEST(Trees, TeStepAccumulatesTheta) {
  Program p = parse_program("init(X). p(X) :- init(X). error :- X=<0, p(X).");
  TrSeqConfig cfg;
  auto r = apply_trseq(p, kError, {Step::TE}, cfg);
  std::vector<std::string> x{"X"};
  EXPECT_TRUE(equivalent(r.phi, parse_formula("X=<0", x)));
  oracle::BoundedQuery bq{&r.program, kError, 6};
  EXPECT_EQ(oracle::bounded_derivable(bq).verdict, oracle::Verdict::NotWithinBound);
}
