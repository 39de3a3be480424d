#include "hornpre/chc.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace hornpre;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program fig1() { return parse_program(slurp(HORNPRE_DATA_DIR "/fig1.chc")); }

const std::vector<std::string> AB{"A", "B"};

} // namespace

TEST(Parse, RunningExample) {
  Program p = fig1();
  ASSERT_EQ(p.clauses.size(), 5u);
  EXPECT_EQ(p.initial_preds, std::set<std::string>{"init"});
  EXPECT_EQ(p.init_arity, 2u);
  EXPECT_EQ(print_clause(p.clauses[2]),
            "wh(A,B) :- A-A0=-1, B-B0=-1, A0>=1, wh(A0,B0).");
  EXPECT_EQ(print_clause(p.clauses[3]), "error :- A=<0, B=<-1, wh(A,B).");
}

TEST(Parse, RoundTrip) {
  Program p = fig1();
  Program q = parse_program(print_program(p));
  EXPECT_TRUE(structurally_equal(p, q));
  EXPECT_EQ(print_program(Program{}), "");
}

TEST(Parse, RepeatedArgumentsAreFlattened) {
  Program p = parse_program("init(A,B). e :- A<1, init(A,A).");
  Program q = parse_program("init(A,B). e :- A<1, A=A2, init(A,A2).");
  EXPECT_TRUE(structurally_equal(p, q));
  EXPECT_EQ(print_clause(p.clauses[1]), "e :- A-A2=0, A=<0, init(A,A2).");
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_program("error."), ParseError);
  EXPECT_THROW(parse_program("init(A). error(A) :- init(A)."), ParseError);
  EXPECT_THROW(parse_program("init(A). p(A) :- init(A). error :- p(A), p(A,B)."),
               ParseError);
  EXPECT_THROW(parse_program("init(A). p(A) :- A>0. error :- p(A), init(A)."),
               ParseError);
  EXPECT_THROW(parse_program("init(A). q :- error, init(A)."), ParseError);
  try {
    parse_program("init(A).\nwh(A) :- A >< 1.");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line, 2);
  }
}

TEST(Parse, InitialPragmaRoundTrips) {
  Program p = parse_program("%@initial init_1/1 init_2/1\n"
                            "init_1(A) :- A>=1. init_2(A) :- A=<0.\n"
                            "error :- init_1(A). error :- init_2(A).");
  EXPECT_EQ(p.initial_preds.size(), 2u);
  Program q = parse_program(print_program(p));
  EXPECT_TRUE(structurally_equal(p, q));
  EXPECT_EQ(initial_clauses(p).size(), 2u);
}

TEST(Formula, ParseAndRender) {
  auto f = parse_formula("(B<0, A=<0) ; (A>=1, A>B)", AB);
  EXPECT_EQ(render(f, default_var_name), "(A>=1, A-B>=1) ; (A=<0, B=<-1)");
  EXPECT_TRUE(parse_formula("true", AB).is_true());
  EXPECT_TRUE(parse_formula("false", AB).is_false());
  EXPECT_TRUE(equivalent(parse_formula("B<0 ; A>=1", AB),
                         parse_formula("(B<0, A=<0) ; A>=1", AB)));
}

TEST(InitialStates, Rewrite) {
  Program p = fig1();
  auto ic = initial_clauses(p);
  ASSERT_EQ(ic.size(), 1u);
  EXPECT_TRUE(ic[0].constraint.empty());

  Program r = replace_initial_states(p, parse_formula("A>=1", AB));
  EXPECT_EQ(print_clause(r.clauses[0]), "init(A,B) :- A>=1.");
  Program none = with_initial_states(p, DnfFormula::falsum());
  EXPECT_TRUE(initial_clauses(none).empty());
  Program same = with_initial_states(p, DnfFormula::truth());
  EXPECT_TRUE(structurally_equal(p, same));
  Program two = with_initial_states(p, parse_formula("A>=1 ; B<0", AB));
  EXPECT_EQ(initial_clauses(two).size(), 2u);
  EXPECT_THROW(with_initial_states(p, parse_formula("A>=1 ; B<0", AB), 1),
               DnfCapExceeded);
}

TEST(InitialStates, PartiallyEvaluatedShape) {
  Program p = parse_program(
      "%@initial init_1/2 init_2/2\n"
      "error :- B<0, A=<0, wh_2(A,B).\n"
      "wh_2(A,B) :- B<0, A=<0, init_2(A,B).\n"
      "wh_2(A,B) :- B<0, A=0, C=1, B-D= -1, wh_1(C,D).\n"
      "wh_1(A,B) :- A>=1, init_1(A,B).\n"
      "wh_1(A,B) :- A>=1, A-C= -1, B-D= -1, wh_1(C,D).\n"
      "init_1(A,B) :- A>=1.\n"
      "init_2(A,B) :- A=<0, B<0.\n");
  auto ic = initial_clauses(p);
  ASSERT_EQ(ic.size(), 2u);
  EXPECT_EQ(print_clause(ic[0]), "init_1(A,B) :- A>=1.");
  EXPECT_EQ(print_clause(ic[1]), "init_2(A,B) :- A=<0, B=<-1.");
  // Strengthening with B>=0, A>=1 removes init_2.
  Program s = with_initial_states(p, parse_formula("B>=0, A>=1", AB));
  ic = initial_clauses(s);
  ASSERT_EQ(ic.size(), 1u);
  EXPECT_EQ(print_clause(ic[0]), "init_1(A,B) :- A>=1, B>=0.");
  Program r = replace_initial_states(p, parse_formula("B<0", AB));
  ic = initial_clauses(r);
  ASSERT_EQ(ic.size(), 2u);
  EXPECT_EQ(print_clause(ic[1]), "init_2(A,B) :- B=<-1.");
}

TEST(Structure, Sccs) {
  auto sccs = dependency_sccs(fig1());
  ASSERT_EQ(sccs.size(), 4u);
  std::vector<std::string> names;
  for (const auto &s : sccs) names.push_back(s.preds.at(0));
  EXPECT_EQ(names, (std::vector<std::string>{"init", "wh", "error", "exit0"}));
  EXPECT_FALSE(sccs[0].recursive);
  EXPECT_TRUE(sccs[1].recursive);

  Program m = parse_program("init(A). p(A) :- init(A). p(A) :- q(A). "
                            "q(A) :- p(A). error :- q(A).");
  auto ms = dependency_sccs(m);
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms[1].preds, (std::vector<std::string>{"p", "q"}));
  EXPECT_TRUE(ms[1].recursive);
}

TEST(Structure, Cleanup) {
  Program p = parse_program("init(A). p(A) :- init(A). r(A) :- s(A), init(A). "
                            "error :- p(A). error :- r(A). exit0 :- p(A).");
  Program c = cleanup(p, kError);
  EXPECT_EQ(c.clauses.size(), 3u);
  for (const auto &k : c.clauses) EXPECT_NE(k.head.pred, "exit0");
}
