#include "hornpre/driver.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace hornpre;

namespace {

Program load(const std::string &name) {
  std::ifstream in(std::string(HORNPRE_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

const std::vector<std::string> AB{"A", "B"};
DnfFormula f2(const std::string &s) { return parse_formula(s, AB); }

// Fig. 2 (left), written out by hand.
const char *kPeError = "%@initial init_1/2 init_2/2\n"
                       "error :- B<0, A=<0, wh_2(A,B).\n"
                       "wh_2(A,B) :- B<0, A=<0, init_2(A,B).\n"
                       "wh_2(A,B) :- B<0, A=0, C=1, B-D= -1, wh_1(C,D).\n"
                       "wh_1(A,B) :- A>=1, init_1(A,B).\n"
                       "wh_1(A,B) :- A>=1, A-C= -1, B-D= -1, wh_1(C,D).\n"
                       "init_1(A,B) :- A>=1.\n"
                       "init_2(A,B) :- A=<0, B<0.\n";

} // namespace

TEST(PartialEval, RunningExampleWrtError) {
  Program pe = partial_evaluate(load("fig1.chc"), kError);
  EXPECT_EQ(pe.clauses.size(), 7u) << print_program(pe);
  EXPECT_TRUE(equivalent(np_extract(pe), f2("B<0 ; A>=1")));
  EXPECT_TRUE(equivalent(np_extract(pe), f2("(B<0, A=<0) ; A>=1")));
  EXPECT_EQ(pe.initial_preds.size(), 2u);
}

TEST(PartialEval, RunningExampleWrtExit0) {
  Program pe = partial_evaluate(load("fig1.chc"), kExit0);
  EXPECT_TRUE(equivalent(np_extract(pe), f2("B>=0")));
  auto ic = initial_clauses(pe);
  ASSERT_EQ(ic.size(), 2u);
}

TEST(Specialise, QueryInvariantOfFigure2) {
  Program p = parse_program(kPeError);
  PredApprox a = analyze(qa_transform(p, kError));
  EXPECT_TRUE(check_prefixpoint(qa_transform(p, kError), a));
  DnfFormula inv(approx_of(a, "wh_1_q").constraints());
  EXPECT_TRUE(equivalent(inv, f2("A>=1, A>B"))) << dump(a);
}

TEST(Specialise, Figure3Left) {
  Program cs = constraint_specialise(parse_program(kPeError), kError);
  EXPECT_TRUE(equivalent(np_extract(cs), f2("(B<0, A=<0) ; (A>=1, A>B)")))
      << print_program(cs);
}

TEST(Driver, OneShotSeparates) {
  InferOptions opt;
  opt.trseq.phases = {{Step::CS, Step::PE}};
  auto r = infer(load("fig1.chc"), opt);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.classification, Classification::Optimal);
  EXPECT_TRUE(equivalent(r.psi_unsafe, f2("(B<0, A=<0) ; (A>=1, A>B)")));
  EXPECT_TRUE(equivalent(r.psi_safe, f2("(B>=0, A=<0) ; (A>=1, B>=A)")));
  EXPECT_TRUE(r.psi_nonterm.is_false());
}

TEST(Driver, StagedPipeline) {
  InferOptions opt;
  opt.trseq.phases = {{Step::PE}, {Step::CS}};
  auto r = infer(load("fig1.chc"), opt);
  ASSERT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.reason, StopReason::Separating);
  EXPECT_TRUE(equivalent(r.log[0].phi_unsafe, f2("B<0 ; A>=1")));
  EXPECT_TRUE(equivalent(r.log[0].phi_safe, f2("B>=0")));
  EXPECT_TRUE(equivalent(r.log[0].phi_new, f2("A>=1, B>=0")));
  EXPECT_TRUE(equivalent(r.psi_unsafe, f2("B<0 ; (B>=0, A>B)")));
  EXPECT_TRUE(equivalent(r.psi_safe, f2("(B>=0, A=<0) ; (B>=A, A>=1)")));
}

TEST(Driver, NonTermination) {
  InferOptions opt;
  auto r = infer(load("fig5.chc"), opt);
  std::vector<std::string> a{"A"};
  EXPECT_TRUE(equivalent(r.log.back().phi_unsafe, parse_formula("A<0", a)));
  EXPECT_TRUE(equivalent(r.log.back().phi_safe, parse_formula("A>=11", a)));
  EXPECT_TRUE(equivalent(r.psi_nonterm, parse_formula("A>=0, A=<10", a)))
      << render(r.psi_nonterm, default_var_name);
}
