#pragma once

// Small random clause programs over init(A,B) for property tests.

#include "hornpre/chc.hpp"

#include <random>
#include <string>
#include <vector>

namespace hornpre::testing {

struct GenOptions {
  bool recursive = true;
  bool nonlinear = true;
  int max_user_preds = 3; // plus init, error and exit0
  int max_clauses = 10;
};

class ProgramGenerator {
public:
  ProgramGenerator(std::uint64_t seed, GenOptions opt = {}) : rng_(seed), opt_(opt) {}

  std::string next_text() {
    std::vector<std::string> cl;
    const int k = pick(1, opt_.max_user_preds);
    cl.push_back(chance(0.6) ? "init(A,B)." : "init(A,B) :- " + atom("A", "B") + ".");
    // Entry clause per predicate keeps every predicate productive.
    for (int i = 1; i <= k; ++i) {
      std::string from = i == 1 || chance(0.3) ? "init" : pred(pick(1, i - 1));
      cl.push_back(pred(i) + "(A,B) :- " + guard_prefix("A", "B") + from + "(A,B).");
    }
    const int goals = pick(2, 3);
    const int budget = opt_.max_clauses - int(cl.size()) - goals;
    const int extra = budget > 0 ? pick(1, std::min(budget, 4)) : 0;
    for (int e = 0; e < extra; ++e) {
      int i = pick(1, k);
      int j = opt_.recursive ? pick(1, i) : (i > 1 ? pick(1, i - 1) : 0);
      std::string src = j == 0 ? "init" : pred(j);
      if (opt_.nonlinear && j > 0 && chance(0.15)) {
        int j2 = opt_.recursive ? pick(1, i) : pick(1, std::max(1, i - 1));
        if (!opt_.recursive && i == 1) j2 = 0;
        std::string src2 = j2 == 0 ? "init" : pred(j2);
        cl.push_back(pred(i) + "(A,B) :- " + guard_prefix("A", "C") + src + "(A,C), " +
                     src2 + "(C,B).");
      } else {
        cl.push_back(pred(i) + "(A,B) :- " + guard_prefix("C", "D") + update("A", "B") +
                     ", " + src + "(C,D).");
      }
    }
    for (int g = 0; g < goals; ++g) {
      std::string head = g == 0 ? "error" : g == 1 ? "exit0" : (chance(0.5) ? "error" : "exit0");
      cl.push_back(head + " :- " + guard_prefix("A", "B") + pred(pick(1, k)) + "(A,B).");
    }
    std::string text;
    for (const auto &c : cl) text += c + "\n";
    return text;
  }

  Program next() { return parse_program(next_text()); }

  std::mt19937_64 &rng() { return rng_; }

private:
  std::mt19937_64 rng_;
  GenOptions opt_;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  static std::string pred(int i) { return "p" + std::to_string(i); }

  static std::string scaled(int a, const std::string &v, bool first) {
    if (a == 0) return "";
    std::string s = a < 0 ? "-" : (first ? "" : "+");
    if (std::abs(a) != 1) s += std::to_string(std::abs(a)) + "*";
    return s + v;
  }

  std::string atom(const std::string &x, const std::string &y) {
    int a = pick(-1, 2), b = pick(-1, 1);
    if (a == 0 && b == 0) a = 1;
    std::string lhs = scaled(a, x, true) + scaled(b, y, a == 0);
    static const char *ops[] = {"=<", ">=", "<", ">", "="};
    const char *op = ops[pick(0, chance(0.1) ? 4 : 3)];
    return lhs + op + std::to_string(pick(-3, 3));
  }

  // Zero to two guard atoms followed by ", ".
  std::string guard_prefix(const std::string &x, const std::string &y) {
    std::string s;
    for (int n = pick(0, 2); n > 0; --n) s += atom(x, y) + ", ";
    return s;
  }

  std::string rhs(const std::string &self, const std::string &other) {
    switch (pick(0, 4)) {
    case 0: return other;
    case 1: return self + "+" + other;
    case 2: return "-" + self;
    default: {
      int d = pick(-2, 2);
      return d == 0 ? self : self + (d > 0 ? "+" : "") + std::to_string(d);
    }
    }
  }

  std::string update(const std::string &a, const std::string &b) {
    return a + "=" + rhs("C", "D") + ", " + b + "=" + rhs("D", "C");
  }
};

} // namespace hornpre::testing
