#pragma once

#include "hornpre/engine.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornpre {

inline const std::string kError = "error";
inline const std::string kExit0 = "exit0";

inline bool is_goal_pred(const std::string &p) {
  return p == kError || p == kExit0;
}

/// Syntax or validation failure. Line/column are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &msg, int line = 0, int column = 0);
  int line;
  int column;
};

struct Atom {
  std::string pred;
  std::vector<Var> args;
  friend bool operator==(const Atom &, const Atom &) = default;
};

/// head <- constraint, body[0], ..., body[k-1]. Variables are dense indices
/// into var_names.
struct Clause {
  int id = 0;
  Atom head;
  Conjunction constraint;
  std::vector<Atom> body;
  std::vector<std::string> var_names;
  int origin = -1; // id of the clause this one was derived from
  int source = -1; // id of the clause in the parsed input

  bool is_fact() const { return body.empty(); }
  std::size_t num_vars() const { return var_names.size(); }
  Var fresh_var(const std::string &hint);
  NameFn namer() const;
};

struct Program {
  std::vector<Clause> clauses;
  std::set<std::string> initial_preds{"init"};
  std::size_t init_arity = 0;
  std::vector<std::string> init_arg_names;

  std::map<std::string, std::size_t> arities() const;
  std::set<std::string> predicates() const;
  bool is_initial(const std::string &p) const { return initial_preds.count(p); }
  /// Display names for formulas over the initial argument tuple.
  NameFn init_namer() const;
  /// Renumbers clause ids 0..n-1 in order.
  void renumber();
};

// Parsing and printing ---------------------------------------------------

Program parse_program(const std::string &text);
std::string print_program(const Program &p);
std::string print_clause(const Clause &c);

/// Parses "true", "false", or disjuncts separated by ';' whose conjuncts are
/// separated by ','. Parentheses around disjuncts are optional. `names`
/// gives the variable for each position.
DnfFormula parse_formula(const std::string &text,
                         const std::vector<std::string> &names);
Conjunction parse_conjunction(const std::string &text,
                              const std::vector<std::string> &names);

/// Checks the program invariants; throws ParseError on violation.
void validate(const Program &p);

/// Renumbers variables to head args, body args, then the rest, and drops
/// unused variables.
void canonicalize(Clause &c);

/// Canonical text per clause (ids and variable names ignored) plus the
/// initial predicates.
bool structurally_equal(const Program &a, const Program &b);

// Initial states ---------------------------------------------------------

std::vector<Clause> initial_clauses(const Program &p);

/// The constraint of an initial fact over positions 0..n-1 of its head,
/// with local variables projected away.
Conjunction initial_constraint(const Clause &c);

/// Conjoins each disjunct of phi (over init positions) with every initial
/// clause; unsatisfiable results are dropped.
Program with_initial_states(const Program &p, const DnfFormula &phi,
                            std::size_t cap = kDefaultDnfCap);
/// Replaces the constraint of every initial clause by each disjunct of phi.
Program replace_initial_states(const Program &p, const DnfFormula &phi,
                               std::size_t cap = kDefaultDnfCap);

// Structure ---------------------------------------------------------------

struct Scc {
  std::vector<std::string> preds;
  bool recursive = false;
};

/// Strongly connected components, dependencies first.
std::vector<Scc> dependency_sccs(const Program &p);

/// Drops clauses that use unproductive predicates, then clauses whose head
/// is not reachable from `goal`, then renumbers.
Program cleanup(const Program &p, const std::string &goal);

/// Maps a formula over init positions into clause variables `args`.
Conjunction instantiate(const Conjunction &c, const std::vector<Var> &args);

} // namespace hornpre
