#pragma once

#include "hornpre/analyzer.hpp"

namespace hornpre {

std::string query_name(const std::string &pred);
std::string answer_name(const std::string &pred);

/// Query-answer program wrt `goal`: an answer clause per clause, one query
/// clause per body atom (left-to-right contexts) and the seed goal_q.
Program qa_transform(const Program &p, const std::string &goal);

enum class CsMode {
  Query,       // conjoin query approximations only
  QueryAnswer, // conjoin the meet of query and answer approximations
};

struct CsOptions {
  unsigned widen_delay = kDefaultWidenDelay;
  CsMode mode = CsMode::Query;
};

/// Strengthens each clause with the query invariants of its head and body
/// atoms, drops infeasible clauses and cleans up wrt `goal`.
Program constraint_specialise(const Program &p, const std::string &goal,
                              const CsOptions &opt = {});

} // namespace hornpre
