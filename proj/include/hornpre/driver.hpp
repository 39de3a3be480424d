#pragma once

#include "hornpre/deadline.hpp"
#include "hornpre/partial_eval.hpp"
#include "hornpre/specialise.hpp"
#include "hornpre/trace_elim.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace hornpre {

enum class Step { PE, CS, TE };

std::string to_string(Step s);
/// Parses a comma list such as "te,cs,pe".
std::vector<Step> parse_steps(const std::string &text);

/// Transformation sequence per iteration. Iteration i (0-based) uses
/// phases[min(i, last)]. Steps are listed in composition order, so
/// {TE, CS, PE} applies PE first.
struct TrSeqConfig {
  std::vector<std::vector<Step>> phases{{Step::TE, Step::CS, Step::PE}};
  unsigned widen_delay = kDefaultWidenDelay;
  CsMode cs_mode = CsMode::Query;
  PoolMode pool_mode = PoolMode::SharedByArity;
  std::size_t te_depth = 8;
  std::size_t te_count = 64;

  const std::vector<Step> &phase(std::size_t iteration) const;
};

enum class Classification {
  Optimal,
  NontrivialSafe,
  NontrivialUnsafe,
  NontrivialBoth,
  Trivial,
};
std::string to_string(Classification c);

enum class StopReason { Separating, NoProgress, MaxIters, Timeout, DnfCap };
std::string to_string(StopReason r);

struct IterationLog {
  DnfFormula phi_safe;
  DnfFormula phi_unsafe;
  DnfFormula phi_new;
  std::vector<Step> steps;
};

struct PrecondResult {
  DnfFormula psi_safe;
  DnfFormula psi_unsafe;
  DnfFormula psi_nonterm;
  Classification classification = Classification::Trivial;
  StopReason reason = StopReason::MaxIters;
  unsigned iterations = 0;
  std::vector<IterationLog> log;
  std::vector<std::string> warnings;

  bool aborted() const {
    return reason == StopReason::Timeout || reason == StopReason::DnfCap;
  }
};

struct InferOptions {
  TrSeqConfig trseq;
  unsigned max_iters = 6;
  double timeout_seconds = 300;
  std::size_t dnf_cap = kDefaultDnfCap;
  bool parallel = true;
};

/// Disjunction of the initial clause constraints projected onto the
/// initial arguments.
DnfFormula np_extract(const Program &p);

/// (np_s /\ not np_u, np_u /\ not np_s)
std::pair<DnfFormula, DnfFormula> sp_from(const DnfFormula &np_s,
                                          const DnfFormula &np_u,
                                          std::size_t cap = kDefaultDnfCap);

struct TrSeqResult {
  Program program;
  DnfFormula phi;
};

/// Applies `steps` right to left wrt `goal`, accumulating theta of each
/// eliminated feasible tree onto `phi`.
TrSeqResult apply_trseq(const Program &p, const std::string &goal,
                        const std::vector<Step> &steps, const TrSeqConfig &cfg,
                        DnfFormula phi = DnfFormula::falsum(),
                        std::vector<std::string> *warnings = nullptr);

/// The refinement loop for safe and unsafe preconditions.
PrecondResult infer(const Program &p, const InferOptions &opt = {});

Classification classify(bool separating, const DnfFormula &psi_safe,
                        const DnfFormula &psi_unsafe);

} // namespace hornpre
