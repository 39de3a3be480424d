#pragma once

#include "hornpre/driver.hpp"

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace hornpre::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitAborted = 2;
inline constexpr int kExitCheckFailed = 3;

/// Post-hoc oracle falsification of the returned preconditions.
struct CheckReport {
  std::size_t depth = 8;
  long box = 0;
  std::size_t safe_points = 0;
  std::size_t unsafe_points = 0;
  std::vector<std::vector<Int>> safe_violations;   // reach error
  std::vector<std::vector<Int>> unsafe_violations; // reach exit0
  std::size_t inconclusive = 0;
  bool complete = true; // false when the derivation search hit a cap

  bool ok() const { return safe_violations.empty() && unsafe_violations.empty(); }
};

/// `expansions` caps the derivation search per goal; hitting it makes the
/// report incomplete rather than slow.
CheckReport check_preconditions(const Program &p, const PrecondResult &r,
                                std::size_t depth = 8, std::size_t limit = 200,
                                std::size_t expansions = 5000);

/// Self-describing record of one run. Contains no timing.
nlohmann::ordered_json result_json(const std::string &file, const Program &p,
                                   const InferOptions &opt,
                                   const PrecondResult &r,
                                   const CheckReport *check = nullptr);

std::string result_text(const std::string &file, const Program &p,
                        const InferOptions &opt, const PrecondResult &r,
                        double seconds, const CheckReport *check = nullptr);

struct BenchRow {
  std::string name;
  bool error = false;
  std::string message; // parse or I/O diagnostic when error
  Classification classification = Classification::Trivial;
  StopReason reason = StopReason::MaxIters;
  bool separating = false;
  bool safe_nontrivial = false;
  bool unsafe_nontrivial = false;
  unsigned iterations = 0;
  double seconds = 0;
};

/// One row of the aggregate table: programs resolved in a given iteration.
struct BenchCounts {
  unsigned opt = 0;
  unsigned nt_safe = 0;    // non-trivial SP for safety, not separating
  unsigned safe_weak = 0;  // ... whose SP for unsafety is trivial
  unsigned nt_unsafe = 0;
  unsigned unsafe_weak = 0;
  unsigned nt_both = 0;
  unsigned trivial = 0;
  unsigned total() const { return opt + nt_safe + nt_unsafe - nt_both; }
  void add(const BenchRow &r);
};

struct BenchSummary {
  std::vector<BenchRow> rows;          // sorted by name
  std::vector<BenchCounts> per_iter;   // index = iterations - 1
  BenchCounts totals;
  unsigned errors = 0;
  unsigned aborted = 0;
};

/// Runs inference on every *.chc file of `dir`, `jobs` files at a time.
BenchSummary run_bench(const std::filesystem::path &dir,
                       const InferOptions &opt, unsigned jobs = 0);
std::string bench_text(const BenchSummary &s, bool with_time = true);
nlohmann::ordered_json bench_json(const BenchSummary &s);

/// Entry point of the command-line tool; args excludes the program name.
int run_main(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err);

} // namespace hornpre::cli
