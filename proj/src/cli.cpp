#include "hornpre/cli.hpp"

#include "hornpre/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace hornpre::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string steps_text(const std::vector<Step> &steps) {
  std::string s;
  for (std::size_t i = 0; i < steps.size(); ++i)
    s += (i ? "," : "") + to_string(steps[i]);
  return s.empty() ? "none" : s;
}

std::string point_text(const std::vector<Int> &x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i)
    s += (i ? "," : "") + x[i].get_str();
  return s + ")";
}

// Half-width of the sampling box, shrinking with the arity so that the box
// stays around a few thousand points.
long box_for_arity(std::size_t n) {
  switch (n) {
  case 0:
  case 1: return 20;
  case 2: return 10;
  case 3: return 5;
  default: return 2;
  }
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load_program(const fs::path &path) {
  std::string text = read_file(path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ParseError("empty input", 1, 1);
  return parse_program(text);
}

std::string diagnostic(const std::string &file, const ParseError &e) {
  return file + ":" + (e.line > 0 ? "" : " ") + e.what();
}

} // namespace

// Checking -------------------------------------------------------------------

CheckReport check_preconditions(const Program &p, const PrecondResult &r,
                                std::size_t depth, std::size_t limit,
                                std::size_t expansions) {
  CheckReport rep;
  rep.depth = depth;
  const std::size_t n = p.init_arity;
  rep.box = box_for_arity(n);
  auto run = [&](const DnfFormula &psi, const std::string &goal,
                 std::size_t &count, std::vector<std::vector<Int>> &bad) {
    auto pts = oracle::sample_points(psi, n, -rep.box, rep.box, limit);
    count = pts.size();
    if (pts.empty()) return;
    oracle::DerivationSet ds(p, goal, depth, 20000, expansions);
    rep.complete = rep.complete && ds.complete();
    for (const auto &x : pts) {
      switch (ds.check(x)) {
      case oracle::Verdict::Derivable: bad.push_back(x); break;
      case oracle::Verdict::Unknown: ++rep.inconclusive; break;
      case oracle::Verdict::NotWithinBound: break;
      }
    }
  };
  run(r.psi_safe, kError, rep.safe_points, rep.safe_violations);
  run(r.psi_unsafe, kExit0, rep.unsafe_points, rep.unsafe_violations);
  return rep;
}

// Serialization ----------------------------------------------------------------

json result_json(const std::string &file, const Program &p,
                 const InferOptions &opt, const PrecondResult &r,
                 const CheckReport *check) {
  NameFn name = p.init_namer();
  json phases = json::array();
  for (const auto &ph : opt.trseq.phases) {
    json a = json::array();
    for (Step s : ph) a.push_back(to_string(s));
    phases.push_back(a);
  }
  json log = json::array();
  for (std::size_t i = 0; i < r.log.size(); ++i) {
    const auto &e = r.log[i];
    json steps = json::array();
    for (Step s : e.steps) steps.push_back(to_string(s));
    log.push_back({{"iteration", i + 1},
                   {"steps", steps},
                   {"phi_safe", render(e.phi_safe, name)},
                   {"phi_unsafe", render(e.phi_unsafe, name)},
                   {"phi_new", render(e.phi_new, name)}});
  }
  std::vector<std::string> args;
  for (std::size_t i = 0; i < p.init_arity; ++i) args.push_back(name(Var(i)));
  json j = {
      {"format", "hornpre-result"},
      {"version", 1},
      {"file", file},
      {"init_args", args},
      {"options",
       {{"trseq", phases},
        {"max_iters", opt.max_iters},
        {"timeout", opt.timeout_seconds},
        {"dnf_cap", opt.dnf_cap},
        {"widen_delay", opt.trseq.widen_delay}}},
      {"status", r.aborted() ? "aborted" : "ok"},
      {"stop_reason", to_string(r.reason)},
      {"classification", to_string(r.classification)},
      {"iterations", r.iterations},
      {"psi_safe", render(r.psi_safe, name)},
      {"psi_unsafe", render(r.psi_unsafe, name)},
      {"psi_nonterm", render(r.psi_nonterm, name)},
      {"log", log},
      {"warnings", r.warnings},
  };
  if (check) {
    auto pts = [](const std::vector<std::vector<Int>> &v) {
      json a = json::array();
      for (const auto &x : v) a.push_back(point_text(x));
      return a;
    };
    j["check"] = {{"depth", check->depth},
                  {"box", check->box},
                  {"safe_points", check->safe_points},
                  {"unsafe_points", check->unsafe_points},
                  {"safe_violations", pts(check->safe_violations)},
                  {"unsafe_violations", pts(check->unsafe_violations)},
                  {"inconclusive", check->inconclusive},
                  {"complete", check->complete},
                  {"ok", check->ok()}};
  }
  return j;
}

std::string result_text(const std::string &file, const Program &p,
                        const InferOptions &opt, const PrecondResult &r,
                        double seconds, const CheckReport *check) {
  NameFn name = p.init_namer();
  std::ostringstream os;
  std::string args;
  for (std::size_t i = 0; i < p.init_arity; ++i)
    args += (i ? "," : "") + name(Var(i));
  os << "file:           " << file << "\n";
  os << "initial args:   (" << args << ")\n";
  os << "trseq:          ";
  for (std::size_t i = 0; i < opt.trseq.phases.size(); ++i)
    os << (i ? " then " : "") << steps_text(opt.trseq.phases[i]);
  os << "\n";
  for (std::size_t i = 0; i < r.log.size(); ++i) {
    const auto &e = r.log[i];
    os << "iteration " << i + 1 << " [" << steps_text(e.steps) << "]\n"
       << "  phi_safe:     " << render(e.phi_safe, name) << "\n"
       << "  phi_unsafe:   " << render(e.phi_unsafe, name) << "\n"
       << "  phi_new:      " << render(e.phi_new, name) << "\n";
  }
  os << "psi_safe:       " << render(r.psi_safe, name) << "\n";
  os << "psi_unsafe:     " << render(r.psi_unsafe, name) << "\n";
  os << "psi_nonterm:    " << render(r.psi_nonterm, name) << "\n";
  os << "classification: " << to_string(r.classification) << "\n";
  os << "stop reason:    " << to_string(r.reason) << "\n";
  os << "iterations:     " << r.iterations << "\n";
  os << "time:           " << std::fixed << std::setprecision(3) << seconds << " s\n";
  if (check) {
    os << "check:          " << (check->ok() ? "ok" : "VIOLATION") << " (depth "
       << check->depth << ", box [-" << check->box << "," << check->box << "], "
       << check->safe_points << " safe and " << check->unsafe_points
       << " unsafe points";
    if (check->inconclusive) os << ", " << check->inconclusive << " inconclusive";
    if (!check->complete) os << ", search capped";
    os << ")\n";
    for (const auto &x : check->safe_violations)
      os << "  psi_safe point reaches error: " << point_text(x) << "\n";
    for (const auto &x : check->unsafe_violations)
      os << "  psi_unsafe point reaches exit0: " << point_text(x) << "\n";
  }
  return os.str();
}

// Bench ------------------------------------------------------------------------

void BenchCounts::add(const BenchRow &r) {
  if (r.separating) {
    ++opt;
    return;
  }
  if (r.safe_nontrivial) {
    ++nt_safe;
    if (!r.unsafe_nontrivial) ++safe_weak;
  }
  if (r.unsafe_nontrivial) {
    ++nt_unsafe;
    if (!r.safe_nontrivial) ++unsafe_weak;
  }
  if (r.safe_nontrivial && r.unsafe_nontrivial) ++nt_both;
  if (!r.safe_nontrivial && !r.unsafe_nontrivial) ++trivial;
}

BenchSummary run_bench(const fs::path &dir, const InferOptions &opt,
                       unsigned jobs) {
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".chc")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());

  BenchSummary s;
  s.rows.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      BenchRow &row = s.rows[i];
      row.name = files[i].filename().string();
      try {
        Program p = load_program(files[i]);
        auto t0 = Clock::now();
        PrecondResult r = infer(p, opt);
        row.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        row.classification = r.classification;
        row.reason = r.reason;
        row.separating = r.classification == Classification::Optimal;
        row.safe_nontrivial = !r.psi_safe.is_false();
        row.unsafe_nontrivial = !r.psi_unsafe.is_false();
        row.iterations = r.iterations;
      } catch (const std::exception &e) {
        row.error = true;
        row.message = e.what();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(files.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
  for (auto &t : pool) t.join();

  for (const auto &row : s.rows) {
    if (row.error) {
      ++s.errors;
      continue;
    }
    if (row.reason == StopReason::Timeout || row.reason == StopReason::DnfCap)
      ++s.aborted;
    std::size_t k = std::max(row.iterations, 1u) - 1;
    if (s.per_iter.size() <= k) s.per_iter.resize(k + 1);
    s.per_iter[k].add(row);
    s.totals.add(row);
  }
  return s;
}

std::string bench_text(const BenchSummary &s, bool with_time) {
  std::ostringstream os;
  std::size_t w = 4;
  for (const auto &r : s.rows) w = std::max(w, r.name.size());
  os << std::left << std::setw(int(w)) << "file" << "  " << std::setw(18)
     << "classification" << std::setw(7) << "iters" << std::setw(12) << "stop";
  if (with_time) os << "time";
  os << "\n";
  for (const auto &r : s.rows) {
    os << std::left << std::setw(int(w)) << r.name << "  ";
    if (r.error) {
      os << "error: " << r.message << "\n";
      continue;
    }
    os << std::setw(18) << to_string(r.classification) << std::setw(7)
       << r.iterations << std::setw(12) << to_string(r.reason);
    if (with_time) os << std::fixed << std::setprecision(3) << r.seconds << "s";
    os << "\n";
  }
  os << "\n";
  auto line = [&](const std::string &label, const BenchCounts &c) {
    auto pair = [](unsigned a, unsigned b) {
      return std::to_string(a) + " (" + std::to_string(b) + ")";
    };
    os << std::right << std::setw(6) << label << std::setw(6) << c.opt
       << std::setw(10) << pair(c.nt_safe, c.safe_weak) << std::setw(10)
       << pair(c.nt_unsafe, c.unsafe_weak) << std::setw(6) << c.nt_both
       << std::setw(6) << c.trivial << std::setw(7) << c.total() << "\n";
  };
  os << std::right << std::setw(6) << "iter" << std::setw(6) << "opt"
     << std::setw(10) << "ntS (Sw)" << std::setw(10) << "ntU (Uw)"
     << std::setw(6) << "ntSU" << std::setw(6) << "tSU" << std::setw(7)
     << "total" << "\n";
  for (std::size_t i = 0; i < s.per_iter.size(); ++i)
    line(std::to_string(i + 1), s.per_iter[i]);
  line("#total", s.totals);
  os << "programs: " << s.rows.size() << "  errors: " << s.errors
     << "  aborted: " << s.aborted << "\n";
  return os.str();
}

json bench_json(const BenchSummary &s) {
  auto counts = [](const BenchCounts &c) {
    return json{{"opt", c.opt},         {"ntS", c.nt_safe},  {"Sw", c.safe_weak},
                {"ntU", c.nt_unsafe},   {"Uw", c.unsafe_weak}, {"ntSU", c.nt_both},
                {"tSU", c.trivial},     {"total", c.total()}};
  };
  json rows = json::array();
  for (const auto &r : s.rows) {
    if (r.error) {
      rows.push_back({{"file", r.name}, {"status", "error"}, {"error", r.message}});
      continue;
    }
    rows.push_back({{"file", r.name},
                    {"status", r.reason == StopReason::Timeout ||
                                       r.reason == StopReason::DnfCap
                                   ? "aborted"
                                   : "ok"},
                    {"classification", to_string(r.classification)},
                    {"stop_reason", to_string(r.reason)},
                    {"iterations", r.iterations}});
  }
  json table = json::array();
  for (std::size_t i = 0; i < s.per_iter.size(); ++i) {
    json c = {{"iter", i + 1}};
    c.update(counts(s.per_iter[i]));
    table.push_back(c);
  }
  return {{"format", "hornpre-bench"}, {"version", 1},
          {"rows", rows},              {"per_iteration", table},
          {"totals", counts(s.totals)}, {"errors", s.errors},
          {"aborted", s.aborted}};
}

// Command line -------------------------------------------------------------------

namespace {

int run_oracle(const std::string &file, const std::string &goal,
               std::size_t depth, const std::string &init, std::ostream &out) {
  Program p = load_program(file);
  oracle::BoundedQuery q;
  q.program = &p;
  q.goal = goal;
  q.depth = depth;
  if (!init.empty()) {
    std::vector<std::string> names;
    NameFn name = p.init_namer();
    for (std::size_t i = 0; i < p.init_arity; ++i) names.push_back(name(Var(i)));
    q.init = parse_conjunction(init, names);
  }
  auto o = oracle::bounded_derivable(q);
  out << to_string(o.verdict);
  if (o.witness) out << " " << render(*o.witness);
  out << "\n";
  return kExitOk;
}

int run_analyze(const std::string &file, const std::string &goal, bool qa,
                unsigned widen_delay, std::ostream &out) {
  Program p = load_program(file);
  if (qa) p = qa_transform(p, goal);
  out << dump(analyze(p, widen_delay));
  return kExitOk;
}

} // namespace

int run_main(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err) {
  CLI::App app{"Precondition inference for constrained Horn clauses", "hornpre"};
  app.set_version_flag("--version", "hornpre 0.1.0");

  std::string input, bench_dir, format = "text";
  std::vector<std::string> trseq;
  InferOptions opt;
  std::string cs_mode = "query", pool_mode = "arity";
  bool check = false, sequential = false;
  std::size_t check_depth = 8, check_expansions = 5000;
  unsigned jobs = 0;

  app.add_option("input", input, "Clause file");
  app.add_option("--trseq", trseq,
                 "Comma list from {pe,cs,te} in composition order; repeat for "
                 "later iterations")
      ->take_all()
      ->expected(1, 100);
  app.add_option("--max-iters", opt.max_iters, "Iteration limit")
      ->capture_default_str();
  app.add_option("--timeout", opt.timeout_seconds, "Wall-clock seconds, 0 = none")
      ->capture_default_str();
  app.add_option("--dnf-cap", opt.dnf_cap, "Disjunct limit")->capture_default_str();
  app.add_option("--widen-delay", opt.trseq.widen_delay, "Updates before widening")
      ->capture_default_str();
  app.add_option("--te-depth", opt.trseq.te_depth, "Tree depth for trace elimination")
      ->capture_default_str();
  app.add_option("--cs-mode", cs_mode, "query or query-answer")
      ->check(CLI::IsMember({"query", "query-answer"}))
      ->capture_default_str();
  app.add_option("--pool", pool_mode, "Property pool: arity or predicate")
      ->check(CLI::IsMember({"arity", "predicate"}))
      ->capture_default_str();
  app.add_option("--format", format, "text, json or structured")
      ->check(CLI::IsMember({"text", "json", "structured"}))
      ->capture_default_str();
  app.add_flag("--check", check, "Falsify the result with the bounded oracle");
  app.add_option("--check-depth", check_depth, "Derivation depth for --check")
      ->capture_default_str();
  app.add_option("--check-expansions", check_expansions,
                 "Search budget per goal for --check")
      ->capture_default_str();
  app.add_flag("--sequential", sequential, "Run the two branches one after the other");
  app.add_option("--bench", bench_dir, "Run on every *.chc file of a directory");
  app.add_option("--jobs", jobs, "Bench worker threads, 0 = hardware");

  std::string sub_file, sub_goal = kError, sub_init;
  std::size_t sub_depth = 8;
  bool sub_qa = false;
  auto *orc = app.add_subcommand("oracle", "Bounded derivability of a goal");
  orc->group("");
  orc->add_option("file", sub_file)->required();
  orc->add_option("--goal", sub_goal)->check(CLI::IsMember({kError, kExit0}));
  orc->add_option("--depth", sub_depth);
  orc->add_option("--init", sub_init, "Conjunction over the initial arguments");
  auto *ana = app.add_subcommand("analyze", "Polyhedral approximation dump");
  ana->group("");
  ana->add_option("file", sub_file)->required();
  ana->add_option("--goal", sub_goal)->check(CLI::IsMember({kError, kExit0}));
  ana->add_flag("--qa", sub_qa, "Analyze the query-answer program wrt --goal");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const bool as_json = format != "text";
  try {
    if (*orc) return run_oracle(sub_file, sub_goal, sub_depth, sub_init, out);
    if (*ana)
      return run_analyze(sub_file, sub_goal, sub_qa, opt.trseq.widen_delay, out);

    if (!trseq.empty()) {
      opt.trseq.phases.clear();
      for (const auto &t : trseq) opt.trseq.phases.push_back(parse_steps(t));
    }
    opt.trseq.cs_mode = cs_mode == "query" ? CsMode::Query : CsMode::QueryAnswer;
    opt.trseq.pool_mode =
        pool_mode == "arity" ? PoolMode::SharedByArity : PoolMode::PerPredicate;
    opt.parallel = !sequential;

    if (!bench_dir.empty()) {
      BenchSummary s = run_bench(bench_dir, opt, jobs);
      if (as_json)
        out << bench_json(s).dump(2) << "\n";
      else
        out << bench_text(s);
      return kExitOk;
    }
    if (input.empty()) {
      err << "hornpre: no input file (see --help)\n";
      return kExitInputError;
    }

    Program p = load_program(input);
    auto t0 = Clock::now();
    PrecondResult r = infer(p, opt);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    for (const auto &w : r.warnings) err << "warning: " << w << "\n";
    std::optional<CheckReport> rep;
    if (check) rep = check_preconditions(p, r, check_depth, 200, check_expansions);
    const CheckReport *rp = rep ? &*rep : nullptr;
    if (as_json)
      out << result_json(input, p, opt, r, rp).dump(2) << "\n";
    else
      out << result_text(input, p, opt, r, secs, rp);
    if (r.aborted()) return kExitAborted;
    if (rep && !rep->ok()) return kExitCheckFailed;
    return kExitOk;
  } catch (const ParseError &e) {
    err << diagnostic(*orc || *ana ? sub_file : input, e) << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument &e) {
    err << "hornpre: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::runtime_error &e) {
    err << "hornpre: " << e.what() << "\n";
    return kExitInputError;
  }
}

} // namespace hornpre::cli
