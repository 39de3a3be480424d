#include "hornpre/analyzer.hpp"
#include "hornpre/cli.hpp"
#include "hornpre/driver.hpp"
#include "hornpre/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hornpre;

namespace {

py::object to_python(const nlohmann::ordered_json &j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::string render_init(const Program &p, const DnfFormula &f) {
  return render(f, p.init_namer());
}

InferOptions make_options(const std::optional<std::vector<std::string>> &trseq,
                          unsigned max_iters, double timeout, std::size_t dnf_cap,
                          unsigned widen_delay, const std::string &cs_mode,
                          const std::string &pool) {
  InferOptions opt;
  if (trseq) {
    opt.trseq.phases.clear();
    for (const auto &phase : *trseq) opt.trseq.phases.push_back(parse_steps(phase));
    if (opt.trseq.phases.empty()) throw std::invalid_argument("trseq is empty");
  }
  opt.max_iters = max_iters;
  opt.timeout_seconds = timeout;
  opt.dnf_cap = dnf_cap;
  opt.trseq.widen_delay = widen_delay;
  if (cs_mode != "query" && cs_mode != "query-answer")
    throw std::invalid_argument("cs_mode must be query or query-answer");
  opt.trseq.cs_mode = cs_mode == "query" ? CsMode::Query : CsMode::QueryAnswer;
  if (pool != "arity" && pool != "predicate")
    throw std::invalid_argument("pool must be arity or predicate");
  opt.trseq.pool_mode = pool == "arity" ? PoolMode::SharedByArity : PoolMode::PerPredicate;
  return opt;
}

} // namespace

PYBIND11_MODULE(_hornpre, m) {
  m.doc() = "Precondition inference for constrained Horn clauses";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Program>(m, "Program")
      .def_property_readonly("init_arity", [](const Program &p) { return p.init_arity; })
      .def_property_readonly("num_clauses", [](const Program &p) { return p.clauses.size(); })
      .def_property_readonly("predicates", &Program::predicates)
      .def("__str__", &print_program)
      .def("__repr__", [](const Program &p) {
        return "<hornpre.Program with " + std::to_string(p.clauses.size()) + " clauses>";
      });

  m.def("parse", &parse_program, py::arg("text"), "Parse a clause program.");
  m.def("print_program", &print_program, py::arg("program"));

  m.def(
      "infer",
      [](const Program &p, std::optional<std::vector<std::string>> trseq,
         unsigned max_iters, double timeout, std::size_t dnf_cap, unsigned widen_delay,
         const std::string &cs_mode, const std::string &pool, bool check) {
        InferOptions opt =
            make_options(trseq, max_iters, timeout, dnf_cap, widen_delay, cs_mode, pool);
        PrecondResult r;
        std::optional<cli::CheckReport> rep;
        {
          py::gil_scoped_release release;
          r = infer(p, opt);
          if (check) rep = cli::check_preconditions(p, r);
        }
        return to_python(cli::result_json("", p, opt, r, rep ? &*rep : nullptr));
      },
      py::arg("program"), py::arg("trseq") = py::none(), py::arg("max_iters") = 6,
      py::arg("timeout") = 300.0, py::arg("dnf_cap") = kDefaultDnfCap,
      py::arg("widen_delay") = kDefaultWidenDelay, py::arg("cs_mode") = "query",
      py::arg("pool") = "arity", py::arg("check") = false,
      "Infer safe, unsafe and non-termination preconditions; returns the "
      "structured result as a dict. Each trseq entry is one phase such as 'te,cs,pe'.");

  m.def(
      "np_extract",
      [](const Program &p) { return render_init(p, np_extract(p)); },
      py::arg("program"), "Necessary precondition read off the initial clauses.");
  m.def(
      "partial_evaluate",
      [](const Program &p, const std::string &goal, const std::string &pool) {
        return partial_evaluate(p, goal,
                                pool == "predicate" ? PoolMode::PerPredicate
                                                    : PoolMode::SharedByArity);
      },
      py::arg("program"), py::arg("goal"), py::arg("pool") = "arity");
  m.def(
      "constraint_specialise",
      [](const Program &p, const std::string &goal, const std::string &cs_mode) {
        CsOptions opt;
        opt.mode = cs_mode == "query-answer" ? CsMode::QueryAnswer : CsMode::Query;
        return constraint_specialise(p, goal, opt);
      },
      py::arg("program"), py::arg("goal"), py::arg("cs_mode") = "query");
  m.def(
      "analyze", [](const Program &p) { return dump(analyze(p)); }, py::arg("program"),
      "Polyhedral approximation of every predicate, one line per predicate.");
  m.def(
      "derivable",
      [](const Program &p, const std::string &goal, std::size_t depth,
         const std::vector<long> &init) {
        if (init.size() != p.init_arity)
          throw std::invalid_argument("init has the wrong arity");
        oracle::Point x(init.begin(), init.end());
        oracle::BoundedQuery q;
        q.program = &p;
        q.goal = goal;
        q.depth = depth;
        q.init = oracle::point_constraint(x);
        return oracle::to_string(oracle::bounded_derivable(q).verdict);
      },
      py::arg("program"), py::arg("goal"), py::arg("depth"), py::arg("init"),
      "Bounded oracle: derivable, not_within_bound or unknown.");
  m.def(
      "run_main",
      [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run_main(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line tool; returns (exit code, stdout, stderr).");
}
