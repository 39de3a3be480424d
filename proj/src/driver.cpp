#include "hornpre/driver.hpp"

#include <future>
#include <sstream>

namespace hornpre {

std::string to_string(Step s) {
  switch (s) {
  case Step::PE: return "pe";
  case Step::CS: return "cs";
  case Step::TE: return "te";
  }
  return "?";
}

std::vector<Step> parse_steps(const std::string &text) {
  std::vector<Step> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item == "pe")
      out.push_back(Step::PE);
    else if (item == "cs")
      out.push_back(Step::CS);
    else if (item == "te")
      out.push_back(Step::TE);
    else
      throw std::invalid_argument("unknown transformation '" + item + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty transformation sequence");
  return out;
}

const std::vector<Step> &TrSeqConfig::phase(std::size_t iteration) const {
  return phases.at(std::min(iteration, phases.size() - 1));
}

std::string to_string(Classification c) {
  switch (c) {
  case Classification::Optimal: return "optimal";
  case Classification::NontrivialSafe: return "nontrivial_safe";
  case Classification::NontrivialUnsafe: return "nontrivial_unsafe";
  case Classification::NontrivialBoth: return "nontrivial_both";
  case Classification::Trivial: return "trivial";
  }
  return "?";
}

std::string to_string(StopReason r) {
  switch (r) {
  case StopReason::Separating: return "separating";
  case StopReason::NoProgress: return "no_progress";
  case StopReason::MaxIters: return "max_iters";
  case StopReason::Timeout: return "timeout";
  case StopReason::DnfCap: return "dnf_cap";
  }
  return "?";
}

DnfFormula np_extract(const Program &p) {
  std::vector<Conjunction> ds;
  for (const auto &c : initial_clauses(p)) ds.push_back(initial_constraint(c));
  return normalized(ds);
}

std::pair<DnfFormula, DnfFormula> sp_from(const DnfFormula &np_s,
                                          const DnfFormula &np_u,
                                          std::size_t cap) {
  return {subtract(np_s, np_u, cap), subtract(np_u, np_s, cap)};
}

namespace {

Program trace_eliminate(const Program &p, const std::string &goal,
                        const TrSeqConfig &cfg, DnfFormula &phi,
                        std::vector<std::string> *warnings) {
  for (const auto &e : enumerate_trees(p, goal, cfg.te_depth, cfg.te_count)) {
    if (!e.feasible) continue;
    DnfFormula th;
    try {
      th = theta(p, e.tree);
    } catch (const MultipleInitialNodes &err) {
      if (warnings)
        warnings->push_back(std::string("te skipped: ") + err.what());
      return p;
    }
    phi = disjoin(phi, th);
    return eliminate_tree(p, e.tree);
  }
  return p;
}

} // namespace

TrSeqResult apply_trseq(const Program &p, const std::string &goal,
                        const std::vector<Step> &steps, const TrSeqConfig &cfg,
                        DnfFormula phi, std::vector<std::string> *warnings) {
  Program cur = p;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    check_deadline();
    switch (*it) {
    case Step::PE:
      cur = partial_evaluate(cur, goal, cfg.pool_mode);
      break;
    case Step::CS:
      cur = constraint_specialise(cur, goal, {cfg.widen_delay, cfg.cs_mode});
      break;
    case Step::TE:
      cur = trace_eliminate(cur, goal, cfg, phi, warnings);
      break;
    }
  }
  return {std::move(cur), std::move(phi)};
}

Classification classify(bool separating, const DnfFormula &psi_safe,
                        const DnfFormula &psi_unsafe) {
  if (separating) return Classification::Optimal;
  bool s = !psi_safe.is_false(), u = !psi_unsafe.is_false();
  if (s && u) return Classification::NontrivialBoth;
  if (s) return Classification::NontrivialSafe;
  if (u) return Classification::NontrivialUnsafe;
  return Classification::Trivial;
}

PrecondResult infer(const Program &p, const InferOptions &opt) {
  std::optional<Clock::time_point> deadline;
  if (opt.timeout_seconds > 0)
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(opt.timeout_seconds));
  DeadlineScope scope(deadline);
  const std::size_t cap = opt.dnf_cap;

  PrecondResult res;
  Program ps = p, pu = p;
  DnfFormula nonterm;
  // Theta of trees already eliminated from ps/pu, restricted to phi_old, so
  // that np(P) \/ theta keeps describing the refined original program.
  DnfFormula theta_s, theta_u;
  try {
    DnfFormula phi_old = np_extract(p);
    for (unsigned i = 0;; ++i) {
      if (i >= opt.max_iters) {
        res.reason = StopReason::MaxIters;
        break;
      }
      const auto &steps = opt.trseq.phase(i);
      std::vector<std::string> warn_s, warn_u;
      auto branch = [&](const Program &prog, const std::string &goal,
                        const DnfFormula &theta, std::vector<std::string> *warn) {
        DeadlineScope inner(deadline);
        return apply_trseq(prog, goal, steps, opt.trseq, theta, warn);
      };
      TrSeqResult rs, ru;
      if (opt.parallel) {
        auto fu = std::async(std::launch::async, branch, std::cref(pu), kError,
                             std::cref(theta_u), &warn_u);
        rs = branch(ps, kExit0, theta_s, &warn_s);
        ru = fu.get();
      } else {
        rs = branch(ps, kExit0, theta_s, &warn_s);
        ru = branch(pu, kError, theta_u, &warn_u);
      }
      res.warnings.insert(res.warnings.end(), warn_s.begin(), warn_s.end());
      res.warnings.insert(res.warnings.end(), warn_u.begin(), warn_u.end());

      DnfFormula phi_s = disjoin(np_extract(rs.program), rs.phi);
      DnfFormula phi_u = disjoin(np_extract(ru.program), ru.phi);
      DnfFormula phi_new = conjoin(phi_s, phi_u, cap);
      res.iterations = i + 1;
      res.log.push_back({phi_s, phi_u, phi_new, steps});
      // States allowed this round that reach neither goal.
      nonterm = disjoin(nonterm, subtract(phi_old, disjoin(phi_s, phi_u), cap));

      if (phi_new.is_false()) {
        res.psi_safe = disjoin(res.psi_safe, phi_s);
        res.psi_unsafe = disjoin(res.psi_unsafe, phi_u);
        res.reason = StopReason::Separating;
        break;
      }
      auto [sp_s, sp_u] = sp_from(phi_s, phi_u, cap);
      res.psi_safe = disjoin(res.psi_safe, sp_s);
      res.psi_unsafe = disjoin(res.psi_unsafe, sp_u);
      if (entails(phi_old, phi_new)) {
        res.reason = StopReason::NoProgress;
        break;
      }
      ps = with_initial_states(rs.program, phi_new, cap);
      pu = with_initial_states(ru.program, phi_new, cap);
      theta_s = conjoin(rs.phi, phi_new, cap);
      theta_u = conjoin(ru.phi, phi_new, cap);
      phi_old = phi_new;
    }
  } catch (const Timeout &) {
    res.reason = StopReason::Timeout;
  } catch (const DnfCapExceeded &e) {
    res.reason = StopReason::DnfCap;
    res.warnings.push_back(e.what());
  }
  res.psi_nonterm = nonterm;
  res.classification = classify(res.reason == StopReason::Separating,
                                res.psi_safe, res.psi_unsafe);
  return res;
}

} // namespace hornpre
