#include "hornpre/lp.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>

namespace hornpre::lp {

System to_system(const Conjunction &c) {
  System s;
  for (const auto &x : c) s.add(x);
  return s;
}

namespace {

// Affine expression over dense column indices.
struct Affine {
  std::vector<Rat> coef;
  Rat constant;
};

// Dictionary form of the simplex method: every basic variable is an affine
// function of the nonbasic ones. Columns [0, nx) are the original (free)
// variables, [nx, nx + m) the slacks, and column nx + m the phase-one
// artificial variable.
class Dictionary {
public:
  Dictionary(std::size_t nx, std::vector<Affine> slack_rows)
      : nx_(nx), ncols_(nx + slack_rows.size() + 1) {
    rows_ = std::move(slack_rows);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      rows_[i].coef.resize(ncols_);
      basic_.push_back(nx_ + i);
    }
    nonbasic_.assign(ncols_, false);
    for (std::size_t j = 0; j < nx_; ++j) nonbasic_[j] = true;
    dead_.assign(ncols_, false);
    dead_[ncols_ - 1] = true;
  }

  bool is_free(std::size_t col) const { return col < nx_; }

  // Substitutes the definitions of basic variables into `e`.
  void express(Affine &e) const {
    e.coef.resize(ncols_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rat k = e.coef[basic_[r]];
      if (k == 0) continue;
      e.coef[basic_[r]] = 0;
      for (std::size_t j = 0; j < ncols_; ++j)
        if (rows_[r].coef[j] != 0) e.coef[j] += k * rows_[r].coef[j];
      e.constant += k * rows_[r].constant;
    }
  }

  // Exchanges basic variable of row r with nonbasic column e.
  void pivot(std::size_t r, std::size_t e, Affine *objective) {
    Affine &row = rows_[r];
    const Rat a = row.coef[e];
    assert(a != 0);
    std::size_t leaving = basic_[r];
    // leaving = b + a*e + rest  =>  e = (leaving - b - rest) / a
    Affine def;
    def.coef.assign(ncols_, Rat(0));
    for (std::size_t j = 0; j < ncols_; ++j)
      if (j != e && row.coef[j] != 0) def.coef[j] = -row.coef[j] / a;
    def.coef[leaving] = Rat(1) / a;
    def.constant = -row.constant / a;
    row = def;
    basic_[r] = e;
    nonbasic_[e] = false;
    nonbasic_[leaving] = true;
    auto subst = [&](Affine &x) {
      Rat k = x.coef[e];
      if (k == 0) return;
      x.coef[e] = 0;
      for (std::size_t j = 0; j < ncols_; ++j)
        if (def.coef[j] != 0) x.coef[j] += k * def.coef[j];
      x.constant += k * def.constant;
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r) subst(rows_[i]);
    if (objective) subst(*objective);
  }

  // Moves every free variable into the basis where some row mentions it.
  void absorb_free() {
    for (std::size_t x = 0; x < nx_; ++x) {
      std::optional<std::size_t> row;
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (!is_free(basic_[r]) && rows_[r].coef[x] != 0) {
          row = r;
          break;
        }
      if (!row) {
        dead_[x] = true;
        continue;
      }
      pivot(*row, x, nullptr);
    }
  }

  // Runs simplex on the rows whose basic variable is a slack. Returns false
  // when unbounded.
  bool optimize(Affine &objective) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < ncols_; ++j)
        if (nonbasic_[j] && !dead_[j] && !is_free(j) && objective.coef[j] > 0) {
          enter = j;
          break;
        }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (is_free(basic_[r])) continue;
        const Rat &a = rows_[r].coef[*enter];
        if (a >= 0) continue;
        Rat ratio = rows_[r].constant / -a;
        if (!leave || ratio < best ||
            (ratio == best && basic_[r] < basic_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter, &objective);
    }
  }

  // Phase one. Returns false if infeasible.
  bool make_feasible() {
    std::optional<std::size_t> worst;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (is_free(basic_[r])) continue;
      if (rows_[r].constant < 0 &&
          (!worst || rows_[r].constant < rows_[*worst].constant))
        worst = r;
    }
    if (!worst) return true;
    const std::size_t art = ncols_ - 1;
    dead_[art] = false;
    nonbasic_[art] = true;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (!is_free(basic_[r])) rows_[r].coef[art] = 1;
    Affine aux;
    aux.coef.assign(ncols_, Rat(0));
    aux.coef[art] = -1;
    pivot(*worst, art, &aux);
    optimize(aux);
    if (aux.constant < 0) return false;
    // Drive the artificial variable out of the basis if it is still there.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basic_[r] != art) continue;
      std::optional<std::size_t> e;
      for (std::size_t j = 0; j < ncols_; ++j)
        if (j != art && nonbasic_[j] && !dead_[j] && rows_[r].coef[j] != 0) {
          e = j;
          break;
        }
      if (e) {
        pivot(r, *e, nullptr);
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
      }
      break;
    }
    for (auto &row : rows_) row.coef[art] = 0;
    dead_[art] = true;
    nonbasic_[art] = false;
    return true;
  }

  std::vector<Rat> free_values() const {
    std::vector<Rat> v(nx_, Rat(0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (is_free(basic_[r])) v[basic_[r]] = rows_[r].constant;
    return v;
  }

private:
  std::size_t nx_, ncols_;
  std::vector<Affine> rows_;
  std::vector<std::size_t> basic_;
  std::vector<bool> nonbasic_;
  std::vector<bool> dead_;
};

} // namespace

Result maximize(const System &sys, const LinTerm &objective) {
  // Dense numbering of the variables that occur anywhere.
  std::map<Var, std::size_t> index;
  auto note = [&](const LinTerm &t) {
    for (const auto &[v, c] : t.coeffs()) index.emplace(v, 0);
  };
  for (const auto &t : sys.leq) note(t);
  for (const auto &t : sys.eq) note(t);
  note(objective);
  std::vector<Var> vars;
  for (auto &[v, i] : index) {
    i = vars.size();
    vars.push_back(v);
  }
  const std::size_t n = vars.size();

  auto dense = [&](const LinTerm &t) {
    Affine a;
    a.coef.assign(n, Rat(0));
    for (const auto &[v, c] : t.coeffs()) a.coef[index[v]] = Rat(c);
    a.constant = Rat(t.constant());
    return a;
  };

  Result res;

  // Gaussian elimination of the equalities; eliminated[j] holds the
  // definition of variable j in terms of later-remaining variables.
  std::vector<Affine> eqs, ineqs;
  for (const auto &t : sys.eq) eqs.push_back(dense(t));
  for (const auto &t : sys.leq) ineqs.push_back(dense(t));
  Affine obj = dense(objective);
  std::vector<std::pair<std::size_t, Affine>> eliminated;

  auto substitute = [](Affine &e, std::size_t j, const Affine &def) {
    Rat k = e.coef[j];
    if (k == 0) return;
    e.coef[j] = 0;
    for (std::size_t i = 0; i < e.coef.size(); ++i)
      if (def.coef[i] != 0) e.coef[i] += k * def.coef[i];
    e.constant += k * def.constant;
  };

  for (std::size_t i = 0; i < eqs.size(); ++i) {
    Affine &e = eqs[i];
    auto it = std::find_if(e.coef.begin(), e.coef.end(),
                           [](const Rat &x) { return x != 0; });
    if (it == e.coef.end()) {
      if (e.constant != 0) return res;
      continue;
    }
    std::size_t j = static_cast<std::size_t>(it - e.coef.begin());
    Rat a = e.coef[j];
    Affine def;
    def.coef.assign(n, Rat(0));
    for (std::size_t k = 0; k < n; ++k)
      if (k != j && e.coef[k] != 0) def.coef[k] = -e.coef[k] / a;
    def.constant = -e.constant / a;
    for (std::size_t k = i + 1; k < eqs.size(); ++k) substitute(eqs[k], j, def);
    for (auto &q : ineqs) substitute(q, j, def);
    for (auto &[jj, d] : eliminated) substitute(d, j, def);
    substitute(obj, j, def);
    eliminated.emplace_back(j, std::move(def));
  }

  // Slack rows: s_i = -c_i - a_i x >= 0.
  std::vector<Affine> slack_rows;
  for (auto &q : ineqs) {
    bool zero = std::all_of(q.coef.begin(), q.coef.end(),
                            [](const Rat &x) { return x == 0; });
    if (zero) {
      if (q.constant > 0) return res;
      continue;
    }
    Affine s;
    s.coef.resize(n);
    for (std::size_t k = 0; k < n; ++k) s.coef[k] = -q.coef[k];
    s.constant = -q.constant;
    slack_rows.push_back(std::move(s));
  }

  Dictionary dict(n, std::move(slack_rows));
  dict.absorb_free();
  if (!dict.make_feasible()) return res;

  Affine objective_row = obj;
  dict.express(objective_row);
  // A free variable that no constraint mentions makes the objective
  // unbounded if it carries weight.
  for (std::size_t x = 0; x < n; ++x)
    if (objective_row.coef[x] != 0) {
      res.status = Status::Unbounded;
      return res;
    }
  if (!dict.optimize(objective_row)) {
    res.status = Status::Unbounded;
    return res;
  }

  std::vector<Rat> x = dict.free_values();
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
    const auto &[j, def] = *it;
    Rat v = def.constant;
    for (std::size_t k = 0; k < n; ++k)
      if (def.coef[k] != 0) v += def.coef[k] * x[k];
    x[j] = v;
  }
  res.status = Status::Optimal;
  res.value = objective_row.constant;
  for (std::size_t k = 0; k < n; ++k) res.point.emplace_back(vars[k], x[k]);
  return res;
}

bool feasible(const System &sys) {
  return maximize(sys, LinTerm()).status != Status::Infeasible;
}

} // namespace hornpre::lp
