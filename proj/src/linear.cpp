#include "hornpre/linear.hpp"

#include <algorithm>
#include <sstream>

namespace hornpre {

namespace {

std::strong_ordering cmp_int(const Int &a, const Int &b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Ceiling of a / b for b > 0.
Int ceil_div(const Int &a, const Int &b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

} // namespace

LinTerm LinTerm::variable(Var v, Int coeff) {
  LinTerm t;
  t.add_term(v, coeff);
  return t;
}

Int LinTerm::coeff(Var v) const {
  auto it = std::lower_bound(
      coeffs_.begin(), coeffs_.end(), v,
      [](const Entry &e, Var x) { return e.first < x; });
  if (it != coeffs_.end() && it->first == v) return it->second;
  return 0;
}

void LinTerm::add_term(Var v, const Int &c) {
  if (c == 0) return;
  auto it = std::lower_bound(
      coeffs_.begin(), coeffs_.end(), v,
      [](const Entry &e, Var x) { return e.first < x; });
  if (it != coeffs_.end() && it->first == v) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  } else {
    coeffs_.insert(it, {v, c});
  }
}

void LinTerm::add(const LinTerm &other, const Int &scale) {
  if (scale == 0) return;
  std::vector<Entry> merged;
  merged.reserve(coeffs_.size() + other.coeffs_.size());
  auto a = coeffs_.begin();
  auto b = other.coeffs_.begin();
  while (a != coeffs_.end() || b != other.coeffs_.end()) {
    if (b == other.coeffs_.end() ||
        (a != coeffs_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a));
      ++a;
    } else if (a == coeffs_.end() || b->first < a->first) {
      merged.emplace_back(b->first, b->second * scale);
      ++b;
    } else {
      Int c = a->second + b->second * scale;
      if (c != 0) merged.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  coeffs_ = std::move(merged);
  constant_ += other.constant_ * scale;
}

LinTerm LinTerm::scaled(const Int &k) const {
  LinTerm r;
  if (k == 0) return r;
  r.coeffs_ = coeffs_;
  for (auto &[v, c] : r.coeffs_) c *= k;
  r.constant_ = constant_ * k;
  return r;
}

LinTerm LinTerm::renamed(const std::function<Var(Var)> &map) const {
  LinTerm r(constant_);
  for (const auto &[v, c] : coeffs_) r.add_term(map(v), c);
  return r;
}

LinTerm LinTerm::substituted(Var v, const LinTerm &by) const {
  Int c = coeff(v);
  if (c == 0) return *this;
  LinTerm r = *this;
  r.add_term(v, -c);
  r.add(by, c);
  return r;
}

Int LinTerm::evaluate(const std::function<Int(Var)> &value) const {
  Int s = constant_;
  for (const auto &[v, c] : coeffs_) s += c * value(v);
  return s;
}

LinTerm operator+(LinTerm a, const LinTerm &b) {
  a.add(b);
  return a;
}

LinTerm operator-(LinTerm a, const LinTerm &b) {
  a.add(b, -1);
  return a;
}

Int gcd_of_coeffs(const LinTerm &t) {
  Int g = 0;
  for (const auto &[v, c] : t.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LinearConstraint::LinearConstraint(LinTerm term, Rel rel)
    : term_(std::move(term)), rel_(rel) {
  if (term_.is_constant()) {
    // Canonical tautology 0 <= 0, canonical contradiction 1 <= 0.
    bool ok = rel_ == Rel::Eq ? term_.constant() == 0 : term_.constant() <= 0;
    term_ = LinTerm(ok ? 0 : 1);
    rel_ = Rel::Leq;
    return;
  }
  Int g = gcd_of_coeffs(term_);
  if (rel_ == Rel::Leq) {
    if (g != 1) {
      Int c = ceil_div(term_.constant(), g);
      LinTerm t(c);
      for (const auto &[v, k] : term_.coeffs()) t.add_term(v, k / g);
      term_ = std::move(t);
    }
    return;
  }
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), term_.constant().get_mpz_t());
  if (term_.coeffs().front().second < 0) g = -g;
  if (g != 1) {
    LinTerm t(term_.constant() / g);
    for (const auto &[v, k] : term_.coeffs()) t.add_term(v, k / g);
    term_ = std::move(t);
  }
}

LinearConstraint LinearConstraint::lt(LinTerm t) {
  t.set_constant(t.constant() + 1);
  return leq(std::move(t));
}

bool LinearConstraint::is_tautology() const {
  return term_.is_constant() && term_.constant() <= 0;
}

bool LinearConstraint::is_contradiction() const {
  return term_.is_constant() && term_.constant() > 0;
}

bool LinearConstraint::holds(const std::function<Int(Var)> &value) const {
  Int v = term_.evaluate(value);
  return rel_ == Rel::Eq ? v == 0 : v <= 0;
}

std::strong_ordering operator<=>(const LinearConstraint &a,
                                 const LinearConstraint &b) {
  if (a.rel_ != b.rel_)
    return a.rel_ == Rel::Eq ? std::strong_ordering::less
                             : std::strong_ordering::greater;
  const auto &ca = a.term_.coeffs();
  const auto &cb = b.term_.coeffs();
  std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ca[i].first != cb[i].first) return ca[i].first <=> cb[i].first;
    if (auto c = cmp_int(ca[i].second, cb[i].second); c != 0) return c;
  }
  if (ca.size() != cb.size()) return ca.size() <=> cb.size();
  return cmp_int(a.term_.constant(), b.term_.constant());
}

std::vector<LinearConstraint> complement(const LinearConstraint &c) {
  // not(t <= 0) == (-t + 1 <= 0); not(t = 0) == (t + 1 <= 0) or (-t + 1 <= 0)
  LinTerm neg = c.term().negated();
  neg.set_constant(neg.constant() + 1);
  if (!c.is_eq()) return {LinearConstraint::leq(std::move(neg))};
  LinTerm pos = c.term();
  pos.set_constant(pos.constant() + 1);
  return {LinearConstraint::leq(std::move(pos)),
          LinearConstraint::leq(std::move(neg))};
}

Conjunction::Conjunction(std::initializer_list<LinearConstraint> cs) {
  for (const auto &c : cs) add(c);
}

Conjunction::Conjunction(std::vector<LinearConstraint> cs) {
  for (const auto &c : cs) add(c);
}

Conjunction Conjunction::falsum() {
  Conjunction c;
  c.items_.push_back(LinearConstraint::falsum());
  return c;
}

bool Conjunction::is_trivially_false() const {
  return items_.size() == 1 && items_.front().is_contradiction();
}

void Conjunction::add(const LinearConstraint &c) {
  if (is_trivially_false() || c.is_tautology()) return;
  if (c.is_contradiction()) {
    *this = falsum();
    return;
  }
  auto it = std::lower_bound(items_.begin(), items_.end(), c);
  if (it != items_.end() && *it == c) return;
  items_.insert(it, c);
}

void Conjunction::add_all(const Conjunction &other) {
  for (const auto &c : other.items_) add(c);
}

std::vector<Var> Conjunction::vars() const {
  std::vector<Var> out;
  for (const auto &c : items_)
    for (const auto &[v, k] : c.term().coeffs()) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Var> Conjunction::max_var() const {
  std::optional<Var> m;
  for (const auto &c : items_)
    if (!c.term().coeffs().empty()) {
      Var v = c.term().coeffs().back().first;
      if (!m || *m < v) m = v;
    }
  return m;
}

Conjunction Conjunction::renamed(const std::function<Var(Var)> &map) const {
  Conjunction r;
  for (const auto &c : items_) r.add(c.renamed(map));
  return r;
}

bool Conjunction::holds(const std::function<Int(Var)> &value) const {
  return std::all_of(items_.begin(), items_.end(),
                     [&](const LinearConstraint &c) { return c.holds(value); });
}

Conjunction operator&(Conjunction a, const Conjunction &b) {
  a.add_all(b);
  return a;
}

std::string default_var_name(Var v) {
  std::string s(1, static_cast<char>('A' + v.index % 26));
  if (v.index >= 26) s += std::to_string(v.index / 26);
  return s;
}

std::string render(const LinTerm &t, const NameFn &name) {
  std::ostringstream os;
  bool first = true;
  for (const auto &[v, c] : t.coeffs()) {
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    Int a = abs(c);
    if (a != 1) os << a << "*";
    os << name(v);
    first = false;
  }
  const Int &k = t.constant();
  if (first)
    os << k;
  else if (k > 0)
    os << "+" << k;
  else if (k < 0)
    os << "-" << Int(-k);
  return os.str();
}

std::string render(const LinearConstraint &c, const NameFn &name) {
  if (c.is_tautology()) return "true";
  if (c.is_contradiction()) return "false";
  LinTerm vars = c.term();
  Int k = -vars.constant();
  vars.set_constant(0);
  const char *op = c.is_eq() ? "=" : "=<";
  if (vars.coeffs().front().second < 0 && !c.is_eq()) {
    vars = vars.negated();
    k = -k;
    op = ">=";
  }
  return render(vars, name) + op + k.get_str();
}

std::string render(const Conjunction &c, const NameFn &name) {
  if (c.empty()) return "true";
  std::string out;
  for (const auto &x : c) {
    if (!out.empty()) out += ", ";
    out += render(x, name);
  }
  return out;
}

} // namespace hornpre
