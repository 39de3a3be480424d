#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hornpre {

using Int = mpz_class;
using Rat = mpq_class;

/// Variable index. Names live in the owning clause (or formula signature).
struct Var {
  std::uint32_t index = 0;
  friend auto operator<=>(const Var &, const Var &) = default;
};

/// Linear expression sum(coeff_i * x_i) + constant with exact integer
/// coefficients. Terms are kept sorted by variable and never hold a zero
/// coefficient.
class LinTerm {
public:
  using Entry = std::pair<Var, Int>;

  LinTerm() = default;
  explicit LinTerm(Int constant) : constant_(std::move(constant)) {}
  static LinTerm variable(Var v, Int coeff = 1);

  const std::vector<Entry> &coeffs() const { return coeffs_; }
  const Int &constant() const { return constant_; }
  Int coeff(Var v) const;
  bool is_constant() const { return coeffs_.empty(); }

  void set_constant(Int c) { constant_ = std::move(c); }
  void add_term(Var v, const Int &c);
  void add(const LinTerm &other, const Int &scale = 1);
  LinTerm scaled(const Int &k) const;
  LinTerm negated() const { return scaled(-1); }

  /// Replaces every variable v by map(v). The mapping need not be injective.
  LinTerm renamed(const std::function<Var(Var)> &map) const;
  /// Replaces v by the expression `by`.
  LinTerm substituted(Var v, const LinTerm &by) const;

  Int evaluate(const std::function<Int(Var)> &value) const;

  friend bool operator==(const LinTerm &, const LinTerm &) = default;

private:
  std::vector<Entry> coeffs_;
  Int constant_ = 0;
};

LinTerm operator+(LinTerm a, const LinTerm &b);
LinTerm operator-(LinTerm a, const LinTerm &b);

enum class Rel : std::uint8_t { Eq, Leq };

/// term = 0 or term <= 0 over the integers. Construction normalizes: LEQ
/// constraints are divided by the coefficient gcd with the constant rounded
/// up (integer tightening), EQ constraints are divided by the gcd of all
/// coefficients and the constant and get a positive leading coefficient.
class LinearConstraint {
public:
  LinearConstraint() = default;
  LinearConstraint(LinTerm term, Rel rel);

  static LinearConstraint leq(LinTerm t) { return {std::move(t), Rel::Leq}; }
  static LinearConstraint eq(LinTerm t) { return {std::move(t), Rel::Eq}; }
  /// t < 0, stored as t + 1 <= 0.
  static LinearConstraint lt(LinTerm t);
  static LinearConstraint falsum() { return leq(LinTerm(1)); }

  const LinTerm &term() const { return term_; }
  Rel rel() const { return rel_; }
  bool is_eq() const { return rel_ == Rel::Eq; }

  bool is_tautology() const;
  bool is_contradiction() const;

  bool holds(const std::function<Int(Var)> &value) const;
  LinearConstraint renamed(const std::function<Var(Var)> &map) const {
    return {term_.renamed(map), rel_};
  }

  friend bool operator==(const LinearConstraint &,
                         const LinearConstraint &) = default;
  friend std::strong_ordering operator<=>(const LinearConstraint &a,
                                          const LinearConstraint &b);

private:
  LinTerm term_;
  Rel rel_ = Rel::Leq;
};

/// Integer-exact complement of a single constraint (one or two disjuncts).
std::vector<LinearConstraint> complement(const LinearConstraint &c);

/// Ordered, duplicate-free set of constraints. A contradiction collapses the
/// whole conjunction to the single constraint 1 <= 0.
class Conjunction {
public:
  Conjunction() = default;
  Conjunction(std::initializer_list<LinearConstraint> cs);
  explicit Conjunction(std::vector<LinearConstraint> cs);

  static Conjunction falsum();

  void add(const LinearConstraint &c);
  void add_all(const Conjunction &other);

  const std::vector<LinearConstraint> &constraints() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool is_trivially_false() const;

  std::vector<Var> vars() const;
  std::optional<Var> max_var() const;
  Conjunction renamed(const std::function<Var(Var)> &map) const;
  bool holds(const std::function<Int(Var)> &value) const;

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  friend bool operator==(const Conjunction &, const Conjunction &) = default;
  friend std::strong_ordering operator<=>(const Conjunction &a,
                                          const Conjunction &b) {
    return std::lexicographical_compare_three_way(
        a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end());
  }

private:
  std::vector<LinearConstraint> items_;
};

Conjunction operator&(Conjunction a, const Conjunction &b);

using NameFn = std::function<std::string(Var)>;

/// Default names A, B, ..., Z, A1, B1, ...
std::string default_var_name(Var v);

std::string render(const LinTerm &t, const NameFn &name);
std::string render(const LinearConstraint &c, const NameFn &name);
/// Comma separated; "true" when empty.
std::string render(const Conjunction &c, const NameFn &name);

Int gcd_of_coeffs(const LinTerm &t);

} // namespace hornpre
