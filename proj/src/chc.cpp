#include "hornpre/chc.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace hornpre {

ParseError::ParseError(const std::string &msg, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" +
                                        std::to_string(column) + ": " + msg
                                  : msg),
      line(line), column(column) {}

namespace {

bool valid_var_name(const std::string &s) {
  if (s.empty()) return false;
  if (!(std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

// Names usable for printing: the given ones when valid and distinct,
// otherwise the defaults.
std::vector<std::string> printable_names(const std::vector<std::string> &names,
                                         std::size_t n) {
  std::set<std::string> seen;
  bool ok = names.size() >= n;
  for (std::size_t i = 0; ok && i < n; ++i)
    ok = valid_var_name(names[i]) && seen.insert(names[i]).second;
  if (ok) return {names.begin(), names.begin() + static_cast<long>(n)};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(default_var_name(Var{static_cast<std::uint32_t>(i)}));
  return out;
}

NameFn namer_of(std::vector<std::string> names) {
  return [names = std::move(names)](Var v) {
    return v.index < names.size() ? names[v.index] : default_var_name(v);
  };
}

} // namespace

Var Clause::fresh_var(const std::string &hint) {
  std::set<std::string> used(var_names.begin(), var_names.end());
  std::string name = hint;
  for (int k = 2; used.count(name) || !valid_var_name(name); ++k)
    name = (valid_var_name(hint) ? hint : std::string("V")) + std::to_string(k);
  var_names.push_back(name);
  return Var{static_cast<std::uint32_t>(var_names.size() - 1)};
}

NameFn Clause::namer() const {
  std::size_t n = var_names.size();
  for (const auto &c : constraint)
    for (const auto &[v, k] : c.term().coeffs())
      n = std::max<std::size_t>(n, v.index + 1);
  return namer_of(printable_names(var_names, n));
}

std::map<std::string, std::size_t> Program::arities() const {
  std::map<std::string, std::size_t> out;
  for (const auto &c : clauses) {
    out.emplace(c.head.pred, c.head.args.size());
    for (const auto &b : c.body) out.emplace(b.pred, b.args.size());
  }
  return out;
}

std::set<std::string> Program::predicates() const {
  std::set<std::string> out;
  for (const auto &c : clauses) {
    out.insert(c.head.pred);
    for (const auto &b : c.body) out.insert(b.pred);
  }
  return out;
}

NameFn Program::init_namer() const {
  return namer_of(printable_names(init_arg_names, init_arity));
}

void Program::renumber() {
  for (std::size_t i = 0; i < clauses.size(); ++i)
    clauses[i].id = static_cast<int>(i);
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

enum class Tok { Ident, VarName, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct Pragmas {
  std::vector<std::pair<std::string, std::size_t>> initial;
  bool has_initial = false;
};

std::vector<Token> lex(const std::string &src, Pragmas *pragmas) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '%') {
      std::size_t end = src.find('\n', i);
      if (end == std::string::npos) end = src.size();
      std::string comment = src.substr(i, end - i);
      if (pragmas && comment.rfind("%@initial", 0) == 0) {
        pragmas->has_initial = true;
        std::istringstream is(comment.substr(9));
        std::string item;
        while (is >> item) {
          auto slash = item.find('/');
          if (slash == std::string::npos)
            throw ParseError("malformed initial pragma entry '" + item + "'",
                             line, col);
          pragmas->initial.emplace_back(item.substr(0, slash),
                                        std::stoul(item.substr(slash + 1)));
        }
      }
      advance(end - i);
      continue;
    }
    Token t{Tok::Punct, "", line, col};
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_'))
        ++j;
      t.text = src.substr(i, j - i);
      t.kind = std::islower(static_cast<unsigned char>(ch)) ? Tok::Ident
                                                            : Tok::VarName;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else {
      static const char *two[] = {":-", "=<", "<=", ">="};
      for (const char *op : two)
        if (src.compare(i, 2, op) == 0) t.text = op;
      if (t.text.empty()) {
        if (std::string("(),.=<>+-*;").find(ch) == std::string::npos)
          throw ParseError(std::string("unexpected character '") + ch + "'",
                           line, col);
        t.text = std::string(1, ch);
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// Linear expression over variable names.
struct NamedExpr {
  std::map<std::string, Int> coeffs;
  Int constant = 0;

  void add(const NamedExpr &o, const Int &k) {
    for (const auto &[n, c] : o.coeffs) coeffs[n] += c * k;
    constant += o.constant * k;
  }
  std::optional<std::string> single_var() const {
    std::optional<std::string> v;
    for (const auto &[n, c] : coeffs) {
      if (c == 0) continue;
      if (v || c != 1) return std::nullopt;
      v = n;
    }
    if (constant != 0) return std::nullopt;
    return v;
  }
};

struct ParsedAtom {
  std::string pred;
  std::vector<NamedExpr> args;
  int line, col;
};

struct ParsedConstraint {
  NamedExpr lhs; // lhs rel 0
  std::string rel;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool at_end() const { return peek().kind == Tok::End; }
  const Token &peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(const std::string &p) {
    if (peek().kind == Tok::Punct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string &msg, const Token &t) const {
    throw ParseError(msg + (t.kind == Tok::End ? " at end of input"
                                               : " near '" + t.text + "'"),
                     t.line, t.col);
  }
  void expect(const std::string &p) {
    if (!accept(p)) fail("expected '" + p + "'", peek());
  }

  int anon = 0;

  NamedExpr primary() {
    Token t = next();
    NamedExpr e;
    if (t.kind == Tok::Number) {
      Int k(t.text);
      if (accept("*")) {
        Token v = next();
        if (v.kind != Tok::VarName) fail("expected variable after '*'", v);
        e.coeffs[var_name(v.text)] = k;
      } else {
        e.constant = k;
      }
      return e;
    }
    if (t.kind == Tok::VarName) {
      std::string n = var_name(t.text);
      if (accept("*")) {
        Token k = next();
        if (k.kind != Tok::Number) fail("expected integer after '*'", k);
        e.coeffs[n] = Int(k.text);
      } else {
        e.coeffs[n] = 1;
      }
      return e;
    }
    if (t.kind == Tok::Punct && t.text == "(") {
      e = expr();
      expect(")");
      return e;
    }
    fail("expected term", t);
  }

  std::string var_name(const std::string &n) {
    if (n != "_") return n;
    return "_" + std::to_string(++anon);
  }

  NamedExpr expr() {
    NamedExpr e;
    Int sign = 1;
    if (accept("-")) sign = -1;
    else accept("+");
    e.add(primary(), sign);
    for (;;) {
      if (accept("+"))
        e.add(primary(), 1);
      else if (accept("-"))
        e.add(primary(), -1);
      else
        return e;
    }
  }

  ParsedAtom atom() {
    Token t = next();
    ParsedAtom a{t.text, {}, t.line, t.col};
    if (accept("(")) {
      if (!accept(")")) {
        do a.args.push_back(expr());
        while (accept(","));
        expect(")");
      }
    }
    return a;
  }

  std::optional<ParsedConstraint> constraint() {
    const Token &t = peek();
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false")) {
      next();
      if (t.text == "true") return std::nullopt;
      ParsedConstraint c;
      c.lhs.constant = 1;
      c.rel = "=<";
      return c;
    }
    NamedExpr lhs = expr();
    Token r = next();
    static const std::set<std::string> rels{"=", "<", ">", "=<", "<=", ">="};
    if (r.kind != Tok::Punct || !rels.count(r.text))
      fail("expected relation", r);
    NamedExpr rhs = expr();
    lhs.add(rhs, -1);
    return ParsedConstraint{std::move(lhs), r.text};
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

LinearConstraint make_constraint(const ParsedConstraint &pc,
                                 const std::function<Var(const std::string &)> &var) {
  LinTerm t(pc.lhs.constant);
  for (const auto &[n, k] : pc.lhs.coeffs) t.add_term(var(n), k);
  const std::string &r = pc.rel;
  if (r == "=") return LinearConstraint::eq(t);
  if (r == "=<" || r == "<=") return LinearConstraint::leq(t);
  if (r == "<") return LinearConstraint::lt(t);
  if (r == ">=") return LinearConstraint::leq(t.negated());
  return LinearConstraint::lt(t.negated());
}

struct ParsedClause {
  ParsedAtom head;
  std::vector<ParsedConstraint> constraints;
  std::vector<ParsedAtom> body;
};

// Builds a normalized clause: atom arguments become distinct variables.
Clause build_clause(const ParsedClause &pc) {
  Clause c;
  std::map<std::string, Var> vars;
  // Reserve every user-written name first so fresh names cannot collide.
  auto reserve = [&](const NamedExpr &e) {
    for (const auto &[n, k] : e.coeffs)
      if (!vars.count(n)) {
        vars[n] = Var{static_cast<std::uint32_t>(c.var_names.size())};
        c.var_names.push_back(n);
      }
  };
  for (const auto &e : pc.head.args) reserve(e);
  for (const auto &a : pc.body)
    for (const auto &e : a.args) reserve(e);
  for (const auto &k : pc.constraints) reserve(k.lhs);
  auto lookup = [&](const std::string &n) { return vars.at(n); };

  auto flatten = [&](const ParsedAtom &pa) {
    Atom a{pa.pred, {}};
    std::set<Var> used;
    for (const auto &e : pa.args) {
      auto single = e.single_var();
      if (single && !used.count(vars.at(*single))) {
        Var v = vars.at(*single);
        used.insert(v);
        a.args.push_back(v);
        continue;
      }
      Var fresh = c.fresh_var(single ? *single : "V");
      LinTerm t = LinTerm::variable(fresh, -1);
      t.set_constant(e.constant);
      for (const auto &[n, k] : e.coeffs) t.add_term(vars.at(n), k);
      c.constraint.add(LinearConstraint::eq(t));
      used.insert(fresh);
      a.args.push_back(fresh);
    }
    return a;
  };
  c.head = flatten(pc.head);
  for (const auto &k : pc.constraints)
    c.constraint.add(make_constraint(k, lookup));
  for (const auto &b : pc.body) c.body.push_back(flatten(b));
  canonicalize(c);
  return c;
}

} // namespace

void canonicalize(Clause &c) {
  std::map<Var, Var> remap;
  std::vector<std::string> names;
  auto visit = [&](Var v) {
    if (remap.count(v)) return;
    remap[v] = Var{static_cast<std::uint32_t>(names.size())};
    names.push_back(v.index < c.var_names.size() ? c.var_names[v.index]
                                                  : default_var_name(v));
  };
  for (Var v : c.head.args) visit(v);
  for (const auto &b : c.body)
    for (Var v : b.args) visit(v);
  for (Var v : c.constraint.vars()) visit(v);
  auto map = [&](Var v) { return remap.at(v); };
  for (auto &v : c.head.args) v = map(v);
  for (auto &b : c.body)
    for (auto &v : b.args) v = map(v);
  c.constraint = c.constraint.renamed(map);
  c.var_names = std::move(names);
}

Program parse_program(const std::string &text) {
  Pragmas pragmas;
  Parser ps(lex(text, &pragmas));
  Program p;
  std::map<std::string, std::pair<std::size_t, Token>> arity;
  auto check_arity = [&](const ParsedAtom &a) {
    Token where{Tok::Ident, a.pred, a.line, a.col};
    auto [it, fresh] = arity.emplace(a.pred, std::make_pair(a.args.size(), where));
    if (!fresh && it->second.first != a.args.size())
      throw ParseError("arity mismatch for '" + a.pred + "': " +
                           std::to_string(a.args.size()) + " vs " +
                           std::to_string(it->second.first),
                       a.line, a.col);
  };
  if (pragmas.has_initial) {
    p.initial_preds.clear();
    for (const auto &[name, n] : pragmas.initial) {
      p.initial_preds.insert(name);
      p.init_arity = n;
    }
  }
  while (!ps.at_end()) {
    ParsedClause pc;
    if (ps.peek().kind != Tok::Ident) ps.fail("expected clause head", ps.peek());
    pc.head = ps.atom();
    if (is_goal_pred(pc.head.pred) && !pc.head.args.empty())
      throw ParseError(pc.head.pred + " must not have arguments", pc.head.line,
                       pc.head.col);
    if (ps.accept(":-")) {
      do {
        const Token &t = ps.peek();
        if (t.kind == Tok::Ident && t.text != "true" && t.text != "false") {
          ParsedAtom a = ps.atom();
          if (is_goal_pred(a.pred))
            throw ParseError(a.pred + " may not occur in a clause body", a.line,
                             a.col);
          pc.body.push_back(std::move(a));
        } else if (auto k = ps.constraint()) {
          pc.constraints.push_back(std::move(*k));
        }
      } while (ps.accept(","));
    }
    ps.expect(".");
    check_arity(pc.head);
    for (const auto &b : pc.body) check_arity(b);
    if (is_goal_pred(pc.head.pred) && pc.body.empty())
      throw ParseError(pc.head.pred + " may not be a fact", pc.head.line,
                       pc.head.col);
    Clause c = build_clause(pc);
    c.id = static_cast<int>(p.clauses.size());
    c.source = c.id;
    p.clauses.push_back(std::move(c));
  }
  for (const auto &name : p.initial_preds) {
    auto it = arity.find(name);
    if (it == arity.end()) continue;
    if (pragmas.has_initial && it->second.first != p.init_arity)
      throw ParseError("initial predicate '" + name + "' has arity " +
                       std::to_string(it->second.first));
    p.init_arity = it->second.first;
  }
  for (const auto &c : p.clauses)
    if (c.is_fact() && p.is_initial(c.head.pred)) {
      p.init_arg_names = c.var_names;
      p.init_arg_names.resize(p.init_arity);
      break;
    }
  validate(p);
  return p;
}

void validate(const Program &p) {
  std::map<std::string, std::size_t> arity;
  auto check = [&](const Atom &a) {
    auto [it, fresh] = arity.emplace(a.pred, a.args.size());
    if (!fresh && it->second != a.args.size())
      throw ParseError("arity mismatch for '" + a.pred + "'");
    std::set<Var> distinct(a.args.begin(), a.args.end());
    if (distinct.size() != a.args.size())
      throw ParseError("repeated variable in atom '" + a.pred + "'");
  };
  for (const auto &c : p.clauses) {
    check(c.head);
    for (const auto &b : c.body) {
      check(b);
      if (is_goal_pred(b.pred))
        throw ParseError(b.pred + " may not occur in a clause body");
    }
    if (is_goal_pred(c.head.pred)) {
      if (!c.head.args.empty())
        throw ParseError(c.head.pred + " must not have arguments");
      if (c.is_fact()) throw ParseError(c.head.pred + " may not be a fact");
      continue;
    }
    if (c.is_fact() && !p.is_initial(c.head.pred))
      throw ParseError("unsupported program shape: fact for non-initial "
                       "predicate '" + c.head.pred + "'");
    if (!c.is_fact() && p.is_initial(c.head.pred))
      throw ParseError("unsupported program shape: initial predicate '" +
                       c.head.pred + "' defined by a rule");
    if (p.is_initial(c.head.pred) && c.head.args.size() != p.init_arity)
      throw ParseError("initial predicate '" + c.head.pred +
                       "' has the wrong arity");
  }
}

std::string print_clause(const Clause &c) {
  NameFn name = c.namer();
  auto atom = [&](const Atom &a) {
    std::string s = a.pred;
    if (a.args.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ",";
      s += name(a.args[i]);
    }
    return s + ")";
  };
  std::string out = atom(c.head);
  std::vector<std::string> items;
  for (const auto &k : c.constraint) items.push_back(render(k, name));
  for (const auto &b : c.body) items.push_back(atom(b));
  if (!items.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += items[i];
    }
  }
  return out + ".";
}

std::string print_program(const Program &p) {
  std::string out;
  if (p.initial_preds != std::set<std::string>{"init"}) {
    out += "%@initial";
    for (const auto &n : p.initial_preds)
      out += " " + n + "/" + std::to_string(p.init_arity);
    out += "\n";
  }
  for (const auto &c : p.clauses) out += print_clause(c) + "\n";
  return out;
}

namespace {

std::string canonical_text(Clause c) {
  canonicalize(c);
  for (std::size_t i = 0; i < c.var_names.size(); ++i)
    c.var_names[i] = default_var_name(Var{static_cast<std::uint32_t>(i)});
  return print_clause(c);
}

} // namespace

bool structurally_equal(const Program &a, const Program &b) {
  if (a.initial_preds != b.initial_preds) return false;
  auto texts = [](const Program &p) {
    std::vector<std::string> out;
    for (const auto &c : p.clauses) out.push_back(canonical_text(c));
    std::sort(out.begin(), out.end());
    return out;
  };
  return texts(a) == texts(b);
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

Conjunction conjunction_from(Parser &ps, const std::map<std::string, Var> &vars) {
  Conjunction c;
  auto lookup = [&](const std::string &n) {
    auto it = vars.find(n);
    if (it == vars.end()) throw ParseError("unknown variable '" + n + "'");
    return it->second;
  };
  do {
    if (auto k = ps.constraint()) c.add(make_constraint(*k, lookup));
  } while (ps.accept(","));
  return c;
}

std::map<std::string, Var> position_vars(const std::vector<std::string> &names) {
  std::map<std::string, Var> vars;
  for (std::size_t i = 0; i < names.size(); ++i)
    vars[names[i]] = Var{static_cast<std::uint32_t>(i)};
  return vars;
}

} // namespace

DnfFormula parse_formula(const std::string &text,
                         const std::vector<std::string> &names) {
  Parser ps(lex(text, nullptr));
  auto vars = position_vars(names);
  std::vector<Conjunction> ds;
  do {
    bool paren = false;
    // "(" opens a disjunct unless it starts an arithmetic subterm.
    if (ps.peek().kind == Tok::Punct && ps.peek().text == "(") {
      std::size_t depth = 0, k = 0;
      bool comma = false;
      for (;; ++k) {
        const Token &t = ps.peek(k);
        if (t.kind == Tok::End) break;
        if (t.text == "(") ++depth;
        if (t.text == ")" && --depth == 0) break;
        if (depth == 1 && (t.text == "," || t.text == "=" || t.text == "<" ||
                           t.text == ">" || t.text == "=<" || t.text == "<=" ||
                           t.text == ">=" || t.text == "true" ||
                           t.text == "false"))
          comma = true;
      }
      paren = comma;
    }
    if (paren) ps.expect("(");
    ds.push_back(conjunction_from(ps, vars));
    if (paren) ps.expect(")");
  } while (ps.accept(";"));
  if (!ps.at_end()) ps.fail("unexpected token", ps.peek());
  return normalized(ds);
}

Conjunction parse_conjunction(const std::string &text,
                              const std::vector<std::string> &names) {
  Parser ps(lex(text, nullptr));
  Conjunction c = conjunction_from(ps, position_vars(names));
  if (!ps.at_end()) ps.fail("unexpected token", ps.peek());
  return c;
}

// ---------------------------------------------------------------------------
// Initial states

std::vector<Clause> initial_clauses(const Program &p) {
  std::vector<Clause> out;
  for (const auto &c : p.clauses)
    if (c.is_fact() && p.is_initial(c.head.pred)) out.push_back(c);
  return out;
}

Conjunction instantiate(const Conjunction &c, const std::vector<Var> &args) {
  return c.renamed([&](Var v) { return args.at(v.index); });
}

Conjunction initial_constraint(const Clause &c) {
  Conjunction proj = project(c.constraint, c.head.args);
  std::map<Var, Var> pos;
  for (std::size_t i = 0; i < c.head.args.size(); ++i)
    pos[c.head.args[i]] = Var{static_cast<std::uint32_t>(i)};
  return proj.renamed([&](Var v) { return pos.at(v); });
}

namespace {

Program rewrite_initial(const Program &p, const DnfFormula &phi,
                        std::size_t cap, bool replace) {
  if (phi.size() > cap) throw DnfCapExceeded(phi.size(), cap);
  Program out = p;
  out.clauses.clear();
  for (const auto &c : p.clauses) {
    if (!(c.is_fact() && p.is_initial(c.head.pred))) {
      Clause k = c;
      k.origin = c.id;
      out.clauses.push_back(std::move(k));
      continue;
    }
    for (const auto &d : phi.disjuncts()) {
      Clause k = c;
      k.origin = c.id;
      Conjunction delta = instantiate(d.constraints(), c.head.args);
      k.constraint = simplify(replace ? delta : c.constraint & delta);
      if (k.constraint.is_trivially_false()) continue;
      canonicalize(k);
      out.clauses.push_back(std::move(k));
    }
  }
  out.renumber();
  return out;
}

} // namespace

Program with_initial_states(const Program &p, const DnfFormula &phi,
                            std::size_t cap) {
  return rewrite_initial(p, phi, cap, false);
}

Program replace_initial_states(const Program &p, const DnfFormula &phi,
                               std::size_t cap) {
  return rewrite_initial(p, phi, cap, true);
}

// ---------------------------------------------------------------------------
// Structure

std::vector<Scc> dependency_sccs(const Program &p) {
  std::vector<std::string> order;
  std::map<std::string, std::size_t> index;
  auto note = [&](const std::string &n) {
    if (index.emplace(n, order.size()).second) order.push_back(n);
  };
  for (const auto &c : p.clauses) {
    note(c.head.pred);
    for (const auto &b : c.body) note(b.pred);
  }
  std::vector<std::vector<std::size_t>> succ(order.size());
  std::vector<bool> self(order.size(), false);
  for (const auto &c : p.clauses) {
    std::size_t h = index[c.head.pred];
    for (const auto &b : c.body) {
      std::size_t d = index[b.pred];
      if (d == h) self[h] = true;
      if (std::find(succ[h].begin(), succ[h].end(), d) == succ[h].end())
        succ[h].push_back(d);
    }
  }

  // Tarjan; an SCC is emitted after every SCC it depends on.
  std::vector<int> idx(order.size(), -1), low(order.size(), 0);
  std::vector<bool> on_stack(order.size(), false);
  std::vector<std::size_t> stack;
  std::vector<Scc> out;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    idx[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (idx[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], idx[w]);
      }
    }
    if (low[v] != idx[v]) return;
    Scc scc;
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      scc.preds.push_back(order[w]);
    } while (w != v);
    std::sort(scc.preds.begin(), scc.preds.end(),
              [&](const std::string &a, const std::string &b) {
                return index[a] < index[b];
              });
    scc.recursive = scc.preds.size() > 1 || self[v];
    out.push_back(std::move(scc));
  };
  for (std::size_t v = 0; v < order.size(); ++v)
    if (idx[v] < 0) visit(v);
  return out;
}

Program cleanup(const Program &p, const std::string &goal) {
  std::set<std::string> productive;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &c : p.clauses) {
      if (productive.count(c.head.pred)) continue;
      if (std::all_of(c.body.begin(), c.body.end(), [&](const Atom &b) {
            return productive.count(b.pred) > 0;
          })) {
        productive.insert(c.head.pred);
        changed = true;
      }
    }
  }
  std::vector<const Clause *> live;
  for (const auto &c : p.clauses)
    if (std::all_of(c.body.begin(), c.body.end(), [&](const Atom &b) {
          return productive.count(b.pred) > 0;
        }))
      live.push_back(&c);

  std::set<std::string> reach{goal};
  std::vector<std::string> work{goal};
  while (!work.empty()) {
    std::string q = work.back();
    work.pop_back();
    for (const Clause *c : live)
      if (c->head.pred == q)
        for (const auto &b : c->body)
          if (reach.insert(b.pred).second) work.push_back(b.pred);
  }
  Program out = p;
  out.clauses.clear();
  for (const Clause *c : live)
    if (reach.count(c->head.pred)) {
      out.clauses.push_back(*c);
    }
  out.renumber();
  return out;
}

} // namespace hornpre
