#include "ltlf/tseitin.hpp"

#include <cstdlib>
#include <stdexcept>

namespace ltlf {

namespace gate {
namespace {

void emit(WeightedCnf& cnf, std::span<const int> guards, std::initializer_list<int> lits) {
  Clause c(lits);
  c.insert(c.end(), guards.begin(), guards.end());
  cnf.add_hard(std::move(c));
}

} // namespace

void equal(WeightedCnf& cnf, std::span<const int> guards, int out, int in) {
  emit(cnf, guards, {-out, in});
  emit(cnf, guards, {out, -in});
}

void conj(WeightedCnf& cnf, std::span<const int> guards, int out, std::span<const int> ins) {
  Clause back{out};
  for (int in : ins) {
    emit(cnf, guards, {-out, in});
    back.push_back(-in);
  }
  back.insert(back.end(), guards.begin(), guards.end());
  cnf.add_hard(std::move(back));
}

void disj(WeightedCnf& cnf, std::span<const int> guards, int out, std::span<const int> ins) {
  Clause back{-out};
  for (int in : ins) {
    emit(cnf, guards, {out, -in});
    back.push_back(in);
  }
  back.insert(back.end(), guards.begin(), guards.end());
  cnf.add_hard(std::move(back));
}

void or_and(WeightedCnf& cnf, std::span<const int> guards, int out, int a, int b, int c) {
  emit(cnf, guards, {-out, a, b});
  emit(cnf, guards, {-out, a, c});
  emit(cnf, guards, {out, -a});
  emit(cnf, guards, {out, -b, -c});
}

void constant(WeightedCnf& cnf, std::span<const int> guards, int out, bool value) {
  emit(cnf, guards, {value ? out : -out});
}

} // namespace gate

PropExpr PropExpr::constant(bool v) {
  PropExpr e;
  e.kind_ = Kind::Const;
  e.value_ = v;
  return e;
}

PropExpr PropExpr::var(int v) {
  if (v < 1)
    throw std::invalid_argument("variable ids start at 1");
  PropExpr e;
  e.kind_ = Kind::Var;
  e.var_ = v;
  return e;
}

PropExpr PropExpr::lit(int l) {
  return l > 0 ? var(l) : negation(var(-l));
}

PropExpr PropExpr::negation(PropExpr a) {
  PropExpr e;
  e.kind_ = Kind::Not;
  e.kids_.push_back(std::move(a));
  return e;
}

PropExpr PropExpr::conj(std::vector<PropExpr> es) {
  PropExpr e;
  e.kind_ = Kind::And;
  e.kids_ = std::move(es);
  return e;
}

PropExpr PropExpr::disj(std::vector<PropExpr> es) {
  PropExpr e;
  e.kind_ = Kind::Or;
  e.kids_ = std::move(es);
  return e;
}

PropExpr PropExpr::implies(PropExpr a, PropExpr b) {
  PropExpr e;
  e.kind_ = Kind::Implies;
  e.kids_.push_back(std::move(a));
  e.kids_.push_back(std::move(b));
  return e;
}

PropExpr PropExpr::iff(PropExpr a, PropExpr b) {
  PropExpr e;
  e.kind_ = Kind::Iff;
  e.kids_.push_back(std::move(a));
  e.kids_.push_back(std::move(b));
  return e;
}

bool PropExpr::is_literal() const {
  return kind_ == Kind::Var || (kind_ == Kind::Not && kids_[0].kind_ == Kind::Var);
}

bool PropExpr::is_clause() const {
  if (is_literal())
    return true;
  if (kind_ != Kind::Or || kids_.empty())
    return false;
  for (const auto& k : kids_)
    if (!k.is_literal())
      return false;
  return true;
}

bool PropExpr::is_cnf() const {
  if (is_clause())
    return true;
  if (kind_ != Kind::And)
    return false;
  for (const auto& k : kids_)
    if (k.kind_ != Kind::Or || !k.is_clause())
      return false;
  return true;
}

bool PropExpr::eval(const Assignment& a) const {
  switch (kind_) {
  case Kind::Const: return value_;
  case Kind::Var: return static_cast<std::size_t>(var_) < a.size() && a[var_];
  case Kind::Not: return !kids_[0].eval(a);
  case Kind::And:
    for (const auto& k : kids_)
      if (!k.eval(a))
        return false;
    return true;
  case Kind::Or:
    for (const auto& k : kids_)
      if (k.eval(a))
        return true;
    return false;
  case Kind::Implies: return !kids_[0].eval(a) || kids_[1].eval(a);
  case Kind::Iff: return kids_[0].eval(a) == kids_[1].eval(a);
  }
  return false;
}

namespace {

int literal_of(const PropExpr& e) {
  return e.kind() == PropExpr::Kind::Var ? e.var_id() : -e.children()[0].var_id();
}

struct Transformer {
  WeightedCnf& cnf;
  int aux = 0;

  int fresh() {
    ++aux;
    return cnf.new_var();
  }

  // Returns a literal equivalent to e under the emitted definitions.
  int define(const PropExpr& e) {
    using K = PropExpr::Kind;
    if (e.is_literal())
      return literal_of(e);
    const auto& ks = e.children();
    switch (e.kind()) {
    case K::Const: {
      const int g = fresh();
      gate::constant(cnf, {}, g, e.value());
      return g;
    }
    case K::Not: return -define(ks[0]);
    case K::And:
    case K::Or: {
      std::vector<int> ins;
      ins.reserve(ks.size());
      for (const auto& k : ks)
        ins.push_back(define(k));
      const int g = fresh();
      if (e.kind() == K::And)
        gate::conj(cnf, {}, g, ins);
      else
        gate::disj(cnf, {}, g, ins);
      return g;
    }
    case K::Implies: {
      const int ins[2] = {-define(ks[0]), define(ks[1])};
      const int g = fresh();
      gate::disj(cnf, {}, g, ins);
      return g;
    }
    case K::Iff: {
      const int a = define(ks[0]);
      const int b = define(ks[1]);
      const int g = fresh();
      cnf.add_hard({-g, -a, b});
      cnf.add_hard({-g, a, -b});
      cnf.add_hard({g, a, b});
      cnf.add_hard({g, -a, -b});
      return g;
    }
    case K::Var: break;
    }
    throw std::logic_error("unreachable");
  }
};

Clause clause_of(const PropExpr& e) {
  if (e.is_literal())
    return {literal_of(e)};
  Clause c;
  for (const auto& k : e.children())
    c.push_back(literal_of(k));
  return c;
}

} // namespace

int tseitin(const PropExpr& e, WeightedCnf& cnf) {
  if (e.is_cnf()) {
    if (e.kind() == PropExpr::Kind::And) {
      for (const auto& k : e.children())
        cnf.add_hard(clause_of(k));
    } else {
      cnf.add_hard(clause_of(e));
    }
    return 0;
  }
  if (e.kind() == PropExpr::Kind::Const) {
    if (!e.value())
      cnf.add_hard({});
    return 0;
  }
  Transformer t{cnf};
  const int root = t.define(e);
  cnf.add_hard({root});
  return t.aux;
}

} // namespace ltlf
