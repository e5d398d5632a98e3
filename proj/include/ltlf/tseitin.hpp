#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ltlf/cnf.hpp"

namespace ltlf {

// Gate definitions. Each emits hard clauses stating
//   (all guards false) -> (out <-> gate(inputs))
// where a guard is a DIMACS literal whose truth disables the definition.
// With no guards these are the plain Tseitin gate clauses.
namespace gate {

void equal(WeightedCnf& cnf, std::span<const int> guards, int out, int in);
void conj(WeightedCnf& cnf, std::span<const int> guards, int out, std::span<const int> ins);
void disj(WeightedCnf& cnf, std::span<const int> guards, int out, std::span<const int> ins);
// out <-> (a | (b & c))
void or_and(WeightedCnf& cnf, std::span<const int> guards, int out, int a, int b, int c);
// out fixed to value.
void constant(WeightedCnf& cnf, std::span<const int> guards, int out, bool value);

} // namespace gate

// Propositional expression over DIMACS variables.
class PropExpr {
public:
  enum class Kind { Const, Var, Not, And, Or, Implies, Iff };

  static PropExpr constant(bool v);
  static PropExpr var(int v); // v >= 1
  static PropExpr lit(int l); // -v gives a negated variable
  static PropExpr negation(PropExpr e);
  static PropExpr conj(std::vector<PropExpr> es);
  static PropExpr disj(std::vector<PropExpr> es);
  static PropExpr implies(PropExpr a, PropExpr b);
  static PropExpr iff(PropExpr a, PropExpr b);

  Kind kind() const { return kind_; }
  int var_id() const { return var_; }
  bool value() const { return value_; }
  const std::vector<PropExpr>& children() const { return kids_; }

  // A variable or a negated variable.
  bool is_literal() const;
  // A literal or a disjunction of literals.
  bool is_clause() const;
  // A clause, or a conjunction built from explicit disjunctions of
  // literals. A conjunction of bare literals such as (a & b) is not
  // treated as CNF and gets a gate.
  bool is_cnf() const;

  bool eval(const Assignment& a) const;

private:
  Kind kind_ = Kind::Const;
  int var_ = 0;
  bool value_ = false;
  std::vector<PropExpr> kids_;
};

// Asserts e into cnf as hard clauses and returns the number of auxiliary
// variables introduced. Input already in CNF is copied clause by clause
// with no auxiliaries. Otherwise every compound subexpression gets a gate
// variable defined by the gate clauses above and the root gate is asserted
// by a unit clause. The result is equisatisfiable with e, and every model
// of e extends to a model of the clauses.
int tseitin(const PropExpr& e, WeightedCnf& cnf);

} // namespace ltlf
