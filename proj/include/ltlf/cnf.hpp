#pragma once

#include <optional>
#include <vector>

#include "ltlf/rational.hpp"

namespace ltlf {

// DIMACS-style literals: +v / -v with variable ids starting at 1.
using Clause = std::vector<int>;

// Truth values indexed by variable id; index 0 is unused.
using Assignment = std::vector<bool>;

struct WeightedClause {
  Clause lits;
  std::optional<Rational> weight; // nullopt = hard

  bool hard() const { return !weight.has_value(); }
};

// Partial weighted MaxSAT instance with exact rational soft weights.
class WeightedCnf {
public:
  int new_var() { return ++num_vars_; }
  int num_vars() const { return num_vars_; }

  // Throws std::out_of_range on a literal naming an unallocated variable.
  void add_hard(Clause lits);
  void add_soft(Clause lits, Rational weight);

  const std::vector<WeightedClause>& clauses() const { return clauses_; }
  std::size_t num_hard() const { return clauses_.size() - num_soft_; }
  std::size_t num_soft() const { return num_soft_; }
  Rational total_soft_weight() const { return soft_total_; }

  // Smallest D such that every soft weight times D is an integer.
  std::int64_t weight_scale() const;

  static bool clause_satisfied(const Clause& c, const Assignment& a);
  bool satisfies_hard(const Assignment& a) const;
  Rational satisfied_soft_weight(const Assignment& a) const;

private:
  void check(const Clause& lits) const;

  int num_vars_ = 0;
  std::vector<WeightedClause> clauses_;
  std::size_t num_soft_ = 0;
  Rational soft_total_ = 0;
};

} // namespace ltlf
