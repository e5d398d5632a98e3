#include "ltlf/cnf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace ltlf {

void WeightedCnf::check(const Clause& lits) const {
  for (int l : lits)
    if (l == 0 || std::abs(l) > num_vars_)
      throw std::out_of_range("literal " + std::to_string(l) + " names no allocated variable");
}

void WeightedCnf::add_hard(Clause lits) {
  check(lits);
  clauses_.push_back({std::move(lits), std::nullopt});
}

void WeightedCnf::add_soft(Clause lits, Rational weight) {
  check(lits);
  if (weight <= 0)
    throw std::invalid_argument("soft weight must be positive");
  soft_total_ += weight;
  ++num_soft_;
  clauses_.push_back({std::move(lits), weight});
}

std::int64_t WeightedCnf::weight_scale() const {
  std::int64_t d = 1;
  for (const auto& c : clauses_)
    if (c.weight)
      d = lcm_of_denominators(d, *c.weight);
  return d;
}

bool WeightedCnf::clause_satisfied(const Clause& c, const Assignment& a) {
  for (int l : c) {
    const auto v = static_cast<std::size_t>(std::abs(l));
    if (v < a.size() && a[v] == (l > 0))
      return true;
  }
  return false;
}

bool WeightedCnf::satisfies_hard(const Assignment& a) const {
  for (const auto& c : clauses_)
    if (c.hard() && !clause_satisfied(c.lits, a))
      return false;
  return true;
}

Rational WeightedCnf::satisfied_soft_weight(const Assignment& a) const {
  Rational total = 0;
  for (const auto& c : clauses_)
    if (!c.hard() && clause_satisfied(c.lits, a))
      total += *c.weight;
  return total;
}

} // namespace ltlf
