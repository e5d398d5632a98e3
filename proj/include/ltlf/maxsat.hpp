#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ltlf/cnf.hpp"
#include "ltlf/deadline.hpp"

namespace ltlf {

enum class MaxSatStatus {
  Optimal,            // maximal soft weight reached
  FeasibleAtTarget,   // soft weight >= target
  InfeasibleAtTarget, // hard clauses satisfiable, target unreachable
  HardUnsat,
  TimedOut,
};

std::string_view to_string(MaxSatStatus s);

struct MaxSatOptions {
  std::uint64_t seed = 0;
  Deadline deadline;
};

struct MaxSatStats {
  std::uint64_t sat_calls = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::size_t bound_clauses = 0; // cardinality / pseudo-Boolean layer
};

struct MaxSatSolution {
  MaxSatStatus status = MaxSatStatus::TimedOut;
  // Empty unless a hard model was found. For TimedOut this is the best
  // model seen, if any.
  Assignment assignment;
  Rational satisfied_soft_weight = 0;
  MaxSatStats stats;

  bool has_model() const { return !assignment.empty(); }
};

// Exact maximum of the satisfied soft weight: linear SAT-UNSAT descent on
// the falsified weight.
MaxSatSolution solve_optimal(const WeightedCnf& cnf, const MaxSatOptions& options = {});

// Any hard model whose satisfied soft weight is at least `target`.
MaxSatSolution solve_decision(const WeightedCnf& cnf, const Rational& target,
                              const MaxSatOptions& options = {});

class WcnfError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// DIMACS WCNF: "c weight-scale D", optional variable description comments,
// "p wcnf <vars> <clauses> <top>", then "<weight> <lits> 0" per clause.
// Soft weights are written multiplied by D; hard clauses carry top.
void export_wcnf(std::ostream& out, const WeightedCnf& cnf,
                 const std::function<std::string(int)>& describe = {});
// Reads the format above back (soft weights divided by D, D = 1 when the
// scale comment is absent). Throws WcnfError.
WeightedCnf read_wcnf(std::istream& in);

// Solver output: "v" lines of signed literals (or a single 0/1 string of
// length <vars>); "c", "s" and "o" lines are ignored; a bare line of
// integers is accepted as well. Unmentioned variables are false. Throws
// WcnfError when malformed or when a hard clause is violated.
Assignment import_model(std::istream& in, const WeightedCnf& cnf);

void write_model(std::ostream& out, const Assignment& a);

} // namespace ltlf
