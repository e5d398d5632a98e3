#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ltlf/deadline.hpp"
#include "ltlf/encoding.hpp"
#include "ltlf/maxsat.hpp"
#include "ltlf/sample.hpp"

namespace ltlf {

enum class WeightChoice { Uniform, Rebalanced, Explicit };

struct LearnConfig {
  Rational kappa = 0;
  WeightChoice weights = WeightChoice::Uniform;
  std::optional<WeightFn> explicit_weights; // for WeightChoice::Explicit
  OperatorSet ops = OperatorSet::full();
  std::size_t max_size = 40;
  std::optional<double> timeout_seconds;
  Deadline deadline; // combined with timeout_seconds
  std::uint64_t seed = 0;

  // Throws std::invalid_argument.
  void validate() const;
};

enum class LearnStatus { Solved, SizeCapReached, TimedOut };

std::string_view to_string(LearnStatus s);

struct IterationStats {
  std::size_t n = 0;
  std::size_t vars = 0;
  std::size_t clauses = 0;
  MaxSatStatus outcome = MaxSatStatus::TimedOut;
  double seconds = 0;
  std::uint64_t conflicts = 0;
};

struct LearnResult {
  LearnStatus status = LearnStatus::TimedOut;
  std::optional<Formula> formula; // only when Solved
  std::size_t size_n = 0;         // the size bound the formula was found at
  Rational achieved_wl = 0;
  Rational solver_weight = 0; // satisfied soft weight reported by the solver
  std::vector<IterationStats> iterations;
  MaxSatSolution solution; // final solver answer, for independent checks
  double seconds = 0;
};

WeightFn resolve_weights(const LabeledSample& s, const LearnConfig& config);

// Smallest formula over config.ops whose weighted loss is at most kappa,
// searching n = 1, 2, ... up to max_size.
LearnResult learn_minimal(const LabeledSample& s, const LearnConfig& config);

// A formula with loss 0 on s: the disjunction over positive traces u of the
// conjunction over negative traces v of a formula telling u from v, built
// from X-chains over the first differing position (or over the length when
// one trace is a prefix of the other). true/false for single-class samples.
Formula trivial_perfect_formula(const LabeledSample& s);

} // namespace ltlf
