#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ltlf/deadline.hpp"

namespace ltlf::sat {

using Var = std::uint32_t;

// Literal: 2 * var + negated.
struct Lit {
  std::uint32_t x = 0;

  static constexpr Lit make(Var v, bool negated = false) { return Lit{2 * v + (negated ? 1U : 0U)}; }
  // From a DIMACS literal (+v / -v, v >= 1).
  static Lit from_dimacs(int lit) {
    return lit > 0 ? make(static_cast<Var>(lit - 1)) : make(static_cast<Var>(-lit - 1), true);
  }
  constexpr Var var() const { return x >> 1; }
  constexpr bool negated() const { return x & 1U; }
  constexpr Lit operator~() const { return Lit{x ^ 1U}; }
  int to_dimacs() const { return negated() ? -static_cast<int>(var() + 1) : static_cast<int>(var() + 1); }

  friend constexpr bool operator==(Lit, Lit) = default;
};

enum class Result { Sat, Unsat, Unknown };

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

// Conflict-driven clause learning solver: two watched literals, first-UIP
// learning with clause minimization, VSIDS branching, phase saving, Luby
// restarts and LBD-based learnt clause reduction. Search is deterministic
// for a given seed. Not thread-safe; use one instance per thread.
class Solver {
public:
  explicit Solver(std::uint64_t seed = 0, bool random_phase = false);

  Var new_var();
  void reserve_vars(std::size_t n);
  std::size_t num_vars() const { return assigns_.size(); }

  // Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  // Unknown only when the deadline expires.
  Result solve(std::span<const Lit> assumptions = {}, const Deadline& deadline = {});

  // Model of the last Sat answer.
  bool model_value(Var v) const { return model_[v]; }
  bool model_value(Lit l) const { return model_[l.var()] != l.negated(); }
  const std::vector<bool>& model() const { return model_; }

  const Stats& stats() const { return stats_; }
  bool okay() const { return ok_; }

private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = 0xffffffffU;
  static constexpr std::uint8_t kTrue = 0, kFalse = 1, kUndef = 2;

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    std::uint32_t lbd = 0;
    double activity = 0;
  };
  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  std::uint8_t value(Lit l) const {
    const auto a = assigns_[l.var()];
    return a == kUndef ? kUndef : static_cast<std::uint8_t>(a ^ static_cast<std::uint8_t>(l.negated()));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(CRef cr);
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level, std::uint32_t& lbd);
  bool redundant(Lit l);
  void backtrack(int level);
  Lit pick_branch();
  Result search(std::int64_t conflict_budget, std::span<const Lit> assumptions,
                const Deadline& deadline);
  void reduce_db();
  void bump_var(Var v);
  void bump_clause(Clause& c);

  // Binary max-heap over variable activity.
  void heap_insert(Var v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  Var heap_pop();
  bool in_heap(Var v) const { return heap_index_[v] >= 0; }

  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::uint8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<bool> polarity_;
  std::vector<double> activity_;
  std::vector<Var> heap_;
  std::vector<int> heap_index_;
  std::vector<std::uint8_t> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<bool> model_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_clear_;

  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  double max_learnts_ = 0;
  std::size_t original_clauses_ = 0;
  std::mt19937_64 rng_;
  bool random_phase_;
  Stats stats_;
};

} // namespace ltlf::sat
