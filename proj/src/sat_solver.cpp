#include "ltlf/sat_solver.hpp"

#include <algorithm>
#include <cmath>

namespace ltlf::sat {

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr std::int64_t kRestartUnit = 100;

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

enum class Outcome { Sat, Unsat, Restart, Timeout };

} // namespace

Solver::Solver(std::uint64_t seed, bool random_phase) : rng_(seed), random_phase_(random_phase) {}

void Solver::reserve_vars(std::size_t n) {
  assigns_.reserve(n);
  level_.reserve(n);
  reason_.reserve(n);
  polarity_.reserve(n);
  activity_.reserve(n);
  heap_index_.reserve(n);
  seen_.reserve(n);
  watches_.reserve(2 * n);
}

Var Solver::new_var() {
  const auto v = static_cast<Var>(assigns_.size());
  assigns_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_index_.push_back(-1);
  if (random_phase_) {
    polarity_.push_back(rng_() & 1U);
    activity_.push_back(static_cast<double>(rng_() >> 11) * 0x1.0p-53 * 1e-5);
  } else {
    polarity_.push_back(false);
    activity_.push_back(0.0);
  }
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::span<const Lit> input) {
  if (!ok_)
    return false;
  backtrack(0);
  std::vector<Lit> lits(input.begin(), input.end());
  std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) { return a.x < b.x; });
  std::size_t j = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Lit l = lits[i];
    if (value(l) == kTrue || (i + 1 < lits.size() && lits[i + 1] == ~l))
      return true;
    if (value(l) == kFalse || (j > 0 && lits[j - 1] == l))
      continue;
    lits[j++] = l;
  }
  lits.resize(j);
  if (lits.empty())
    return ok_ = false;
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason)
      ok_ = false;
    return ok_;
  }
  const auto cr = static_cast<CRef>(clauses_.size());
  clauses_.push_back(Clause{std::move(lits)});
  attach(cr);
  ++original_clauses_;
  return true;
}

void Solver::attach(CRef cr) {
  const auto& c = clauses_[cr].lits;
  watches_[c[0].x].push_back({cr, c[1]});
  watches_[c[1].x].push_back({cr, c[0]});
}

void Solver::enqueue(Lit l, CRef reason) {
  const Var v = l.var();
  assigns_[v] = l.negated() ? kFalse : kTrue;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  CRef conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    auto& ws = watches_[false_lit.x];
    ++stats_.propagations;
    std::size_t i = 0, j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.cref];
      if (c.deleted) {
        ++i;
        continue;
      }
      auto& lits = c.lits;
      if (lits[0] == false_lit)
        std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      const Watcher keep{w.cref, first};
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = keep;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != kFalse) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1].x].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      ws[j++] = keep;
      if (value(first) == kFalse) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < end)
          ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason)
      break;
  }
  return conflict;
}

bool Solver::redundant(Lit l) {
  const CRef r = reason_[l.var()];
  if (r == kNoReason)
    return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    const Var v = lits[k].var();
    if (!seen_[v] && level_[v] > 0)
      return false;
  }
  return true;
}

void Solver::analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level,
                     std::uint32_t& lbd) {
  learnt.clear();
  learnt.push_back(Lit{});
  int path = 0;
  bool have_p = false;
  Lit p{};
  std::size_t index = trail_.size();
  CRef cref = conflict;
  do {
    Clause& c = clauses_[cref];
    if (c.learnt)
      bump_clause(c);
    for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
      const Lit q = c.lits[k];
      const Var v = q.var();
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    have_p = true;
    cref = reason_[p.var()];
    seen_[p.var()] = 0;
    --path;
  } while (path > 0);
  learnt[0] = ~p;

  analyze_clear_.assign(learnt.begin(), learnt.end());
  std::size_t j = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    if (!redundant(learnt[k]))
      learnt[j++] = learnt[k];
  learnt.resize(j);

  if (learnt.size() == 1) {
    backtrack_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[learnt[k].var()] > level_[learnt[max_i].var()])
        max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[learnt[1].var()];
  }

  std::vector<int> levels;
  levels.reserve(learnt.size());
  for (const Lit l : learnt)
    levels.push_back(level_[l.var()]);
  std::sort(levels.begin(), levels.end());
  lbd = static_cast<std::uint32_t>(std::unique(levels.begin(), levels.end()) - levels.begin());

  for (const Lit l : analyze_clear_)
    seen_[l.var()] = 0;
}

void Solver::backtrack(int level) {
  if (decision_level() <= level)
    return;
  const auto stop = static_cast<std::size_t>(trail_lim_[level]);
  for (std::size_t i = trail_.size(); i-- > stop;) {
    const Var v = trail_[i].var();
    polarity_[v] = assigns_[v] == kTrue;
    assigns_[v] = kUndef;
    reason_[v] = kNoReason;
    if (!in_heap(v))
      heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(level);
  qhead_ = stop;
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const Var v = heap_pop();
    if (assigns_[v] == kUndef)
      return Lit::make(v, !polarity_[v]);
  }
  return Lit{0xffffffffU};
}

void Solver::bump_var(Var v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto& a : activity_)
      a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (in_heap(v))
    heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void Solver::bump_clause(Clause& c) {
  if ((c.activity += clause_inc_) > 1e20) {
    for (auto cr : learnts_)
      clauses_[cr].activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void Solver::reduce_db() {
  std::sort(learnts_.begin(), learnts_.end(), [&](CRef a, CRef b) {
    const auto& ca = clauses_[a];
    const auto& cb = clauses_[b];
    if (ca.lbd != cb.lbd)
      return ca.lbd > cb.lbd;
    return ca.activity < cb.activity;
  });
  const std::size_t half = learnts_.size() / 2;
  std::vector<CRef> kept;
  kept.reserve(learnts_.size());
  for (std::size_t i = 0; i < learnts_.size(); ++i) {
    Clause& c = clauses_[learnts_[i]];
    const bool locked = reason_[c.lits[0].var()] == learnts_[i] && value(c.lits[0]) == kTrue;
    if (i < half && !locked && c.lbd > 2) {
      c.deleted = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
    } else {
      kept.push_back(learnts_[i]);
    }
  }
  learnts_ = std::move(kept);
  for (auto& ws : watches_)
    std::erase_if(ws, [&](const Watcher& w) { return clauses_[w.cref].deleted; });
}

Result Solver::solve(std::span<const Lit> assumptions, const Deadline& deadline) {
  model_.clear();
  if (!ok_)
    return Result::Unsat;
  backtrack(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return Result::Unsat;
  }
  max_learnts_ = std::max(2000.0, static_cast<double>(original_clauses_) / 3.0);
  for (int round = 0;; ++round) {
    const auto budget = static_cast<std::int64_t>(luby(2.0, round) * kRestartUnit);
    const Result r = search(budget, assumptions, deadline);
    if (r != Result::Unknown || deadline.expired()) {
      backtrack(0);
      return r;
    }
    ++stats_.restarts;
    max_learnts_ *= 1.05;
  }
}

Result Solver::search(std::int64_t conflict_budget, std::span<const Lit> assumptions,
                      const Deadline& deadline) {
  std::int64_t conflicts_here = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const CRef conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      ++conflicts_here;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      int bt = 0;
      std::uint32_t lbd = 0;
      analyze(conflict, learnt, bt, lbd);
      backtrack(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const auto cr = static_cast<CRef>(clauses_.size());
        clauses_.push_back(Clause{learnt, true, false, lbd, 0.0});
        learnts_.push_back(cr);
        attach(cr);
        bump_clause(clauses_[cr]);
        enqueue(learnt[0], cr);
      }
      var_inc_ /= kVarDecay;
      clause_inc_ /= kClauseDecay;
      if ((stats_.conflicts & 63U) == 0 && deadline.expired())
        return Result::Unknown;
      continue;
    }

    if (conflicts_here >= conflict_budget) {
      backtrack(0);
      return Result::Unknown;
    }
    if (static_cast<double>(learnts_.size()) >= max_learnts_ + static_cast<double>(trail_.size()))
      reduce_db();

    Lit next{0xffffffffU};
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      const Lit a = assumptions[decision_level()];
      const auto v = value(a);
      if (v == kTrue) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (v == kFalse) {
        return Result::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next.x == 0xffffffffU) {
      ++stats_.decisions;
      if ((stats_.decisions & 1023U) == 0 && deadline.expired())
        return Result::Unknown;
      next = pick_branch();
      if (next.x == 0xffffffffU) {
        model_.assign(assigns_.size(), false);
        for (Var v = 0; v < assigns_.size(); ++v)
          model_[v] = assigns_[v] == kTrue;
        return Result::Sat;
      }
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

// ---------------------------------------------------------------------------
// Heap

void Solver::heap_insert(Var v) {
  heap_index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const Var v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v])
      break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const Var v = heap_[i];
  const std::size_t n = heap_.size();
  while (2 * i + 1 < n) {
    std::size_t child = 2 * i + 1;
    if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]])
      ++child;
    if (activity_[heap_[child]] <= activity_[v])
      break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

Var Solver::heap_pop() {
  const Var top = heap_[0];
  heap_index_[top] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last] = 0;
    heap_down(0);
  }
  return top;
}

} // namespace ltlf::sat
