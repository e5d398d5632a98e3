#include "ltlf/learn.hpp"

#include <chrono>
#include <stdexcept>

namespace ltlf {

std::string_view to_string(LearnStatus s) {
  switch (s) {
  case LearnStatus::Solved: return "solved";
  case LearnStatus::SizeCapReached: return "size-cap";
  case LearnStatus::TimedOut: return "timeout";
  }
  return "?";
}

void LearnConfig::validate() const {
  if (kappa < Rational(0) || kappa > Rational(1))
    throw std::invalid_argument("kappa must lie in [0, 1], got " + to_string(kappa));
  if (max_size < 1)
    throw std::invalid_argument("max_size must be at least 1");
  if (weights == WeightChoice::Explicit && !explicit_weights)
    throw std::invalid_argument("explicit weights requested but none given");
}

WeightFn resolve_weights(const LabeledSample& s, const LearnConfig& config) {
  switch (config.weights) {
  case WeightChoice::Uniform: return omega_uniform(s);
  case WeightChoice::Rebalanced: return omega_rebalanced(s);
  case WeightChoice::Explicit:
    if (config.explicit_weights->size() != s.size())
      throw std::invalid_argument("explicit weights do not match the sample size");
    return *config.explicit_weights;
  }
  throw std::logic_error("bad weight choice");
}

LearnResult learn_minimal(const LabeledSample& s, const LearnConfig& config) {
  config.validate();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto since = [](Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  };

  const WeightFn omega = resolve_weights(s, config);
  const Deadline deadline = Deadline::after_seconds(config.timeout_seconds).min(config.deadline);
  const Rational target = Rational(1) - config.kappa;

  LearnResult result;
  for (std::size_t n = 1; n <= config.max_size; ++n) {
    if (deadline.expired()) {
      result.status = LearnStatus::TimedOut;
      result.seconds = since(start);
      return result;
    }
    const auto t0 = Clock::now();
    const auto inst = EncodingInstance::build(n, s, omega, config.ops);
    auto sol = solve_decision(inst.cnf(), target, {.seed = config.seed, .deadline = deadline});

    IterationStats it;
    it.n = n;
    it.vars = static_cast<std::size_t>(inst.cnf().num_vars());
    it.clauses = inst.cnf().clauses().size();
    it.outcome = sol.status;
    it.seconds = since(t0);
    it.conflicts = sol.stats.conflicts;
    result.iterations.push_back(it);

    switch (sol.status) {
    case MaxSatStatus::FeasibleAtTarget:
    case MaxSatStatus::Optimal: {
      Formula f = inst.decode(sol.assignment);
      result.achieved_wl = weighted_loss(s, f, omega);
      result.solver_weight = sol.satisfied_soft_weight;
      if (result.achieved_wl != Rational(1) - result.solver_weight)
        throw std::logic_error("soft weight and weighted loss disagree at n = " +
                               std::to_string(n));
      if (result.achieved_wl > config.kappa)
        throw std::logic_error("solver model exceeds the loss threshold");
      result.status = LearnStatus::Solved;
      result.formula = std::move(f);
      result.size_n = n;
      result.solution = std::move(sol);
      result.seconds = since(start);
      return result;
    }
    case MaxSatStatus::InfeasibleAtTarget:
      break;
    case MaxSatStatus::HardUnsat:
      throw std::logic_error("structural constraints unsatisfiable at n = " + std::to_string(n));
    case MaxSatStatus::TimedOut:
      result.status = LearnStatus::TimedOut;
      result.solution = std::move(sol);
      result.seconds = since(start);
      return result;
    }
  }
  result.status = LearnStatus::SizeCapReached;
  result.seconds = since(start);
  return result;
}

Formula trivial_perfect_formula(const LabeledSample& s) {
  DagBuilder b;
  auto next_chain = [&](std::size_t k, NodeId x) {
    for (std::size_t i = 0; i < k; ++i)
      x = b.unary(Op::Next, x);
    return x;
  };
  // Holds on u, fails on v.
  auto separator = [&](const Trace& u, const Trace& v) -> NodeId {
    const auto m = std::min(u.length(), v.length());
    for (std::size_t k = 0; k < m; ++k) {
      const Symbol diff = u[k] ^ v[k];
      if (diff == 0)
        continue;
      std::uint32_t p = 0;
      while (!((diff >> p) & 1U))
        ++p;
      NodeId atom = b.prop(p);
      if (!u.holds(k, p))
        atom = b.unary(Op::Not, atom);
      return next_chain(k, atom);
    }
    // one trace is a proper prefix of the other
    const NodeId longer = next_chain(m, b.constant(true));
    return u.length() > v.length() ? longer : b.unary(Op::Not, longer);
  };

  std::optional<NodeId> disj;
  for (const auto& pos : s.entries()) {
    if (!pos.label)
      continue;
    std::optional<NodeId> conj;
    for (const auto& neg : s.entries()) {
      if (neg.label)
        continue;
      const NodeId sep = separator(pos.trace, neg.trace);
      conj = conj ? b.binary(Op::And, *conj, sep) : sep;
    }
    const NodeId term = conj ? *conj : b.constant(true);
    disj = disj ? b.binary(Op::Or, *disj, term) : term;
  }
  return b.build(disj ? *disj : b.constant(false));
}

} // namespace ltlf
