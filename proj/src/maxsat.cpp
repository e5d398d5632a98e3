#include "ltlf/maxsat.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <ostream>
#include <sstream>

#include "ltlf/sat_solver.hpp"

namespace ltlf {

std::string_view to_string(MaxSatStatus s) {
  switch (s) {
  case MaxSatStatus::Optimal: return "optimal";
  case MaxSatStatus::FeasibleAtTarget: return "feasible";
  case MaxSatStatus::InfeasibleAtTarget: return "infeasible";
  case MaxSatStatus::HardUnsat: return "hard-unsat";
  case MaxSatStatus::TimedOut: return "timeout";
  }
  return "?";
}

namespace {

using sat::Lit;

// Cost literals grouped by integer weight, with an incremental "total
// falsified weight <= K" constraint for non-increasing K.
class BoundEncoder {
public:
  BoundEncoder(sat::Solver& solver, std::map<std::int64_t, std::vector<Lit>> groups)
      : solver_(solver), groups_(std::move(groups)) {}

  // Adds clauses forcing cost <= k, each extended by `extra` (an
  // activation literal) when given. The first call fixes the largest
  // bound that later calls may use. Returns false if the solver became
  // unsatisfiable at level 0.
  bool restrict(std::int64_t k, std::optional<Lit> extra) {
    if (!built_) {
      build(k);
      built_ = true;
    }
    bool ok = true;
    auto add = [&](std::vector<Lit> c) {
      if (extra)
        c.push_back(*extra);
      ++clauses_;
      ok = solver_.add_clause(c) && ok;
    };
    if (groups_.empty())
      return true;
    if (groups_.size() == 1) {
      const auto w = groups_.begin()->first;
      const auto& out = tot_[0];
      const auto allowed = static_cast<std::size_t>(k / w);
      if (allowed < out.size())
        add({~out[allowed]});
    } else if (groups_.size() == 2) {
      auto it = groups_.begin();
      const auto w1 = it->first;
      const auto w2 = std::next(it)->first;
      const auto& t1 = tot_[0];
      const auto& t2 = tot_[1];
      const auto max_a = static_cast<std::size_t>(k / w1);
      if (max_a < t1.size())
        add({~t1[max_a]});
      for (std::size_t a = 0; a <= std::min(max_a, t1.size()); ++a) {
        const auto b_allowed = static_cast<std::size_t>((k - static_cast<std::int64_t>(a) * w1) / w2);
        if (b_allowed >= t2.size())
          continue;
        if (a == 0)
          add({~t2[b_allowed]});
        else
          add({~t1[a - 1], ~t2[b_allowed]});
      }
    } else {
      for (const auto& [sum, lit] : gte_root_)
        if (sum > k)
          add({~lit});
    }
    return ok;
  }

  std::size_t clauses() const { return clauses_; }

private:
  Lit fresh() { return Lit::make(solver_.new_var()); }

  void emit(std::vector<Lit> c) {
    ++clauses_;
    solver_.add_clause(c);
  }

  // Outputs o[k-1] forced true whenever at least k inputs are true, for
  // k up to cap (the last output also covers larger counts).
  std::vector<Lit> totalizer(std::span<const Lit> in, std::size_t cap) {
    if (in.size() == 1)
      return {in[0]};
    const auto half = in.size() / 2;
    const auto a = totalizer(in.first(half), cap);
    const auto b = totalizer(in.subspan(half), cap);
    const auto n = std::min(in.size(), cap);
    std::vector<Lit> out;
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(fresh());
    for (std::size_t i = 0; i <= a.size(); ++i)
      for (std::size_t j = 0; j <= b.size(); ++j) {
        if (i + j == 0)
          continue;
        std::vector<Lit> c;
        if (i > 0)
          c.push_back(~a[i - 1]);
        if (j > 0)
          c.push_back(~b[j - 1]);
        c.push_back(out[std::min(i + j, n) - 1]);
        emit(std::move(c));
      }
    return out;
  }

  // Generalized totalizer: output literal per reachable weight sum, sums
  // above cap merged into cap + 1.
  using SumMap = std::map<std::int64_t, Lit>;
  SumMap gte(std::span<const std::pair<std::int64_t, Lit>> in, std::int64_t cap) {
    if (in.size() == 1)
      return {{std::min(in[0].first, cap + 1), in[0].second}};
    const auto half = in.size() / 2;
    const auto a = gte(in.first(half), cap);
    const auto b = gte(in.subspan(half), cap);
    SumMap out;
    auto out_lit = [&](std::int64_t s) {
      auto it = out.find(s);
      if (it == out.end())
        it = out.emplace(s, fresh()).first;
      return it->second;
    };
    for (const auto& [s, l] : a)
      emit({~l, out_lit(s)});
    for (const auto& [s, l] : b)
      emit({~l, out_lit(s)});
    for (const auto& [sa, la] : a)
      for (const auto& [sb, lb] : b)
        emit({~la, ~lb, out_lit(std::min(sa + sb, cap + 1))});
    return out;
  }

  void build(std::int64_t k0) {
    if (groups_.size() <= 2) {
      for (const auto& [w, lits] : groups_) {
        const auto cap = std::min<std::size_t>(lits.size(), static_cast<std::size_t>(k0 / w) + 1);
        tot_.push_back(totalizer(lits, cap));
      }
      return;
    }
    std::vector<std::pair<std::int64_t, Lit>> in;
    for (const auto& [w, lits] : groups_)
      for (Lit l : lits)
        in.emplace_back(w, l);
    gte_root_ = gte(in, k0);
  }

  sat::Solver& solver_;
  std::map<std::int64_t, std::vector<Lit>> groups_;
  bool built_ = false;
  std::vector<std::vector<Lit>> tot_;
  SumMap gte_root_;
  std::size_t clauses_ = 0;
};

class Engine {
public:
  Engine(const WeightedCnf& cnf, const MaxSatOptions& opt)
      : cnf_(cnf), opt_(opt), solver_(opt.seed), scale_(cnf.weight_scale()) {
    solver_.reserve_vars(static_cast<std::size_t>(cnf.num_vars()) + cnf.num_soft());
    for (int v = 0; v < cnf.num_vars(); ++v)
      solver_.new_var();
    std::map<std::int64_t, std::vector<Lit>> groups;
    std::vector<Lit> buf;
    for (const auto& c : cnf.clauses()) {
      buf.clear();
      for (int l : c.lits)
        buf.push_back(Lit::from_dimacs(l));
      if (c.hard()) {
        ok_ = solver_.add_clause(buf) && ok_;
        continue;
      }
      const Rational scaled = *c.weight * scale_;
      const auto w = scaled.numerator();
      total_ += w;
      if (buf.empty()) {
        fixed_cost_ += w;
        continue;
      }
      Lit cost;
      if (buf.size() == 1) {
        cost = ~buf[0];
      } else {
        cost = Lit::make(solver_.new_var());
        buf.push_back(cost);
        ok_ = solver_.add_clause(buf) && ok_;
      }
      groups[w].push_back(cost);
    }
    bound_.emplace(solver_, std::move(groups));
  }

  sat::Result solve(std::span<const Lit> assumptions = {}) {
    ++stats_.sat_calls;
    if (!ok_)
      return sat::Result::Unsat;
    const auto r = solver_.solve(assumptions, opt_.deadline);
    stats_.conflicts = solver_.stats().conflicts;
    stats_.decisions = solver_.stats().decisions;
    return r;
  }

  Assignment model() const {
    Assignment a(static_cast<std::size_t>(cnf_.num_vars()) + 1, false);
    for (int v = 1; v <= cnf_.num_vars(); ++v)
      a[v] = solver_.model_value(static_cast<sat::Var>(v - 1));
    return a;
  }

  // Falsified weight of a model, scaled.
  std::int64_t cost(const Assignment& a) const {
    const Rational sat = cnf_.satisfied_soft_weight(a);
    return total_ - (sat * scale_).numerator();
  }

  MaxSatSolution finish(MaxSatStatus status, Assignment a = {}) {
    MaxSatSolution s;
    s.status = status;
    if (!a.empty())
      s.satisfied_soft_weight = cnf_.satisfied_soft_weight(a);
    s.assignment = std::move(a);
    stats_.bound_clauses = bound_->clauses();
    s.stats = stats_;
    return s;
  }

  const WeightedCnf& cnf_;
  MaxSatOptions opt_;
  sat::Solver solver_;
  std::int64_t scale_;
  std::int64_t total_ = 0;
  std::int64_t fixed_cost_ = 0;
  bool ok_ = true;
  std::optional<BoundEncoder> bound_;
  MaxSatStats stats_;
};

} // namespace

MaxSatSolution solve_optimal(const WeightedCnf& cnf, const MaxSatOptions& options) {
  Engine e(cnf, options);
  auto r = e.solve();
  if (r == sat::Result::Unknown)
    return e.finish(MaxSatStatus::TimedOut);
  if (r == sat::Result::Unsat)
    return e.finish(MaxSatStatus::HardUnsat);
  Assignment best = e.model();
  std::int64_t best_cost = e.cost(best);
  while (best_cost > e.fixed_cost_) {
    if (!e.bound_->restrict(best_cost - 1 - e.fixed_cost_, std::nullopt))
      break;
    r = e.solve();
    if (r == sat::Result::Unknown)
      return e.finish(MaxSatStatus::TimedOut, std::move(best));
    if (r == sat::Result::Unsat)
      break;
    best = e.model();
    const auto c = e.cost(best);
    if (c >= best_cost)
      throw std::logic_error("bound layer admitted a model that is not better");
    best_cost = c;
  }
  return e.finish(MaxSatStatus::Optimal, std::move(best));
}

MaxSatSolution solve_decision(const WeightedCnf& cnf, const Rational& target,
                              const MaxSatOptions& options) {
  Engine e(cnf, options);
  // satisfied >= target  <=>  falsified <= total - target
  const Rational slack = (cnf.total_soft_weight() - target) * e.scale_;
  const std::int64_t k = slack < 0 ? -1 : floor(slack) - e.fixed_cost_;
  if (k >= 0) {
    const Lit act = Lit::make(e.solver_.new_var());
    e.bound_->restrict(k, ~act);
    const Lit assume[] = {act};
    const auto r = e.solve(assume);
    if (r == sat::Result::Unknown)
      return e.finish(MaxSatStatus::TimedOut);
    if (r == sat::Result::Sat) {
      auto m = e.model();
      if (e.cost(m) > k + e.fixed_cost_)
        throw std::logic_error("bound layer admitted a model below the target");
      return e.finish(MaxSatStatus::FeasibleAtTarget, std::move(m));
    }
  }
  // Tell an unreachable target apart from unsatisfiable hard clauses.
  const auto r = e.solve();
  if (r == sat::Result::Unknown)
    return e.finish(MaxSatStatus::TimedOut);
  if (r == sat::Result::Unsat)
    return e.finish(MaxSatStatus::HardUnsat);
  return e.finish(MaxSatStatus::InfeasibleAtTarget);
}

// ---------------------------------------------------------------------------
// WCNF

void export_wcnf(std::ostream& out, const WeightedCnf& cnf,
                 const std::function<std::string(int)>& describe) {
  const auto scale = cnf.weight_scale();
  const Rational scaled_total = cnf.total_soft_weight() * scale;
  const std::int64_t top = scaled_total.numerator() + 1;
  out << "c weight-scale " << scale << '\n';
  if (describe)
    for (int v = 1; v <= cnf.num_vars(); ++v)
      out << "c var " << v << ' ' << describe(v) << '\n';
  out << "p wcnf " << cnf.num_vars() << ' ' << cnf.clauses().size() << ' ' << top << '\n';
  for (const auto& c : cnf.clauses()) {
    if (c.hard())
      out << top;
    else
      out << (*c.weight * scale).numerator();
    for (int l : c.lits)
      out << ' ' << l;
    out << " 0\n";
  }
}

namespace {

std::int64_t parse_int(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(tok, &used);
    if (used != tok.size())
      throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw WcnfError("line " + std::to_string(line) + ": bad integer '" + tok + "'");
  }
}

} // namespace

WeightedCnf read_wcnf(std::istream& in) {
  WeightedCnf cnf;
  std::int64_t scale = 1;
  std::int64_t top = -1;
  long long declared = -1;
  std::size_t count = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first))
      continue;
    if (first == "c") {
      std::string key;
      if (ls >> key && key == "weight-scale") {
        std::string v;
        ls >> v;
        scale = parse_int(v, lineno);
        if (scale <= 0)
          throw WcnfError("line " + std::to_string(lineno) + ": weight scale must be positive");
      }
      continue;
    }
    if (first == "p") {
      std::string fmt, nv, nc, t;
      if (!(ls >> fmt >> nv >> nc >> t) || fmt != "wcnf")
        throw WcnfError("line " + std::to_string(lineno) + ": expected 'p wcnf <vars> <clauses> <top>'");
      const auto vars = parse_int(nv, lineno);
      declared = parse_int(nc, lineno);
      top = parse_int(t, lineno);
      while (cnf.num_vars() < vars)
        cnf.new_var();
      continue;
    }
    if (top < 0)
      throw WcnfError("line " + std::to_string(lineno) + ": clause before the problem line");
    const auto w = parse_int(first, lineno);
    Clause c;
    std::string tok;
    bool closed = false;
    while (ls >> tok) {
      const auto l = parse_int(tok, lineno);
      if (l == 0) {
        closed = true;
        break;
      }
      if (std::llabs(l) > cnf.num_vars())
        throw WcnfError("line " + std::to_string(lineno) + ": literal out of range");
      c.push_back(static_cast<int>(l));
    }
    if (!closed)
      throw WcnfError("line " + std::to_string(lineno) + ": clause not terminated by 0");
    ++count;
    if (w >= top)
      cnf.add_hard(std::move(c));
    else if (w > 0)
      cnf.add_soft(std::move(c), Rational(w, scale));
    else if (w < 0)
      throw WcnfError("line " + std::to_string(lineno) + ": negative weight");
  }
  if (top < 0)
    throw WcnfError("missing problem line");
  if (declared >= 0 && static_cast<std::size_t>(declared) != count)
    throw WcnfError("problem line declares " + std::to_string(declared) + " clauses, found " +
                    std::to_string(count));
  return cnf;
}

Assignment import_model(std::istream& in, const WeightedCnf& cnf) {
  const auto nv = static_cast<std::size_t>(cnf.num_vars());
  Assignment a(nv + 1, false);
  std::vector<std::uint8_t> set(nv + 1, 0);
  auto assign = [&](std::int64_t l, std::size_t lineno) {
    const auto v = static_cast<std::size_t>(std::llabs(l));
    if (v == 0 || v > nv)
      throw WcnfError("line " + std::to_string(lineno) + ": variable " + std::to_string(v) +
                      " out of range");
    const bool value = l > 0;
    if (set[v] && a[v] != value)
      throw WcnfError("line " + std::to_string(lineno) + ": variable " + std::to_string(v) +
                      " assigned both ways");
    set[v] = 1;
    a[v] = value;
  };
  std::string line;
  std::size_t lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;)
      toks.push_back(t);
    if (toks.empty())
      continue;
    const auto& head = toks.front();
    if (head == "c" || head == "s" || head == "o")
      continue;
    std::size_t from = 0;
    if (head == "v") {
      from = 1;
      if (toks.size() == 2 && nv >= 2 && toks[1].size() == nv &&
          toks[1].find_first_not_of("01") == std::string::npos) {
        for (std::size_t v = 1; v <= nv; ++v)
          assign(toks[1][v - 1] == '1' ? static_cast<std::int64_t>(v) : -static_cast<std::int64_t>(v),
                 lineno);
        any = true;
        continue;
      }
    }
    for (std::size_t k = from; k < toks.size(); ++k) {
      const auto l = parse_int(toks[k], lineno);
      if (l != 0)
        assign(l, lineno);
    }
    any = true;
  }
  if (!any)
    throw WcnfError("model file contains no assignment");
  for (const auto& c : cnf.clauses())
    if (c.hard() && !WeightedCnf::clause_satisfied(c.lits, a))
      throw WcnfError("model violates a hard clause");
  return a;
}

void write_model(std::ostream& out, const Assignment& a) {
  out << 'v';
  for (std::size_t v = 1; v < a.size(); ++v)
    out << ' ' << (a[v] ? "" : "-") << v;
  out << " 0\n";
}

} // namespace ltlf
