#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oracle {

using ltlf::Formula;
using ltlf::NodeId;
using ltlf::Rational;
using ltlf::Trace;

namespace {

bool eval_op(Op op, std::uint32_t prop, const Trace& u, std::size_t i, const auto& left,
             const auto& right) {
  const std::size_t n = u.length();
  switch (op) {
  case Op::Prop: return (u[i] >> prop) & 1U;
  case Op::True: return true;
  case Op::False: return false;
  case Op::Not: return !left(i);
  case Op::Or: return left(i) || right(i);
  case Op::And: return left(i) && right(i);
  case Op::Implies: return !left(i) || right(i);
  case Op::Next: return i + 1 < n && left(i + 1);
  case Op::Eventually:
    for (std::size_t j = i; j < n; ++j)
      if (left(j))
        return true;
    return false;
  case Op::Globally:
    for (std::size_t j = i; j < n; ++j)
      if (!left(j))
        return false;
    return true;
  case Op::Until:
    for (std::size_t j = i; j < n; ++j) {
      if (!right(j))
        continue;
      bool before = true;
      for (std::size_t k = i; k < j; ++k)
        before = before && left(k);
      if (before)
        return true;
    }
    return false;
  }
  throw std::logic_error("bad op");
}

} // namespace

bool eval(const Formula& f, NodeId node, const Trace& u, std::size_t i) {
  const auto& nd = f.node(node);
  auto l = [&](std::size_t j) { return eval(f, nd.left, u, j); };
  auto r = [&](std::size_t j) { return eval(f, nd.right, u, j); };
  return eval_op(nd.label.op, nd.label.prop, u, i, l, r);
}

Rational loss(const ltlf::LabeledSample& s, const Formula& f) {
  std::int64_t wrong = 0;
  for (const auto& e : s.entries())
    wrong += sat(f, e.trace) != e.label;
  return Rational(wrong, static_cast<std::int64_t>(s.size()));
}

Rational weighted_loss(const ltlf::LabeledSample& s, const Formula& f,
                       const std::vector<Rational>& omega) {
  Rational total = 0;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (sat(f, s[k].trace) != s[k].label)
      total += omega[k];
  return total;
}

// ---------------------------------------------------------------------------

Enumerator::Enumerator(std::size_t props, const std::vector<Op>& ops, std::size_t max_size) {
  std::vector<std::vector<int>> by_size(max_size + 1);
  auto add = [&](Entry e) {
    const auto before = entries_.size();
    const int id = intern(std::move(e));
    if (entries_.size() != before)
      by_size[entries_[id].size()].push_back(id);
  };
  for (std::uint32_t p = 0; p < props; ++p)
    add({Op::Prop, p});
  for (Op op : ops)
    if (op == Op::True || op == Op::False)
      add({op});

  for (std::size_t s = 2; s <= max_size; ++s) {
    for (Op op : ops) {
      if (ltlf::arity(op) == 1) {
        for (int c : by_size[s - 1])
          add({op, 0, c});
      } else if (ltlf::arity(op) == 2) {
        // children of any smaller sizes whose subformula union has s - 1 ids
        std::vector<int> smaller;
        for (std::size_t t = 1; t < s; ++t)
          smaller.insert(smaller.end(), by_size[t].begin(), by_size[t].end());
        for (int a : smaller)
          for (int b : smaller) {
            const auto& sa = entries_[a].subs;
            const auto& sb = entries_[b].subs;
            if (sa.size() + sb.size() < s - 1)
              continue;
            std::vector<int> uni;
            std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(uni));
            if (uni.size() == s - 1)
              add({op, 0, a, b});
          }
      }
    }
  }
}

int Enumerator::intern(Entry e) {
  const auto key = std::make_tuple(e.op, e.prop, e.left, e.right);
  if (auto it = index_.find(key); it != index_.end())
    return it->second;
  const int id = static_cast<int>(entries_.size());
  std::set<int> subs{id};
  if (e.left >= 0)
    subs.insert(entries_[e.left].subs.begin(), entries_[e.left].subs.end());
  if (e.right >= 0)
    subs.insert(entries_[e.right].subs.begin(), entries_[e.right].subs.end());
  e.subs.assign(subs.begin(), subs.end());
  entries_.push_back(std::move(e));
  index_.emplace(key, id);
  return id;
}

bool Enumerator::eval(int id, const Trace& u, std::size_t i) const {
  const auto& e = entries_[id];
  auto l = [&](std::size_t j) { return eval(e.left, u, j); };
  auto r = [&](std::size_t j) { return eval(e.right, u, j); };
  return eval_op(e.op, e.prop, u, i, l, r);
}

Formula Enumerator::to_formula(int id) const {
  ltlf::DagBuilder b;
  std::map<int, NodeId> done;
  auto rec = [&](auto&& self, int k) -> NodeId {
    if (auto it = done.find(k); it != done.end())
      return it->second;
    const auto& e = entries_[k];
    NodeId out;
    if (e.op == Op::Prop)
      out = b.prop(e.prop);
    else if (ltlf::arity(e.op) == 0)
      out = b.constant(e.op == Op::True);
    else if (ltlf::arity(e.op) == 1)
      out = b.unary(e.op, self(self, e.left));
    else
      out = b.binary(e.op, self(self, e.left), self(self, e.right));
    done[k] = out;
    return out;
  };
  return b.build(rec(rec, id));
}

std::string Enumerator::text(int id) const {
  const auto& e = entries_[id];
  switch (ltlf::arity(e.op)) {
  case 0:
    return e.op == Op::Prop ? "p" + std::to_string(e.prop) : std::string(ltlf::op_token(e.op));
  case 1:
    return "(" + std::string(ltlf::op_token(e.op)) + " " + text(e.left) + ")";
  default:
    return "(" + text(e.left) + " " + std::string(ltlf::op_token(e.op)) + " " + text(e.right) + ")";
  }
}

// ---------------------------------------------------------------------------

namespace {

template <class F> void for_each_assignment(const ltlf::WeightedCnf& cnf, F&& f) {
  const int n = cnf.num_vars();
  if (n > 24)
    throw std::invalid_argument("too many variables for enumeration");
  ltlf::Assignment a(static_cast<std::size_t>(n) + 1, false);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (int v = 1; v <= n; ++v)
      a[v] = (bits >> (v - 1)) & 1U;
    bool hard = true;
    for (const auto& c : cnf.clauses()) {
      if (!c.hard())
        continue;
      bool sat = false;
      for (int l : c.lits)
        sat = sat || a[std::abs(l)] == (l > 0);
      if (!sat) {
        hard = false;
        break;
      }
    }
    if (hard)
      f(a);
  }
}

} // namespace

BruteResult brute_force_maxsat(const ltlf::WeightedCnf& cnf) {
  BruteResult r;
  for_each_assignment(cnf, [&](const ltlf::Assignment& a) {
    Rational w = 0;
    for (const auto& c : cnf.clauses()) {
      if (c.hard())
        continue;
      bool sat = false;
      for (int l : c.lits)
        sat = sat || a[std::abs(l)] == (l > 0);
      if (sat)
        w += *c.weight;
    }
    ++r.models;
    if (!r.hard_sat || w > r.best) {
      r.best = w;
      r.argmax = a;
    }
    r.hard_sat = true;
  });
  return r;
}

std::vector<ltlf::Assignment> all_models(const ltlf::WeightedCnf& cnf) {
  std::vector<ltlf::Assignment> out;
  for_each_assignment(cnf, [&](const ltlf::Assignment& a) { out.push_back(a); });
  return out;
}

Trace random_trace(std::mt19937_64& rng, std::size_t props, std::size_t min_len,
                   std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::uint64_t> sym(0, (std::uint64_t{1} << props) - 1);
  std::vector<ltlf::Symbol> s(len(rng));
  for (auto& x : s)
    x = sym(rng);
  return Trace(std::move(s));
}

ltlf::LabeledSample random_sample(std::mt19937_64& rng, std::size_t props, std::size_t count,
                                  std::size_t max_len) {
  std::set<Trace> seen;
  std::vector<ltlf::Example> ex;
  for (int tries = 0; ex.size() < count && tries < 10000; ++tries) {
    auto t = random_trace(rng, props, 1, max_len);
    if (!seen.insert(t).second)
      continue;
    ex.push_back({std::move(t), static_cast<bool>(rng() & 1U)});
  }
  if (ex.size() >= 2) {
    ex[0].label = true;
    ex[1].label = false;
  }
  return ltlf::LabeledSample(ltlf::Alphabet::numbered(props), ex);
}

Formula random_formula(std::mt19937_64& rng, std::size_t props, std::size_t nodes,
                       const std::vector<Op>& ops) {
  ltlf::DagBuilder b;
  std::vector<NodeId> pool;
  std::vector<Op> nullary, unary, binary;
  for (Op op : ops) {
    if (op == Op::Prop)
      continue;
    (ltlf::arity(op) == 0 ? nullary : ltlf::arity(op) == 1 ? unary : binary).push_back(op);
  }
  for (std::uint32_t p = 0; p < props; ++p)
    pool.push_back(b.prop(p));
  for (Op op : nullary)
    pool.push_back(b.constant(op == Op::True));
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  NodeId last = pool[pick(pool.size())];
  for (std::size_t k = 1; k < nodes; ++k) {
    const bool use_unary = !unary.empty() && (binary.empty() || (rng() & 1U));
    if (use_unary) {
      last = b.unary(unary[pick(unary.size())], pool[pick(pool.size())]);
    } else if (!binary.empty()) {
      last = b.binary(binary[pick(binary.size())], pool[pick(pool.size())], pool[pick(pool.size())]);
    } else {
      break;
    }
    pool.push_back(last);
  }
  return b.build(last);
}

std::vector<Op> all_ops() {
  return {std::begin(ltlf::kAllOps), std::end(ltlf::kAllOps)};
}

} // namespace oracle
