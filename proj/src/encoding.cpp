#include "ltlf/encoding.hpp"

#include <algorithm>
#include <cctype>

#include "ltlf/tseitin.hpp"

namespace ltlf {

OperatorSet OperatorSet::full() {
  return OperatorSet(std::vector<Op>(std::begin(kAllOps), std::end(kAllOps)));
}

OperatorSet::OperatorSet(std::vector<Op> ops) {
  for (Op op : ops)
    if (op != Op::Prop)
      ops_.push_back(op);
  std::sort(ops_.begin(), ops_.end());
  ops_.erase(std::unique(ops_.begin(), ops_.end()), ops_.end());
}

OperatorSet OperatorSet::parse(std::string_view list) {
  std::vector<Op> ops;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos)
      end = list.size();
    auto tok = list.substr(start, end - start);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
      tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
      tok.remove_suffix(1);
    if (!tok.empty()) {
      auto op = op_from_token(tok);
      if (!op)
        throw std::invalid_argument("unknown operator '" + std::string(tok) + "'");
      ops.push_back(*op);
    }
    start = end + 1;
  }
  return OperatorSet(std::move(ops));
}

bool OperatorSet::contains(Op op) const {
  return op == Op::Prop || std::binary_search(ops_.begin(), ops_.end(), op);
}

std::string OperatorSet::to_string() const {
  std::string out;
  for (Op op : ops_) {
    if (!out.empty())
      out += ',';
    out += op_token(op);
  }
  return out;
}

std::vector<Label> OperatorSet::labels(const Alphabet& alphabet) const {
  std::vector<Label> out;
  for (std::uint32_t p = 0; p < alphabet.size(); ++p)
    out.push_back(Label::proposition(p));
  for (Op op : ops_)
    out.push_back(Label::of(op));
  return out;
}

// ---------------------------------------------------------------------------

EncodingInstance::EncodingInstance(std::size_t n, Alphabet alphabet, OperatorSet ops)
    : n_(n), alphabet_(std::move(alphabet)), ops_(std::move(ops)) {
  if (n_ < 1)
    throw std::invalid_argument("formula size must be at least 1");
  labels_ = ops_.labels(alphabet_);
  if (std::none_of(labels_.begin(), labels_.end(), [](const Label& l) { return arity(l.op) == 0; }))
    throw std::invalid_argument("operator set has no proposition or constant");
  tags_.push_back({VarKind::Aux});
  add_structural();
}

int EncodingInstance::fresh(VarTag tag) {
  tags_.push_back(tag);
  return cnf_.new_var();
}

int EncodingInstance::x(std::size_t node, std::size_t label) const {
  return x_base_ + static_cast<int>((node - 1) * labels_.size() + label);
}

int EncodingInstance::l(std::size_t node, std::size_t child) const {
  return l_base_[node] + static_cast<int>(child - 1);
}

int EncodingInstance::r(std::size_t node, std::size_t child) const {
  return r_base_[node] + static_cast<int>(child - 1);
}

int EncodingInstance::y(std::size_t node, std::size_t position, std::size_t trace) const {
  const auto& t = traces_.at(trace);
  return t.y_base + static_cast<int>((node - 1) * t.trace.length() + position);
}

std::size_t EncodingInstance::label_index(const Label& label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (labels_[k] == label)
      return k;
  throw std::out_of_range("label not in the operator set");
}

namespace {

void exactly_one(WeightedCnf& cnf, const std::vector<int>& vars) {
  cnf.add_hard(Clause(vars.begin(), vars.end()));
  for (std::size_t a = 0; a < vars.size(); ++a)
    for (std::size_t b = a + 1; b < vars.size(); ++b)
      cnf.add_hard({-vars[a], -vars[b]});
}

} // namespace

void EncodingInstance::add_structural() {
  const auto nl = labels_.size();
  x_base_ = cnf_.num_vars() + 1;
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t k = 0; k < nl; ++k)
      fresh({VarKind::Label, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k)});
  l_base_.assign(n_ + 1, 0);
  r_base_.assign(n_ + 1, 0);
  for (std::size_t i = 2; i <= n_; ++i) {
    l_base_[i] = cnf_.num_vars() + 1;
    for (std::size_t j = 1; j < i; ++j)
      fresh({VarKind::Left, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  }
  for (std::size_t i = 2; i <= n_; ++i) {
    r_base_[i] = cnf_.num_vars() + 1;
    for (std::size_t j = 1; j < i; ++j)
      fresh({VarKind::Right, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  }

  auto count = [this](std::size_t& field, auto&& emit) {
    const auto before = cnf_.clauses().size();
    emit();
    field += cnf_.clauses().size() - before;
  };

  count(counts_.label_unique, [&] {
    for (std::size_t i = 1; i <= n_; ++i) {
      std::vector<int> vs;
      for (std::size_t k = 0; k < nl; ++k)
        vs.push_back(x(i, k));
      exactly_one(cnf_, vs);
    }
  });
  count(counts_.child_unique, [&] {
    for (std::size_t i = 2; i <= n_; ++i) {
      std::vector<int> ls, rs;
      for (std::size_t j = 1; j < i; ++j) {
        ls.push_back(l(i, j));
        rs.push_back(r(i, j));
      }
      exactly_one(cnf_, ls);
      exactly_one(cnf_, rs);
    }
  });
  count(counts_.first_node, [&] {
    Clause c;
    for (std::size_t k = 0; k < nl; ++k)
      if (arity(labels_[k].op) == 0)
        c.push_back(x(1, k));
    cnf_.add_hard(std::move(c));
  });
  count(counts_.unary_children, [&] {
    for (std::size_t i = 2; i <= n_; ++i)
      for (std::size_t k = 0; k < nl; ++k) {
        if (arity(labels_[k].op) != 1)
          continue;
        const int guard[] = {-x(i, k)};
        for (std::size_t j = 1; j < i; ++j)
          gate::equal(cnf_, guard, r(i, j), l(i, j));
      }
  });
}

std::size_t EncodingInstance::register_trace(const Trace& u) {
  const auto idx = traces_.size();
  traces_.push_back({u, cnf_.num_vars() + 1});
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t t = 0; t < u.length(); ++t)
      fresh({VarKind::Value, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t),
             static_cast<std::uint32_t>(idx)});
  return idx;
}

void EncodingInstance::add_semantic(std::size_t trace) {
  if (trace >= traces_.size())
    throw std::out_of_range("trace " + std::to_string(trace) + " is not registered");
  if (traces_[trace].semantic)
    return;
  traces_[trace].semantic = true;
  const Trace u = traces_[trace].trace;
  const std::size_t m = u.length();
  const auto before = cnf_.clauses().size();

  bool has_unary = false, has_binary = false;
  for (const auto& lb : labels_) {
    has_unary |= arity(lb.op) == 1;
    has_binary |= arity(lb.op) == 2;
  }
  auto Y = [&](std::size_t i, std::size_t t) { return y(i, t, trace); };

  for (std::size_t i = 1; i <= n_; ++i) {
    // Values of the chosen children. With a single candidate child the
    // child's own y variables are used directly.
    std::vector<int> lv(m), rv(m);
    if (i >= 2 && (has_unary || has_binary)) {
      for (int pass = 0; pass < (has_binary ? 2 : 1); ++pass) {
        auto& cv = pass == 0 ? lv : rv;
        if (i == 2) {
          for (std::size_t t = 0; t < m; ++t)
            cv[t] = Y(1, t);
          continue;
        }
        for (std::size_t t = 0; t < m; ++t)
          cv[t] = fresh({VarKind::Aux, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t),
                         static_cast<std::uint32_t>(trace)});
        for (std::size_t j = 1; j < i; ++j) {
          const int guard[] = {pass == 0 ? -l(i, j) : -r(i, j)};
          for (std::size_t t = 0; t < m; ++t)
            gate::equal(cnf_, guard, cv[t], Y(j, t));
        }
      }
    }

    for (std::size_t k = 0; k < labels_.size(); ++k) {
      const Label lb = labels_[k];
      if (i == 1 && arity(lb.op) != 0)
        continue;
      const int guard[] = {-x(i, k)};
      for (std::size_t t = 0; t < m; ++t) {
        const int out = Y(i, t);
        const bool last = t + 1 == m;
        switch (lb.op) {
        case Op::Prop: gate::constant(cnf_, guard, out, u.holds(t, lb.prop)); break;
        case Op::True: gate::constant(cnf_, guard, out, true); break;
        case Op::False: gate::constant(cnf_, guard, out, false); break;
        case Op::Not: gate::equal(cnf_, guard, out, -lv[t]); break;
        case Op::Or: {
          const int ins[] = {lv[t], rv[t]};
          gate::disj(cnf_, guard, out, ins);
          break;
        }
        case Op::And: {
          const int ins[] = {lv[t], rv[t]};
          gate::conj(cnf_, guard, out, ins);
          break;
        }
        case Op::Implies: {
          const int ins[] = {-lv[t], rv[t]};
          gate::disj(cnf_, guard, out, ins);
          break;
        }
        case Op::Next:
          if (last)
            gate::constant(cnf_, guard, out, false);
          else
            gate::equal(cnf_, guard, out, lv[t + 1]);
          break;
        case Op::Eventually:
          if (last) {
            gate::equal(cnf_, guard, out, lv[t]);
          } else {
            const int ins[] = {lv[t], Y(i, t + 1)};
            gate::disj(cnf_, guard, out, ins);
          }
          break;
        case Op::Globally:
          if (last) {
            gate::equal(cnf_, guard, out, lv[t]);
          } else {
            const int ins[] = {lv[t], Y(i, t + 1)};
            gate::conj(cnf_, guard, out, ins);
          }
          break;
        case Op::Until:
          if (last)
            gate::equal(cnf_, guard, out, rv[t]);
          else
            gate::or_and(cnf_, guard, out, rv[t], lv[t], Y(i, t + 1));
          break;
        }
      }
    }
  }
  counts_.semantic += cnf_.clauses().size() - before;
}

void EncodingInstance::add_satisfaction(const LabeledSample& s, const WeightFn& omega) {
  if (omega.size() != s.size())
    throw std::invalid_argument("weight function covers " + std::to_string(omega.size()) +
                                " traces, sample has " + std::to_string(s.size()));
  if (s.alphabet().size() > alphabet_.size())
    throw std::invalid_argument("sample alphabet does not match the instance");
  if (traces_.empty()) {
    for (const auto& e : s.entries())
      register_trace(e.trace);
  } else if (traces_.size() != s.size()) {
    throw std::invalid_argument("registered traces do not match the sample");
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(traces_[k].trace == s[k].trace))
      throw std::invalid_argument("registered traces do not match the sample");
    const int root = y(n_, 0, k);
    cnf_.add_soft({s[k].label ? root : -root}, omega[k]);
    ++counts_.satisfaction;
  }
}

EncodingInstance EncodingInstance::build(std::size_t n, const LabeledSample& s,
                                         const WeightFn& omega, const OperatorSet& ops) {
  EncodingInstance inst(n, s.alphabet(), ops);
  for (const auto& e : s.entries())
    inst.add_semantic(inst.register_trace(e.trace));
  inst.add_satisfaction(s, omega);
  return inst;
}

std::string EncodingInstance::describe(int var) const {
  const auto& t = tag(var);
  auto label_name = [&](std::size_t k) {
    const auto& lb = labels_[k];
    return lb.op == Op::Prop ? alphabet_.name(lb.prop) : std::string(op_token(lb.op));
  };
  switch (t.kind) {
  case VarKind::Label:
    return "x(" + std::to_string(t.node) + "," + label_name(t.a) + ")";
  case VarKind::Left:
    return "l(" + std::to_string(t.node) + "," + std::to_string(t.a) + ")";
  case VarKind::Right:
    return "r(" + std::to_string(t.node) + "," + std::to_string(t.a) + ")";
  case VarKind::Value:
    return "y(" + std::to_string(t.node) + "," + std::to_string(t.a) + ",t" + std::to_string(t.b) +
           ")";
  case VarKind::Aux:
    break;
  }
  return "aux";
}

Formula EncodingInstance::decode(const Assignment& a) const {
  auto val = [&](int v) { return static_cast<std::size_t>(v) < a.size() && a[v]; };
  auto unique = [&](std::size_t count, auto&& var, const char* what, std::size_t node) {
    std::size_t found = 0, hits = 0;
    for (std::size_t k = 0; k < count; ++k)
      if (val(var(k))) {
        found = k;
        ++hits;
      }
    if (hits != 1)
      throw EncodingError("node " + std::to_string(node) + " has " + std::to_string(hits) + " " +
                          what);
    return found;
  };

  std::vector<Node> nodes(n_);
  for (std::size_t i = 1; i <= n_; ++i) {
    const auto k = unique(labels_.size(), [&](std::size_t k) { return x(i, k); }, "labels", i);
    Node& nd = nodes[i - 1];
    nd.label = labels_[k];
    const int ar = arity(nd.label.op);
    if (i == 1) {
      if (ar != 0)
        throw EncodingError("node 1 carries a non-nullary label");
      continue;
    }
    const auto lj = unique(i - 1, [&](std::size_t j) { return l(i, j + 1); }, "left children", i);
    const auto rj = unique(i - 1, [&](std::size_t j) { return r(i, j + 1); }, "right children", i);
    if (ar >= 1)
      nd.left = static_cast<NodeId>(lj);
    if (ar == 2)
      nd.right = static_cast<NodeId>(rj);
  }
  return Formula::from_nodes(nodes, static_cast<NodeId>(n_ - 1));
}

} // namespace ltlf
