#pragma once

// Reference implementations used only by tests. They are written straight
// from the definitions, favour obviousness over speed, and share no code
// with the library's evaluator, encoder or solvers.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ltlf/cnf.hpp"
#include "ltlf/encoding.hpp"
#include "ltlf/formula.hpp"
#include "ltlf/sample.hpp"
#include "ltlf/trace.hpp"

namespace oracle {

using ltlf::Op;

// V(f, u, i) by direct quantifier expansion: Until searches every witness
// position, F and G quantify over all later positions.
bool eval(const ltlf::Formula& f, ltlf::NodeId node, const ltlf::Trace& u, std::size_t i);
inline bool sat(const ltlf::Formula& f, const ltlf::Trace& u) { return eval(f, f.root(), u, 0); }

// Misclassified fraction and weighted misclassification, via eval above.
ltlf::Rational loss(const ltlf::LabeledSample& s, const ltlf::Formula& f);
ltlf::Rational weighted_loss(const ltlf::LabeledSample& s, const ltlf::Formula& f,
                             const std::vector<ltlf::Rational>& omega);

// Every formula of DAG size <= max_size over propositions 0..props-1 and
// the given operators, each exactly once. Formulas are hash-consed in an
// own table; size is the number of distinct subformula ids.
class Enumerator {
public:
  struct Entry {
    Op op;
    std::uint32_t prop = 0;
    int left = -1;
    int right = -1;
    std::vector<int> subs; // sorted ids of all subformulas, self included
    std::size_t size() const { return subs.size(); }
  };

  Enumerator(std::size_t props, const std::vector<Op>& ops, std::size_t max_size);

  const std::vector<Entry>& entries() const { return entries_; }
  bool eval(int id, const ltlf::Trace& u, std::size_t i) const;
  ltlf::Formula to_formula(int id) const;
  std::string text(int id) const;

private:
  int intern(Entry e);

  std::vector<Entry> entries_;
  std::map<std::tuple<Op, std::uint32_t, int, int>, int> index_;
};

struct BruteResult {
  bool hard_sat = false;
  ltlf::Rational best = 0; // maximal satisfied soft weight
  ltlf::Assignment argmax;
  std::size_t models = 0; // hard models
};

// Exhaustive over all 2^vars assignments (vars <= 24).
BruteResult brute_force_maxsat(const ltlf::WeightedCnf& cnf);

// Every hard model (vars <= 24).
std::vector<ltlf::Assignment> all_models(const ltlf::WeightedCnf& cnf);

ltlf::Trace random_trace(std::mt19937_64& rng, std::size_t props, std::size_t min_len,
                         std::size_t max_len);

// Distinct traces with random labels (both classes when count >= 2).
ltlf::LabeledSample random_sample(std::mt19937_64& rng, std::size_t props, std::size_t count,
                                  std::size_t max_len);

// Random formula built bottom-up with roughly `nodes` constructor calls.
ltlf::Formula random_formula(std::mt19937_64& rng, std::size_t props, std::size_t nodes,
                             const std::vector<Op>& ops);

std::vector<Op> all_ops();

} // namespace oracle
