#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltlf/cnf.hpp"
#include "ltlf/formula.hpp"
#include "ltlf/sample.hpp"

namespace ltlf {

// The operators a learned formula may use. Propositions of the alphabet are
// always available; every other operator can be switched off.
class OperatorSet {
public:
  // Every operator, constants included.
  static OperatorSet full();
  // Comma separated tokens, e.g. "!,|,X,U" or "not,or,next,until".
  // Throws std::invalid_argument on unknown tokens.
  static OperatorSet parse(std::string_view list);
  explicit OperatorSet(std::vector<Op> ops);

  bool contains(Op op) const;
  const std::vector<Op>& ops() const { return ops_; }
  std::string to_string() const;

  // The label universe: propositions of the alphabet, then enabled
  // operators in declaration order.
  std::vector<Label> labels(const Alphabet& alphabet) const;

private:
  std::vector<Op> ops_; // sorted, without Op::Prop
};

class EncodingError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

enum class VarKind : std::uint8_t { Label, Left, Right, Value, Aux };

// What a variable stands for. Node indices are 1-based as in 1..n.
//   Label: x(node, a = label index)
//   Left / Right: l(node, a = child), r(node, a = child)
//   Value: y(node, a = position, b = trace index)
//   Aux: child value copies and other auxiliaries
struct VarTag {
  VarKind kind;
  std::uint32_t node = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

// Clause counts per constraint family.
struct ClauseCounts {
  std::size_t label_unique = 0;    // exactly one label per node
  std::size_t child_unique = 0;    // exactly one left/right child
  std::size_t first_node = 0;      // node 1 is nullary
  std::size_t unary_children = 0;  // unary nodes: right child = left child
  std::size_t semantic = 0;
  std::size_t satisfaction = 0;
};

// Propositional encoding of "some formula of size n over the operator set".
// Construction adds the structural constraints; traces are then registered
// and their semantic constraints added. Variable ids are allocated in the
// order x, l, r, then per trace y and its auxiliaries, with no gaps.
class EncodingInstance {
public:
  // Throws std::invalid_argument if n < 1 or no nullary label exists.
  EncodingInstance(std::size_t n, Alphabet alphabet, OperatorSet ops);

  // Structural, semantic and satisfaction constraints for a whole sample.
  static EncodingInstance build(std::size_t n, const LabeledSample& s, const WeightFn& omega,
                                const OperatorSet& ops);

  // Returns the trace index used by y variables.
  std::size_t register_trace(const Trace& u);
  // Throws std::out_of_range for an unregistered trace index.
  void add_semantic(std::size_t trace);
  // Unit softs on the root value at position 0; traces are registered in
  // sample order if not done already. Throws std::invalid_argument when
  // omega does not match the sample.
  void add_satisfaction(const LabeledSample& s, const WeightFn& omega);

  std::size_t n() const { return n_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const OperatorSet& ops() const { return ops_; }
  const std::vector<Label>& labels() const { return labels_; }
  const WeightedCnf& cnf() const { return cnf_; }
  const ClauseCounts& counts() const { return counts_; }
  std::size_t num_traces() const { return traces_.size(); }

  // Variable ids; node indices are 1-based.
  int x(std::size_t node, std::size_t label) const;
  int l(std::size_t node, std::size_t child) const;
  int r(std::size_t node, std::size_t child) const;
  int y(std::size_t node, std::size_t position, std::size_t trace) const;
  std::size_t label_index(const Label& label) const; // throws if absent

  const VarTag& tag(int var) const { return tags_.at(static_cast<std::size_t>(var)); }
  // e.g. "x(3,U)", "l(4,2)", "y(2,0,t5)", "aux"
  std::string describe(int var) const;

  // Throws EncodingError when an exactly-one invariant is violated.
  Formula decode(const Assignment& a) const;

private:
  int fresh(VarTag tag);
  void add_structural();

  std::size_t n_;
  Alphabet alphabet_;
  OperatorSet ops_;
  std::vector<Label> labels_;
  WeightedCnf cnf_;
  ClauseCounts counts_;
  std::vector<VarTag> tags_; // index 0 unused

  int x_base_ = 0;
  std::vector<int> l_base_, r_base_; // per node; first child var
  struct TraceVars {
    Trace trace;
    int y_base;
    bool semantic = false;
  };
  std::vector<TraceVars> traces_;
};

inline Formula decode_model(const Assignment& a, const EncodingInstance& inst) {
  return inst.decode(a);
}

} // namespace ltlf
