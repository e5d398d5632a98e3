#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltlf/learn.hpp"

namespace ltlf {

// Leaf(label) or Inner(formula, solid, dashed). The solid subtree is taken
// when the formula holds, the dashed one when it does not.
class DecisionTree {
public:
  static DecisionTree leaf(bool label);
  // Throws std::invalid_argument if `formula` is a constant.
  static DecisionTree inner(Formula formula, DecisionTree solid, DecisionTree dashed);

  bool is_leaf() const { return !formula_; }
  bool label() const; // leaves only
  const Formula& formula() const; // inner nodes only
  const DecisionTree& solid() const;
  const DecisionTree& dashed() const;

  // Descends the tree.
  bool classify(const Trace& u) const;

  std::size_t depth() const; // inner nodes on the longest path
  std::size_t inner_count() const;

private:
  DecisionTree() = default;

  bool label_ = false;
  std::shared_ptr<const Formula> formula_;
  std::shared_ptr<const DecisionTree> solid_;
  std::shared_ptr<const DecisionTree> dashed_;
};

// Fraction of traces the tree misclassifies.
Rational tree_loss(const LabeledSample& s, const DecisionTree& t);

// Disjunction over root-to-true-leaf paths of the conjunction of the node
// formulas along the path (negated on dashed edges). A true leaf at the
// root gives `true`; a tree without true leaves gives `false`.
Formula tree_to_formula(const DecisionTree& t);

// (node "<formula>" <solid> <dashed>) / (leaf true|false)
std::string serialize_tree(const DecisionTree& t, const Alphabet& alphabet);
// Throws std::invalid_argument (or ParseError from the formula parser).
DecisionTree parse_tree(std::string_view text, const Alphabet& alphabet);

bool should_stop(const LabeledSample& s, const Rational& kappa);
// Throws std::logic_error when should_stop is false.
bool leaf_label(const LabeledSample& s, const Rational& kappa);

Rational score_l(const LabeledSample& s, const Formula& f);
// max(wl, 1 - wl) under rebalanced weights. Throws std::invalid_argument on a
// single-class sample.
Rational score_r(const LabeledSample& s, const Formula& f);

// (traces satisfying f, the rest); both keep the alphabet and comments.
std::pair<LabeledSample, LabeledSample> split(const LabeledSample& s, const Formula& f);

struct DtConfig {
  Rational kappa = Rational(5, 100);
  Rational min_score = Rational(8, 10);
  OperatorSet ops = OperatorSet::full();
  std::optional<double> node_timeout_seconds;
  Deadline deadline; // for the whole tree
  std::size_t max_depth = 20;
  std::size_t max_formula_size = 40;
  bool concurrent_split = false;    // the two learner calls per node
  bool concurrent_subtrees = false; // sibling subtrees
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on a bad kappa or min_score; returns
  // warnings for legal but unadvisable settings.
  std::vector<std::string> validate() const;
};

enum class SplitStatus { Found, TimedOut, SizeCapReached };

struct SplitResult {
  SplitStatus status = SplitStatus::TimedOut;
  std::optional<Formula> formula;
  Rational score = 0;     // score_r on the original sample
  bool from_inverted = false;
};

// Learns a split on s and on its inversion and keeps the one with the higher
// score_r on s (the non-inverted one on ties).
SplitResult infer_split_formula(const LabeledSample& s, const DtConfig& config);

enum class TreeStatus { Solved, TimedOut, DepthExceeded, SizeCapReached };

std::string_view to_string(TreeStatus s);

struct TreeResult {
  TreeStatus status = TreeStatus::Solved;
  DecisionTree tree = DecisionTree::leaf(false);
  // False when some node had to be closed early with a majority leaf; the
  // loss bound then need not hold.
  bool conforming = true;
  std::size_t splits_learned = 0;
  double seconds = 0;
  std::vector<std::string> warnings;
};

TreeResult learn_tree(const LabeledSample& s, const DtConfig& config);

} // namespace ltlf
