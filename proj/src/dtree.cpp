#include "ltlf/dtree.hpp"

#include <cctype>
#include <chrono>
#include <future>
#include <stdexcept>

#include "ltlf/semantics.hpp"

namespace ltlf {

DecisionTree DecisionTree::leaf(bool label) {
  DecisionTree t;
  t.label_ = label;
  return t;
}

DecisionTree DecisionTree::inner(Formula formula, DecisionTree solid, DecisionTree dashed) {
  const Label root = formula.node(formula.root()).label;
  if (root.op == Op::True || root.op == Op::False)
    throw std::invalid_argument("decision tree node formula must not be a constant");
  DecisionTree t;
  t.formula_ = std::make_shared<const Formula>(std::move(formula));
  t.solid_ = std::make_shared<const DecisionTree>(std::move(solid));
  t.dashed_ = std::make_shared<const DecisionTree>(std::move(dashed));
  return t;
}

bool DecisionTree::label() const {
  if (!is_leaf())
    throw std::logic_error("label() on an inner node");
  return label_;
}

const Formula& DecisionTree::formula() const {
  if (is_leaf())
    throw std::logic_error("formula() on a leaf");
  return *formula_;
}

const DecisionTree& DecisionTree::solid() const {
  if (is_leaf())
    throw std::logic_error("solid() on a leaf");
  return *solid_;
}

const DecisionTree& DecisionTree::dashed() const {
  if (is_leaf())
    throw std::logic_error("dashed() on a leaf");
  return *dashed_;
}

bool DecisionTree::classify(const Trace& u) const {
  const DecisionTree* t = this;
  while (!t->is_leaf())
    t = satisfies(*t->formula_, u) ? t->solid_.get() : t->dashed_.get();
  return t->label_;
}

std::size_t DecisionTree::depth() const {
  if (is_leaf())
    return 0;
  return 1 + std::max(solid_->depth(), dashed_->depth());
}

std::size_t DecisionTree::inner_count() const {
  if (is_leaf())
    return 0;
  return 1 + solid_->inner_count() + dashed_->inner_count();
}

Rational tree_loss(const LabeledSample& s, const DecisionTree& t) {
  if (s.size() == 0)
    return 0;
  std::int64_t wrong = 0;
  for (const auto& e : s.entries())
    wrong += t.classify(e.trace) != e.label;
  return Rational(wrong, static_cast<std::int64_t>(s.size()));
}

Formula tree_to_formula(const DecisionTree& t) {
  DagBuilder b;
  std::vector<NodeId> path;
  std::optional<NodeId> disj;
  auto walk = [&](auto&& self, const DecisionTree& node) -> void {
    if (node.is_leaf()) {
      if (!node.label())
        return;
      std::optional<NodeId> conj;
      for (NodeId lit : path)
        conj = conj ? b.binary(Op::And, *conj, lit) : lit;
      const NodeId term = conj ? *conj : b.constant(true);
      disj = disj ? b.binary(Op::Or, *disj, term) : term;
      return;
    }
    const NodeId phi = b.import(node.formula());
    path.push_back(phi);
    self(self, node.solid());
    path.back() = b.unary(Op::Not, phi);
    self(self, node.dashed());
    path.pop_back();
  };
  walk(walk, t);
  return b.build(disj ? *disj : b.constant(false));
}

namespace {

void serialize_into(std::string& out, const DecisionTree& t, const Alphabet& alphabet) {
  if (t.is_leaf()) {
    out += t.label() ? "(leaf true)" : "(leaf false)";
    return;
  }
  out += "(node \"";
  out += format_formula(t.formula(), alphabet);
  out += "\" ";
  serialize_into(out, t.solid(), alphabet);
  out += ' ';
  serialize_into(out, t.dashed(), alphabet);
  out += ')';
}

class TreeParser {
public:
  TreeParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  DecisionTree parse() {
    DecisionTree t = tree();
    skip_space();
    if (pos_ != text_.size())
      fail("trailing input");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("tree text, offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view word() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected a keyword");
    return text_.substr(start, pos_ - start);
  }

  DecisionTree tree() {
    expect('(');
    const auto kind = word();
    if (kind == "leaf") {
      const auto value = word();
      if (value != "true" && value != "false")
        fail("leaf label must be true or false");
      expect(')');
      return DecisionTree::leaf(value == "true");
    }
    if (kind != "node")
      fail("expected 'node' or 'leaf'");
    expect('"');
    const auto end = text_.find('"', pos_);
    if (end == std::string_view::npos)
      fail("unterminated formula string");
    Formula f = parse_formula(text_.substr(pos_, end - pos_), alphabet_);
    pos_ = end + 1;
    DecisionTree solid = tree();
    DecisionTree dashed = tree();
    expect(')');
    return DecisionTree::inner(std::move(f), std::move(solid), std::move(dashed));
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

} // namespace

std::string serialize_tree(const DecisionTree& t, const Alphabet& alphabet) {
  std::string out;
  serialize_into(out, t, alphabet);
  return out;
}

DecisionTree parse_tree(std::string_view text, const Alphabet& alphabet) {
  return TreeParser(text, alphabet).parse();
}

bool should_stop(const LabeledSample& s, const Rational& kappa) {
  if (s.size() == 0)
    throw std::invalid_argument("stop criterion on an empty sample");
  return positive_fraction(s) <= kappa || negative_fraction(s) <= kappa;
}

bool leaf_label(const LabeledSample& s, const Rational& kappa) {
  if (!should_stop(s, kappa))
    throw std::logic_error("leaf label requested for a sample that does not stop");
  return !(positive_fraction(s) <= kappa);
}

Rational score_l(const LabeledSample& s, const Formula& f) {
  return Rational(1) - loss(s, f);
}

Rational score_r(const LabeledSample& s, const Formula& f) {
  if (!s.has_both_classes())
    throw std::invalid_argument("score_r needs both classes");
  const Rational wl = weighted_loss(s, f, omega_rebalanced(s));
  return std::max(wl, Rational(1) - wl);
}

std::pair<LabeledSample, LabeledSample> split(const LabeledSample& s, const Formula& f) {
  std::vector<std::size_t> yes, no;
  for (std::size_t k = 0; k < s.size(); ++k)
    (satisfies(f, s[k].trace) ? yes : no).push_back(k);
  return {s.subset(yes), s.subset(no)};
}

std::vector<std::string> DtConfig::validate() const {
  if (kappa < Rational(0) || kappa > Rational(1))
    throw std::invalid_argument("kappa must lie in [0, 1], got " + to_string(kappa));
  if (min_score <= Rational(1, 2) || min_score > Rational(1))
    throw std::invalid_argument("min_score must lie in (0.5, 1], got " + to_string(min_score));
  if (max_depth < 1)
    throw std::invalid_argument("max_depth must be at least 1");
  std::vector<std::string> warnings;
  if (min_score >= Rational(1) - kappa)
    warnings.push_back("min_score " + to_string(min_score) + " is not below 1 - kappa = " +
                       to_string(Rational(1) - kappa));
  return warnings;
}

SplitResult infer_split_formula(const LabeledSample& s, const DtConfig& config) {
  if (!s.has_both_classes())
    throw std::invalid_argument("split inference needs both classes");
  LearnConfig lc;
  lc.kappa = Rational(1) - config.min_score;
  lc.weights = WeightChoice::Rebalanced;
  lc.ops = config.ops;
  lc.max_size = config.max_formula_size;
  lc.timeout_seconds = config.node_timeout_seconds;
  lc.deadline = config.deadline;
  lc.seed = config.seed;

  const LabeledSample inverted = invert_labels(s);
  LearnResult direct, flipped;
  if (config.concurrent_split) {
    auto other = std::async(std::launch::async, [&] { return learn_minimal(inverted, lc); });
    direct = learn_minimal(s, lc);
    flipped = other.get();
  } else {
    direct = learn_minimal(s, lc);
    flipped = learn_minimal(inverted, lc);
  }

  SplitResult out;
  for (const auto* r : {&direct, &flipped}) {
    if (r->status == LearnStatus::TimedOut) {
      out.status = SplitStatus::TimedOut;
      return out;
    }
  }
  for (const auto* r : {&direct, &flipped}) {
    if (r->status != LearnStatus::Solved)
      continue;
    const Rational score = score_r(s, *r->formula);
    if (!out.formula || score > out.score) {
      out.formula = *r->formula;
      out.score = score;
      out.from_inverted = r == &flipped;
    }
  }
  out.status = out.formula ? SplitStatus::Found : SplitStatus::SizeCapReached;
  return out;
}

std::string_view to_string(TreeStatus s) {
  switch (s) {
  case TreeStatus::Solved: return "solved";
  case TreeStatus::TimedOut: return "timeout";
  case TreeStatus::DepthExceeded: return "depth-cap";
  case TreeStatus::SizeCapReached: return "size-cap";
  }
  return "?";
}

namespace {

struct Built {
  DecisionTree tree = DecisionTree::leaf(false);
  TreeStatus status = TreeStatus::Solved;
  std::size_t splits = 0;
};

int severity(TreeStatus s) {
  switch (s) {
  case TreeStatus::Solved: return 0;
  case TreeStatus::DepthExceeded: return 1;
  case TreeStatus::SizeCapReached: return 2;
  case TreeStatus::TimedOut: return 3;
  }
  return 0;
}

TreeStatus worse(TreeStatus a, TreeStatus b) { return severity(a) >= severity(b) ? a : b; }

DecisionTree majority_leaf(const LabeledSample& s) {
  return DecisionTree::leaf(2 * s.positives() >= s.size());
}

Built build(const LabeledSample& s, const DtConfig& config, std::size_t depth) {
  if (should_stop(s, config.kappa))
    return {DecisionTree::leaf(leaf_label(s, config.kappa)), TreeStatus::Solved, 0};
  if (depth >= config.max_depth)
    return {majority_leaf(s), TreeStatus::DepthExceeded, 0};

  const SplitResult sr = infer_split_formula(s, config);
  if (sr.status != SplitStatus::Found)
    return {majority_leaf(s),
            sr.status == SplitStatus::TimedOut ? TreeStatus::TimedOut : TreeStatus::SizeCapReached,
            0};

  auto [yes, no] = split(s, *sr.formula);
  if (yes.size() == 0 || no.size() == 0)
    throw std::logic_error("split with score above 1/2 left one side empty");

  Built solid, dashed;
  if (config.concurrent_subtrees) {
    auto pending = std::async(std::launch::async,
                              [&, y = std::move(yes)] { return build(y, config, depth + 1); });
    dashed = build(no, config, depth + 1);
    solid = pending.get();
  } else {
    solid = build(yes, config, depth + 1);
    dashed = build(no, config, depth + 1);
  }
  return {DecisionTree::inner(*sr.formula, std::move(solid.tree), std::move(dashed.tree)),
          worse(solid.status, dashed.status), 1 + solid.splits + dashed.splits};
}

} // namespace

TreeResult learn_tree(const LabeledSample& s, const DtConfig& config) {
  TreeResult result;
  result.warnings = config.validate();
  const auto start = std::chrono::steady_clock::now();
  Built b = build(s, config, 0);
  result.tree = std::move(b.tree);
  result.status = b.status;
  result.conforming = b.status == TreeStatus::Solved;
  result.splits_learned = b.splits;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

} // namespace ltlf
