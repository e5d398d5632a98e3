#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlf/formula.hpp"
#include "ltlf/rational.hpp"
#include "ltlf/trace.hpp"

namespace ltlf {

struct Example {
  Trace trace;
  bool label;

  friend bool operator==(const Example&, const Example&) = default;
};

class SampleError : public std::runtime_error {
public:
  explicit SampleError(const std::string& message) : std::runtime_error(message) {}
};

// A finite set of labeled traces. Identical (trace, label) pairs collapse to
// one entry; a trace carrying both labels is rejected. Entry order is the
// insertion order of first occurrences.
class LabeledSample {
public:
  LabeledSample(Alphabet alphabet, const std::vector<Example>& entries);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Example>& entries() const { return entries_; }
  const Example& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  std::size_t positives() const { return positives_; }
  std::size_t negatives() const { return entries_.size() - positives_; }
  bool has_both_classes() const { return positives_ > 0 && positives_ < entries_.size(); }

  // Header comment lines (each starting with '#'), preserved across I/O.
  const std::vector<std::string>& comments() const { return comments_; }
  void set_comments(std::vector<std::string> comments) { comments_ = std::move(comments); }

  // Value of a "# key: value" header comment, if present.
  std::optional<std::string> comment_value(std::string_view key) const;

  // Sub-sample made of the given entry indices (alphabet and comments kept).
  LabeledSample subset(const std::vector<std::size_t>& indices) const;

  friend bool operator==(const LabeledSample& a, const LabeledSample& b) {
    return a.alphabet_ == b.alphabet_ && a.entries_ == b.entries_;
  }

private:
  LabeledSample() = default;

  Alphabet alphabet_;
  std::vector<Example> entries_;
  std::size_t positives_ = 0;
  std::vector<std::string> comments_;
};

// Text format:
//   # comment lines
//   alphabet: p0,p1            (optional; otherwise p0..p{k-1} from row width)
//   1,0;0,1                    (positive traces, one per line)
//   ---
//   0,0;0,0                    (negative traces)
//   ---                        (optional; everything after it is ignored)
// Throws SampleError with the line number on malformed input. Non-fatal
// notices (ignored trailing sections) are appended to `warnings`.
LabeledSample parse_sample(std::istream& in, std::vector<std::string>* warnings = nullptr);
LabeledSample parse_sample_text(std::string_view text, std::vector<std::string>* warnings = nullptr);
LabeledSample load_sample(const std::string& path, std::vector<std::string>* warnings = nullptr);

void write_sample(std::ostream& out, const LabeledSample& sample);
std::string sample_to_text(const LabeledSample& sample);
void save_sample(const std::string& path, const LabeledSample& sample);

// Positive weights over the entries of a sample, summing to exactly one.
class WeightFn {
public:
  explicit WeightFn(std::vector<Rational> weights);

  // Scales arbitrary positive weights so they sum to one.
  static WeightFn normalized(std::vector<Rational> weights);

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }

private:
  std::vector<Rational> weights_;
};

// 1/|S| for every trace.
WeightFn omega_uniform(const LabeledSample& s);

// 0.5/#positives for positives, 0.5/#negatives for negatives. Throws
// std::invalid_argument on a single-class sample.
WeightFn omega_rebalanced(const LabeledSample& s);

// Fraction of misclassified traces.
Rational loss(const LabeledSample& s, const Formula& f);

// Total weight of misclassified traces. Throws std::invalid_argument when
// the weight function does not cover exactly the sample's entries.
Rational weighted_loss(const LabeledSample& s, const Formula& f, const WeightFn& omega);

// Same entries, labels swapped.
LabeledSample invert_labels(const LabeledSample& s);

// p1(S) and p2(S): positive and negative fractions.
Rational positive_fraction(const LabeledSample& s);
Rational negative_fraction(const LabeledSample& s);

} // namespace ltlf
