#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ltlf {

// Operators of LTLf. Prop, True and False are nullary; Not, Next,
// Eventually and Globally are unary; Or, And, Implies and Until are binary.
enum class Op : std::uint8_t {
  Prop,
  True,
  False,
  Not,
  Next,
  Eventually,
  Globally,
  Or,
  And,
  Implies,
  Until,
};

inline constexpr Op kAllOps[] = {Op::Prop, Op::True,       Op::False,    Op::Not,
                                 Op::Next, Op::Eventually, Op::Globally, Op::Or,
                                 Op::And,  Op::Implies,    Op::Until};

constexpr int arity(Op op) {
  switch (op) {
  case Op::Prop:
  case Op::True:
  case Op::False:
    return 0;
  case Op::Not:
  case Op::Next:
  case Op::Eventually:
  case Op::Globally:
    return 1;
  default:
    return 2;
  }
}

// Canonical text token: "!", "X", "F", "G", "|", "&", "->", "U", "true", "false".
std::string_view op_token(Op op);

// Looks up an operator by its token (also accepts the lowercase keywords
// "not", "or", "and", ...). Op::Prop is never returned.
std::optional<Op> op_from_token(std::string_view token);

// The proposition set. Names are unique; indices are dense from 0.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  // p0, p1, ..., p{k-1}
  static Alphabet numbered(std::size_t k);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::uint32_t> index_of(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::vector<std::string> names_;
};

// Node label: an operator, plus the proposition index when op == Op::Prop.
struct Label {
  Op op = Op::True;
  std::uint32_t prop = 0;

  static Label proposition(std::uint32_t index) { return {Op::Prop, index}; }
  static Label of(Op op) { return {op, 0}; }

  friend bool operator==(const Label& a, const Label& b) {
    return a.op == b.op && (a.op != Op::Prop || a.prop == b.prop);
  }
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoChild = std::numeric_limits<NodeId>::max();

struct Node {
  Label label;
  NodeId left = kNoChild;
  NodeId right = kNoChild;

  friend bool operator==(const Node&, const Node&) = default;
};

// An LTLf formula stored as its syntax DAG. Nodes are numbered in
// post-order (left subtree first), children always precede their parents,
// the root is the last node, and structurally equal subformulas are shared.
// Node ids are 0-based here; node i corresponds to identifier i + 1 in the
// 1..n numbering used by the encoding.
class Formula {
public:
  // Canonicalizes an arbitrary node table (children must precede parents).
  // Only the part reachable from `root` is kept.
  static Formula from_nodes(const std::vector<Node>& nodes, NodeId root);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  NodeId root() const { return static_cast<NodeId>(nodes_.size() - 1); }
  std::size_t size() const { return nodes_.size(); }

  // Largest proposition index used, or nullopt for constant-only formulas.
  std::optional<std::uint32_t> max_prop() const;

  friend bool operator==(const Formula&, const Formula&) = default;

private:
  friend class DagBuilder;
  std::vector<Node> nodes_;
};

// Hash-consing builder. Every make_* call returns the id of the unique node
// with that label and children, creating it on first use.
class DagBuilder {
public:
  NodeId make(Label label, NodeId left = kNoChild, NodeId right = kNoChild);
  NodeId prop(std::uint32_t index) { return make(Label::proposition(index)); }
  NodeId constant(bool value) { return make(Label::of(value ? Op::True : Op::False)); }
  NodeId unary(Op op, NodeId child) { return make(Label::of(op), child); }
  NodeId binary(Op op, NodeId left, NodeId right) { return make(Label::of(op), left, right); }

  // Copies a formula into this builder; returns the id of its root.
  NodeId import(const Formula& f);

  // The sub-DAG rooted at `root`, canonically renumbered.
  Formula build(NodeId root) const;

  std::size_t node_count() const { return nodes_.size(); }

private:
  struct KeyHash {
    std::size_t operator()(const Node& n) const noexcept;
  };
  std::vector<Node> nodes_;
  std::unordered_map<Node, NodeId, KeyHash> index_;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// Grammar (lowest to highest precedence):
//   formula  := disj [ "->" formula ]
//   disj     := conj { "|" conj }
//   conj     := until { "&" until }
//   until    := unary [ "U" until ]
//   unary    := ("!" | "X" | "F" | "G") unary | atom
//   atom     := "true" | "false" | prop | "(" formula ")"
//             | binop "(" formula "," formula ")"      (prefix form)
// Throws ParseError on syntax errors and unknown propositions.
Formula parse_formula(std::string_view text, const Alphabet& alphabet);

// Fully parenthesized canonical text, e.g. "((p U (G q)) | (F (G q)))".
std::string format_formula(const Formula& f, const Alphabet& alphabet);

// Uses p0, p1, ... for proposition names.
std::string format_formula(const Formula& f);

// Number of unique subformulas.
inline std::size_t formula_size(const Formula& f) { return f.size(); }

Formula make_constant(bool value);

} // namespace ltlf
