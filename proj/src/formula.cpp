#include "ltlf/formula.hpp"

#include <cctype>
#include <functional>
#include <unordered_set>

namespace ltlf {

std::string_view op_token(Op op) {
  switch (op) {
  case Op::Prop:
    return "prop";
  case Op::True:
    return "true";
  case Op::False:
    return "false";
  case Op::Not:
    return "!";
  case Op::Next:
    return "X";
  case Op::Eventually:
    return "F";
  case Op::Globally:
    return "G";
  case Op::Or:
    return "|";
  case Op::And:
    return "&";
  case Op::Implies:
    return "->";
  case Op::Until:
    return "U";
  }
  return "?";
}

std::optional<Op> op_from_token(std::string_view token) {
  static const std::pair<std::string_view, Op> table[] = {
      {"true", Op::True},       {"false", Op::False},   {"!", Op::Not},
      {"not", Op::Not},         {"X", Op::Next},        {"next", Op::Next},
      {"F", Op::Eventually},    {"eventually", Op::Eventually},
      {"G", Op::Globally},      {"globally", Op::Globally},
      {"|", Op::Or},            {"or", Op::Or},         {"&", Op::And},
      {"and", Op::And},         {"->", Op::Implies},    {"implies", Op::Implies},
      {"U", Op::Until},         {"until", Op::Until},
  };
  for (const auto& [text, op] : table)
    if (text == token)
      return op;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty())
      throw std::invalid_argument("empty proposition name");
    if (op_from_token(n))
      throw std::invalid_argument("proposition name '" + n + "' is a reserved word");
    if (!seen.insert(n).second)
      throw std::invalid_argument("duplicate proposition name '" + n + "'");
  }
}

Alphabet Alphabet::numbered(std::size_t k) {
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    names.push_back("p" + std::to_string(i));
  return Alphabet(std::move(names));
}

std::optional<std::uint32_t> Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// DAG construction

std::size_t DagBuilder::KeyHash::operator()(const Node& n) const noexcept {
  std::size_t h = static_cast<std::size_t>(n.label.op);
  h = h * 0x9e3779b97f4a7c15ULL + (n.label.op == Op::Prop ? n.label.prop : 0);
  h = h * 0x9e3779b97f4a7c15ULL + n.left;
  h = h * 0x9e3779b97f4a7c15ULL + n.right;
  return h ^ (h >> 29);
}

NodeId DagBuilder::make(Label label, NodeId left, NodeId right) {
  const int k = arity(label.op);
  if (label.op != Op::Prop)
    label.prop = 0;
  if ((k >= 1) != (left != kNoChild) || (k == 2) != (right != kNoChild))
    throw std::invalid_argument("child slots do not match operator arity");
  if ((left != kNoChild && left >= nodes_.size()) ||
      (right != kNoChild && right >= nodes_.size()))
    throw std::out_of_range("child id out of range");
  const Node key{label, left, right};
  if (auto it = index_.find(key); it != index_.end())
    return it->second;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(key);
  index_.emplace(key, id);
  return id;
}

NodeId DagBuilder::import(const Formula& f) {
  std::vector<NodeId> map(f.size());
  for (NodeId i = 0; i < f.size(); ++i) {
    const auto& n = f.node(i);
    map[i] = make(n.label, n.left == kNoChild ? kNoChild : map[n.left],
                  n.right == kNoChild ? kNoChild : map[n.right]);
  }
  return map[f.root()];
}

Formula DagBuilder::build(NodeId root) const {
  if (root >= nodes_.size())
    throw std::out_of_range("root id out of range");
  Formula out;
  std::vector<NodeId> renumber(nodes_.size(), kNoChild);
  // Iterative post-order, left child before right child.
  std::vector<std::pair<NodeId, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [id, stage] = stack.back();
    if (renumber[id] != kNoChild) {
      stack.pop_back();
      continue;
    }
    const Node& n = nodes_[id];
    if (stage == 0) {
      stage = 1;
      if (n.left != kNoChild && renumber[n.left] == kNoChild) {
        stack.push_back({n.left, 0});
        continue;
      }
    }
    if (stage == 1) {
      stage = 2;
      if (n.right != kNoChild && renumber[n.right] == kNoChild) {
        stack.push_back({n.right, 0});
        continue;
      }
    }
    Node copy = n;
    if (copy.left != kNoChild)
      copy.left = renumber[copy.left];
    if (copy.right != kNoChild)
      copy.right = renumber[copy.right];
    renumber[id] = static_cast<NodeId>(out.nodes_.size());
    out.nodes_.push_back(copy);
    stack.pop_back();
  }
  return out;
}

Formula Formula::from_nodes(const std::vector<Node>& nodes, NodeId root) {
  DagBuilder builder;
  std::vector<NodeId> map(nodes.size(), kNoChild);
  for (NodeId i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if ((n.left != kNoChild && n.left >= i) || (n.right != kNoChild && n.right >= i))
      throw std::invalid_argument("node table is not topologically ordered");
    map[i] = builder.make(n.label, n.left == kNoChild ? kNoChild : map[n.left],
                          n.right == kNoChild ? kNoChild : map[n.right]);
  }
  if (root >= nodes.size())
    throw std::out_of_range("root id out of range");
  return builder.build(map[root]);
}

std::optional<std::uint32_t> Formula::max_prop() const {
  std::optional<std::uint32_t> best;
  for (const auto& n : nodes_)
    if (n.label.op == Op::Prop && (!best || n.label.prop > *best))
      best = n.label.prop;
  return best;
}

Formula make_constant(bool value) {
  DagBuilder b;
  return b.build(b.constant(value));
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
public:
  Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Formula run() {
    next();
    const NodeId root = implication();
    if (kind_ != Tok::End)
      fail("unexpected '" + std::string(token_) + "'");
    return builder_.build(root);
  }

private:
  enum class Tok { End, LParen, RParen, Comma, Symbol, Word };

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, start_); }

  void next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    start_ = pos_;
    if (pos_ >= text_.size()) {
      kind_ = Tok::End;
      token_ = {};
      return;
    }
    const char c = text_[pos_];
    auto take = [&](Tok kind, std::size_t len) {
      kind_ = kind;
      token_ = text_.substr(pos_, len);
      pos_ += len;
    };
    if (c == '(')
      return take(Tok::LParen, 1);
    if (c == ')')
      return take(Tok::RParen, 1);
    if (c == ',')
      return take(Tok::Comma, 1);
    if (c == '!' || c == '|' || c == '&')
      return take(Tok::Symbol, 1);
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')
      return take(Tok::Symbol, 2);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      return take(Tok::Word, end - pos_);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool at_op(Op op) const {
    if (kind_ != Tok::Symbol && kind_ != Tok::Word)
      return false;
    auto parsed = op_from_token(token_);
    return parsed && *parsed == op;
  }

  void expect(Tok kind, const char* what) {
    if (kind_ != kind)
      fail(std::string("expected ") + what);
    next();
  }

  NodeId implication() {
    NodeId left = disjunction();
    if (at_op(Op::Implies)) {
      next();
      return builder_.binary(Op::Implies, left, implication());
    }
    return left;
  }

  NodeId disjunction() {
    NodeId left = conjunction();
    while (at_op(Op::Or)) {
      next();
      left = builder_.binary(Op::Or, left, conjunction());
    }
    return left;
  }

  NodeId conjunction() {
    NodeId left = until();
    while (at_op(Op::And)) {
      next();
      left = builder_.binary(Op::And, left, until());
    }
    return left;
  }

  NodeId until() {
    NodeId left = unary();
    if (at_op(Op::Until)) {
      next();
      return builder_.binary(Op::Until, left, until());
    }
    return left;
  }

  NodeId unary() {
    if (kind_ == Tok::Symbol || kind_ == Tok::Word) {
      if (auto op = op_from_token(token_)) {
        if (arity(*op) == 1) {
          next();
          return builder_.unary(*op, unary());
        }
        if (arity(*op) == 2) {
          // Prefix form: op(left, right)
          next();
          expect(Tok::LParen, "'(' after prefix binary operator");
          NodeId left = implication();
          expect(Tok::Comma, "','");
          NodeId right = implication();
          expect(Tok::RParen, "')'");
          return builder_.binary(*op, left, right);
        }
      }
    }
    return atom();
  }

  NodeId atom() {
    if (kind_ == Tok::LParen) {
      next();
      NodeId inner = implication();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (kind_ == Tok::Word) {
      if (auto op = op_from_token(token_); op && arity(*op) == 0) {
        next();
        return builder_.constant(*op == Op::True);
      }
      auto index = alphabet_.index_of(token_);
      if (!index)
        fail("unknown proposition '" + std::string(token_) + "'");
      next();
      return builder_.prop(*index);
    }
    if (kind_ == Tok::End)
      fail("unexpected end of input");
    fail("unexpected '" + std::string(token_) + "'");
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  DagBuilder builder_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  Tok kind_ = Tok::End;
  std::string_view token_;
};

} // namespace

Formula parse_formula(std::string_view text, const Alphabet& alphabet) {
  return Parser(text, alphabet).run();
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_formula(const Formula& f, const Alphabet& alphabet) {
  std::vector<std::string> text(f.size());
  for (NodeId i = 0; i < f.size(); ++i) {
    const Node& n = f.node(i);
    switch (arity(n.label.op)) {
    case 0:
      text[i] = n.label.op == Op::Prop ? alphabet.name(n.label.prop)
                                       : std::string(op_token(n.label.op));
      break;
    case 1:
      text[i] = "(" + std::string(op_token(n.label.op)) + " " + text[n.left] + ")";
      break;
    default:
      text[i] = "(" + text[n.left] + " " + std::string(op_token(n.label.op)) + " " +
                text[n.right] + ")";
      break;
    }
  }
  return std::move(text[f.root()]);
}

std::string format_formula(const Formula& f) {
  const auto top = f.max_prop();
  return format_formula(f, Alphabet::numbered(top ? *top + 1 : 0));
}

} // namespace ltlf
