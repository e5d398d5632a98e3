#pragma once

#include <cstdint>
#include <vector>

#include "ltlf/formula.hpp"
#include "ltlf/trace.hpp"

namespace ltlf {

// Truth values of every DAG node at every trace position, filled bottom-up.
// Until, Eventually and Globally are computed right to left, so the table
// costs O(size * length).
class Valuation {
public:
  Valuation(const Formula& f, const Trace& u);

  bool at(NodeId node, std::size_t position) const {
    return values_[node * length_ + position] != 0;
  }
  bool root_at(std::size_t position) const { return at(root_, position); }
  std::size_t length() const { return length_; }

private:
  std::size_t length_;
  NodeId root_;
  std::vector<std::uint8_t> values_;
};

// V(f, u, i). Throws std::out_of_range unless 0 <= i < |u|.
bool evaluate(const Formula& f, const Trace& u, std::size_t position);

// V(f, u, 0)
bool satisfies(const Formula& f, const Trace& u);

} // namespace ltlf
