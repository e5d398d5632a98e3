#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace ltlf {

// One trace position: bit k set iff proposition k holds.
using Symbol = std::uint64_t;

inline constexpr std::size_t kMaxPropositions = 64;

// A non-empty finite sequence of symbols.
class Trace {
public:
  explicit Trace(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty())
      throw std::invalid_argument("empty trace");
  }
  Trace(std::initializer_list<Symbol> symbols) : Trace(std::vector<Symbol>(symbols)) {}

  std::size_t length() const { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  bool holds(std::size_t position, std::uint32_t prop) const {
    return (symbols_[position] >> prop) & 1U;
  }

  friend auto operator<=>(const Trace&, const Trace&) = default;
  friend bool operator==(const Trace&, const Trace&) = default;

private:
  std::vector<Symbol> symbols_;
};

struct TraceHash {
  std::size_t operator()(const Trace& t) const noexcept {
    std::size_t h = t.length();
    for (Symbol s : t.symbols())
      h = (h ^ std::hash<Symbol>{}(s)) * 0x100000001b3ULL + 0x9e3779b9;
    return h;
  }
};

} // namespace ltlf
