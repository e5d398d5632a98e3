#include "ltlf/semantics.hpp"

#include <stdexcept>

namespace ltlf {

Valuation::Valuation(const Formula& f, const Trace& u)
    : length_(u.length()), root_(f.root()), values_(f.size() * u.length(), 0) {
  const std::size_t len = length_;
  for (NodeId i = 0; i < f.size(); ++i) {
    const Node& n = f.node(i);
    std::uint8_t* out = &values_[i * len];
    const std::uint8_t* a = n.left == kNoChild ? nullptr : &values_[n.left * len];
    const std::uint8_t* b = n.right == kNoChild ? nullptr : &values_[n.right * len];
    switch (n.label.op) {
    case Op::Prop:
      for (std::size_t t = 0; t < len; ++t)
        out[t] = u.holds(t, n.label.prop);
      break;
    case Op::True:
      for (std::size_t t = 0; t < len; ++t)
        out[t] = 1;
      break;
    case Op::False:
      break;
    case Op::Not:
      for (std::size_t t = 0; t < len; ++t)
        out[t] = !a[t];
      break;
    case Op::Or:
      for (std::size_t t = 0; t < len; ++t)
        out[t] = a[t] || b[t];
      break;
    case Op::And:
      for (std::size_t t = 0; t < len; ++t)
        out[t] = a[t] && b[t];
      break;
    case Op::Implies:
      for (std::size_t t = 0; t < len; ++t)
        out[t] = !a[t] || b[t];
      break;
    case Op::Next:
      // Strong next: false at the last position.
      for (std::size_t t = 0; t + 1 < len; ++t)
        out[t] = a[t + 1];
      break;
    case Op::Until: {
      std::uint8_t later = 0;
      for (std::size_t t = len; t-- > 0;)
        later = out[t] = b[t] || (a[t] && later);
      break;
    }
    case Op::Eventually: {
      std::uint8_t later = 0;
      for (std::size_t t = len; t-- > 0;)
        later = out[t] = a[t] || later;
      break;
    }
    case Op::Globally: {
      std::uint8_t later = 1;
      for (std::size_t t = len; t-- > 0;)
        later = out[t] = a[t] && later;
      break;
    }
    }
  }
}

bool evaluate(const Formula& f, const Trace& u, std::size_t position) {
  if (position >= u.length())
    throw std::out_of_range("position " + std::to_string(position) +
                            " outside trace of length " + std::to_string(u.length()));
  return Valuation(f, u).root_at(position);
}

bool satisfies(const Formula& f, const Trace& u) { return Valuation(f, u).root_at(0); }

} // namespace ltlf
