#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>

namespace ltlf {

// Cooperative wall-clock limit, optionally paired with a cancellation flag.
// Solvers poll expired() at conflict and restart boundaries.
class Deadline {
public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;

  static Deadline after(std::chrono::duration<double> budget) {
    Deadline d;
    d.until_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
    return d;
  }

  // Seconds; non-positive or missing means unlimited.
  static Deadline after_seconds(std::optional<double> seconds) {
    if (!seconds || *seconds <= 0)
      return {};
    return after(std::chrono::duration<double>(*seconds));
  }

  Deadline with_cancel(std::shared_ptr<std::atomic<bool>> flag) const {
    Deadline d = *this;
    d.cancel_ = std::move(flag);
    return d;
  }

  // The earlier of the two limits.
  Deadline min(const Deadline& other) const {
    Deadline d = *this;
    if (other.until_ && (!d.until_ || *other.until_ < *d.until_))
      d.until_ = other.until_;
    if (!d.cancel_)
      d.cancel_ = other.cancel_;
    return d;
  }

  bool unlimited() const { return !until_ && !cancel_; }

  bool expired() const {
    if (cancel_ && cancel_->load(std::memory_order_relaxed))
      return true;
    return until_ && Clock::now() >= *until_;
  }

private:
  std::optional<Clock::time_point> until_;
  std::shared_ptr<std::atomic<bool>> cancel_;
};

} // namespace ltlf
