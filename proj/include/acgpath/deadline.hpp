#pragma once

#include <algorithm>
#include <chrono>

namespace acg {

using Clock = std::chrono::steady_clock;

// A wall-clock cutoff. Deadline::never() compares later than any real point.
class Deadline {
 public:
  Deadline() : at_(Clock::time_point::max()) {}
  explicit Deadline(Clock::time_point at) : at_(at) {}

  static Deadline never() { return Deadline(); }
  static Deadline in(std::chrono::milliseconds budget) {
    return Deadline(Clock::now() + budget);
  }

  bool expired() const { return Clock::now() >= at_; }

  std::chrono::milliseconds remaining() const {
    auto now = Clock::now();
    if (now >= at_) return std::chrono::milliseconds(0);
    return std::chrono::duration_cast<std::chrono::milliseconds>(at_ - now);
  }

  Deadline earlier_of(Deadline other) const {
    return Deadline(std::min(at_, other.at_));
  }

  bool is_never() const { return at_ == Clock::time_point::max(); }

  Clock::time_point point() const { return at_; }

 private:
  Clock::time_point at_;
};

}  // namespace acg
