#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "bcd/errors.hpp"

namespace bcd {

// Cooperative time limit. Long-running loops call poll() once per iteration;
// the clock is only read every `kStride` polls.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;

  static Deadline after(std::optional<double> seconds) {
    Deadline d;
    if (seconds) {
      d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(*seconds));
    }
    return d;
  }

  bool unlimited() const { return !at_.has_value(); }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  void poll() const {
    if (!at_) return;
    if ((++polls_ & (kStride - 1)) != 0) return;
    if (Clock::now() >= *at_) throw Timeout();
  }

  void check() const {
    if (expired()) throw Timeout();
  }

 private:
  static constexpr std::uint32_t kStride = 64;
  std::optional<Clock::time_point> at_;
  mutable std::uint32_t polls_ = 0;
};

class Stopwatch {
 public:
  Stopwatch() : start_(Deadline::Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Deadline::Clock::now() - start_)
        .count();
  }
  double millis() const { return seconds() * 1000.0; }

 private:
  Deadline::Clock::time_point start_;
};

}  // namespace bcd
