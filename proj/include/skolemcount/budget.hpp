/*
 skolemcount

 Copyright (c) 2026, the skolemcount developers.

 Permission is hereby granted, free of charge, to any person obtaining a copy
 of this software and associated documentation files (the "Software"), to deal
 in the Software without restriction, including without limitation the rights
 to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
 copies of the Software, and to permit persons to whom the Software is
 furnished to do so, subject to the following conditions:

 The above copyright notice and this permission notice shall be included in
 all copies or substantial portions of the Software.

 THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
 IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
 FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
 AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
 LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
 OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
 THE SOFTWARE.
*/

#ifndef SKOLEMCOUNT_BUDGET_HPP
#define SKOLEMCOUNT_BUDGET_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace skolemcount {

/// Raised when a resource cap is hit; distinct from any mathematical
/// outcome. Carries how much work was already spent so callers can report
/// calls-so-far.
struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(std::string what, uint64_t sat_calls_used = 0)
      : std::runtime_error(std::move(what)), sat_calls(sat_calls_used)
  {
  }
  uint64_t sat_calls = 0;
};

/// Shared resource accounting for one run. Oracles and the SAT engine
/// charge SAT calls here and poll the deadline cooperatively; exceeding
/// either cap raises ResourceLimitError.
class Budget {
 public:
  using Clock = std::chrono::steady_clock;

  Budget() = default;

  static Budget with_limits(uint64_t max_sat_calls, double timeout_s)
  {
    Budget b;
    if (max_sat_calls > 0) b.max_sat_calls_ = max_sat_calls;
    if (timeout_s > 0)
      b.deadline_ = Clock::now() +
                    std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double>(timeout_s));
    return b;
  }

  void charge_sat_call()
  {
    if (++sat_calls_ > max_sat_calls_)
      throw ResourceLimitError("SAT-call budget exceeded", sat_calls_);
    check_deadline();
  }

  void check_deadline() const
  {
    if (deadline_ && Clock::now() > *deadline_)
      throw ResourceLimitError("wall-clock budget exceeded", sat_calls_);
  }

  uint64_t sat_calls() const { return sat_calls_; }

 private:
  uint64_t sat_calls_ = 0;
  uint64_t max_sat_calls_ = std::numeric_limits<uint64_t>::max();
  std::optional<Clock::time_point> deadline_;
};

}  // namespace skolemcount

#endif
