#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace hornpre {

using Clock = std::chrono::steady_clock;

class Timeout : public std::runtime_error {
public:
  Timeout() : std::runtime_error("timeout") {}
};

/// Installs a wall-clock deadline for the current thread while in scope.
class DeadlineScope {
public:
  explicit DeadlineScope(std::optional<Clock::time_point> deadline);
  ~DeadlineScope();
  DeadlineScope(const DeadlineScope &) = delete;
  DeadlineScope &operator=(const DeadlineScope &) = delete;

private:
  std::optional<Clock::time_point> saved_;
};

std::optional<Clock::time_point> current_deadline();

/// Throws Timeout once the current thread's deadline has passed.
void check_deadline();

} // namespace hornpre
