#include "hornpre/deadline.hpp"

namespace hornpre {

namespace {
thread_local std::optional<Clock::time_point> tl_deadline;
} // namespace

DeadlineScope::DeadlineScope(std::optional<Clock::time_point> deadline)
    : saved_(tl_deadline) {
  tl_deadline = deadline;
}

DeadlineScope::~DeadlineScope() { tl_deadline = saved_; }

std::optional<Clock::time_point> current_deadline() { return tl_deadline; }

void check_deadline() {
  if (tl_deadline && Clock::now() > *tl_deadline) throw Timeout();
}

} // namespace hornpre
