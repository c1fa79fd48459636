#pragma once

#include <mutex>

namespace stable::detail {

// FFTW planning is not thread-safe (execution with the new-array interface
// is). Every planner call in the library takes this lock.
std::mutex& fftw_planner_mutex();

}  // namespace stable::detail
