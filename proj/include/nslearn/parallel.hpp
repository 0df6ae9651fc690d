#ifndef NSLEARN_PARALLEL_HPP
#define NSLEARN_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace nslearn {

/// Thread cap for internal parallel loops, read once from NS_LEARN_THREADS.
/// Unset or empty means serial execution; "0" means one thread per hardware
/// core; any other value is taken literally (clamped to >= 1).
inline unsigned thread_cap() {
  static const unsigned cap = [] {
    const char* env = std::getenv("NS_LEARN_THREADS");
    if (env == nullptr || *env == '\0') return 1u;
    long requested = std::strtol(env, nullptr, 10);
    if (requested == 0) {
      unsigned hw = std::thread::hardware_concurrency();
      return hw == 0 ? 1u : hw;
    }
    return requested < 1 ? 1u : static_cast<unsigned>(requested);
  }();
  return cap;
}

/// Runs fn(i) for i in [0, count). Splits the range into contiguous chunks,
/// one per worker. fn must only touch state owned by index i so that results
/// do not depend on the schedule; reductions over the outputs stay with the
/// caller, which keeps the summation order fixed. The first exception (lowest
/// chunk) is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::ptrdiff_t count, Fn&& fn, std::ptrdiff_t grain = 1024) {
  if (count <= 0) return;
  const unsigned cap = thread_cap();
  std::ptrdiff_t workers = std::min<std::ptrdiff_t>(cap, (count + grain - 1) / grain);
  if (workers <= 1) {
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  const std::ptrdiff_t chunk = (count + workers - 1) / workers;
  for (std::ptrdiff_t w = 0; w < workers; ++w) {
    const std::ptrdiff_t begin = w * chunk;
    const std::ptrdiff_t end = std::min(begin + chunk, count);
    threads.emplace_back([&, w, begin, end] {
      try {
        for (std::ptrdiff_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace nslearn

#endif  // NSLEARN_PARALLEL_HPP
