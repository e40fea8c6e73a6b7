#ifndef TENSPEC_PARALLEL_HPP
#define TENSPEC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tenspec {

/// Runs fn(i) for i in [0, count) across a fixed number of threads. Work is
/// handed out through an atomic counter, so the assignment of i to threads is
/// nondeterministic, but results land in per-index slots; callers that reduce
/// over the slots in index order stay deterministic.
class Executor {
 public:
  explicit Executor(unsigned jobs) : jobs_(jobs == 0 ? 1 : jobs) {}

  unsigned jobs() const { return jobs_; }

  template <class Fn>
  void for_each_index(std::size_t count, Fn&& fn) const {
    if (count == 0) return;
    if (jobs_ == 1 || count == 1) {
      for (std::size_t i = 0; i < count; ++i) fn(i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(jobs_, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= count || failed.load(std::memory_order_relaxed)) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
            return;
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  static unsigned default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }

 private:
  unsigned jobs_;
};

}  // namespace tenspec

#endif  // TENSPEC_PARALLEL_HPP
