#include "cayley/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <algorithm>
#include <string>
#include <thread>
#include <vector>

namespace cayley {

namespace {

unsigned initial_threads() {
  if (const char* env = std::getenv("CAYLEYLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

std::atomic<unsigned>& threads_setting() {
  static std::atomic<unsigned> value{initial_threads()};
  return value;
}

}  // namespace

unsigned thread_count() { return threads_setting().load(); }

void set_thread_count(unsigned n) { threads_setting().store(n == 0 ? 1 : n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const unsigned workers = thread_count();
  if (workers <= 1 || n < 4096) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void parallel_tasks(std::size_t n, const std::function<void(std::size_t)>& task) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cayley
