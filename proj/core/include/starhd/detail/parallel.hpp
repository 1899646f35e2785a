#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace starhd::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

class ThreadPool {
 public:
  explicit ThreadPool(unsigned threads) {
    threads = resolve_threads(threads);
    workers_.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers_.emplace_back([this] { run(); });
    }
  }

  ~ThreadPool() {
    {
      std::lock_guard lock(mutex_);
      done_ = true;
    }
    cv_.notify_all();
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  std::size_t size() const { return workers_.size(); }

  template <typename F>
  auto submit(F&& f) -> std::future<std::invoke_result_t<F>> {
    using R = std::invoke_result_t<F>;
    auto task = std::make_shared<std::packaged_task<R()>>(std::forward<F>(f));
    std::future<R> future = task->get_future();
    {
      std::lock_guard lock(mutex_);
      queue_.emplace_back([task] { (*task)(); });
    }
    cv_.notify_one();
    return future;
  }

 private:
  void run() {
    for (;;) {
      std::function<void()> task;
      {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return done_ || !queue_.empty(); });
        if (queue_.empty()) return;  // done_ and drained
        task = std::move(queue_.front());
        queue_.pop_front();
      }
      task();
    }
  }

  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> queue_;
  bool done_ = false;
  std::vector<std::jthread> workers_;
};

// Runs fn(i) for i in [0, n) across `threads` workers. Work items must
// write to disjoint slots; the schedule is dynamic, the slot layout keeps
// the outcome deterministic.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n, std::memory_order_relaxed);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

// Producer/consumer pipeline preserving sequence order: `produce(i)` runs on
// the pool within a bounded look-ahead window, `consume(i, value)` runs
// strictly in index order on the calling thread. Bounding the window keeps
// memory flat when the produced values are large; fixing the consumption
// order makes the outcome identical to the sequential loop for any thread
// count.
template <typename Produce, typename Consume>
void ordered_pipeline(std::size_t n, unsigned threads, Produce&& produce, Consume&& consume) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) consume(i, produce(i));
    return;
  }
  using Value = std::invoke_result_t<Produce, std::size_t>;
  ThreadPool pool(threads);
  const std::size_t window = static_cast<std::size_t>(threads) * 8;
  std::deque<std::future<Value>> inflight;
  std::size_t spawned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (spawned < n && inflight.size() < window) {
      inflight.push_back(pool.submit([&produce, j = spawned] { return produce(j); }));
      ++spawned;
    }
    Value v = inflight.front().get();
    inflight.pop_front();
    consume(i, std::move(v));
  }
}

}  // namespace starhd::detail
