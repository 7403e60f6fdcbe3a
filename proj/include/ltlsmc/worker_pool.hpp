#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ltlsmc {

/// Fixed set of threads running index-parallel batches. The calling thread
/// takes part in every batch, so a pool of size 1 spawns no threads.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t threads);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return workers_.size() + 1; }

  /// Runs `fn(i)` for every i in [0, n) and blocks until all have finished.
  /// The first exception thrown by any task is rethrown here.
  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

 private:
  void worker_loop(std::stop_token stop);
  void drain();

  std::vector<std::jthread> workers_;
  std::mutex mutex_;
  std::condition_variable_any wake_;
  std::condition_variable done_;

  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t total_ = 0;
  std::size_t next_ = 0;
  std::size_t finished_ = 0;
  std::size_t generation_ = 0;
  std::exception_ptr error_;
};

}  // namespace ltlsmc
