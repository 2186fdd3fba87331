#ifndef DSPL_PARALLEL_HPP
#define DSPL_PARALLEL_HPP

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dspl {

// Fixed-size pool for index-parallel loops. Work items write to
// disjoint slots and there are no shared accumulators, so results are
// bitwise independent of the worker count; any reduction over the
// results happens on the calling thread in a fixed order. With one
// worker the loop runs inline and no threads are ever created.
class ThreadPool {
 public:
  explicit ThreadPool(int workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int workers() const { return workers_; }

  // Runs fn(0) .. fn(n-1), returning once all calls finished. The
  // caller participates, so the pool only parks workers_ - 1 threads.
  // The first exception thrown by fn is rethrown here.
  void parallel_for(int n, const std::function<void(int)>& fn);

 private:
  void worker_loop();

  const int workers_;
  std::vector<std::thread> threads_;

  std::mutex mu_;
  std::condition_variable work_ready_;
  std::condition_variable job_done_;
  const std::function<void(int)>* job_ = nullptr;
  int job_size_ = 0;
  int next_index_ = 0;     // guarded by mu_
  int running_ = 0;        // participants still inside the current job
  long long generation_ = 0;
  bool stop_ = false;
  std::exception_ptr first_error_;
};

}  // namespace dspl

#endif  // DSPL_PARALLEL_HPP
