#include "dspl/parallel.hpp"

#include "dspl/types.hpp"

namespace dspl {

ThreadPool::ThreadPool(int workers) : workers_(workers) {
  if (workers < 1) throw ParameterError("workers must be at least 1");
  threads_.reserve(static_cast<std::size_t>(workers_ - 1));
  for (int i = 0; i < workers_ - 1; ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
    ++generation_;
  }
  work_ready_.notify_all();
  for (std::thread& t : threads_) t.join();
}

void ThreadPool::worker_loop() {
  long long seen = 0;
  for (;;) {
    {
      std::unique_lock<std::mutex> lock(mu_);
      work_ready_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    for (;;) {
      int i;
      {
        std::lock_guard<std::mutex> lock(mu_);
        if (next_index_ >= job_size_) break;
        i = next_index_++;
      }
      try {
        (*job_)(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!first_error_) first_error_ = std::current_exception();
      }
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      --running_;
    }
    job_done_.notify_one();
  }
}

void ThreadPool::parallel_for(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (workers_ == 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    job_ = &fn;
    job_size_ = n;
    next_index_ = 0;
    running_ = workers_ - 1;
    first_error_ = nullptr;
    ++generation_;
  }
  work_ready_.notify_all();
  // The calling thread takes part in the same index race.
  for (;;) {
    int i;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (next_index_ >= job_size_) break;
      i = next_index_++;
    }
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!first_error_) first_error_ = std::current_exception();
    }
  }
  std::unique_lock<std::mutex> lock(mu_);
  job_done_.wait(lock, [&] { return running_ == 0; });
  job_ = nullptr;
  if (first_error_) std::rethrow_exception(first_error_);
}

}  // namespace dspl
