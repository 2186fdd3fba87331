#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dspl/parallel.hpp"

TEST_CASE("parallel_for covers every index exactly once") {
  for (int workers : {1, 2, 4}) {
    dspl::ThreadPool pool(workers);
    std::vector<int> hits(257, 0);
    pool.parallel_for(257, [&](int i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(),
                      [](int h) { return h == 1; }));
  }
}

TEST_CASE("slot writes give worker-count-independent results") {
  auto run = [](int workers) {
    dspl::ThreadPool pool(workers);
    std::vector<double> out(1000);
    pool.parallel_for(1000, [&](int i) { out[i] = 0.25 * i * i - 3.0 * i; });
    return out;
  };
  const auto serial = run(1);
  CHECK(run(3) == serial);
  CHECK(run(8) == serial);
}

TEST_CASE("a pool can run several jobs in sequence") {
  dspl::ThreadPool pool(3);
  long long total = 0;
  for (int round = 0; round < 5; ++round) {
    std::vector<long long> out(round * 10 + 1);
    pool.parallel_for(static_cast<int>(out.size()),
                      [&](int i) { out[i] = i; });
    total += std::accumulate(out.begin(), out.end(), 0LL);
  }
  // Sum of 0..n-1 for n in {1, 11, 21, 31, 41}.
  CHECK(total == 0 + 55 + 210 + 465 + 820);
}

TEST_CASE("zero and tiny jobs are fine") {
  dspl::ThreadPool pool(4);
  int calls = 0;
  pool.parallel_for(0, [&](int) { ++calls; });
  CHECK(calls == 0);
  pool.parallel_for(1, [&](int) { ++calls; });
  CHECK(calls == 1);
  // Fewer items than workers.
  std::atomic<int> count{0};
  pool.parallel_for(2, [&](int) { count.fetch_add(1); });
  CHECK(count.load() == 2);
}

TEST_CASE("worker exceptions surface on the calling thread") {
  for (int workers : {1, 4}) {
    dspl::ThreadPool pool(workers);
    CHECK_THROWS_WITH_AS(pool.parallel_for(100,
                                           [&](int i) {
                                             if (i == 37) {
                                               throw std::runtime_error(
                                                   "boom at 37");
                                             }
                                           }),
                         "boom at 37", std::runtime_error);
    // The pool stays usable after a failed job.
    std::vector<int> out(10, 0);
    pool.parallel_for(10, [&](int i) { out[i] = i; });
    CHECK(out[9] == 9);
  }
}
