#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "parasharp/parallel.hpp"

using namespace parasharp;

TEST_CASE("parallel_for visits every index exactly once") {
  for (std::size_t n : {0, 1, 7, 100, 1001}) {
    std::vector<int> hits(n, 0);
    parallel_for(n, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("parallel_for rethrows an exception from a worker") {
  CHECK_THROWS_AS(parallel_for(50,
                               [](std::size_t i) {
                                 if (i == 33) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("PARASHARP_THREADS caps the worker count") {
  ::setenv("PARASHARP_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  ::setenv("PARASHARP_THREADS", "not-a-number", 1);
  CHECK(worker_count() >= 1);
  ::unsetenv("PARASHARP_THREADS");
  CHECK(worker_count() >= 1);
}
