#include "chaoscope/parallel.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

using namespace chaoscope;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* v) { setenv("CHAOSCOPE_THREADS", v, 1); }
  ~ThreadsEnv() { unsetenv("CHAOSCOPE_THREADS"); }
};

}  // namespace

TEST(Parallel, ThreadCountFromEnvironment) {
  {
    ThreadsEnv env("3");
    EXPECT_EQ(thread_count(), 3u);
  }
  {
    ThreadsEnv env("junk");
    EXPECT_GE(thread_count(), 1u);
  }
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (const char* threads : {"1", "2", "7", "64"}) {
    ThreadsEnv env(threads);
    for (std::size_t n : {0u, 1u, 5u, 1000u}) {
      std::vector<std::atomic<int>> hits(n);
      parallel_for(n, [&](std::size_t i) { hits[i]++; });
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(hits[i].load(), 1);
    }
  }
}

TEST(Parallel, PropagatesExceptions) {
  ThreadsEnv env("4");
  EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                 if (i == 57) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
