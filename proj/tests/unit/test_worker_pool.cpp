#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "woenet/worker_pool.hpp"

using namespace woenet;

TEST_CASE("every index runs exactly once") {
    for (std::size_t workers : {std::size_t{1}, std::size_t{3}, std::size_t{8}}) {
        std::vector<std::atomic<int>> hits(100);
        parallel_for(100, workers, [&](std::size_t i) { hits[i].fetch_add(1); });
        for (auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("zero tasks is a no-op") {
    bool touched = false;
    parallel_for(0, 4, [&](std::size_t) { touched = true; });
    CHECK_FALSE(touched);
}

TEST_CASE("more workers than tasks still covers all tasks") {
    std::vector<std::atomic<int>> hits(3);
    parallel_for(3, 16, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("indexed slots make results order-independent") {
    std::vector<double> out_serial(64), out_parallel(64);
    auto work = [](std::size_t i) { return static_cast<double>(i * i) + 0.5; };
    parallel_for(64, 1, [&](std::size_t i) { out_serial[i] = work(i); });
    parallel_for(64, 7, [&](std::size_t i) { out_parallel[i] = work(i); });
    CHECK(out_serial == out_parallel);
}

TEST_CASE("exceptions propagate to the caller") {
    CHECK_THROWS_AS(
        parallel_for(20, 4,
                     [&](std::size_t i) {
                         if (i == 11) throw std::runtime_error("boom");
                     }),
        std::runtime_error);

    // Serial path propagates too.
    CHECK_THROWS_AS(
        parallel_for(20, 1,
                     [&](std::size_t i) {
                         if (i == 3) throw std::runtime_error("boom");
                     }),
        std::runtime_error);
}
