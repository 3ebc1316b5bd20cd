#pragma once

#include <cstddef>
#include <functional>

namespace woenet {

// Runs fn(0..n-1), fanning out over `workers` threads. Tasks write into
// caller-owned indexed slots, so output order never depends on scheduling.
// The first task exception (if any) is rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace woenet
