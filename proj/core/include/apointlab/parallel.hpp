#pragma once

#include <cstddef>
#include <functional>

namespace apl {

// Number of workers: hardware concurrency, capped by the APOINT_LAB_THREADS
// environment variable when set.
std::size_t worker_count();

// Runs f(i) for i in [0, n) on worker_count() threads, static block
// partition. Callers keep determinism by writing results into index i's
// slot; no reduction happens here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace apl
