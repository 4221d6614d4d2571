#pragma once

#include <cstddef>
#include <functional>

namespace zfpkit {

// Hardware threads, capped by ZFPKIT_THREADS when set.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Results must be written to per-index slots;
// the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace zfpkit
