#pragma once

#include <cstddef>
#include <functional>

namespace geoprob {

/// Runs fn(0) .. fn(count-1) across up to `threads` workers (0 = hardware
/// concurrency). Callers must make fn(i) write only to slot i of any shared
/// output so results are identical serial or parallel. The first exception
/// thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace geoprob
