#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// Background clouds finished by the end of each task period. The back end
// handles task i from max(arrival_i, end of task i-1) for `busy` seconds and
// spends the remainder of the period on background work, which carries over
// between periods, so the count is the accumulated idle time over T_BG.
inline std::vector<std::size_t> background_counts(std::size_t tasks, double period, double busy,
                                                  double t_bg) {
  std::vector<std::size_t> counts;
  double idle_total = 0.0;
  double done = 0.0;
  for (std::size_t i = 0; i < tasks; ++i) {
    const double start = std::max(static_cast<double>(i) * period, done);
    done = start + busy;
    idle_total += std::max(0.0, static_cast<double>(i + 1) * period - done);
    counts.push_back(static_cast<std::size_t>(std::floor(idle_total / t_bg + 1e-9)));
  }
  return counts;
}

}  // namespace oracle
