#pragma once

// Straight transcription of the online bisection search, written as nested
// loops over a deterministic black box. Used to cross-check the incremental
// controller. Conventions shared with the controller:
//   - task 0 runs (1.0, N); it counts as the first probe of level N;
//   - each later level starts at the best feasible r so far (0.3 if none);
//   - baseline check on the first probe of a level, level skip on an
//     infeasible step whose Q does not beat the best solution with more
//     cameras, global termination at level entry when the smallest Q seen at
//     r = 1 with at least that many cameras does not beat it either;
//   - adopted configuration: max Q, then more cameras, then larger r;
//   - afterwards r moves by +-0.02 on the running average over the
//     adjusting tasks (current task included).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

struct Step {
  double r;
  int n;
};

struct Algorithm1Run {
  std::vector<Step> configs;
  std::size_t search_steps = 0;
  bool infeasible = false;
  std::optional<Step> adopted;
};

struct Measurement {
  double t;
  double q;
};

inline Algorithm1Run run_algorithm1(const std::function<Measurement(double, int)>& pipeline,
                                    int N, double deadline, std::size_t tasks) {
  constexpr double kFloor = 0.3;
  constexpr double kTauSearch = 0.01;
  constexpr double kTauAdjust = 0.02;

  struct Sol {
    double r;
    int n;
    double q;
  };
  struct OutOfTasks {};

  Algorithm1Run run;
  std::vector<Sol> sols;
  std::vector<std::pair<int, double>> full_res_q;
  bool searching = true;

  auto observe = [&](double r, int n) {
    if (run.configs.size() == tasks) throw OutOfTasks{};
    run.configs.push_back({r, n});
    if (searching) ++run.search_steps;
    const Measurement m = pipeline(r, n);
    if (searching && r >= 1.0) full_res_q.emplace_back(n, m.q);
    return m;
  };
  auto rank_higher = [](const Sol& a, const Sol& b) {
    if (a.q != b.q) return a.q > b.q;
    if (a.n != b.n) return a.n > b.n;
    return a.r > b.r;
  };
  auto best_above = [&](int n) {
    std::optional<Sol> best;
    for (const Sol& s : sols) {
      if (s.n > n && (!best || rank_higher(s, *best))) best = s;
    }
    return best;
  };

  try {
    double r_star = 1.0;
    const Measurement golden = observe(1.0, N);
    const bool top_done = golden.t <= deadline;
    if (top_done) sols.push_back({1.0, N, golden.q});

    for (int n = N; n >= 3; --n) {
      if (n == N && top_done) continue;
      const auto bench = best_above(n);
      if (bench) {
        double lowest = 2.0;
        bool any = false;
        for (const auto& [cams, q] : full_res_q) {
          if (cams >= n) {
            lowest = std::min(lowest, q);
            any = true;
          }
        }
        if (any && lowest <= bench->q) break;
      }

      double lo = sols.empty() ? kFloor : r_star;
      double hi = 1.0;
      double r = lo;
      bool first = true;
      while (true) {
        const Measurement m = observe(r, n);
        const auto bench_now = best_above(n);
        const bool ok = m.t <= deadline;
        if (ok) {
          lo = r;
          r_star = r;
          sols.push_back({r, n, m.q});
        } else {
          hi = r;
        }
        if (first && !ok) break;
        first = false;
        if (!ok && bench_now && m.q <= bench_now->q) break;
        if (hi - lo <= kTauSearch) break;
        r = (lo + hi) / 2.0;
      }
    }

    searching = false;
    if (sols.empty()) {
      run.infeasible = true;
      while (true) observe(kFloor, 3);
    }
    Sol best = sols.front();
    for (const Sol& s : sols) {
      if (rank_higher(s, best)) best = s;
    }
    run.adopted = Step{best.r, best.n};
    double r = best.r;
    double sum = 0.0;
    std::size_t count = 0;
    while (true) {
      const Measurement m = observe(r, best.n);
      sum += m.t;
      ++count;
      const double avg = sum / static_cast<double>(count);
      int dir = 0;
      if (avg < deadline && m.t < deadline) dir = 1;
      if (avg > deadline && m.t > deadline) dir = -1;
      r = std::clamp(r + dir * kTauAdjust, kFloor, 1.0);
    }
  } catch (const OutOfTasks&) {
  }
  return run;
}

}  // namespace oracle
