#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "qfe/filters.hpp"
#include "qfe/model.hpp"

namespace qfe {

struct McResult {
  double mean = 0.0;       // sample mean of (Q~ - Q(theta))^2
  double std_error = 0.0;  // sample standard deviation / sqrt(replicates)
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

// Seed of replicate k: the SplitMix64 finalizer applied to
// seed + 0x9E3779B97F4A7C15 * (k + 1). Each replicate then draws from its
// own std::mt19937_64, so results do not depend on how replicates are
// distributed over threads.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t k);

// Runs body(i) for i in [0, count) on up to `threads` workers, each taking a
// contiguous block of indices. threads == 0 means one.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

// Monte Carlo estimate of E[(Q~ - Q(theta))^2]. Per-replicate squared errors
// are stored by replicate index and reduced sequentially afterwards.
McResult mc_risk(const Signal& signal, const FilterSeq& filter, const Problem& problem,
                 std::size_t replicates, std::uint64_t seed, unsigned threads = 1);

struct WindowRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

struct GridSearchResult {
  std::size_t best_window = 0;
  double best_risk = 0.0;
  double formula_window = 0.0;       // real-valued optimal window
  std::size_t formula_grid_window = 0;  // the grid point standing for it
  double formula_risk = 0.0;
  double ratio = 0.0;  // formula_risk / best_risk
};

// [1, max(3 W, W + 2)] for formula window W.
WindowRange default_window_range(double formula_window);

// For each integer W in range (W >= 2; smaller windows leave the
// least-favorable construction empty) evaluates the worst-case a0 + a1 of the
// matching filter against the least-favorable boundary signal built for that
// W, and compares the minimiser with the formula window rounded to the
// nearest integer.
GridSearchResult grid_search_window(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                                    WindowRange range);

// Worst-case a0 + a1 at a given window.
double worst_case_bias_noise(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                             double window);

}  // namespace qfe
