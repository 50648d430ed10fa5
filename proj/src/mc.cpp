#include "qfe/mc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "qfe/extremal.hpp"
#include "qfe/risk.hpp"

namespace qfe {

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t block = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * block;
      const std::size_t end = std::min(count, begin + block);
      pool.emplace_back([&, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

McResult mc_risk(const Signal& signal, const FilterSeq& filter, const Problem& problem,
                 std::size_t replicates, std::uint64_t seed, unsigned threads) {
  require(replicates >= 100, "mc_risk needs at least 100 replicates");
  const double target = quadratic_functional(signal);
  const std::size_t count = std::max(signal.support(), filter.support());

  std::vector<double> squared_errors(replicates);
  parallel_for(replicates, threads, [&](std::size_t k) {
    const Observations obs = sample_observations(signal, problem, count, replicate_seed(seed, k));
    const double err = estimate(obs, filter) - target;
    squared_errors[k] = err * err;
  });

  // Welford, in replicate order.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < replicates; ++k) {
    const double x = squared_errors[k];
    const double delta = x - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (x - mean);
  }
  const double n = static_cast<double>(replicates);
  McResult out;
  out.mean = mean;
  out.std_error = std::sqrt(m2 / (n - 1.0)) / std::sqrt(n);
  out.replicates = replicates;
  out.seed = seed;
  return out;
}

WindowRange default_window_range(double formula_window) {
  const auto w = static_cast<std::size_t>(std::ceil(formula_window));
  return {1, std::max(3 * w, w + 2)};
}

double worst_case_bias_noise(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                             double window) {
  const Problem problem(gamma, epsilon);
  const FilterSeq filter = optimal_filter(ellipsoid, window);
  const ExtremalSignal worst = least_favorable_at(ellipsoid, gamma, epsilon, window);
  return exact_risk(worst.signal, filter, problem).bias_noise();
}

GridSearchResult grid_search_window(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                                    WindowRange range) {
  require(range.lo <= range.hi, "grid_search_window: empty window range");
  const std::size_t lo = std::max<std::size_t>(range.lo, 2);
  require(lo <= range.hi, "grid_search_window: range holds no window >= 2");

  GridSearchResult out;
  out.formula_window = optimal_window(ellipsoid, gamma, epsilon).window;
  out.formula_grid_window = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::llround(out.formula_window)));
  require(out.formula_grid_window >= lo && out.formula_grid_window <= range.hi,
          "grid_search_window: range must contain the formula window");

  const std::size_t count = range.hi - lo + 1;
  std::vector<double> risks(count);
  for (std::size_t k = 0; k < count; ++k) {
    risks[k] = worst_case_bias_noise(ellipsoid, gamma, epsilon, static_cast<double>(lo + k));
  }
  const auto best = std::min_element(risks.begin(), risks.end());
  out.best_window = lo + static_cast<std::size_t>(best - risks.begin());
  out.best_risk = *best;
  out.formula_risk = risks[out.formula_grid_window - lo];
  out.ratio = out.formula_risk / out.best_risk;
  return out;
}

}  // namespace qfe
