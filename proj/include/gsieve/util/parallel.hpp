#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <span>
#include <thread>
#include <vector>

namespace gsieve {

/// Worker count used when callers pass 0.
inline unsigned default_threads() { return 1; }

/// Runs body(w) for w in [0, workers) on separate threads and rethrows the
/// first worker exception in worker order.
template <class Body>
void run_workers(unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(0U);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Runs body(begin, end) over [0, n) split into contiguous chunks, one per
/// worker. Bodies must write disjoint outputs; nothing here depends on the
/// split, so results are identical for every worker count.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n / 1024, 1)));
  const std::size_t chunk = (n + threads - 1) / threads;
  run_workers(threads, [&](unsigned t) {
    const std::size_t begin = std::min(n, t * chunk);
    body(begin, std::min(n, begin + chunk));
  });
}

/// Pairwise (cascade) summation; the association order depends only on the
/// length of the input.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

template <class F>
double pairwise_sum_of(std::size_t n, F&& f) {
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = f(i);
  return pairwise_sum(terms);
}

}  // namespace gsieve
