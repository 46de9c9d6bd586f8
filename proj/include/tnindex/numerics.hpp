#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <span>
#include <thread>
#include <vector>

namespace tnindex {

/// Nodes and weights of a rule on [-1, 1].
struct Rule
{
   std::vector<double> nodes;
   std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Golub-Welsch).
Rule gauss_legendre(int n);

/// n-point truncated tanh-sinh rule.
Rule tanh_sinh_rule(int n);

/// Pairwise summation with a fixed split: the result depends only on the
/// order of `values`.
double pairwise_sum(std::span<const double> values);

/// Worker count from an explicit request, falling back to TN_INDEX_THREADS,
/// then 1.
int resolve_threads(int requested);

/// Calls f(i) for i in [0, n) over `threads` workers in contiguous chunks.
/// f must only write to slot i of caller-owned storage.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& f)
{
   if (threads <= 1 || n < 2) {
      for (std::size_t i = 0; i < n; ++i) f(i);
      return;
   }
   const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
   const std::size_t chunk = (n + workers - 1) / workers;
   std::vector<std::exception_ptr> errors(workers);
   {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
         const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
         pool.emplace_back([lo, hi, w, &f, &errors] {
            try {
               for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
               errors[w] = std::current_exception();
            }
         });
      }
   }
   // Report the failure of the lowest chunk so errors are deterministic.
   for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
   }
}

}  // namespace tnindex
