#pragma once

// Sweep kernels. Every sweep point is an independent evaluation, so each
// kernel has a serial reference path and an OpenMP path over the same index
// space. Results are written by index, so both paths return identical vectors
// regardless of scheduling. If several points throw, the exception of the
// lowest index is rethrown.

#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "pertlab/ghost_reg.hpp"
#include "pertlab/sc_method.hpp"

namespace pertlab::sweep {

enum class Execution { serial, parallel };

template <class Fn>
auto map_indexed(std::size_t count, Fn&& fn, Execution exec)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  const auto body = [&](std::size_t i) {
    try {
      slots[i].emplace(fn(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
  } else {
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<ScSweepRow> sc_rows(int n, std::span<const real> cutoffs,
                                const PerturbationSeries& series, const QuadConfig& cfg,
                                Execution exec);

std::vector<SigmaSweepRow> ghost_rows(int n, std::span<const real> sigmas, real cutoff,
                                      const PerturbationSeries& series, const QuadConfig& cfg,
                                      Execution exec);

// Number of worker threads the parallel path will use.
int worker_count();

}  // namespace pertlab::sweep
