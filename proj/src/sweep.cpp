#include "pertlab/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pertlab::sweep {

std::vector<ScSweepRow> sc_rows(int n, std::span<const real> cutoffs,
                                const PerturbationSeries& series, const QuadConfig& cfg,
                                Execution exec) {
  return map_indexed(
      cutoffs.size(), [&](std::size_t i) { return sc_energy(n, cutoffs[i], series, cfg); }, exec);
}

std::vector<SigmaSweepRow> ghost_rows(int n, std::span<const real> sigmas, real cutoff,
                                      const PerturbationSeries& series, const QuadConfig& cfg,
                                      Execution exec) {
  return map_indexed(
      sigmas.size(),
      [&](std::size_t i) { return ghost_energy(n, sigmas[i], cutoff, series, cfg); }, exec);
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace pertlab::sweep
