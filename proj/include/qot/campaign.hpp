#pragma once

// Trial campaigns. A kernel runs one trial against its own RngStream and
// adds integer counts into a tally; tallies merge by addition, so the
// OpenMP and serial paths produce identical totals for the same seed.

#include <cstdint>
#include <string_view>
#include <utility>

#include "qot/rng.hpp"

#ifdef QOT_HAVE_OPENMP
#include <omp.h>
#endif

namespace qot {

enum class Execution { serial, parallel };

std::string_view to_string(Execution e);

// Tally requirements: default constructible, `operator+=`.
// Kernel signature: void(std::uint64_t trial, RngStream& rng, Tally& acc).
template <class Tally, class Kernel>
Tally run_trials_serial(std::uint64_t seed, std::uint64_t trials, Kernel&& kernel) {
  Tally total{};
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(seed, t);
    kernel(t, rng, total);
  }
  return total;
}

template <class Tally, class Kernel>
Tally run_trials_parallel(std::uint64_t seed, std::uint64_t trials, Kernel&& kernel) {
#ifdef QOT_HAVE_OPENMP
  Tally total{};
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    Tally local{};
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < count; ++t) {
      RngStream rng(seed, static_cast<std::uint64_t>(t));
      kernel(static_cast<std::uint64_t>(t), rng, local);
    }
#pragma omp critical(qot_campaign_merge)
    total += local;
  }
  return total;
#else
  return run_trials_serial<Tally>(seed, trials, std::forward<Kernel>(kernel));
#endif
}

template <class Tally, class Kernel>
Tally run_trials(std::uint64_t seed, std::uint64_t trials, Kernel&& kernel, Execution exec = Execution::parallel) {
  if (exec == Execution::serial) return run_trials_serial<Tally>(seed, trials, std::forward<Kernel>(kernel));
  return run_trials_parallel<Tally>(seed, trials, std::forward<Kernel>(kernel));
}

int available_workers();

}  // namespace qot
