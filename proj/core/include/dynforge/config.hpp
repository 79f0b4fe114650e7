#pragma once

#include <cstdint>

namespace dynforge {

// Process-wide knobs. The CLI sets these once at startup; library callers may
// adjust them before doing work. Nothing in the toolkit mutates them mid-run.
struct Options {
  // Seed for the randomized factorization splitting steps. Output is made
  // order-independent by canonical sorting, but a fixed seed keeps the
  // internal work (and therefore timings and retry counts) reproducible.
  std::uint64_t factor_seed = 0x5eedf1e1dULL;

  // Cap on z-degrees produced by iteration/dynatomic construction.
  long degree_cap = 4096;

  // Cap on the number of lifted local factors fed to exhaustive subset
  // recombination (2^pool candidates).
  int recombination_pool_cap = 20;

  // How many times precision is doubled after a precision_loss_error before
  // giving up.
  int precision_retries = 2;

  // Iteration cap multiplier for fixed-point solves: at most this times the
  // requested precision.
  int solve_iteration_factor = 4;
};

Options& options();

// Default relative precision (series terms beyond the leading exponent) for
// work at degree d^(m+n).
inline long default_precision(long hom_degree) { return 4 * hom_degree; }

}  // namespace dynforge
