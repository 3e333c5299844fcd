#pragma once

#include <cstdint>
#include <filesystem>

#include "attrib/dgp.hpp"
#include "attrib/estimate.hpp"

namespace attrib {

// Ground truth by brute-force simulation of the potential-outcome table:
// PN is the frequency of y0 = 0 among units with a = 1 and y1 = 1, PS the
// frequency of y1 = 1 among units with a = 0 and y0 = 0.
double simulate_true_value(const DgpSpec& spec, Estimand estimand, std::size_t samples,
                           std::uint64_t seed);

// Cache location: ATTRIB_CACHE_DIR, else XDG_CACHE_HOME/attrib, else
// ~/.cache/attrib, else ./.attrib-cache.
std::filesystem::path truth_cache_dir();

// simulate_true_value with a disk cache keyed by (case, estimand, samples,
// seed).
double true_value(const DgpSpec& spec, Estimand estimand, std::size_t samples,
                  std::uint64_t seed);

}  // namespace attrib
