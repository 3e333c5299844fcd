#pragma once

#include <cstdint>

#include "attrib/crossfit.hpp"

namespace attrib {

// Nonparametric bootstrap: rows are resampled with replacement and the
// nuisance pipeline (cross-fitting included) is refitted on every
// replicate.  For lasso nuisances the penalty is pinned on the original
// sample once and reused across replicates.
struct ResamplePlan {
  int replications = 200;
  int folds = 5;
  std::uint64_t seed = 20240101;
  CrossFitOptions options;
};

}  // namespace attrib
