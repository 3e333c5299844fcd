#pragma once

#include "attrib/nuisance.hpp"

namespace attrib {

// Sample averages of the nuisance products that the identification ratios
// are built from.  mu0/mu1/mu weight by e_hat; the bar_ fields weight by
// 1 - e_hat; barbar_ weights the complementary outcome probability.
struct MomentFunctionals {
  double mu0 = 0;         // mean(e * mu0)
  double mu1 = 0;         // mean(e * mu1)
  double mu = 0;          // mean(e * mu0 * mu1)
  double bar_mu0 = 0;     // mean((1-e) * mu0)
  double bar_mu1 = 0;     // mean((1-e) * mu1)
  double bar_mu = 0;      // mean((1-e) * mu0 * mu1)
  double barbar_mu0 = 0;  // mean((1-e) * (1-mu0))
  double barbar_mu1 = 0;  // mean((1-e) * (1-mu1))
};

MomentFunctionals moment_functionals(const NuisanceFit& nf);

}  // namespace attrib
