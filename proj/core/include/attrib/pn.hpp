#pragma once

#include "attrib/bootstrap_plan.hpp"
#include "attrib/dataset.hpp"
#include "attrib/estimate.hpp"
#include "attrib/nuisance.hpp"

namespace attrib {

// Probability of necessary causation.  The four proposed estimators solve
// the empirical influence-function equation and carry plug-in standard
// errors; the IPW/OR baselines take a resampling plan for bootstrap ones.

Estimate pn_mono(const Dataset& d, const NuisanceFit& nf);
Estimate pn_inde(const Dataset& d, const NuisanceFit& nf);
Estimate pn_mono_known_e(const Dataset& d, const NuisanceFit& nf);
Estimate pn_inde_known_e(const Dataset& d, const NuisanceFit& nf);

// value = 1 - sum(e(1-A)Y/(1-e)) / sum(AY); SE from the bootstrap plan.
Estimate pn_ipw(const Dataset& d, const NuisanceFit& nf, const ResamplePlan& plan = {});
// value = 1 - sum(A mu0) / sum(A mu1); SE from the bootstrap plan.
Estimate pn_or(const Dataset& d, const NuisanceFit& nf, const ResamplePlan& plan = {});

// Per-unit plug-in influence values for the proposed estimators, centered
// so that their sample mean equals beta_hat when beta_hat solves the same
// equation on the same inputs.
InfluenceValues pn_influence_values(const Dataset& d, const NuisanceFit& nf, double beta_hat,
                                    Assumption assumption, bool known_e);

}  // namespace attrib
