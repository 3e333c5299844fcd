#pragma once

#include "attrib/bootstrap_plan.hpp"
#include "attrib/dataset.hpp"
#include "attrib/estimate.hpp"
#include "attrib/nuisance.hpp"

namespace attrib {

// Probability of sufficient causation.  ps_mono/ps_inde carry plug-in
// standard errors; the known-propensity variants have no published plug-in
// form, so their standard errors come from the bootstrap plan.

Estimate ps_mono(const Dataset& d, const NuisanceFit& nf);
Estimate ps_inde(const Dataset& d, const NuisanceFit& nf);
Estimate ps_mono_known_e(const Dataset& d, const NuisanceFit& nf,
                         const ResamplePlan& plan = {});
Estimate ps_inde_known_e(const Dataset& d, const NuisanceFit& nf,
                         const ResamplePlan& plan = {});

InfluenceValues ps_influence_values(const Dataset& d, const NuisanceFit& nf, double gamma_hat,
                                    Assumption assumption, bool known_e = false);

}  // namespace attrib
