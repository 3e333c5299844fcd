#pragma once

// Internal: bootstrap standard errors for estimators without a plug-in
// variance (IPW, OR, known-propensity sufficiency variants).

#include "attrib/bootstrap_plan.hpp"
#include "attrib/dataset.hpp"
#include "attrib/estimate.hpp"
#include "attrib/nuisance.hpp"

namespace attrib::detail {

// Point estimate from (d, nf), standard error from plan.replications
// resamples of the rows with the nuisance pipeline refitted per replicate.
Estimate bootstrap_estimate(Method method, const Dataset& d, const NuisanceFit& nf,
                            const ResamplePlan& plan);

}  // namespace attrib::detail
