#include "attrib/ps.hpp"

#include <cmath>

#include "attrib/errors.hpp"
#include "bootstrap_detail.hpp"
#include "ratio_terms.hpp"

namespace attrib {

namespace {

Estimate plugin_estimate(Method method, const Dataset& d, const NuisanceFit& nf) {
  const detail::RatioTerms t = detail::ratio_terms(method, d, nf);
  return finalize_estimate(t.value(), t.plugin_sigma(), d.n(), method, nf);
}

}  // namespace

Estimate ps_mono(const Dataset& d, const NuisanceFit& nf) {
  return plugin_estimate(Method::PsMono, d, nf);
}

Estimate ps_inde(const Dataset& d, const NuisanceFit& nf) {
  return plugin_estimate(Method::PsInde, d, nf);
}

Estimate ps_mono_known_e(const Dataset& d, const NuisanceFit& nf, const ResamplePlan& plan) {
  return detail::bootstrap_estimate(Method::PsMonoKnownE, d, nf, plan);
}

Estimate ps_inde_known_e(const Dataset& d, const NuisanceFit& nf, const ResamplePlan& plan) {
  return detail::bootstrap_estimate(Method::PsIndeKnownE, d, nf, plan);
}

InfluenceValues ps_influence_values(const Dataset& d, const NuisanceFit& nf, double gamma_hat,
                                    Assumption assumption, bool known_e) {
  if (known_e && nf.propensity_source != PropensitySource::Known) {
    throw WrongVariantError("known-propensity influence values need a Known nuisance fit");
  }
  Method method;
  if (assumption == Assumption::Monotonicity) {
    method = known_e ? Method::PsMonoKnownE : Method::PsMono;
  } else {
    method = known_e ? Method::PsIndeKnownE : Method::PsInde;
  }
  const detail::RatioTerms t = detail::ratio_terms(method, d, nf);
  InfluenceValues iv;
  iv.zeta = t.num / t.mean_den();
  iv.eif = (t.num - gamma_hat * t.den) / t.mean_den();
  iv.estimand_at_solution = gamma_hat;
  return iv;
}

}  // namespace attrib
