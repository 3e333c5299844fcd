#include "attrib/pn.hpp"

#include <cmath>

#include "attrib/errors.hpp"
#include "bootstrap_detail.hpp"
#include "ratio_terms.hpp"

namespace attrib {

namespace {

void require_known(const NuisanceFit& nf, const char* what) {
  if (nf.propensity_source != PropensitySource::Known) {
    throw WrongVariantError(std::string(what) + " requires a known propensity score");
  }
}

Estimate plugin_estimate(Method method, const Dataset& d, const NuisanceFit& nf) {
  const detail::RatioTerms t = detail::ratio_terms(method, d, nf);
  return finalize_estimate(t.value(), t.plugin_sigma(), d.n(), method, nf);
}

}  // namespace

Estimate pn_mono(const Dataset& d, const NuisanceFit& nf) {
  return plugin_estimate(Method::PnMono, d, nf);
}

Estimate pn_inde(const Dataset& d, const NuisanceFit& nf) {
  return plugin_estimate(Method::PnInde, d, nf);
}

Estimate pn_mono_known_e(const Dataset& d, const NuisanceFit& nf) {
  require_known(nf, "pn_mono_known_e");
  return plugin_estimate(Method::PnMonoKnownE, d, nf);
}

Estimate pn_inde_known_e(const Dataset& d, const NuisanceFit& nf) {
  require_known(nf, "pn_inde_known_e");
  return plugin_estimate(Method::PnIndeKnownE, d, nf);
}

Estimate pn_ipw(const Dataset& d, const NuisanceFit& nf, const ResamplePlan& plan) {
  return detail::bootstrap_estimate(Method::PnIpw, d, nf, plan);
}

Estimate pn_or(const Dataset& d, const NuisanceFit& nf, const ResamplePlan& plan) {
  return detail::bootstrap_estimate(Method::PnOr, d, nf, plan);
}

InfluenceValues pn_influence_values(const Dataset& d, const NuisanceFit& nf, double beta_hat,
                                    Assumption assumption, bool known_e) {
  if (known_e && nf.propensity_source != PropensitySource::Known) {
    throw WrongVariantError("known-propensity influence values need a Known nuisance fit");
  }
  Method method;
  if (assumption == Assumption::Monotonicity) {
    method = known_e ? Method::PnMonoKnownE : Method::PnMono;
  } else {
    method = known_e ? Method::PnIndeKnownE : Method::PnInde;
  }
  const detail::RatioTerms t = detail::ratio_terms(method, d, nf);
  InfluenceValues iv;
  iv.zeta = t.num / t.mean_den();
  iv.eif = (t.num - beta_hat * t.den) / t.mean_den();
  iv.estimand_at_solution = beta_hat;
  return iv;
}

}  // namespace attrib
