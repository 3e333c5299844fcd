#pragma once

#include "attrib/dataset.hpp"
#include "attrib/nuisance.hpp"

namespace attrib {

// Empirical variance-bound diagnostics for the necessity estimand.  The
// bounds are sample means of squared plug-in influence values; the gaps are
// the closed-form differences between them (assumption choice, and known
// versus estimated propensity).
struct EfficiencyReport {
  double bound_mono_unknown = 0;
  double bound_inde_unknown = 0;
  double bound_mono_known = 0;
  double bound_inde_known = 0;
  double gap_assumption = 0;    // mono-bound minus inde-bound, closed form
  double gap_known_e_mono = 0;  // efficiency gain from a known propensity
  double gap_known_e_inde = 0;

  std::string to_json() const;
};

EfficiencyReport efficiency_report(const Dataset& d, const NuisanceFit& nf);

}  // namespace attrib
