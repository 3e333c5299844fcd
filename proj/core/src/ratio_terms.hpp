#pragma once

// Internal: per-unit numerator/denominator columns of the ratio-form
// estimating equations.  Every proposed estimator is mean(num)/mean(den),
// its influence values are num_i/mean(den), and the plug-in variance is the
// scatter of those values around the solution.  Building both columns in
// one place keeps the estimating-equation identity exact in-sample.

#include <Eigen/Dense>

#include "attrib/dataset.hpp"
#include "attrib/estimate.hpp"
#include "attrib/nuisance.hpp"

namespace attrib::detail {

struct RatioTerms {
  Eigen::VectorXd num;
  Eigen::VectorXd den;

  double mean_den() const { return den.mean(); }
  double value() const { return num.mean() / den.mean(); }

  // Influence-function residuals (num_i - value * den_i) / mean(den); the
  // variance displays center the ratio values with the per-unit denominator
  // term, which is the form whose scatter tracks the sampling variance of
  // the ratio (a constant shift would add the estimate's square for every
  // unit with a zero denominator term).
  Eigen::VectorXd eif_values() const {
    const double v = value();
    return (num - v * den) / mean_den();
  }

  // sqrt(n)-scale plug-in standard deviation.
  double plugin_sigma() const {
    const Eigen::VectorXd e = eif_values();
    return std::sqrt(e.squaredNorm() / static_cast<double>(e.size()));
  }
};

// Throws the estimator's denominator guard (NoTreatedCasesError or
// DegenerateDenominatorError) but does not check the propensity source;
// callers enforce the Known requirement.
RatioTerms ratio_terms(Method method, const Dataset& d, const NuisanceFit& nf);

// Point estimate with guards only (no variance work).
double point_value(Method method, const Dataset& d, const NuisanceFit& nf);

}  // namespace attrib::detail
