#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attrib/nuisance.hpp"

namespace attrib {

enum class Estimand { PN, PS };
enum class Assumption { Monotonicity, CondIndependence };

enum class Method {
  PnMono,
  PnInde,
  PnMonoKnownE,
  PnIndeKnownE,
  PnIpw,
  PnOr,
  PsMono,
  PsInde,
  PsMonoKnownE,
  PsIndeKnownE,
};

enum class Warning : unsigned {
  OutsideUnitInterval = 1u << 0,
  PooledArmFallback = 1u << 1,
};

struct WarningSet {
  unsigned bits = 0;
  void set(Warning w) { bits |= static_cast<unsigned>(w); }
  bool has(Warning w) const { return bits & static_cast<unsigned>(w); }
  std::vector<std::string> names() const;
};

// Two-sided 95% Wald z.
inline constexpr double kZ95 = 1.959963984540054;

struct Estimate {
  double value = 0.0;
  double se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double p_value = 1.0;
  Eigen::Index n = 0;
  Estimand estimand = Estimand::PN;
  Method method = Method::PnMono;
  Assumption assumption = Assumption::Monotonicity;
  PropensitySource propensity_source = PropensitySource::Estimated;
  WarningSet warnings;
};

// Per-unit plug-in influence values.  zeta holds the ratio-form values
// whose sample mean equals the point estimate computed from the same
// inputs; eif holds the estimating-equation residuals (zeta minus the
// estimate scaled by the unit's own denominator term), whose sample mean is
// zero at the solution and whose scatter is the plug-in variance.
struct InfluenceValues {
  Eigen::VectorXd zeta;
  Eigen::VectorXd eif;
  double estimand_at_solution = 0.0;
};

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);
Estimand method_estimand(Method m);
Assumption method_assumption(Method m);
bool method_requires_known_e(Method m);
bool method_has_plugin_se(Method m);

double normal_cdf(double x);

// Fills se/ci/p from sqrt(n)-scale sigma; flags values outside [0,1].
Estimate finalize_estimate(double value, double sigma, Eigen::Index n, Method method,
                           const NuisanceFit& nf);

// JSON object {estimand, method, assumption, propensity_source, value, se,
// ci, p_value, n, warnings, seed?}.
std::string estimate_to_json(const Estimate& e, std::optional<std::uint64_t> seed = {});

// One-row CSV whose estimate columns follow the <estimand>.est / ESE /
// p-value naming used by the reporting tables.
std::string estimate_to_csv(const Estimate& e, std::optional<std::uint64_t> seed = {});

}  // namespace attrib
