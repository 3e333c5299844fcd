#include "bootstrap_detail.hpp"

#include <cmath>
#include <vector>

#include "attrib/errors.hpp"
#include "attrib/rng.hpp"
#include "ratio_terms.hpp"

namespace attrib::detail {

namespace {

struct NuisanceRoles {
  bool propensity = true;
  bool mu0 = true;
  bool mu1 = true;
};

NuisanceRoles roles_for(Method method) {
  NuisanceRoles r;
  switch (method) {
    case Method::PnIpw:
      r.mu0 = r.mu1 = false;
      break;
    case Method::PnOr:
      r.propensity = false;
      break;
    case Method::PsMonoKnownE:
      r.propensity = false;  // known values travel with the resampled rows
      r.mu0 = r.mu1 = true;
      break;
    case Method::PsIndeKnownE:
      r.propensity = false;
      break;
    default:
      break;
  }
  return r;
}

Dataset resample_rows(const Dataset& d, const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd x(rows.size(), d.p());
  Eigen::VectorXd a(rows.size()), y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(i) = d.x.row(rows[i]);
    a[i] = d.a[rows[i]];
    y[i] = d.y[rows[i]];
  }
  return make_dataset(std::move(x), std::move(a), std::move(y), d.column_names);
}

}  // namespace

Estimate bootstrap_estimate(Method method, const Dataset& d, const NuisanceFit& nf,
                            const ResamplePlan& plan) {
  if (method_requires_known_e(method) && nf.propensity_source != PropensitySource::Known) {
    throw WrongVariantError(method_name(method) + " requires a known propensity score");
  }

  const double value = point_value(method, d, nf);
  const Eigen::Index n = d.n();
  const NuisanceRoles roles = roles_for(method);
  const bool known_e = nf.propensity_source == PropensitySource::Known;
  const CrossFitOptions options =
      pin_lasso(d, plan.options, roles.propensity && !known_e, roles.mu0, roles.mu1);

  const StreamKey root = StreamKey::root(plan.seed).child("bootstrap");
  std::vector<double> values;
  values.reserve(plan.replications);

  for (int b = 0; b < plan.replications; ++b) {
    RandomStream stream(root.child(static_cast<std::uint64_t>(b)));
    std::vector<Eigen::Index> rows(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      rows[i] = static_cast<Eigen::Index>(stream.below(static_cast<std::uint64_t>(n)));
    }
    try {
      const Dataset db = resample_rows(d, rows);
      std::optional<Eigen::VectorXd> e_known;
      if (known_e) {
        Eigen::VectorXd e(n);
        for (Eigen::Index i = 0; i < n; ++i) e[i] = nf.e_hat[rows[i]];
        e_known = std::move(e);
      }
      CrossFitOptions opt_b = options;
      if (!roles.mu0 && !roles.mu1) opt_b.skip_outcome_models = true;
      if (!roles.propensity && !known_e) opt_b.skip_propensity = true;
      const NuisanceFit nfb =
          cross_fit(db, plan.folds, opt_b, e_known,
                    root.child(static_cast<std::uint64_t>(b)).child("folds").value);
      values.push_back(point_value(method, db, nfb));
    } catch (const Error&) {
      // Degenerate resample (e.g. no treated cases); skipped and ignored.
    }
  }

  if (values.size() < 2) {
    throw DegenerateDenominatorError("bootstrap failed on nearly all replicates");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / static_cast<double>(values.size() - 1));

  // finalize_estimate works on the sqrt(n) scale.
  return finalize_estimate(value, se * std::sqrt(static_cast<double>(n)), n, method, nf);
}

}  // namespace attrib::detail
