#pragma once

#include <cstdint>
#include <optional>

#include "attrib/dataset.hpp"
#include "attrib/nuisance.hpp"

namespace attrib {

enum class ModelKind { Logistic, LassoLogistic };

struct CrossFitOptions {
  ModelKind model = ModelKind::Logistic;
  double clip_eps = 1e-3;  // propensity clipped to [eps, 1-eps]
  double ridge = 1e-8;     // logistic stabilizer
  int lasso_n_lambdas = 100;
  int lasso_cv_folds = 5;
  // Pins the lasso penalty per role (skips per-fit CV); the penalty is
  // selected once on the full sample and reused by fold models and
  // bootstrap replicates, with the full-sample solution as warm start.
  std::optional<double> lasso_lambda_e;
  std::optional<double> lasso_lambda_mu0;
  std::optional<double> lasso_lambda_mu1;
  std::optional<Eigen::VectorXd> lasso_warm_e;
  std::optional<Eigen::VectorXd> lasso_warm_mu0;
  std::optional<Eigen::VectorXd> lasso_warm_mu1;
  // Bootstrap replicates of single-nuisance estimators skip the models they
  // never read; skipped predictions are filled with 0.5.
  bool skip_outcome_models = false;
  bool skip_propensity = false;
};

// K-fold cross-fitting: units are shuffled into folds of near-equal size
// (remainder spread one per fold from fold 0 up), each fold's predictions
// come from models trained on its complement, and mu_a is trained on the
// complement units with a == a only.  When known_e is supplied it is passed
// through untouched (values must lie strictly inside (0,1)) and only the
// outcome models are cross-fitted.
NuisanceFit cross_fit(const Dataset& d, int k, const CrossFitOptions& options,
                      const std::optional<Eigen::VectorXd>& known_e, std::uint64_t seed);

inline NuisanceFit cross_fit(const Dataset& d, int k, ModelKind model,
                             const std::optional<Eigen::VectorXd>& known_e,
                             std::uint64_t seed) {
  CrossFitOptions o;
  o.model = model;
  return cross_fit(d, k, o, known_e, seed);
}

// Cross-validates the lasso penalty once per requested nuisance role on the
// full sample and pins it (plus the solution as warm start) into the
// returned options.  No-op for logistic nuisances or already-pinned roles.
CrossFitOptions pin_lasso(const Dataset& d, const CrossFitOptions& options, bool propensity,
                          bool mu0, bool mu1);

}  // namespace attrib
