#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

namespace attrib {

// L1-penalized logistic regression solved by cyclic coordinate descent on
// the quadratic approximation of the log-likelihood, with the penalty
// selected by K-fold cross-validated deviance.  The objective is
//   (1/n) * negative log-likelihood + lambda * |coefficients|_1
// with the intercept unpenalized and columns standardized internally.
struct LassoLogisticModel {
  Eigen::VectorXd coefficients;  // original scale, intercept first
  double lambda = 0.0;
  std::vector<std::pair<double, double>> cv_curve;  // (lambda, mean CV deviance)
  std::vector<int> dropped_columns;                 // constant columns, coefficient 0

  double predict_one(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  Eigen::VectorXd predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
};

struct LassoOptions {
  int n_lambdas = 100;
  int cv_folds = 5;
  double lambda_min_ratio = 1e-3;
  // When set, cross-validation is skipped and the model is fitted at this
  // penalty (path-started from lambda_max unless a warm start is given).
  std::optional<double> forced_lambda;
  // Original-scale coefficients (intercept first, length p+1) used as the
  // starting point; bootstrap refits at a pinned penalty start from the
  // full-sample solution.
  std::optional<Eigen::VectorXd> warm_start;
};

LassoLogisticModel fit_lasso_logistic(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                      const Eigen::Ref<const Eigen::VectorXd>& t,
                                      const LassoOptions& options = {});

inline LassoLogisticModel fit_lasso_logistic(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                             const Eigen::Ref<const Eigen::VectorXd>& t,
                                             int n_lambdas, int cv_folds) {
  LassoOptions o;
  o.n_lambdas = n_lambdas;
  o.cv_folds = cv_folds;
  return fit_lasso_logistic(x, t, o);
}

}  // namespace attrib
