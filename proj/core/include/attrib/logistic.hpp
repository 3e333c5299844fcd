#pragma once

#include <Eigen/Dense>
#include <vector>

namespace attrib {

// Main-effects logistic regression fitted by iteratively reweighted least
// squares with a small ridge term for numerical stability.
struct LogisticModel {
  Eigen::VectorXd coefficients;  // intercept first, length p + 1
  bool converged = false;        // gradient max-norm <= grad_tol at exit
  int iterations = 0;
  double final_log_likelihood = 0.0;  // penalized objective at the solution
  std::vector<double> log_likelihood_trace;  // accepted iterates, non-decreasing

  double predict_one(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  Eigen::VectorXd predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
};

struct LogisticOptions {
  double ridge = 1e-8;
  int max_iterations = 100;
  double loglik_tol = 1e-10;
  double grad_tol = 1e-6;
};

// Maximizes sum_i [t_i log p_i + (1-t_i) log(1-p_i)] - ridge/2 * |coef|^2.
// Throws DivergedError when the iteration limit is exhausted or when the
// targets are all 0 / all 1 with ridge == 0 (no finite maximizer).
LogisticModel fit_logistic(const Eigen::Ref<const Eigen::MatrixXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& t,
                           const LogisticOptions& options = {});

inline LogisticModel fit_logistic(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                  const Eigen::Ref<const Eigen::VectorXd>& t, double ridge) {
  LogisticOptions o;
  o.ridge = ridge;
  return fit_logistic(x, t, o);
}

inline double expit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(z)) without overflow.
inline double log1pexp(double z) {
  return (z > 0 ? z : 0.0) + std::log1p(std::exp(-std::abs(z)));
}

}  // namespace attrib
