#include "attrib/logistic.hpp"

#include <cmath>

#include "attrib/errors.hpp"

namespace attrib {

namespace {

// Penalized log-likelihood at linear predictor eta.
double objective(const Eigen::VectorXd& eta, const Eigen::VectorXd& t,
                 const Eigen::VectorXd& beta, double ridge) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    ll += t[i] * eta[i] - log1pexp(eta[i]);
  }
  return ll - 0.5 * ridge * beta.squaredNorm();
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

double LogisticModel::predict_one(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  double z = coefficients[0];
  for (Eigen::Index j = 0; j < x.size(); ++j) z += coefficients[j + 1] * x[j];
  return expit(z);
}

Eigen::VectorXd LogisticModel::predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  Eigen::VectorXd eta =
      (x * coefficients.tail(coefficients.size() - 1)).array() + coefficients[0];
  return eta.unaryExpr([](double z) { return expit(z); });
}

LogisticModel fit_logistic(const Eigen::Ref<const Eigen::MatrixXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& t,
                           const LogisticOptions& options) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (n < 1) throw ArgumentError("fit_logistic needs at least one observation");
  if (t.size() != n) throw ArgumentError("target length does not match design rows");
  if (!x.allFinite()) throw ArgumentError("design matrix contains non-finite values");

  const double tbar = t.mean();
  if (options.ridge == 0.0 && (tbar == 0.0 || tbar == 1.0)) {
    throw DivergedError("targets are constant and ridge is 0: likelihood is unbounded",
                        std::vector<double>(p + 1, 0.0));
  }

  // Design with intercept column.
  Eigen::MatrixXd xd(n, p + 1);
  xd.col(0).setOnes();
  xd.rightCols(p) = x;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
  double obj = objective(eta, t, beta, options.ridge);

  LogisticModel model;
  model.log_likelihood_trace.push_back(obj);

  Eigen::VectorXd prob(n), w(n), grad(p + 1);
  Eigen::MatrixXd hess(p + 1, p + 1);

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      prob[i] = expit(eta[i]);
      w[i] = std::max(prob[i] * (1.0 - prob[i]), 1e-10);
    }
    grad = xd.transpose() * (t - prob) - options.ridge * beta;
    hess = xd.transpose() * w.asDiagonal() * xd;
    hess.diagonal().array() += options.ridge;

    Eigen::VectorXd step = hess.ldlt().solve(grad);

    // Step-halving keeps the accepted objective sequence non-decreasing.
    double scale = 1.0;
    double new_obj = obj;
    Eigen::VectorXd new_beta, new_eta;
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      new_beta = beta + scale * step;
      new_eta = xd * new_beta;
      new_obj = objective(new_eta, t, new_beta, options.ridge);
      if (new_obj >= obj) {
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;  // no ascent direction left at this resolution

    const double delta = new_obj - obj;
    beta = std::move(new_beta);
    eta = std::move(new_eta);
    obj = new_obj;
    model.log_likelihood_trace.push_back(obj);
    if (delta < options.loglik_tol) {
      ++iter;
      break;
    }
  }

  if (iter >= options.max_iterations) {
    throw DivergedError("IRLS did not converge within " +
                            std::to_string(options.max_iterations) + " iterations",
                        to_std(beta));
  }

  for (Eigen::Index i = 0; i < n; ++i) prob[i] = expit(eta[i]);
  grad = xd.transpose() * (t - prob) - options.ridge * beta;

  model.coefficients = std::move(beta);
  model.iterations = iter;
  model.final_log_likelihood = obj;
  model.converged = grad.lpNorm<Eigen::Infinity>() <= options.grad_tol;
  return model;
}

}  // namespace attrib
