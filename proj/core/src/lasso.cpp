#include "attrib/lasso.hpp"

#include <algorithm>
#include <cmath>

#include "attrib/errors.hpp"
#include "attrib/logistic.hpp"

namespace attrib {

namespace {

constexpr double kWeightFloor = 1e-5;
constexpr int kMaxOuter = 30;
constexpr int kMaxSweeps = 1000;

double soft_threshold(double z, double g) {
  if (z > g) return z - g;
  if (z < -g) return z + g;
  return 0.0;
}

// Convergence tolerances; fold fits only rank penalties by held-out
// deviance, so they run looser than the fit that is returned.  The
// coordinate tolerance sits well below the outer one, otherwise the
// linear-predictor noise left by coordinate descent keeps the outer loop
// from ever meeting its own criterion.
struct PathTol {
  double outer;  // max |eta change|
  double coord;  // max |coefficient change| within coordinate descent
};
constexpr PathTol kCvTol{1e-4, 3e-6};
constexpr PathTol kFinalTol{1e-6, 3e-8};

// Columns already standardized.  Fits the descending lambda path with warm
// starts; results[k] holds (b0, beta) for grid[k].
struct PathFit {
  std::vector<double> intercepts;
  std::vector<Eigen::VectorXd> betas;
};

PathFit fit_path(const Eigen::MatrixXd& xs, const Eigen::VectorXd& t,
                 const std::vector<double>& grid, const PathTol& tol, double b0_init,
                 const Eigen::VectorXd& beta_init) {
  const Eigen::Index n = xs.rows();
  const Eigen::Index p = xs.cols();
  const double dn = static_cast<double>(n);

  double b0 = b0_init;
  Eigen::VectorXd beta = beta_init;
  Eigen::VectorXd eta = (xs * beta).array() + b0;

  Eigen::VectorXd prob(n), w(n), grad(p);

  PathFit out;
  out.intercepts.reserve(grid.size());
  out.betas.reserve(grid.size());

  std::vector<Eigen::Index> screened;
  std::vector<char> in_screen(p, 0);

  auto refresh_prob = [&] {
    for (Eigen::Index i = 0; i < n; ++i) prob[i] = expit(eta[i]);
  };

  double lambda_prev = grid.empty() ? 0.0 : grid.front();
  for (double lambda : grid) {
    // Sequential strong rule: besides the current support, only features
    // whose gradient already approaches the new penalty can enter.  The
    // KKT scan below re-admits anything screened out wrongly.
    refresh_prob();
    grad = xs.transpose() * (t - prob) / dn;
    const double enter = 2.0 * lambda - lambda_prev;
    screened.clear();
    std::fill(in_screen.begin(), in_screen.end(), 0);
    for (Eigen::Index j = 0; j < p; ++j) {
      if (beta[j] != 0.0 || std::abs(grad[j]) >= enter - 1e-12) {
        screened.push_back(j);
        in_screen[j] = 1;
      }
    }

    while (true) {
      for (int outer = 0; outer < kMaxOuter; ++outer) {
        // Quadratic approximation at the current iterate.
        refresh_prob();
        for (Eigen::Index i = 0; i < n; ++i) {
          w[i] = std::max(prob[i] * (1.0 - prob[i]), kWeightFloor);
        }
        const double wsum = w.sum();

        // Covariance-updating coordinate descent over the screened set:
        // with the weighted Gram precomputed, one sweep costs O(|S|^2)
        // instead of O(n|S|), which is what makes the correlated
        // interaction designs tractable.
        const Eigen::Index s = static_cast<Eigen::Index>(screened.size());
        Eigen::MatrixXd xsub(n, s);
        for (Eigen::Index jj = 0; jj < s; ++jj) xsub.col(jj) = xs.col(screened[jj]);
        const Eigen::MatrixXd xwsub = xsub.array().colwise() * w.array();
        const Eigen::MatrixXd gram = (xwsub.transpose() * xsub) / dn;
        const Eigen::VectorXd wcol = xwsub.colwise().sum() / dn;  // (1/n) x_j . w
        Eigen::VectorXd resid = t - prob;
        Eigen::VectorXd score = xsub.transpose() * resid / dn;  // (1/n) xw_j . r
        double score0 = resid.sum() / dn;                        // (1/n) w . r
        Eigen::VectorXd bsub(s);
        for (Eigen::Index jj = 0; jj < s; ++jj) bsub[jj] = beta[screened[jj]];

        auto update_feature = [&](Eigen::Index jj) {
          const double vj = gram(jj, jj);
          const double old = bsub[jj];
          const double rho = score[jj] + vj * old;
          const double updated = soft_threshold(rho, lambda) / vj;
          const double delta = updated - old;
          if (delta != 0.0) {
            score -= delta * gram.col(jj);
            score0 -= delta * wcol[jj];
            bsub[jj] = updated;
          }
          return std::abs(delta);
        };
        auto update_intercept = [&] {
          const double d0 = score0 * dn / wsum;
          if (d0 != 0.0) {
            b0 += d0;
            score -= d0 * wcol;
            score0 -= d0 * wsum / dn;
          }
          return std::abs(d0);
        };

        // Sweeps over the screened set, then over the nonzero support.
        int sweeps = 0;
        while (sweeps < kMaxSweeps) {
          double max_change = update_intercept();
          for (Eigen::Index jj = 0; jj < s; ++jj) {
            max_change = std::max(max_change, update_feature(jj));
          }
          ++sweeps;
          if (max_change < tol.coord) break;

          while (sweeps < kMaxSweeps) {
            double inner_change = update_intercept();
            for (Eigen::Index jj = 0; jj < s; ++jj) {
              if (bsub[jj] != 0.0) inner_change = std::max(inner_change, update_feature(jj));
            }
            ++sweeps;
            if (inner_change < tol.coord) break;
          }
        }
        for (Eigen::Index jj = 0; jj < s; ++jj) beta[screened[jj]] = bsub[jj];

        Eigen::VectorXd new_eta = (xsub * bsub).array() + b0;
        const double eta_change = (new_eta - eta).lpNorm<Eigen::Infinity>();
        eta = std::move(new_eta);
        if (eta_change < tol.outer) break;
      }

      // KKT scan over everything the strong rule excluded.
      refresh_prob();
      grad = xs.transpose() * (t - prob) / dn;
      bool violation = false;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (!in_screen[j] && std::abs(grad[j]) > lambda + 1e-9) {
          screened.push_back(j);
          in_screen[j] = 1;
          violation = true;
        }
      }
      if (!violation) break;
    }

    out.intercepts.push_back(b0);
    out.betas.push_back(beta);
    lambda_prev = lambda;
  }
  return out;
}

double mean_deviance(const Eigen::MatrixXd& xs, const Eigen::VectorXd& t, double b0,
                     const Eigen::VectorXd& beta) {
  const Eigen::Index n = xs.rows();
  double ll = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double eta = b0 + xs.row(i).dot(beta);
    ll += t[i] * eta - log1pexp(eta);
  }
  return -2.0 * ll / static_cast<double>(n);
}

}  // namespace

double LassoLogisticModel::predict_one(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  double eta = coefficients[0];
  for (Eigen::Index j = 0; j < x.size(); ++j) eta += coefficients[j + 1] * x[j];
  return expit(eta);
}

Eigen::VectorXd LassoLogisticModel::predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  Eigen::VectorXd eta =
      (x * coefficients.tail(coefficients.size() - 1)).array() + coefficients[0];
  return eta.unaryExpr([](double z) { return expit(z); });
}

LassoLogisticModel fit_lasso_logistic(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                      const Eigen::Ref<const Eigen::VectorXd>& t,
                                      const LassoOptions& options) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (t.size() != n) throw ArgumentError("target length does not match design rows");
  if (options.cv_folds < 2) throw ArgumentError("cv_folds must be at least 2");
  if (n < options.cv_folds) throw ArgumentError("need at least cv_folds observations");
  if (options.n_lambdas < 1) throw ArgumentError("n_lambdas must be positive");

  const double tbar = t.mean();
  if (tbar == 0.0 || tbar == 1.0) {
    throw DegenerateTargetError("targets are constant; penalized fit is undefined");
  }

  // Standardize, dropping constant columns (their coefficient stays 0).
  Eigen::VectorXd mean(p), sd(p);
  std::vector<int> kept, dropped;
  for (Eigen::Index j = 0; j < p; ++j) {
    mean[j] = x.col(j).mean();
    sd[j] = std::sqrt((x.col(j).array() - mean[j]).square().mean());
    if (sd[j] > 0.0) {
      kept.push_back(static_cast<int>(j));
    } else {
      dropped.push_back(static_cast<int>(j));
    }
  }
  const Eigen::Index q = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd xs(n, q);
  for (Eigen::Index jj = 0; jj < q; ++jj) {
    const int j = kept[jj];
    xs.col(jj) = (x.col(j).array() - mean[j]) / sd[j];
  }

  // Smallest penalty that zeroes every standardized coefficient.
  const Eigen::VectorXd centered_t = t.array() - tbar;
  double lambda_max = 1e-10;
  for (Eigen::Index jj = 0; jj < q; ++jj) {
    lambda_max =
        std::max(lambda_max, std::abs(xs.col(jj).dot(centered_t)) / static_cast<double>(n));
  }

  // Cold start at the intercept-only solution.
  double b0_init = std::log(tbar / (1.0 - tbar));
  Eigen::VectorXd beta_init = Eigen::VectorXd::Zero(q);
  bool warm = false;
  if (options.warm_start && options.warm_start->size() == p + 1) {
    warm = true;
    b0_init = (*options.warm_start)[0];
    for (Eigen::Index jj = 0; jj < q; ++jj) {
      const int j = kept[jj];
      beta_init[jj] = (*options.warm_start)[j + 1] * sd[j];
      b0_init += (*options.warm_start)[j + 1] * mean[j];
    }
  }

  std::vector<double> grid;
  if (options.forced_lambda) {
    const double forced = *options.forced_lambda;
    if (warm || forced >= lambda_max) {
      grid = {forced};  // a warm start replaces the path warm-up entirely
    } else {
      const int steps = 8;
      const double lo = std::max(forced, lambda_max * 1e-4);
      const double ratio = std::pow(lo / lambda_max, 1.0 / steps);
      double lam = lambda_max;
      for (int k = 0; k < steps; ++k) {
        grid.push_back(lam);
        lam *= ratio;
      }
      grid.push_back(forced);
    }
  } else {
    const double ratio = std::pow(options.lambda_min_ratio,
                                  1.0 / std::max(1, options.n_lambdas - 1));
    double lam = lambda_max;
    for (int k = 0; k < options.n_lambdas; ++k) {
      grid.push_back(lam);
      lam *= ratio;
    }
  }

  LassoLogisticModel model;
  model.dropped_columns = dropped;
  std::size_t chosen = grid.size() - 1;

  if (options.forced_lambda) {
    model.lambda = *options.forced_lambda;
  } else {
    // K-fold deviance over the shared grid; ties resolve to the larger
    // penalty because the scan runs from lambda_max downward.
    std::vector<double> cv_dev(grid.size(), 0.0);
    for (int f = 0; f < options.cv_folds; ++f) {
      std::vector<Eigen::Index> train_idx, test_idx;
      for (Eigen::Index i = 0; i < n; ++i) {
        (i % options.cv_folds == f ? test_idx : train_idx).push_back(i);
      }
      Eigen::MatrixXd xtr(train_idx.size(), q), xte(test_idx.size(), q);
      Eigen::VectorXd ttr(train_idx.size()), tte(test_idx.size());
      for (std::size_t i = 0; i < train_idx.size(); ++i) {
        xtr.row(i) = xs.row(train_idx[i]);
        ttr[i] = t[train_idx[i]];
      }
      for (std::size_t i = 0; i < test_idx.size(); ++i) {
        xte.row(i) = xs.row(test_idx[i]);
        tte[i] = t[test_idx[i]];
      }
      double fold_tbar = ttr.mean();
      fold_tbar = std::min(std::max(fold_tbar, 1e-12), 1.0 - 1e-12);
      const PathFit fit = fit_path(xtr, ttr, grid, kCvTol,
                                   std::log(fold_tbar / (1.0 - fold_tbar)),
                                   Eigen::VectorXd::Zero(q));
      for (std::size_t k = 0; k < grid.size(); ++k) {
        cv_dev[k] += mean_deviance(xte, tte, fit.intercepts[k], fit.betas[k]);
      }
    }
    for (auto& d : cv_dev) d /= options.cv_folds;
    model.cv_curve.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) model.cv_curve.emplace_back(grid[k], cv_dev[k]);

    chosen = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
      if (cv_dev[k] < cv_dev[chosen]) chosen = k;
    }
    model.lambda = grid[chosen];
  }

  // Final fit on the full data, truncating the path at the chosen penalty.
  std::vector<double> final_grid(grid.begin(), grid.begin() + chosen + 1);
  const PathFit fit = fit_path(xs, t, final_grid, kFinalTol, b0_init, beta_init);
  const Eigen::VectorXd& bs = fit.betas.back();
  const double b0s = fit.intercepts.back();

  // Back to the original scale.
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(p + 1);
  coef[0] = b0s;
  for (Eigen::Index jj = 0; jj < q; ++jj) {
    const int j = kept[jj];
    coef[j + 1] = bs[jj] / sd[j];
    coef[0] -= bs[jj] * mean[j] / sd[j];
  }
  model.coefficients = std::move(coef);
  return model;
}

}  // namespace attrib
