#include "attrib/crossfit.hpp"

#include <fstream>

#include "attrib/csv.hpp"
#include "attrib/errors.hpp"
#include "attrib/lasso.hpp"
#include "attrib/logistic.hpp"
#include "attrib/rng.hpp"

namespace attrib {

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd out(rows.size(), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = x.row(rows[i]);
  return out;
}

Eigen::VectorXd take(const Eigen::VectorXd& v, const std::vector<Eigen::Index>& rows) {
  Eigen::VectorXd out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = v[rows[i]];
  return out;
}

// One trained nuisance model, independent of the backing family.
struct Predictor {
  std::optional<LogisticModel> logistic;
  std::optional<LassoLogisticModel> lasso;

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const {
    return logistic ? logistic->predict(x) : lasso->predict(x);
  }
};

Predictor fit_model(const Eigen::MatrixXd& x, const Eigen::VectorXd& t,
                    const CrossFitOptions& options, std::optional<double> fixed_lambda,
                    const std::optional<Eigen::VectorXd>& warm_start) {
  Predictor p;
  if (options.model == ModelKind::Logistic) {
    p.logistic = fit_logistic(x, t, options.ridge);
  } else {
    LassoOptions lo;
    lo.n_lambdas = options.lasso_n_lambdas;
    lo.cv_folds = options.lasso_cv_folds;
    lo.forced_lambda = fixed_lambda;
    if (fixed_lambda) lo.warm_start = warm_start;
    p.lasso = fit_lasso_logistic(x, t, lo);
  }
  return p;
}

}  // namespace

NuisanceFit cross_fit(const Dataset& d, int k, const CrossFitOptions& options,
                      const std::optional<Eigen::VectorXd>& known_e, std::uint64_t seed) {
  const Eigen::Index n = d.n();
  if (k < 2) throw ArgumentError("cross_fit needs at least 2 folds");
  if (n < 2 * k) throw ArgumentError("cross_fit needs n >= 2k");
  if (known_e) {
    if (known_e->size() != n) throw ArgumentError("known_e length does not match dataset");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!((*known_e)[i] > 0.0 && (*known_e)[i] < 1.0)) {
        throw ArgumentError("known propensity outside (0,1) at row " + std::to_string(i));
      }
    }
  }

  // Seeded shuffle, then near-equal contiguous blocks; the first n % k folds
  // absorb the remainder.
  RandomStream stream(StreamKey::root(seed).child("fold-shuffle"));
  const std::vector<std::size_t> order = stream.shuffled_indices(static_cast<std::size_t>(n));

  Eigen::VectorXi fold_id(n);
  const Eigen::Index base = n / k;
  const Eigen::Index remainder = n % k;
  Eigen::Index pos = 0;
  for (int f = 0; f < k; ++f) {
    const Eigen::Index size = base + (f < remainder ? 1 : 0);
    for (Eigen::Index s = 0; s < size; ++s) {
      fold_id[static_cast<Eigen::Index>(order[pos++])] = f;
    }
  }

  const bool has_arm0 = (d.a.array() == 0.0).any();
  const bool has_arm1 = (d.a.array() == 1.0).any();
  if (!has_arm0) throw UnestimableArmError("no untreated units anywhere in the data");
  if (!has_arm1) throw UnestimableArmError("no treated units anywhere in the data");

  NuisanceFit nf;
  nf.e_hat.resize(n);
  nf.mu0_hat.resize(n);
  nf.mu1_hat.resize(n);
  nf.fold_id = fold_id;
  nf.clip_eps = options.clip_eps;
  nf.propensity_source = known_e ? PropensitySource::Known : PropensitySource::Estimated;

  // Pooled per-arm models are trained lazily, only when some complement is
  // missing an arm entirely.
  std::optional<Predictor> pooled_mu0, pooled_mu1;
  auto pooled_arm_model = [&](double arm) -> Predictor& {
    auto& slot = (arm == 0.0) ? pooled_mu0 : pooled_mu1;
    if (!slot) {
      std::vector<Eigen::Index> rows;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d.a[i] == arm) rows.push_back(i);
      }
      slot = fit_model(take_rows(d.x, rows), take(d.y, rows), options,
                       arm == 0.0 ? options.lasso_lambda_mu0 : options.lasso_lambda_mu1,
                       arm == 0.0 ? options.lasso_warm_mu0 : options.lasso_warm_mu1);
    }
    return *slot;
  };

  for (int f = 0; f < k; ++f) {
    std::vector<Eigen::Index> train, test, train0, train1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (fold_id[i] == f) {
        test.push_back(i);
      } else {
        train.push_back(i);
        (d.a[i] == 0.0 ? train0 : train1).push_back(i);
      }
    }
    const Eigen::MatrixXd x_test = take_rows(d.x, test);

    if (known_e || options.skip_propensity) {
      for (Eigen::Index i : test) nf.e_hat[i] = 0.5;
    } else {
      const Predictor e_model = fit_model(take_rows(d.x, train), take(d.a, train), options,
                                          options.lasso_lambda_e, options.lasso_warm_e);
      const Eigen::VectorXd e_pred = e_model.predict(x_test);
      for (std::size_t s = 0; s < test.size(); ++s) {
        nf.e_hat[test[s]] =
            std::min(std::max(e_pred[s], options.clip_eps), 1.0 - options.clip_eps);
      }
    }

    auto fit_arm = [&](const std::vector<Eigen::Index>& rows, double arm,
                       Eigen::VectorXd& out, bool& fallback_flag) {
      if (options.skip_outcome_models) {
        for (Eigen::Index i : test) out[i] = 0.5;
        return;
      }
      Eigen::VectorXd pred;
      if (rows.empty()) {
        fallback_flag = true;
        pred = pooled_arm_model(arm).predict(x_test);
      } else {
        const Predictor m =
            fit_model(take_rows(d.x, rows), take(d.y, rows), options,
                      arm == 0.0 ? options.lasso_lambda_mu0 : options.lasso_lambda_mu1,
                      arm == 0.0 ? options.lasso_warm_mu0 : options.lasso_warm_mu1);
        pred = m.predict(x_test);
      }
      for (std::size_t s = 0; s < test.size(); ++s) out[test[s]] = pred[s];
    };
    fit_arm(train0, 0.0, nf.mu0_hat, nf.pooled_mu0_fallback);
    fit_arm(train1, 1.0, nf.mu1_hat, nf.pooled_mu1_fallback);
  }

  if (known_e) nf.e_hat = *known_e;
  return nf;
}

CrossFitOptions pin_lasso(const Dataset& d, const CrossFitOptions& options, bool propensity,
                          bool mu0, bool mu1) {
  CrossFitOptions pinned = options;
  if (options.model != ModelKind::LassoLogistic) return pinned;

  LassoOptions lo;
  lo.n_lambdas = options.lasso_n_lambdas;
  lo.cv_folds = options.lasso_cv_folds;

  auto fit_arm_subset = [&](double arm) -> std::optional<LassoLogisticModel> {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < d.n(); ++i) {
      if (d.a[i] == arm) rows.push_back(i);
    }
    if (rows.size() < static_cast<std::size_t>(options.lasso_cv_folds)) return std::nullopt;
    return fit_lasso_logistic(take_rows(d.x, rows), take(d.y, rows), lo);
  };

  if (propensity && !pinned.lasso_lambda_e) {
    const LassoLogisticModel m = fit_lasso_logistic(d.x, d.a, lo);
    pinned.lasso_lambda_e = m.lambda;
    pinned.lasso_warm_e = m.coefficients;
  }
  if (mu0 && !pinned.lasso_lambda_mu0) {
    if (auto m = fit_arm_subset(0.0)) {
      pinned.lasso_lambda_mu0 = m->lambda;
      pinned.lasso_warm_mu0 = m->coefficients;
    }
  }
  if (mu1 && !pinned.lasso_lambda_mu1) {
    if (auto m = fit_arm_subset(1.0)) {
      pinned.lasso_lambda_mu1 = m->lambda;
      pinned.lasso_warm_mu1 = m->coefficients;
    }
  }
  return pinned;
}

void write_nuisance_csv(const NuisanceFit& nf, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write file: " + path.string());
  out << "unit_id,fold_id,e_hat,mu0_hat,mu1_hat\n";
  for (Eigen::Index i = 0; i < nf.n(); ++i) {
    out << i << ',' << nf.fold_id[i] << ',' << csv::format_double(nf.e_hat[i]) << ','
        << csv::format_double(nf.mu0_hat[i]) << ',' << csv::format_double(nf.mu1_hat[i])
        << '\n';
  }
}

}  // namespace attrib
