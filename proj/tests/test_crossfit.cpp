#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <fstream>

#include "attrib/crossfit.hpp"
#include "attrib/dgp.hpp"
#include "attrib/logistic.hpp"
#include "attrib/errors.hpp"
#include "attrib/rng.hpp"
#include "test_support.hpp"

using namespace attrib;

namespace {

Dataset fuzz_data(int n, int p, std::uint64_t seed, double treat_prob = 0.5) {
  RandomStream rng(StreamKey::root(seed));
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd a(n), y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
    a[i] = rng.bernoulli(treat_prob);
    y[i] = rng.bernoulli(expit(p > 0 ? x(i, 0) : 0.0));
  }
  return make_dataset(std::move(x), std::move(a), std::move(y));
}

}  // namespace

TEST_CASE("fold assignment partitions the units with near-equal sizes") {
  const Dataset d = fuzz_data(23, 2, 101);
  const NuisanceFit nf = cross_fit(d, 5, ModelKind::Logistic, std::nullopt, 7);

  std::vector<int> counts(5, 0);
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    REQUIRE(nf.fold_id[i] >= 0);
    REQUIRE(nf.fold_id[i] < 5);
    ++counts[nf.fold_id[i]];
  }
  int total = 0, lo = 23, hi = 0;
  for (int c : counts) {
    total += c;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(total == 23);
  CHECK(hi - lo <= 1);
  // 23 = 4*5 + 3: the first three folds absorb the remainder.
  CHECK(counts[0] == 5);
  CHECK(counts[1] == 5);
  CHECK(counts[2] == 5);
  CHECK(counts[3] == 4);
  CHECK(counts[4] == 4);
}

TEST_CASE("two folds of size two at n = 4") {
  const Dataset d = fuzz_data(4, 1, 55, 0.5);
  const NuisanceFit nf = cross_fit(d, 2, ModelKind::Logistic, std::nullopt, 3);
  int in0 = 0;
  for (Eigen::Index i = 0; i < 4; ++i) in0 += nf.fold_id[i] == 0;
  CHECK(in0 == 2);
}

TEST_CASE("out-of-fold purity: predictions ignore the unit's own fold") {
  // Learn the deterministic fold split first, then plant fold-specific
  // outcomes; any leakage would drag the prediction toward the unit's own
  // outcome.
  const int n = 40;
  Eigen::MatrixXd x(n, 0);
  Eigen::VectorXd a(n), y0(n);
  for (int i = 0; i < n; ++i) {
    a[i] = i % 2;  // both arms in every region of the index space
    y0[i] = 0.0;
  }
  const Dataset probe = make_dataset(x, a, y0, {}, 0);
  const NuisanceFit folds = cross_fit(probe, 2, ModelKind::Logistic, std::nullopt, 99);

  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = folds.fold_id[i] == 0 ? 1.0 : 0.0;
  const Dataset planted = make_dataset(x, a, y, {}, 0);
  const NuisanceFit nf = cross_fit(planted, 2, ModelKind::Logistic, std::nullopt, 99);

  for (int i = 0; i < n; ++i) {
    REQUIRE(nf.fold_id[i] == folds.fold_id[i]);  // same seed, same split
    const double pred = a[i] == 0.0 ? nf.mu0_hat[i] : nf.mu1_hat[i];
    if (nf.fold_id[i] == 0) {
      // own outcome is 1 but the complement's outcomes are all 0
      CHECK(pred < 0.05);
    } else {
      CHECK(pred > 0.95);
    }
  }
}

TEST_CASE("known propensities pass through exactly") {
  const Dataset d = fuzz_data(24, 1, 42);
  Eigen::VectorXd e = Eigen::VectorXd::Constant(24, 0.5);
  const NuisanceFit nf = cross_fit(d, 3, ModelKind::Logistic, e, 1);
  CHECK(nf.propensity_source == PropensitySource::Known);
  CHECK((nf.e_hat.array() == 0.5).all());

  e[3] = 1.0;
  CHECK_THROWS_AS(cross_fit(d, 3, ModelKind::Logistic, e, 1), ArgumentError);
}

TEST_CASE("estimated propensities are clipped into the overlap band") {
  // A steep treatment gradient with label noise only near the center
  // drives fitted propensities to the boundary at the extremes.
  const int n = 80;
  RandomStream rng(StreamKey::root(4));
  Eigen::MatrixXd x(n, 1);
  Eigen::VectorXd a(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = -10.0 + 20.0 * i / (n - 1.0);
    a[i] = x(i, 0) > 0 ? 1.0 : 0.0;
    if (std::abs(x(i, 0)) < 1.5 && i % 2 == 0) a[i] = 1.0 - a[i];
    y[i] = rng.bernoulli(0.5);
  }
  const Dataset d = make_dataset(x, a, y);
  const NuisanceFit nf = cross_fit(d, 2, ModelKind::Logistic, std::nullopt, 12);
  CHECK(nf.e_hat.minCoeff() >= 1e-3);
  CHECK(nf.e_hat.maxCoeff() <= 1.0 - 1e-3);
  CHECK(nf.e_hat.minCoeff() == 1e-3);  // the band is actually hit

  CrossFitOptions opt;
  opt.clip_eps = 0.05;
  const NuisanceFit wide = cross_fit(d, 2, opt, std::nullopt, 12);
  CHECK(wide.e_hat.minCoeff() >= 0.05);
}

TEST_CASE("identical inputs give bit-identical fits") {
  const Dataset d = fuzz_data(80, 2, 7);
  const NuisanceFit nf1 = cross_fit(d, 4, ModelKind::Logistic, std::nullopt, 77);
  const NuisanceFit nf2 = cross_fit(d, 4, ModelKind::Logistic, std::nullopt, 77);
  CHECK((nf1.e_hat - nf2.e_hat).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((nf1.mu0_hat - nf2.mu0_hat).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((nf1.mu1_hat - nf2.mu1_hat).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((nf1.fold_id - nf2.fold_id).lpNorm<Eigen::Infinity>() == 0);

  const NuisanceFit nf3 = cross_fit(d, 4, ModelKind::Logistic, std::nullopt, 78);
  CHECK((nf1.fold_id - nf3.fold_id).lpNorm<Eigen::Infinity>() != 0);
}

TEST_CASE("cross-fitted propensities track the generating propensity") {
  const DgpSpec spec = case_registry(1);
  const GeneratedSample g = generate_case(spec, 2000, 314159);
  const NuisanceFit nf = cross_fit(g.data, 5, ModelKind::Logistic, std::nullopt, 314159);
  const double mae = (nf.e_hat - g.e_true).cwiseAbs().mean();
  CHECK(mae < 0.05);
}

TEST_CASE("missing arm in a complement falls back to the pooled fit") {
  const int n = 12;
  Eigen::MatrixXd x(n, 0);
  Eigen::VectorXd a0 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; i += 2) {
    a0[i] = 1.0;
    y[i] = 1.0;
  }
  const Dataset probe = make_dataset(x, a0, y);
  const NuisanceFit folds = cross_fit(probe, 2, ModelKind::Logistic, std::nullopt, 21);

  // All controls inside fold 0: fold 0's complement has no A=0 units.
  Eigen::VectorXd a(n);
  for (int i = 0; i < n; ++i) a[i] = folds.fold_id[i] == 0 ? 0.0 : 1.0;
  const Dataset d = make_dataset(x, a, y);
  const NuisanceFit nf = cross_fit(d, 2, ModelKind::Logistic, std::nullopt, 21);
  CHECK(nf.pooled_mu0_fallback);
  CHECK(nf.pooled_mu1_fallback);

  // No units of one arm anywhere is unestimable.
  CHECK_THROWS_AS(cross_fit(make_dataset(x, Eigen::VectorXd::Ones(n), y), 2,
                            ModelKind::Logistic, std::nullopt, 1),
                  UnestimableArmError);
}

TEST_CASE("precondition violations") {
  const Dataset d = fuzz_data(10, 1, 3);
  CHECK_THROWS_AS(cross_fit(d, 1, ModelKind::Logistic, std::nullopt, 1), ArgumentError);
  CHECK_THROWS_AS(cross_fit(d, 6, ModelKind::Logistic, std::nullopt, 1), ArgumentError);
}

TEST_CASE("nuisance audit export") {
  const Dataset d = fuzz_data(10, 1, 33);
  const NuisanceFit nf = cross_fit(d, 2, ModelKind::Logistic, std::nullopt, 5);
  const auto path = test_support::scratch_dir() / "nuisance.csv";
  write_nuisance_csv(nf, path);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "unit_id,fold_id,e_hat,mu0_hat,mu1_hat");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 10);
}
