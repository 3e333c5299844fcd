#pragma once

// Shared helpers for the test suites: seeded fuzz generators for datasets
// and nuisance tables, and a scratch directory per test process.

#include <cstdlib>
#include <filesystem>
#include <string>

#include "attrib/dataset.hpp"
#include "attrib/nuisance.hpp"
#include "attrib/rng.hpp"

namespace test_support {

inline std::filesystem::path scratch_dir() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("attrib-tests-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

// Points the truth cache into the scratch directory so tests never touch
// the user's cache.
inline void isolate_cache() {
  static bool done = [] {
    ::setenv("ATTRIB_CACHE_DIR", (scratch_dir() / "truth-cache").c_str(), 1);
    return true;
  }();
  (void)done;
}

struct FuzzCase {
  attrib::Dataset data;
  attrib::NuisanceFit nf;
};

// Random dataset plus a random (not fitted) nuisance table.  Guarantees at
// least one treated case and one control non-case so every estimator's
// denominator guard passes.
inline FuzzCase random_case(attrib::RandomStream& rng, bool known_propensity = false) {
  using namespace attrib;
  while (true) {
    const Eigen::Index n = 6 + static_cast<Eigen::Index>(rng.below(40));
    Eigen::MatrixXd x(n, 2);
    Eigen::VectorXd a(n), y(n), e(n), m0(n), m1(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x(i, 0) = rng.normal();
      x(i, 1) = rng.normal();
      a[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
      y[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
      e[i] = 0.02 + 0.96 * rng.uniform();
      m0[i] = 0.02 + 0.96 * rng.uniform();
      m1[i] = 0.02 + 0.96 * rng.uniform();
    }
    const bool treated_case = ((a.array() * y.array()) > 0.5).any();
    const bool control_noncase = (((1.0 - a.array()) * (1.0 - y.array())) > 0.5).any();
    if (!treated_case || !control_noncase) continue;

    FuzzCase fc;
    fc.data = make_dataset(std::move(x), std::move(a), std::move(y));
    fc.nf.e_hat = e;
    fc.nf.mu0_hat = m0;
    fc.nf.mu1_hat = m1;
    fc.nf.fold_id = Eigen::VectorXi::Zero(n);
    fc.nf.propensity_source =
        known_propensity ? PropensitySource::Known : PropensitySource::Estimated;
    return fc;
  }
}

}  // namespace test_support
