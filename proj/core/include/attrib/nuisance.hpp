#pragma once

#include <Eigen/Dense>
#include <filesystem>

namespace attrib {

enum class PropensitySource { Estimated, Known };

// Per-unit cross-fitted nuisance predictions: propensity e_hat and the two
// outcome regressions mu0_hat/mu1_hat, plus the fold bookkeeping that
// produced them.  Immutable after construction.
struct NuisanceFit {
  Eigen::VectorXd e_hat;    // in [clip_eps, 1-clip_eps] when Estimated
  Eigen::VectorXd mu0_hat;  // in [0, 1]
  Eigen::VectorXd mu1_hat;  // in [0, 1]
  PropensitySource propensity_source = PropensitySource::Estimated;
  Eigen::VectorXi fold_id;  // in [0, k)
  double clip_eps = 1e-3;

  // Set when a fold's training complement had no units of one arm and the
  // outcome model fell back to a pooled fit over all such units.
  bool pooled_mu0_fallback = false;
  bool pooled_mu1_fallback = false;

  Eigen::Index n() const { return e_hat.size(); }
};

// Audit export with columns unit_id, fold_id, e_hat, mu0_hat, mu1_hat.
void write_nuisance_csv(const NuisanceFit& nf, const std::filesystem::path& path);

}  // namespace attrib
