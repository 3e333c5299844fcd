#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>

#include "attrib/dataset.hpp"

namespace attrib {

// One synthetic data-generating process: covariates are N(0, cov_scale*I_p),
// the cause is Bernoulli(expit(propensity index)), and the two potential
// outcomes are independent Bernoullis of their own indices, optionally
// adjusted to enforce y0 <= y1 by zeroing y0 whenever y1 is zero.
struct DgpSpec {
  int case_id = 0;
  int p = 0;
  double cov_scale = 1.0;
  std::function<double(const Eigen::RowVectorXd&)> propensity_index;
  std::function<double(const Eigen::RowVectorXd&)> mu0_index;
  std::function<double(const Eigen::RowVectorXd&)> mu1_index;
  bool monotonicity_adjust = false;
  // Whether a main-effects logistic model can represent each nuisance.
  bool propensity_linear = true;
  bool outcome_linear = true;
  std::string note;  // registry caveats, e.g. ambiguous covariate dimension

  double propensity(const Eigen::RowVectorXd& x) const;
  double mu0(const Eigen::RowVectorXd& x) const;  // P(Y(0)=1 | x) before adjustment
  double mu1(const Eigen::RowVectorXd& x) const;
};

// Total closed registry of cases 1..19; unknown ids raise RegistryError.
DgpSpec case_registry(int case_id);

// Observable dataset plus the quantities only the simulator can see.
struct GeneratedSample {
  Dataset data;
  Eigen::VectorXd y0;       // potential outcome without the cause
  Eigen::VectorXd y1;       // potential outcome with the cause
  Eigen::VectorXd e_true;   // generating propensity per unit
  Eigen::VectorXd mu0_true; // P(Y(0)=1 | x) after any monotonicity adjustment
  Eigen::VectorXd mu1_true;
};

GeneratedSample generate_case(const DgpSpec& spec, Eigen::Index n, std::uint64_t seed);

}  // namespace attrib
