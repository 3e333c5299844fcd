#include "attrib/moments.hpp"

#include "attrib/errors.hpp"

namespace attrib {

MomentFunctionals moment_functionals(const NuisanceFit& nf) {
  if (!nf.e_hat.allFinite() || !nf.mu0_hat.allFinite() || !nf.mu1_hat.allFinite()) {
    throw ArgumentError("nuisance predictions contain non-finite values");
  }
  const auto& e = nf.e_hat;
  const auto& m0 = nf.mu0_hat;
  const auto& m1 = nf.mu1_hat;
  const Eigen::ArrayXd one_minus_e = 1.0 - e.array();

  MomentFunctionals f;
  f.mu0 = (e.array() * m0.array()).mean();
  f.mu1 = (e.array() * m1.array()).mean();
  f.mu = (e.array() * m0.array() * m1.array()).mean();
  f.bar_mu0 = (one_minus_e * m0.array()).mean();
  f.bar_mu1 = (one_minus_e * m1.array()).mean();
  f.bar_mu = (one_minus_e * m0.array() * m1.array()).mean();
  f.barbar_mu0 = (one_minus_e * (1.0 - m0.array())).mean();
  f.barbar_mu1 = (one_minus_e * (1.0 - m1.array())).mean();
  return f;
}

}  // namespace attrib
