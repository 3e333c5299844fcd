#include "ratio_terms.hpp"

#include "attrib/errors.hpp"

namespace attrib::detail {

namespace {

void check_sizes(const Dataset& d, const NuisanceFit& nf) {
  if (nf.n() != d.n()) throw ArgumentError("nuisance fit does not cover all units");
}

}  // namespace

RatioTerms ratio_terms(Method method, const Dataset& d, const NuisanceFit& nf) {
  check_sizes(d, nf);
  const Eigen::Index n = d.n();
  const auto& a = d.a;
  const auto& y = d.y;
  const auto& e = nf.e_hat;
  const auto& m0 = nf.mu0_hat;
  const auto& m1 = nf.mu1_hat;

  RatioTerms t;
  t.num.resize(n);
  t.den.resize(n);

  switch (method) {
    case Method::PnMono:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = a[i] * (y[i] - m0[i]) -
                   (1.0 - a[i]) * (y[i] - m0[i]) * e[i] / (1.0 - e[i]);
        t.den[i] = a[i] * y[i];
      }
      break;
    case Method::PnInde:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = a[i] * (1.0 - m0[i]) * y[i] -
                   e[i] * (1.0 - a[i]) * (y[i] - m0[i]) * m1[i] / (1.0 - e[i]);
        t.den[i] = a[i] * y[i];
      }
      break;
    case Method::PnMonoKnownE:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = a[i] * (y[i] - m1[i]) -
                   e[i] * (1.0 - a[i]) * (y[i] - m0[i]) / (1.0 - e[i]) +
                   (m1[i] - m0[i]) * e[i];
        t.den[i] = a[i] * (y[i] - m1[i]) + m1[i] * e[i];
      }
      break;
    case Method::PnIndeKnownE:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = (1.0 - m0[i]) * a[i] * (y[i] - m1[i]) + (1.0 - m0[i]) * m1[i] * e[i] -
                   (1.0 - a[i]) * (y[i] - m0[i]) * e[i] * m1[i] / (1.0 - e[i]);
        t.den[i] = a[i] * (y[i] - m1[i]) + m1[i] * e[i];
      }
      break;
    case Method::PnIpw:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = a[i] * y[i] - e[i] * (1.0 - a[i]) * y[i] / (1.0 - e[i]);
        t.den[i] = a[i] * y[i];
      }
      break;
    case Method::PnOr:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = a[i] * (m1[i] - m0[i]);
        t.den[i] = a[i] * m1[i];
      }
      break;
    case Method::PsMono:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = (1.0 - a[i]) * y[i] -
                   a[i] / e[i] * (1.0 - e[i]) * (y[i] - m1[i]) + m1[i] * (a[i] - 1.0);
        t.den[i] = (1.0 - a[i]) * (y[i] - 1.0);
      }
      break;
    case Method::PsInde:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = m1[i] * (1.0 - y[i]) * (a[i] - 1.0) -
                   a[i] / e[i] * (1.0 - e[i]) * (y[i] - m1[i]) * (1.0 - m0[i]);
        t.den[i] = (1.0 - y[i]) * (a[i] - 1.0);
      }
      break;
    case Method::PsMonoKnownE:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = a[i] / e[i] * (1.0 - e[i]) * (y[i] - m1[i]) -
                   (1.0 - a[i]) * (y[i] - m0[i]) + (m1[i] - m0[i]) * (1.0 - e[i]);
        t.den[i] = (1.0 - m0[i]) * (1.0 - e[i]) - (1.0 - a[i]) * (y[i] - m0[i]);
      }
      break;
    case Method::PsIndeKnownE:
      for (Eigen::Index i = 0; i < n; ++i) {
        t.num[i] = a[i] / e[i] * (1.0 - e[i]) * (y[i] - m1[i]) * (1.0 - m0[i]) -
                   (1.0 - a[i]) * (y[i] - m0[i]) * m1[i] +
                   m1[i] * (1.0 - m0[i]) * (1.0 - e[i]);
        t.den[i] = (1.0 - m0[i]) * (1.0 - e[i]) - (1.0 - a[i]) * (y[i] - m0[i]);
      }
      break;
  }

  // Denominator guards ("degenerate denominators raise errors, never NaN").
  const double mean_den = t.den.mean();
  switch (method) {
    case Method::PnMono:
    case Method::PnInde:
    case Method::PnIpw:
      if (mean_den <= 0.0) {
        throw NoTreatedCasesError("no treated cases: sum(A*Y) is zero");
      }
      break;
    case Method::PnOr:
      if (mean_den == 0.0) {
        throw DegenerateDenominatorError("sum(A * mu1_hat) is zero");
      }
      break;
    case Method::PsMono:
    case Method::PsInde:
      if (mean_den == 0.0) {
        throw DegenerateDenominatorError("no control non-cases: sum((1-A)(1-Y)) is zero");
      }
      break;
    case Method::PnMonoKnownE:
    case Method::PnIndeKnownE:
    case Method::PsMonoKnownE:
    case Method::PsIndeKnownE:
      if (mean_den == 0.0) {
        throw DegenerateDenominatorError("estimating-equation denominator is zero");
      }
      break;
  }
  return t;
}

double point_value(Method method, const Dataset& d, const NuisanceFit& nf) {
  return ratio_terms(method, d, nf).value();
}

}  // namespace attrib::detail
