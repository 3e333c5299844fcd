#include "attrib/dgp.hpp"

#include <cmath>

#include "attrib/errors.hpp"
#include "attrib/logistic.hpp"
#include "attrib/rng.hpp"

namespace attrib {

double DgpSpec::propensity(const Eigen::RowVectorXd& x) const {
  return expit(propensity_index(x));
}
double DgpSpec::mu0(const Eigen::RowVectorXd& x) const { return expit(mu0_index(x)); }
double DgpSpec::mu1(const Eigen::RowVectorXd& x) const { return expit(mu1_index(x)); }

namespace {

using Index = std::function<double(const Eigen::RowVectorXd&)>;

Index linear(std::vector<double> w, double intercept = 0.0) {
  return [w = std::move(w), intercept](const Eigen::RowVectorXd& x) {
    double z = intercept;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[static_cast<Eigen::Index>(j)];
    return z;
  };
}

DgpSpec base(int id, int p, double cov_scale, bool adjust) {
  DgpSpec s;
  s.case_id = id;
  s.p = p;
  s.cov_scale = cov_scale;
  s.monotonicity_adjust = adjust;
  return s;
}

// Nonlinear treatment index shared by the low-dimensional misspecified-
// propensity cases.
double prop_nl2(const Eigen::RowVectorXd& x) {
  return (std::sin(x[0]) + std::log(1.0 + x[1] * x[1])) / 2.0;
}

double prop_nl5(const Eigen::RowVectorXd& x) {
  return (std::sin(x[0]) + std::log(1.0 + x[1] * x[1]) + std::sin(x[0]) * std::cos(x[2]) +
          std::exp(x[3]) + x[3] * x[4]) /
         2.0;
}

double outcome0_nl2(const Eigen::RowVectorXd& x) {
  return (std::sin(x[0]) - std::log(1.0 + x[1] * x[1])) / 2.0;
}

double outcome1_nl2(const Eigen::RowVectorXd& x) {
  return 0.4 * std::sin(x[0]) + 0.6 * std::log(1.0 + x[1] * x[1]) + 0.5;
}

double outcome0_nl5(const Eigen::RowVectorXd& x) {
  return (std::sin(x[0]) - std::log(1.0 + x[1] * x[1]) + std::sin(x[0]) * std::cos(x[2]) -
          std::exp(x[3]) + x[3] * x[4]) /
         2.0;
}

double outcome1_nl5(const Eigen::RowVectorXd& x) {
  return 0.4 * std::sin(x[0]) + 0.6 * std::log(1.0 + x[1] * x[1]) +
         0.4 * std::sin(x[0]) * std::cos(x[2]) + 0.6 * std::exp(x[3]) + 0.4 * x[3] * x[4] +
         0.5;
}

// Cases 5..10 without the monotonicity adjustment give cases 11..16.
DgpSpec study2_family(int id, bool adjust) {
  switch (id) {
    case 1: {  // both nuisances linear, 2 covariates
      DgpSpec s = base(id, 2, 1.0, adjust);
      s.propensity_index = linear({0.5, 0.5});
      s.mu0_index = linear({0.5, -0.5});
      s.mu1_index = linear({0.4, 0.6}, 0.5);
      return s;
    }
    case 2: {  // propensity nonlinear
      DgpSpec s = base(id, 2, 1.0, adjust);
      s.propensity_index = prop_nl2;
      s.propensity_linear = false;
      s.mu0_index = linear({0.5, -0.5});
      s.mu1_index = linear({0.4, 0.6}, 0.5);
      return s;
    }
    case 3: {  // outcomes nonlinear
      DgpSpec s = base(id, 2, 1.0, adjust);
      s.propensity_index = linear({0.5, 0.5});
      s.mu0_index = outcome0_nl2;
      s.mu1_index = outcome1_nl2;
      s.outcome_linear = false;
      return s;
    }
    case 4: {  // both linear, treatment index over five covariates
      DgpSpec s = base(id, 5, 1.0, adjust);
      s.propensity_index = linear({0.5, 0.5, 0.5, 0.5, 0.5});
      s.mu0_index = linear({0.5, -0.5});
      s.mu1_index = linear({0.4, 0.6}, 0.5);
      s.note =
          "covariate dimension read as 5 so the treatment index over x1..x5 is "
          "well defined; the outcome indices use x1, x2 only";
      return s;
    }
    case 5: {  // propensity nonlinear, 5 covariates
      DgpSpec s = base(id, 5, 1.0, adjust);
      s.propensity_index = prop_nl5;
      s.propensity_linear = false;
      s.mu0_index = linear({0.5, -0.5, 0.5, -0.5, 0.5});
      s.mu1_index = linear({0.4, 0.6, 0.4, 0.6, 0.4}, 0.5);
      return s;
    }
    case 6: {  // outcomes nonlinear, 5 covariates
      DgpSpec s = base(id, 5, 1.0, adjust);
      s.propensity_index = linear({0.5, 0.5, 0.5, 0.5, 0.5});
      s.mu0_index = outcome0_nl5;
      s.mu1_index = outcome1_nl5;
      s.outcome_linear = false;
      return s;
    }
    default:
      throw RegistryError("internal: bad study-2 family index");
  }
}

}  // namespace

DgpSpec case_registry(int case_id) {
  switch (case_id) {
    case 1:
    case 2: {
      DgpSpec s = base(case_id, 2, 4.0, case_id == 1);
      s.propensity_index = linear({0.125, 0.125});
      s.mu0_index = linear({0.5, -0.5});
      s.mu1_index = linear({2.0 / 3.0, 1.0}, 0.5);
      return s;
    }
    case 3:
    case 4: {
      DgpSpec s = base(case_id, 5, 4.0, case_id == 3);
      s.propensity_index = linear({0.125, 0.125, 0.125, 0.125, 0.125});
      s.mu0_index = linear({0.5, -0.5, 0.5, -0.5, 0.5});
      s.mu1_index = linear({2.0 / 3.0, 1.0, 2.0 / 3.0, 1.0, 2.0 / 3.0}, 0.5);
      return s;
    }
    case 5:
    case 6:
    case 7:
    case 8:
    case 9:
    case 10: {
      DgpSpec s = study2_family(case_id - 4, true);
      s.case_id = case_id;
      return s;
    }
    case 11:
    case 12:
    case 13:
    case 14:
    case 15:
    case 16: {
      DgpSpec s = study2_family(case_id - 10, false);
      s.case_id = case_id;
      return s;
    }
    case 17: {
      DgpSpec s = base(case_id, 5, 4.0, true);
      s.propensity_index = linear({0.5, 0.5, 0.5, 0.5, 0.5});
      s.mu0_index = linear({0.2, -0.2, 0.2, -0.2, 0.2});
      s.mu1_index = linear({0.2, 0.4, 0.2, 0.4, 0.2}, 0.5);
      return s;
    }
    case 18: {
      DgpSpec s = base(case_id, 5, 9.0, true);
      s.propensity_index = [](const Eigen::RowVectorXd& x) {
        return std::sin(x[0]) + std::log(1.0 + x[1] * x[1]) +
               std::sin(x[2]) * std::sin(x[2]) + std::cos(x[1]) * std::sin(x[3]) + x[4];
      };
      s.propensity_linear = false;
      s.mu0_index = linear({0.2, -0.2, 0.2, -0.2, 0.2});
      s.mu1_index = linear({0.2, 0.2, 0.2, 0.2, 0.2}, 0.5);
      return s;
    }
    case 19: {
      DgpSpec s = base(case_id, 5, 9.0, true);
      s.propensity_index = linear({0.5, 0.5, 0.5, 0.5, 0.5});
      s.mu0_index = [](const Eigen::RowVectorXd& x) {
        return std::sin(x[0]) - std::log(1.0 + x[1] * x[1]) +
               std::sin(x[2]) * std::sin(x[2]) -
               std::log(1.0 + std::abs(x[4])) * std::cos(x[3]) + std::sin(x[4]);
      };
      s.mu1_index = [](const Eigen::RowVectorXd& x) {
        return std::sin(x[0]) + std::log(1.0 + x[1] * x[1]) +
               std::sin(x[2]) * std::sin(x[2]) +
               std::log(1.0 + std::abs(x[4])) * std::cos(x[3]) + std::sin(x[4]) + 1.0;
      };
      s.outcome_linear = false;
      return s;
    }
    default:
      throw RegistryError("unknown simulation case id " + std::to_string(case_id));
  }
}

GeneratedSample generate_case(const DgpSpec& spec, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("generate_case needs n >= 1");

  RandomStream stream(StreamKey::root(seed).child("dgp").child(
      static_cast<std::uint64_t>(spec.case_id)));

  const double sd = std::sqrt(spec.cov_scale);
  GeneratedSample g;
  g.data.x.resize(n, spec.p);
  g.data.a.resize(n);
  g.data.y.resize(n);
  g.y0.resize(n);
  g.y1.resize(n);
  g.e_true.resize(n);
  g.mu0_true.resize(n);
  g.mu1_true.resize(n);

  Eigen::RowVectorXd row(spec.p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < spec.p; ++j) row[j] = sd * stream.normal();
    g.data.x.row(i) = row;

    const double e = spec.propensity(row);
    const double p0 = spec.mu0(row);
    const double p1 = spec.mu1(row);

    const double a = stream.bernoulli(e) ? 1.0 : 0.0;
    double y0 = stream.bernoulli(p0) ? 1.0 : 0.0;
    const double y1 = stream.bernoulli(p1) ? 1.0 : 0.0;
    if (spec.monotonicity_adjust && y1 == 0.0) y0 = 0.0;

    g.data.a[i] = a;
    g.data.y[i] = a * y1 + (1.0 - a) * y0;
    g.y0[i] = y0;
    g.y1[i] = y1;
    g.e_true[i] = e;
    // The adjustment rewrites the no-cause arm, so its observable
    // regression is the product of the two marginals.
    g.mu0_true[i] = spec.monotonicity_adjust ? p0 * p1 : p0;
    g.mu1_true[i] = p1;
  }
  return g;
}

}  // namespace attrib
