#include "attrib/estimate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "attrib/csv.hpp"

namespace attrib {

std::vector<std::string> WarningSet::names() const {
  std::vector<std::string> out;
  if (has(Warning::OutsideUnitInterval)) out.push_back("outside-unit-interval");
  if (has(Warning::PooledArmFallback)) out.push_back("pooled-arm-fallback");
  return out;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::PnMono: return "pn_mono";
    case Method::PnInde: return "pn_inde";
    case Method::PnMonoKnownE: return "pn_mono_known";
    case Method::PnIndeKnownE: return "pn_inde_known";
    case Method::PnIpw: return "pn_ipw";
    case Method::PnOr: return "pn_or";
    case Method::PsMono: return "ps_mono";
    case Method::PsInde: return "ps_inde";
    case Method::PsMonoKnownE: return "ps_mono_known";
    case Method::PsIndeKnownE: return "ps_inde_known";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m :
       {Method::PnMono, Method::PnInde, Method::PnMonoKnownE, Method::PnIndeKnownE,
        Method::PnIpw, Method::PnOr, Method::PsMono, Method::PsInde, Method::PsMonoKnownE,
        Method::PsIndeKnownE}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

Estimand method_estimand(Method m) {
  switch (m) {
    case Method::PsMono:
    case Method::PsInde:
    case Method::PsMonoKnownE:
    case Method::PsIndeKnownE:
      return Estimand::PS;
    default:
      return Estimand::PN;
  }
}

Assumption method_assumption(Method m) {
  switch (m) {
    case Method::PnInde:
    case Method::PnIndeKnownE:
    case Method::PsInde:
    case Method::PsIndeKnownE:
      return Assumption::CondIndependence;
    default:
      return Assumption::Monotonicity;
  }
}

bool method_requires_known_e(Method m) {
  switch (m) {
    case Method::PnMonoKnownE:
    case Method::PnIndeKnownE:
    case Method::PsMonoKnownE:
    case Method::PsIndeKnownE:
      return true;
    default:
      return false;
  }
}

bool method_has_plugin_se(Method m) {
  switch (m) {
    case Method::PnIpw:
    case Method::PnOr:
    case Method::PsMonoKnownE:
    case Method::PsIndeKnownE:
      return false;
    default:
      return true;
  }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

Estimate finalize_estimate(double value, double sigma, Eigen::Index n, Method method,
                           const NuisanceFit& nf) {
  Estimate e;
  e.value = value;
  e.n = n;
  e.method = method;
  e.estimand = method_estimand(method);
  e.assumption = method_assumption(method);
  e.propensity_source = nf.propensity_source;

  e.se = sigma / std::sqrt(static_cast<double>(n));
  e.ci_low = value - kZ95 * e.se;
  e.ci_high = value + kZ95 * e.se;
  if (e.se > 0.0) {
    e.p_value = 2.0 * (1.0 - normal_cdf(std::abs(value) / e.se));
  } else {
    e.p_value = (value == 0.0) ? 1.0 : 0.0;
  }

  if (value < 0.0 || value > 1.0) e.warnings.set(Warning::OutsideUnitInterval);
  if (nf.pooled_mu0_fallback || nf.pooled_mu1_fallback) {
    e.warnings.set(Warning::PooledArmFallback);
  }
  return e;
}

namespace {

const char* assumption_name(Assumption a) {
  return a == Assumption::Monotonicity ? "mono" : "inde";
}

const char* source_name(PropensitySource s) {
  return s == PropensitySource::Known ? "known" : "estimated";
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string estimate_to_json(const Estimate& e, std::optional<std::uint64_t> seed) {
  std::ostringstream out;
  out << "{\"estimand\":\"" << (e.estimand == Estimand::PN ? "pn" : "ps") << "\""
      << ",\"method\":\"" << method_name(e.method) << "\""
      << ",\"assumption\":\"" << assumption_name(e.assumption) << "\""
      << ",\"propensity_source\":\"" << source_name(e.propensity_source) << "\""
      << ",\"value\":" << csv::format_double(e.value)
      << ",\"se\":" << csv::format_double(e.se)
      << ",\"ci\":[" << csv::format_double(e.ci_low) << ',' << csv::format_double(e.ci_high)
      << "]"
      << ",\"p_value\":" << csv::format_double(e.p_value) << ",\"n\":" << e.n
      << ",\"warnings\":[";
  const auto names = e.warnings.names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ',';
    out << '"' << json_escape(names[i]) << '"';
  }
  out << "]";
  if (seed) out << ",\"seed\":" << *seed;
  out << "}";
  return out.str();
}

std::string estimate_to_csv(const Estimate& e, std::optional<std::uint64_t> seed) {
  const std::string est = e.estimand == Estimand::PN ? "pn" : "ps";
  std::ostringstream out;
  out << "method," << est << ".est,ESE,p-value,ci.low,ci.high,n,assumption,propensity,warnings";
  if (seed) out << ",seed";
  out << '\n';
  out << method_name(e.method) << ',' << csv::format_double(e.value) << ','
      << csv::format_double(e.se) << ',' << csv::format_double(e.p_value) << ','
      << csv::format_double(e.ci_low) << ',' << csv::format_double(e.ci_high) << ',' << e.n
      << ',' << assumption_name(e.assumption) << ',' << source_name(e.propensity_source)
      << ',';
  const auto names = e.warnings.names();
  std::string joined;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) joined += ';';
    joined += names[i];
  }
  out << csv::escape_field(joined);
  if (seed) out << ',' << *seed;
  out << '\n';
  return out.str();
}

}  // namespace attrib
