// Command-line front end: estimate on CSV data, regenerate the simulation
// tables, query the ground-truth oracle, and render metrics files.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "attrib/crossfit.hpp"
#include "attrib/csv.hpp"
#include "attrib/dataset.hpp"
#include "attrib/errors.hpp"
#include "attrib/estimate.hpp"
#include "attrib/pn.hpp"
#include "attrib/ps.hpp"
#include "attrib/rng.hpp"
#include "attrib/study.hpp"
#include "attrib/truth.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 20240101;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "1,2,5-10" -> {1,2,5,6,7,8,9,10}
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& token : split(text, ',')) {
    const auto dash = token.find('-', 1);
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(token));
      } else {
        const int lo = std::stoi(token.substr(0, dash));
        const int hi = std::stoi(token.substr(dash + 1));
        if (hi < lo) throw UsageError("bad range '" + token + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::invalid_argument&) {
      throw UsageError("cannot parse integer list entry '" + token + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw attrib::ArgumentError("cannot write file: " + out_path);
    out << text;
  }
}

struct EstimateArgs {
  std::string data, treatment, outcome, covariates, known_col, nuisance = "logistic";
  std::string estimand, assumption, method = "proposed", interactions, out, format = "json";
  int folds = 5;
  int bootstrap = 200;
  std::uint64_t seed = kDefaultSeed;
};

int run_estimate(const EstimateArgs& args) {
  using namespace attrib;

  // Covariates default to every column that is not the treatment, the
  // outcome, or the known-propensity column.
  std::vector<std::string> covariates;
  if (!args.covariates.empty()) {
    covariates = split(args.covariates, ',');
  } else {
    const csv::Table t = csv::read_file(args.data);
    for (const std::string& name : t.header) {
      if (name != args.treatment && name != args.outcome && name != args.known_col) {
        covariates.push_back(name);
      }
    }
  }

  // The known-propensity column rides along as a covariate so row dropping
  // stays consistent, then is split back out.
  std::vector<std::string> load_cols = covariates;
  if (!args.known_col.empty()) load_cols.push_back(args.known_col);
  Dataset d = load_csv(args.data, args.treatment, args.outcome, load_cols);

  std::optional<Eigen::VectorXd> known_e;
  if (!args.known_col.empty()) {
    const Eigen::Index last = d.p() - 1;
    known_e = d.x.col(last);
    Eigen::MatrixXd x = d.x.leftCols(last);
    d = make_dataset(std::move(x), d.a, d.y, covariates, d.dropped_rows);
  }

  if (!args.interactions.empty()) {
    std::vector<std::string> cont, disc;
    for (const std::string& part : split(args.interactions, ';')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) {
        throw UsageError("bad --interactions syntax, expected cont=...;disc=...");
      }
      const std::string key = part.substr(0, eq);
      const auto cols = split(part.substr(eq + 1), ',');
      if (key == "cont") {
        cont = cols;
      } else if (key == "disc") {
        disc = cols;
      } else {
        throw UsageError("unknown --interactions key '" + key + "'");
      }
    }
    d = expand_interactions(d, cont, disc);
  }

  CrossFitOptions options;
  options.model = args.nuisance == "lasso" ? ModelKind::LassoLogistic : ModelKind::Logistic;

  Method method;
  const bool known = known_e.has_value();
  if (args.method == "proposed") {
    if (args.estimand == "pn") {
      method = args.assumption == "mono" ? (known ? Method::PnMonoKnownE : Method::PnMono)
                                         : (known ? Method::PnIndeKnownE : Method::PnInde);
    } else {
      method = args.assumption == "mono" ? (known ? Method::PsMonoKnownE : Method::PsMono)
                                         : (known ? Method::PsIndeKnownE : Method::PsInde);
    }
  } else if (args.method == "ipw" || args.method == "or") {
    if (args.estimand != "pn") {
      throw UsageError("--method " + args.method + " is only defined for --estimand pn");
    }
    method = args.method == "ipw" ? Method::PnIpw : Method::PnOr;
  } else {
    throw UsageError("unknown --method '" + args.method + "'");
  }

  // One penalty selection per nuisance role the method reads; fold models
  // and bootstrap replicates refit at the pinned penalty.
  const bool needs_e = !known_e.has_value() && method != Method::PnOr;
  const bool needs_mu = method != Method::PnIpw;
  options = pin_lasso(d, options, needs_e, needs_mu, needs_mu);
  if (method == Method::PnIpw) options.skip_outcome_models = true;
  if (method == Method::PnOr) options.skip_propensity = true;

  const NuisanceFit nf =
      cross_fit(d, args.folds, options, known_e,
                StreamKey::root(args.seed).child("estimate-folds").value);

  ResamplePlan plan;
  plan.replications = args.bootstrap;
  plan.folds = args.folds;
  plan.seed = args.seed;
  plan.options = options;

  Estimate est;
  switch (method) {
    case Method::PnMono: est = pn_mono(d, nf); break;
    case Method::PnInde: est = pn_inde(d, nf); break;
    case Method::PnMonoKnownE: est = pn_mono_known_e(d, nf); break;
    case Method::PnIndeKnownE: est = pn_inde_known_e(d, nf); break;
    case Method::PnIpw: est = pn_ipw(d, nf, plan); break;
    case Method::PnOr: est = pn_or(d, nf, plan); break;
    case Method::PsMono: est = ps_mono(d, nf); break;
    case Method::PsInde: est = ps_inde(d, nf); break;
    case Method::PsMonoKnownE: est = ps_mono_known_e(d, nf, plan); break;
    case Method::PsIndeKnownE: est = ps_inde_known_e(d, nf, plan); break;
  }

  emit(args.format == "csv" ? estimate_to_csv(est, args.seed)
                            : estimate_to_json(est, args.seed),
       args.out);
  return 0;
}

struct SimulateArgs {
  std::string cases, estimators = "pn_mono", ns = "500,1000,2000", out;
  int reps = 1000;
  int folds = 5;
  int workers = 0;
  bool known_propensity = false;
  std::uint64_t seed = kDefaultSeed;
};

int run_simulate(const SimulateArgs& args) {
  using namespace attrib;

  StudyConfig config;
  config.case_ids = parse_int_list(args.cases);
  for (int c : config.case_ids) case_registry(c);  // validate ids up front
  config.n_values = parse_int_list(args.ns);
  config.reps = args.reps;
  config.folds = args.folds;
  config.seed = args.seed;
  config.workers = args.workers;

  for (const std::string& name : split(args.estimators, ',')) {
    auto m = method_from_name(name);
    if (!m) throw UsageError("unknown estimator '" + name + "'");
    if (args.known_propensity) {
      if (*m == Method::PnMono) m = Method::PnMonoKnownE;
      else if (*m == Method::PnInde) m = Method::PnIndeKnownE;
      else if (*m == Method::PsMono) m = Method::PsMonoKnownE;
      else if (*m == Method::PsInde) m = Method::PsIndeKnownE;
    }
    config.estimators.push_back(*m);
  }

  const std::vector<MetricsRow> rows = run_study(config);
  emit(metrics_to_csv(rows), args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Necessity/sufficiency attribution estimators and simulation lab"};
  app.require_subcommand(1);

  EstimateArgs est;
  CLI::App* cmd_est = app.add_subcommand("estimate", "Estimate PN or PS from a CSV file");
  cmd_est->add_option("--data", est.data, "input CSV path")->required();
  cmd_est->add_option("--treatment", est.treatment, "treatment column (0/1)")->required();
  cmd_est->add_option("--outcome", est.outcome, "outcome column (0/1)")->required();
  cmd_est->add_option("--estimand", est.estimand, "pn or ps")
      ->required()
      ->check(CLI::IsMember({"pn", "ps"}));
  cmd_est->add_option("--assumption", est.assumption, "mono or inde")
      ->required()
      ->check(CLI::IsMember({"mono", "inde"}));
  cmd_est->add_option("--covariates", est.covariates,
                      "comma-separated covariate columns (default: all others)");
  cmd_est->add_option("--known-propensity-col", est.known_col,
                      "column holding known propensity scores in (0,1)");
  cmd_est->add_option("--nuisance", est.nuisance, "nuisance model (default logistic)")
      ->check(CLI::IsMember({"logistic", "lasso"}));
  cmd_est->add_option("--folds", est.folds, "cross-fitting folds (default 5)");
  cmd_est->add_option("--bootstrap", est.bootstrap,
                      "bootstrap replications for ipw/or and known-e ps (default 200)");
  cmd_est->add_option("--interactions", est.interactions,
                      "cont=c1,c2;disc=d1,d2 product-column expansion");
  cmd_est->add_option("--method", est.method, "proposed, ipw, or or (default proposed)")
      ->check(CLI::IsMember({"proposed", "ipw", "or"}));
  cmd_est->add_option("--out", est.out, "output path (default stdout)");
  cmd_est->add_option("--format", est.format, "json or csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_est->add_option("--seed", est.seed, "random seed (default 20240101)");

  SimulateArgs sim;
  CLI::App* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo replication study");
  cmd_sim->add_option("--cases", sim.cases, "case ids, e.g. 1,2 or 1-4")->required();
  cmd_sim->add_option("--estimators", sim.estimators,
                      "comma-separated estimator names (default pn_mono)");
  cmd_sim->add_option("--n", sim.ns, "sample sizes (default 500,1000,2000)");
  cmd_sim->add_option("--reps", sim.reps, "replications per cell (default 1000)");
  cmd_sim->add_option("--folds", sim.folds, "cross-fitting folds (default 5)");
  cmd_sim->add_flag("--known-propensity", sim.known_propensity,
                    "use the generating propensity instead of estimating it");
  cmd_sim->add_option("--workers", sim.workers, "worker threads (0 = hardware)");
  cmd_sim->add_option("--seed", sim.seed, "random seed (default 20240101)");
  cmd_sim->add_option("--out", sim.out, "output CSV path (default stdout)");

  struct {
    int case_id = 1;
    std::string estimand = "pn";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
  } tru;
  CLI::App* cmd_truth = app.add_subcommand("truth", "Ground-truth oracle for one case");
  cmd_truth->add_option("--case", tru.case_id, "case id")->required();
  cmd_truth->add_option("--estimand", tru.estimand, "pn or ps")
      ->check(CLI::IsMember({"pn", "ps"}));
  cmd_truth->add_option("--samples", tru.samples, "simulation size (default 1000000)");
  cmd_truth->add_option("--seed", tru.seed, "random seed (default 20240101)");

  struct {
    std::string in;
  } rep;
  CLI::App* cmd_report = app.add_subcommand("report", "Render a metrics CSV as a table");
  cmd_report->add_option("--in", rep.in, "metrics CSV from `simulate`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_est) return run_estimate(est);
    if (*cmd_sim) return run_simulate(sim);
    if (*cmd_truth) {
      const attrib::DgpSpec spec = attrib::case_registry(tru.case_id);
      const double value = attrib::true_value(
          spec, tru.estimand == "pn" ? attrib::Estimand::PN : attrib::Estimand::PS,
          tru.samples, tru.seed);
      std::cout << attrib::csv::format_double(value) << '\n';
      return 0;
    }
    if (*cmd_report) {
      const auto rows = attrib::read_metrics_csv(rep.in);
      std::cout << attrib::render_metrics_table(rows);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const attrib::RegistryError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const attrib::Error& e) {
    std::cout << "{\"error\":{\"code\":\"" << e.code() << "\",\"message\":\"" << e.what()
              << "\"}}\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << "{\"error\":{\"code\":\"internal\",\"message\":\"" << e.what() << "\"}}\n";
    return 1;
  }
  return 2;
}
